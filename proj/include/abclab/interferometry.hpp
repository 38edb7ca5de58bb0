#pragma once

#include "abclab/vec3.hpp"

/// Two-path Mach-Zehnder interference.
///
/// Conventions:
///  * A tuned interferometer (relative phase 0) sends everything to detector A;
///    a relative phase of pi sends everything to B. Between the two anchors the
///    standard two-path law p_a = (1 + V cos(phase)) / 2 applies.
///  * Fringe visibility V is the magnitude of the overlap between the states
///    that any other system (e.g. the flux source) is left in along each path.
///  * Displacements of a Gaussian source packet use the symmetric-ordered
///    operator D(dx, dp) = exp(i (dp x - dx p) / hbar), so
///    <chi|D|chi> = exp(-dx^2/(8 sx^2) - dp^2 sx^2/(2 hbar^2)) * exp(i (dp x0 - dx p0) / hbar).
///    Only the magnitude reaches any observable here.
namespace abclab::interferometry {

struct DetectionProbabilities {
  double p_a{1.0};
  double p_b{0.0};
};

/// Amplitudes on the upper and lower arms, normalised to unit total probability.
struct TwoPathState {
  ComplexAmplitude upper{};
  ComplexAmplitude lower{};

  /// Balanced split with `phase` accumulated on the lower arm relative to the upper.
  static TwoPathState balanced(double phase);

  /// Combines the arms on the final beam splitter; the cross term is scaled by `visibility`.
  DetectionProbabilities recombine(double visibility = 1.0) const;
};

/// 1D Gaussian packet |chi(x)|^2 = N(x0, sigma_x^2) with mean momentum p0.
struct GaussianPacket {
  double x0{0.0};
  double p0{0.0};
  double sigma_x{1.0};
  double mass{1.0};

  /// Throws ValidationError unless sigma_x > 0 and mass > 0.
  void validate() const;
  /// Minimum-uncertainty momentum spread hbar / (2 sigma_x).
  double sigma_p(double hbar) const { return hbar / (2.0 * sigma_x); }
};

/// p_a = (1 + V cos(phase))/2. Throws DomainError for V outside [0, 1].
DetectionProbabilities detector_probabilities(double phase, double visibility = 1.0);

/// 2*pi*delta_l/wavelength. Throws DomainError unless wavelength > 0.
double phase_from_path_shift(double delta_l, double wavelength);

/// <chi| D(delta_x, delta_p) |chi> in closed form.
ComplexAmplitude packet_overlap(const GaussianPacket& packet, double delta_x, double delta_p,
                                double hbar);

/// Same overlap evaluated as an integral of conj(chi(x)) * (D chi)(x) over x.
/// Used by the verification suite as an independent route.
ComplexAmplitude packet_overlap_numeric(const GaussianPacket& packet, double delta_x,
                                        double delta_p, double hbar, double abs_tol = 1e-13);

/// clamp(|overlap|, 0, 1). A magnitude above 1 + 1e-9 throws ConsistencyError.
double visibility_from_overlap(ComplexAmplitude overlap);

}  // namespace abclab::interferometry
