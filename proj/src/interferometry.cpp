#include "abclab/interferometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "abclab/errors.hpp"
#include "abclab/quadrature.hpp"

namespace abclab::interferometry {

namespace {

constexpr double kOverlapSlack = 1e-9;

// Half-width of the integration window in units of sigma_x around the overlap centre.
constexpr double kWindowSigmas = 14.0;

}  // namespace

TwoPathState TwoPathState::balanced(double phase) {
  const double amp = 1.0 / std::numbers::sqrt2;
  return {ComplexAmplitude{amp, 0.0}, std::polar(amp, phase)};
}

DetectionProbabilities TwoPathState::recombine(double visibility) const {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw DomainError("visibility must lie in [0, 1], got " + std::to_string(visibility));
  }
  const double direct = 0.5 * (std::norm(upper) + std::norm(lower));
  const double cross = visibility * std::real(std::conj(upper) * lower);
  return {direct + cross, direct - cross};
}

void GaussianPacket::validate() const {
  if (!(sigma_x > 0.0) || !std::isfinite(sigma_x)) {
    throw ValidationError("sigma_x", "must be finite and > 0");
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ValidationError("mass", "must be finite and > 0");
  if (!std::isfinite(x0) || !std::isfinite(p0)) throw ValidationError("x0/p0", "must be finite");
}

DetectionProbabilities detector_probabilities(double phase, double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw DomainError("visibility must lie in [0, 1], got " + std::to_string(visibility));
  }
  const double fringe = visibility * std::cos(phase);
  return {0.5 * (1.0 + fringe), 0.5 * (1.0 - fringe)};
}

double phase_from_path_shift(double delta_l, double wavelength) {
  if (!(wavelength > 0.0)) throw DomainError("wavelength must be > 0");
  return 2.0 * std::numbers::pi * delta_l / wavelength;
}

ComplexAmplitude packet_overlap(const GaussianPacket& packet, double delta_x, double delta_p,
                                double hbar) {
  packet.validate();
  const double sx = packet.sigma_x;
  const double log_mag =
      -delta_x * delta_x / (8.0 * sx * sx) - delta_p * delta_p * sx * sx / (2.0 * hbar * hbar);
  const double phase = (delta_p * packet.x0 - delta_x * packet.p0) / hbar;
  return std::polar(std::exp(log_mag), phase);
}

ComplexAmplitude packet_overlap_numeric(const GaussianPacket& packet, double delta_x,
                                        double delta_p, double hbar, double abs_tol) {
  packet.validate();
  const double sx = packet.sigma_x;
  const double norm = 1.0 / std::sqrt(std::sqrt(2.0 * std::numbers::pi) * sx);
  auto chi = [&](double x) {
    const double u = x - packet.x0;
    return std::polar(norm * std::exp(-u * u / (4.0 * sx * sx)), packet.p0 * x / hbar);
  };
  auto integrand = [&](double x) {
    const ComplexAmplitude displaced =
        std::polar(1.0, delta_p * (x - 0.5 * delta_x) / hbar) * chi(x - delta_x);
    return std::conj(chi(x)) * displaced;
  };

  const double centre = packet.x0 + 0.5 * delta_x;
  const double half_width = kWindowSigmas * sx + 0.5 * std::abs(delta_x);
  // Split at the centre so the symmetric peak never hides between coarse nodes.
  quadrature::Options opts{.rel_tol = 0.0, .abs_tol = abs_tol, .max_depth = 50};
  auto part = [&](auto component) {
    auto g = [&](double x) { return component(integrand(x)); };
    return quadrature::gauss_legendre(g, centre - half_width, centre, opts).value +
           quadrature::gauss_legendre(g, centre, centre + half_width, opts).value;
  };
  return {part([](ComplexAmplitude z) { return z.real(); }),
          part([](ComplexAmplitude z) { return z.imag(); })};
}

double visibility_from_overlap(ComplexAmplitude overlap) {
  const double mag = std::abs(overlap);
  if (!(mag <= 1.0 + kOverlapSlack)) {
    throw ConsistencyError("source-state overlap has magnitude " + std::to_string(mag) +
                           " > 1; upstream computation is broken");
  }
  return std::clamp(mag, 0.0, 1.0);
}

}  // namespace abclab::interferometry
