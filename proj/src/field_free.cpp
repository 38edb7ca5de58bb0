#include "abclab/field_free.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abclab/errors.hpp"

namespace abclab::field_free {

namespace {

constexpr double kMinSeparation = 1e-12;

const PointCharge& checked(const ChargeConfiguration& cfg, std::size_t target) {
  if (target >= cfg.charges.size()) {
    throw DomainError("charge index " + std::to_string(target) + " out of range");
  }
  return cfg.charges[target];
}

double separation(const PointCharge& a, const PointCharge& b) {
  const double r = norm(a.pos - b.pos);
  if (!(r > kMinSeparation)) throw SingularityError("coincident charges");
  return r;
}

}  // namespace

void ChargeConfiguration::validate() const {
  for (std::size_t i = 0; i < charges.size(); ++i) {
    if (!std::isfinite(charges[i].q) || !is_finite(charges[i].pos)) {
      throw ValidationError("charges[" + std::to_string(i) + "]", "charge and position must be finite");
    }
    for (std::size_t j = i + 1; j < charges.size(); ++j) {
      if (!(norm(charges[i].pos - charges[j].pos) > kMinSeparation)) {
        throw ValidationError("charges[" + std::to_string(j) + "]", "coincides with another charge");
      }
    }
  }
}

Vec3 field_at(const ChargeConfiguration& cfg, std::size_t target) {
  const PointCharge& here = checked(cfg, target);
  Vec3 e{};
  for (std::size_t j = 0; j < cfg.charges.size(); ++j) {
    if (j == target) continue;
    const PointCharge& src = cfg.charges[j];
    const double r = separation(here, src);
    e += (src.q / (r * r * r)) * (here.pos - src.pos);
  }
  return e;
}

double potential_at(const ChargeConfiguration& cfg, std::size_t target) {
  const PointCharge& here = checked(cfg, target);
  double phi = 0.0;
  for (std::size_t j = 0; j < cfg.charges.size(); ++j) {
    if (j == target) continue;
    phi += cfg.charges[j].q / separation(here, cfg.charges[j]);
  }
  return phi;
}

ChargeConfiguration make_three_charge(double d, double e) {
  if (!(d > 0.0)) throw DomainError("spacing d must be > 0");
  if (!(e > 0.0)) throw DomainError("elementary charge e must be > 0");
  return {{{-e, {0.0, 0.0, 0.0}}, {4.0 * e, {d, 0.0, 0.0}}, {4.0 * e, {-d, 0.0, 0.0}}}};
}

std::vector<FieldFreeEntry> verify_field_free(const ChargeConfiguration& cfg, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be > 0");
  double scale = 0.0;
  for (std::size_t i = 0; i < cfg.charges.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.charges.size(); ++j) {
      const double r = separation(cfg.charges[i], cfg.charges[j]);
      const double q = std::max(std::abs(cfg.charges[i].q), std::abs(cfg.charges[j].q));
      scale = std::max(scale, q / (r * r));
    }
  }
  std::vector<FieldFreeEntry> report;
  report.reserve(cfg.charges.size());
  for (std::size_t i = 0; i < cfg.charges.size(); ++i) {
    const double mag = norm(field_at(cfg, i));
    report.push_back({i, mag, scale, mag < tol * scale || mag == 0.0});
  }
  return report;
}

}  // namespace abclab::field_free
