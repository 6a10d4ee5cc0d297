#include "fdsl/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fdsl/errors.hpp"
#include "fdsl/rng.hpp"

namespace fdsl {

double& AffineMap::param(std::size_t index) {
  switch (index) {
    case 0: return a;
    case 1: return b;
    case 2: return c;
    case 3: return d;
    case 4: return e;
    case 5: return f;
  }
  throw InvalidConfig("affine parameter index out of range: " + std::to_string(index));
}

double AffineMap::param(std::size_t index) const {
  return const_cast<AffineMap&>(*this).param(index);
}

bool AffineMap::is_finite() const noexcept {
  return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d) &&
         std::isfinite(e) && std::isfinite(f);
}

double operator_norm(const AffineMap& m) {
  // Singular values of a 2x2 matrix from the Frobenius norm and determinant.
  const double fro2 = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
  const double det = m.det();
  const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
  return std::sqrt(0.5 * (fro2 + disc));
}

double spectral_radius(const AffineMap& m) {
  const double tr = m.a + m.d;
  const double det = m.det();
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    return std::max(std::abs(0.5 * (tr + s)), std::abs(0.5 * (tr - s)));
  }
  // Complex pair: |lambda|^2 = det.
  return std::sqrt(det);
}

void IfsSystem::validate() const {
  if (maps.empty()) throw InvalidConfig("IFS system has no maps");
  if (maps.size() != probs.size()) throw InvalidConfig("IFS maps/probs size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!maps[i].is_finite()) throw InvalidConfig("IFS map has non-finite parameter");
    if (!(probs[i] >= 0.0)) throw InvalidConfig("IFS probability is negative");
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidConfig("IFS probabilities do not sum to 1");
}

std::vector<double> compute_probabilities(std::span<const AffineMap> maps) {
  if (maps.empty()) throw DegenerateSystem("no maps");
  std::vector<double> probs(maps.size());
  double total = 0.0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    probs[i] = std::abs(maps[i].det());
    total += probs[i];
  }
  if (!(total >= 1e-12)) throw DegenerateSystem("sum of |det A_i| below 1e-12");
  for (double& p : probs) p /= total;
  return probs;
}

IfsSystem make_system(std::vector<AffineMap> maps) {
  auto probs = compute_probabilities(maps);
  return IfsSystem{std::move(maps), std::move(probs)};
}

void IterationConfig::validate() const {
  if (point_count < 1) throw InvalidConfig("point_count must be >= 1");
  if (!(divergence_bound > 0.0)) throw InvalidConfig("divergence_bound must be > 0");
}

namespace {

// Cumulative selection thresholds on the raw 64-bit engine output, so map
// choice needs no floating-point conversion per step.
struct Selector {
  std::vector<std::uint64_t> thresholds;
  std::size_t fallback = 0;

  explicit Selector(const std::vector<double>& probs) : thresholds(probs.size()) {
    double cum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      cum += probs[i];
      const double scaled = cum * 0x1.0p64;
      thresholds[i] = scaled >= 0x1.0p64 ? UINT64_MAX : static_cast<std::uint64_t>(scaled);
      if (probs[i] > 0.0) fallback = i;
    }
  }

  std::size_t pick(std::uint64_t r) const noexcept {
    const std::size_t n = thresholds.size();
    for (std::size_t i = 0; i < n; ++i)
      if (r < thresholds[i]) return i;
    return fallback;
  }
};

}  // namespace

IterateStatus iterate_into(const IfsSystem& system, const IterationConfig& cfg,
                           std::vector<Point2>& out) {
  system.validate();
  cfg.validate();
  const Selector selector(system.probs);
  const AffineMap* maps = system.maps.data();
  const double bound = cfg.divergence_bound;
  std::mt19937_64 engine(cfg.seed);

  Point2 p = cfg.initial_point;
  for (std::size_t t = 0; t < cfg.burn_in; ++t) {
    p = maps[selector.pick(engine())](p);
    if (!(std::abs(p.x) <= bound && std::abs(p.y) <= bound)) return IterateStatus::Diverged;
  }
  out.resize(cfg.point_count);
  for (std::size_t t = 0; t < cfg.point_count; ++t) {
    p = maps[selector.pick(engine())](p);
    if (!(std::abs(p.x) <= bound && std::abs(p.y) <= bound)) return IterateStatus::Diverged;
    out[t] = p;
  }
  return IterateStatus::Ok;
}

PointCloud iterate(const IfsSystem& system, const IterationConfig& cfg) {
  PointCloud cloud;
  if (iterate_into(system, cfg, cloud.points) == IterateStatus::Diverged)
    throw Diverged("iterate left the divergence bound of " + std::to_string(cfg.divergence_bound));
  return cloud;
}

}  // namespace fdsl
