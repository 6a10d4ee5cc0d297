#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fdsl {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// w(p) = [a b; c d] p + (e, f).
struct AffineMap {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double e = 0.0, f = 0.0;

  static constexpr std::size_t kParamCount = 6;

  Point2 operator()(Point2 p) const noexcept {
    return {a * p.x + b * p.y + e, c * p.x + d * p.y + f};
  }

  double det() const noexcept { return a * d - b * c; }

  /// Parameter by index in (a, b, c, d, e, f) order.
  double& param(std::size_t index);
  double param(std::size_t index) const;

  bool is_finite() const noexcept;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// Largest singular value of the linear part.
double operator_norm(const AffineMap& map);
double spectral_radius(const AffineMap& map);

/// A category's full parameter set: maps with their selection probabilities.
struct IfsSystem {
  std::vector<AffineMap> maps;
  std::vector<double> probs;

  std::size_t size() const noexcept { return maps.size(); }

  /// Throws InvalidConfig when sizes differ, N == 0, any parameter is
  /// non-finite, or probabilities are negative or do not sum to 1 (1e-9).
  void validate() const;

  friend bool operator==(const IfsSystem&, const IfsSystem&) = default;
};

/// p_i = |det A_i| / sum_j |det A_j|. Throws DegenerateSystem when the
/// determinant mass is below 1e-12.
std::vector<double> compute_probabilities(std::span<const AffineMap> maps);

/// Builds a system from maps, deriving probabilities from determinants.
IfsSystem make_system(std::vector<AffineMap> maps);

struct IterationConfig {
  std::size_t point_count = 100'000;
  std::size_t burn_in = 20;
  std::uint64_t seed = 0;
  Point2 initial_point{0.0, 0.0};
  double divergence_bound = 1e6;

  void validate() const;
};

struct PointCloud {
  std::vector<Point2> points;
};

enum class IterateStatus { Ok, Diverged };

/// Chaos-game core without exceptions. Writes cfg.point_count points into
/// `out` (resized). On divergence `out` is left in an unspecified state.
IterateStatus iterate_into(const IfsSystem& system, const IterationConfig& cfg,
                           std::vector<Point2>& out);

/// Random iteration algorithm: pick map i with probability p_i and apply it,
/// discarding the first cfg.burn_in iterates. Throws Diverged when any
/// coordinate exceeds cfg.divergence_bound in magnitude or is non-finite.
PointCloud iterate(const IfsSystem& system, const IterationConfig& cfg);

}  // namespace fdsl
