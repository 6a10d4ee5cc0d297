#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fdsl/ifs.hpp"
#include "fdsl/render.hpp"
#include "fdsl/search.hpp"

namespace fdsl {

/// Multiplies one affine parameter (index into a..f) of every map by
/// `factor`. No index means Identity.
struct WeightConfig {
  std::optional<std::size_t> param_index;
  double factor = 1.0;

  static WeightConfig identity() { return {}; }
  static WeightConfig on(std::size_t index, double factor) { return {index, factor}; }
  bool is_identity() const { return !param_index.has_value(); }
  void validate() const;

  friend bool operator==(const WeightConfig&, const WeightConfig&) = default;
};

enum class Flip { None, Horizontal, Vertical, Both };

std::string_view to_string(Flip flip);

struct InstanceSpec {
  std::size_t category_id = 0;
  std::size_t instance_id = 0;
  WeightConfig weight;
  Flip flip = Flip::None;
  std::size_t patch_variant = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

/// Five weights centred on 1 with the given spacing. A non-positive low
/// end is replaced by 0.01 (interval 0.5 gives {0.01, 0.5, 1, 1.5, 2}).
std::array<double, 5> weight_factors(double interval);

/// The 25 weight configs of the instance grid: Identity, then every
/// parameter index 0..5 crossed with the four non-unit factors.
std::vector<WeightConfig> weight_grid(double interval);

/// Probabilities are recomputed from the weighted determinants.
IfsSystem apply_weight(const IfsSystem& system, const WeightConfig& weight);

inline constexpr std::size_t kWeightConfigs = 25;
inline constexpr std::size_t kFlips = 4;

/// Element `instance_id` of the grid below, computed directly.
InstanceSpec instance_at(const CategorySpec& category, std::size_t instance_id,
                         std::size_t instances_per_category, double weight_interval = 0.4);

/// Lexicographic prefix of weights x flips x patch variants, with
/// ceil(n / 100) patch variants. Throws InvalidCount when n < 1.
std::vector<InstanceSpec> enumerate_instances(const CategorySpec& category,
                                              std::size_t instances_per_category,
                                              double weight_interval = 0.4);

/// In-place pixel mirror.
void apply_flip(RasterImage& img, Flip flip);

struct InstanceRender {
  RasterImage image;
  /// Weight actually rendered; differs from the requested one after a
  /// divergence fallback.
  WeightConfig applied_weight;
};

/// Weighted system, iterated with inst.seed, rasterized with the variant's
/// patch seed, then flipped. A diverging weighted system is retried with the
/// factor's deviation from 1 halved (8 times) and then with Identity.
InstanceRender render_instance_detailed(const CategorySpec& category, const InstanceSpec& inst,
                                        const RenderConfig& cfg);

RasterImage render_instance(const CategorySpec& category, const InstanceSpec& inst,
                            const RenderConfig& cfg);

}  // namespace fdsl
