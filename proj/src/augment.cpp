#include "fdsl/augment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdsl/errors.hpp"

namespace fdsl {

void WeightConfig::validate() const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidConfig("weight factor must be > 0");
  if (is_identity() && factor != 1.0) throw InvalidConfig("Identity weight must have factor 1");
  if (param_index && *param_index >= AffineMap::kParamCount)
    throw InvalidConfig("weight parameter index must be in 0..5");
}

std::string_view to_string(Flip flip) {
  switch (flip) {
    case Flip::None: return "none";
    case Flip::Horizontal: return "horizontal";
    case Flip::Vertical: return "vertical";
    case Flip::Both: return "both";
  }
  return "?";
}

std::array<double, 5> weight_factors(double interval) {
  if (!(interval > 0.0)) throw InvalidConfig("weight interval must be > 0");
  std::array<double, 5> w{};
  for (int k = -2; k <= 2; ++k) {
    // Snapped to 12 decimals: 1 - 2 * 0.4 gives exactly 0.2.
    const double v = std::round((1.0 + k * interval) * 1e12) / 1e12;
    w[static_cast<std::size_t>(k + 2)] = v <= 0.0 ? 0.01 : v;
  }
  return w;
}

std::vector<WeightConfig> weight_grid(double interval) {
  if (!(interval > 0.0 && interval < 1.0)) throw InvalidConfig("weight interval must be in (0, 1)");
  const auto factors = weight_factors(interval);
  std::vector<WeightConfig> grid;
  grid.reserve(kWeightConfigs);
  grid.push_back(WeightConfig::identity());
  for (std::size_t index = 0; index < AffineMap::kParamCount; ++index)
    for (double f : factors)
      if (f != 1.0) grid.push_back(WeightConfig::on(index, f));
  return grid;
}

IfsSystem apply_weight(const IfsSystem& system, const WeightConfig& weight) {
  weight.validate();
  if (weight.is_identity()) return system;
  std::vector<AffineMap> maps = system.maps;
  for (AffineMap& m : maps) m.param(*weight.param_index) *= weight.factor;
  return make_system(std::move(maps));
}

namespace {

constexpr Flip kFlipOrder[kFlips] = {Flip::None, Flip::Horizontal, Flip::Vertical, Flip::Both};

std::size_t patch_variants(std::size_t instances_per_category) {
  const std::size_t per_variant = kWeightConfigs * kFlips;
  return (instances_per_category + per_variant - 1) / per_variant;
}

InstanceSpec grid_instance(const CategorySpec& category, std::size_t id, std::size_t variants,
                           const std::vector<WeightConfig>& weights) {
  const std::size_t p = id % variants;
  const std::size_t flip = (id / variants) % kFlips;
  const std::size_t w = id / (variants * kFlips);
  return InstanceSpec{category.category_id, id, weights[w], kFlipOrder[flip], p,
                      instance_seed(category.seed, id)};
}

}  // namespace

InstanceSpec instance_at(const CategorySpec& category, std::size_t instance_id,
                         std::size_t instances_per_category, double weight_interval) {
  if (instances_per_category < 1) throw InvalidCount("instances_per_category must be >= 1");
  if (instance_id >= instances_per_category)
    throw InvalidCount("instance id " + std::to_string(instance_id) + " outside the grid");
  return grid_instance(category, instance_id, patch_variants(instances_per_category),
                       weight_grid(weight_interval));
}

std::vector<InstanceSpec> enumerate_instances(const CategorySpec& category,
                                              std::size_t instances_per_category,
                                              double weight_interval) {
  if (instances_per_category < 1) throw InvalidCount("instances_per_category must be >= 1");
  const auto weights = weight_grid(weight_interval);
  const std::size_t variants = patch_variants(instances_per_category);
  std::vector<InstanceSpec> out;
  out.reserve(instances_per_category);
  for (std::size_t id = 0; id < instances_per_category; ++id)
    out.push_back(grid_instance(category, id, variants, weights));
  return out;
}

void apply_flip(RasterImage& img, Flip flip) {
  const int w = img.width;
  const int h = img.height;
  if (flip == Flip::Horizontal || flip == Flip::Both)
    for (int y = 0; y < h; ++y) {
      auto row = img.pixels.begin() + static_cast<std::ptrdiff_t>(y) * w;
      std::reverse(row, row + w);
    }
  if (flip == Flip::Vertical || flip == Flip::Both)
    for (int y = 0; y < h / 2; ++y)
      std::swap_ranges(img.pixels.begin() + static_cast<std::ptrdiff_t>(y) * w,
                       img.pixels.begin() + static_cast<std::ptrdiff_t>(y + 1) * w,
                       img.pixels.begin() + static_cast<std::ptrdiff_t>(h - 1 - y) * w);
}

namespace {

std::optional<RasterImage> try_weighted(const CategorySpec& category, const WeightConfig& weight,
                                        std::uint64_t iteration_seed, std::uint64_t pattern_seed,
                                        const RenderConfig& cfg) {
  IfsSystem system;
  try {
    system = apply_weight(category.system, weight);
  } catch (const DegenerateSystem&) {
    return std::nullopt;
  }
  return try_render_system(system, cfg, iteration_seed, pattern_seed);
}

}  // namespace

InstanceRender render_instance_detailed(const CategorySpec& category, const InstanceSpec& inst,
                                        const RenderConfig& cfg) {
  if (inst.category_id != category.category_id)
    throw InvalidConfig("instance " + std::to_string(inst.instance_id) +
                        " does not belong to category " + std::to_string(category.category_id));
  const std::uint64_t pattern_seed = patch_seed(category.seed, inst.patch_variant);

  WeightConfig weight = inst.weight;
  std::optional<RasterImage> img = try_weighted(category, weight, inst.seed, pattern_seed, cfg);
  for (int retry = 0; !img && !weight.is_identity() && retry < 8; ++retry) {
    weight.factor = 1.0 + (weight.factor - 1.0) / 2.0;
    img = try_weighted(category, weight, inst.seed, pattern_seed, cfg);
  }
  if (!img && !weight.is_identity()) {
    weight = WeightConfig::identity();
    img = try_weighted(category, weight, inst.seed, pattern_seed, cfg);
  }
  // Unweighted system on derived iteration seeds.
  for (std::uint64_t k = 1; !img && k <= 8; ++k)
    img = try_weighted(category, weight, mix(inst.seed, k), pattern_seed, cfg);
  if (!img)
    throw Diverged("category " + std::to_string(category.category_id) + " instance " +
                   std::to_string(inst.instance_id) + " diverged after all fallbacks");

  apply_flip(*img, inst.flip);
  return {std::move(*img), weight};
}

RasterImage render_instance(const CategorySpec& category, const InstanceSpec& inst,
                            const RenderConfig& cfg) {
  return std::move(render_instance_detailed(category, inst, cfg).image);
}

}  // namespace fdsl
