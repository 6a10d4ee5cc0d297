#include "fdsl/explore.hpp"

#include "fdsl/errors.hpp"
#include "fdsl/registry.hpp"

namespace fdsl {

namespace {

constexpr std::pair<ExploreAxis, std::string_view> kAxisNames[] = {
    {ExploreAxis::Category, "category"},
    {ExploreAxis::Instance, "instance"},
    {ExploreAxis::PatchMode, "patch_mode"},
    {ExploreAxis::FillingRate, "filling_rate"},
    {ExploreAxis::WeightInterval, "weight_interval"},
    {ExploreAxis::DotCount, "dot_count"},
    {ExploreAxis::ImageSize, "image_size"},
};

std::uint64_t integer_in(std::string_view axis, const std::string& value, std::uint64_t lo,
                         std::uint64_t hi) {
  std::uint64_t v = 0;
  try {
    v = parse_u64(value);
  } catch (const ParseError&) {
    throw InvalidAxisValue(std::string(axis) + ": '" + value + "' is not an integer");
  }
  if (v < lo || v > hi)
    throw InvalidAxisValue(std::string(axis) + ": " + value + " outside [" + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]");
  return v;
}

double real_in(std::string_view axis, const std::string& value, double lo, double hi,
               bool hi_inclusive) {
  double v = 0.0;
  try {
    v = parse_real(value);
  } catch (const ParseError&) {
    throw InvalidAxisValue(std::string(axis) + ": '" + value + "' is not a number");
  }
  if (!(v > lo && (hi_inclusive ? v <= hi : v < hi)))
    throw InvalidAxisValue(std::string(axis) + ": " + value + " outside its domain");
  return v;
}

}  // namespace

std::string_view to_string(ExploreAxis axis) {
  for (const auto& [a, name] : kAxisNames)
    if (a == axis) return name;
  return "?";
}

ExploreAxis parse_axis(std::string_view text) {
  for (const auto& [a, name] : kAxisNames)
    if (name == text) return a;
  throw InvalidAxisValue("unknown exploration axis '" + std::string(text) + "'");
}

std::vector<DatasetConfig> run_exploration_grid(ExploreAxis axis,
                                                std::span<const std::string> values,
                                                const DatasetConfig& base) {
  if (values.empty()) throw InvalidAxisValue("no values given for axis " + std::string(to_string(axis)));
  const std::string_view name = to_string(axis);
  std::vector<DatasetConfig> out;
  out.reserve(values.size());
  for (const std::string& value : values) {
    DatasetConfig cfg = base;
    switch (axis) {
      case ExploreAxis::Category:
        cfg.category_count = integer_in(name, value, 1, 99999);
        break;
      case ExploreAxis::Instance:
        cfg.instances_per_category = integer_in(name, value, 1, 9999);
        break;
      case ExploreAxis::PatchMode:
        try {
          cfg.render.draw_mode = parse_draw_mode(value);
        } catch (const InvalidConfig& e) {
          throw InvalidAxisValue(std::string(name) + ": " + e.what());
        }
        break;
      case ExploreAxis::FillingRate: {
        const double r = real_in(name, value, 0.0, 0.95, true);
        cfg.search.r_min = r;
        cfg.search.r_max = r + 0.05;
        break;
      }
      case ExploreAxis::WeightInterval:
        cfg.weight_interval = real_in(name, value, 0.0, 1.0, false);
        break;
      case ExploreAxis::DotCount:
        cfg.render.point_count = integer_in(name, value, 1, 100'000'000);
        break;
      case ExploreAxis::ImageSize: {
        const int size = static_cast<int>(integer_in(name, value, 8, 4096));
        cfg.render.width = size;
        cfg.render.height = size;
        break;
      }
    }
    cfg.output_root = base.output_root / (std::string(name) + "=" + value);
    out.push_back(std::move(cfg));
  }
  return out;
}

}  // namespace fdsl
