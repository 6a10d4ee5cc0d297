#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdsl/dataset.hpp"

namespace fdsl {

/// Exploration axes and their accepted values:
///   category, instance   integer in [1, 99999] / [1, 9999]
///   patch_mode           point | patch-random | patch-fix
///   filling_rate         r in (0, 0.95]; window becomes [r, r + 0.05]
///   weight_interval      (0, 1)
///   dot_count            integer in [1, 10^8]
///   image_size           integer in [8, 4096]; square images
enum class ExploreAxis { Category, Instance, PatchMode, FillingRate, WeightInterval, DotCount, ImageSize };

std::string_view to_string(ExploreAxis axis);
ExploreAxis parse_axis(std::string_view text);

/// One config per value, every other field taken from `base`. Outputs go to
/// base.output_root / "<axis>=<value>". Throws InvalidAxisValue.
std::vector<DatasetConfig> run_exploration_grid(ExploreAxis axis,
                                                std::span<const std::string> values,
                                                const DatasetConfig& base = DatasetConfig{});

}  // namespace fdsl
