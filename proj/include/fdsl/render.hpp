#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdsl/ifs.hpp"
#include "fdsl/rng.hpp"

namespace fdsl {

enum class DrawMode { Point, PatchRandom, PatchFixed };

std::string_view to_string(DrawMode mode);
/// Accepts "point", "patch-random", "patch-fix".
DrawMode parse_draw_mode(std::string_view text);

struct RenderConfig {
  int width = 256;
  int height = 256;
  std::size_t point_count = 200'000;
  DrawMode draw_mode = DrawMode::PatchFixed;
  std::uint8_t pixel_value = 127;
  std::uint8_t background_value = 0;
  /// Fraction of each side left empty around the normalized attractor.
  double margin = 0.02;
  std::size_t burn_in = 20;

  void validate() const;

  /// "WxH,t,mode", as written in registry headers.
  std::string summary() const;
};

struct PixelCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Row-major 8-bit single-channel image.
struct RasterImage {
  int width = 0;
  int height = 0;
  std::uint8_t background_value = 0;
  std::vector<std::uint8_t> pixels;

  RasterImage() = default;
  RasterImage(int w, int h, std::uint8_t background)
      : width(w), height(h), background_value(background),
        pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), background) {}

  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  std::size_t foreground_count() const;

  friend bool operator==(const RasterImage&, const RasterImage&) = default;
};

/// Min-max normalizes x and y independently onto
/// [margin*W, (1-margin)*W) x [margin*H, (1-margin)*H) and floors. A
/// degenerate axis (max == min) maps to the center line. Throws EmptyCloud.
std::vector<PixelCoord> normalize_points(std::span<const Point2> points, int width, int height,
                                         double margin);

/// 3x3 binary stamp; bit k covers offset (k % 3 - 1, k / 3 - 1).
struct PatchPattern {
  std::uint16_t mask = 0x1FF;

  static constexpr PatchPattern full() { return {0x1FF}; }
  static constexpr PatchPattern single() { return {1u << 4}; }
  int cell_count() const;

  friend bool operator==(const PatchPattern&, const PatchPattern&) = default;
};

/// Per-dot pattern for PatchRandom: each cell set with probability 1/2,
/// redrawn while empty.
PatchPattern random_patch_pattern(Rng& rng);

/// Pattern used by PatchFixed: each cell set with probability 1/2, redrawn
/// until at least two cells are set.
PatchPattern fixed_patch_pattern(std::uint64_t pattern_seed);

/// Stamps every normalized point. For PatchFixed, `patch_seed` selects the
/// pattern; for PatchRandom it seeds the per-dot pattern stream; ignored for
/// Point. Cells outside the image are clipped.
RasterImage rasterize(std::span<const Point2> points, const RenderConfig& cfg,
                      std::uint64_t patch_seed);

/// Same, but every dot uses `pattern` regardless of the configured mode.
RasterImage rasterize_with_pattern(std::span<const Point2> points, const RenderConfig& cfg,
                                   PatchPattern pattern);

/// Foreground pixels over total pixels.
double filling_rate(const RasterImage& img);

/// iterate + rasterize. Returns nullopt when the system diverges.
std::optional<RasterImage> try_render_system(const IfsSystem& system, const RenderConfig& cfg,
                                             std::uint64_t iteration_seed,
                                             std::uint64_t patch_seed);

/// Throws Diverged instead of returning nullopt.
RasterImage render_system(const IfsSystem& system, const RenderConfig& cfg,
                          std::uint64_t iteration_seed, std::uint64_t patch_seed);

IterationConfig iteration_config(const RenderConfig& cfg, std::uint64_t seed);

}  // namespace fdsl
