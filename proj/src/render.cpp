#include "fdsl/render.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "fdsl/errors.hpp"

namespace fdsl {

std::string_view to_string(DrawMode mode) {
  switch (mode) {
    case DrawMode::Point: return "point";
    case DrawMode::PatchRandom: return "patch-random";
    case DrawMode::PatchFixed: return "patch-fix";
  }
  return "?";
}

DrawMode parse_draw_mode(std::string_view text) {
  if (text == "point") return DrawMode::Point;
  if (text == "patch-random") return DrawMode::PatchRandom;
  if (text == "patch-fix") return DrawMode::PatchFixed;
  throw InvalidConfig("unknown draw mode '" + std::string(text) +
                      "' (expected point, patch-random or patch-fix)");
}

void RenderConfig::validate() const {
  if (width < 8 || height < 8) throw InvalidConfig("image width and height must be >= 8");
  if (point_count < 1) throw InvalidConfig("point_count must be >= 1");
  if (pixel_value == background_value)
    throw InvalidConfig("pixel_value must differ from background_value");
  if (!(margin >= 0.0 && margin < 0.5)) throw InvalidConfig("margin must lie in [0, 0.5)");
}

std::string RenderConfig::summary() const {
  return std::to_string(width) + "x" + std::to_string(height) + "," +
         std::to_string(point_count) + "," + std::string(to_string(draw_mode));
}

std::size_t RasterImage::foreground_count() const {
  return static_cast<std::size_t>(
      std::count_if(pixels.begin(), pixels.end(),
                    [bg = background_value](std::uint8_t v) { return v != bg; }));
}

namespace {

struct AxisMap {
  double min = 0.0;
  double scale = 0.0;
  double offset = 0.0;
  int lo = 0;
  int hi = 0;
  int center = 0;
  bool degenerate = false;

  AxisMap(double mn, double mx, int size, double margin) {
    min = mn;
    center = size / 2;
    degenerate = !(mx > mn);
    offset = margin * size;
    lo = static_cast<int>(std::floor(offset));
    hi = std::min(size - 1, static_cast<int>(std::ceil((1.0 - margin) * size)) - 1);
    if (!degenerate) scale = (1.0 - 2.0 * margin) * size / (mx - mn);
  }

  int operator()(double v) const {
    if (degenerate) return center;
    const int p = static_cast<int>(std::floor(offset + (v - min) * scale));
    return std::clamp(p, lo, hi);
  }
};

}  // namespace

std::vector<PixelCoord> normalize_points(std::span<const Point2> points, int width, int height,
                                         double margin) {
  if (points.empty()) throw EmptyCloud("cannot normalize an empty point cloud");
  double min_x = points[0].x, max_x = points[0].x;
  double min_y = points[0].y, max_y = points[0].y;
  for (const Point2& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw InvalidConfig("point cloud contains a non-finite coordinate");
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const AxisMap mx(min_x, max_x, width, margin);
  const AxisMap my(min_y, max_y, height, margin);
  std::vector<PixelCoord> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    out[i] = {mx(points[i].x), my(points[i].y)};
  return out;
}

int PatchPattern::cell_count() const { return std::popcount(static_cast<unsigned>(mask & 0x1FF)); }

PatchPattern random_patch_pattern(Rng& rng) {
  std::uint16_t mask = 0;
  while (mask == 0) mask = static_cast<std::uint16_t>(rng.next_u64() & 0x1FF);
  return {mask};
}

PatchPattern fixed_patch_pattern(std::uint64_t pattern_seed) {
  Rng rng(pattern_seed);
  PatchPattern p{0};
  while (p.cell_count() < 2) p.mask = static_cast<std::uint16_t>(rng.next_u64() & 0x1FF);
  return p;
}

namespace {

inline void stamp(RasterImage& img, PixelCoord c, PatchPattern pattern, std::uint8_t value) {
  for (int k = 0; k < 9; ++k) {
    if (!(pattern.mask & (1u << k))) continue;
    const int x = c.x + k % 3 - 1;
    const int y = c.y + k / 3 - 1;
    if (x < 0 || y < 0 || x >= img.width || y >= img.height) continue;
    img.at(x, y) = value;
  }
}

}  // namespace

RasterImage rasterize(std::span<const Point2> points, const RenderConfig& cfg,
                      std::uint64_t patch_seed) {
  cfg.validate();
  const auto coords = normalize_points(points, cfg.width, cfg.height, cfg.margin);
  RasterImage img(cfg.width, cfg.height, cfg.background_value);
  switch (cfg.draw_mode) {
    case DrawMode::Point:
      for (const PixelCoord& c : coords) img.at(c.x, c.y) = cfg.pixel_value;
      break;
    case DrawMode::PatchFixed: {
      const PatchPattern pattern = fixed_patch_pattern(patch_seed);
      for (const PixelCoord& c : coords) stamp(img, c, pattern, cfg.pixel_value);
      break;
    }
    case DrawMode::PatchRandom: {
      Rng rng(patch_seed);
      for (const PixelCoord& c : coords) stamp(img, c, random_patch_pattern(rng), cfg.pixel_value);
      break;
    }
  }
  return img;
}

RasterImage rasterize_with_pattern(std::span<const Point2> points, const RenderConfig& cfg,
                                   PatchPattern pattern) {
  cfg.validate();
  const auto coords = normalize_points(points, cfg.width, cfg.height, cfg.margin);
  RasterImage img(cfg.width, cfg.height, cfg.background_value);
  for (const PixelCoord& c : coords) stamp(img, c, pattern, cfg.pixel_value);
  return img;
}

double filling_rate(const RasterImage& img) {
  if (img.pixels.empty()) return 0.0;
  return static_cast<double>(img.foreground_count()) / static_cast<double>(img.pixels.size());
}

IterationConfig iteration_config(const RenderConfig& cfg, std::uint64_t seed) {
  IterationConfig it;
  it.point_count = cfg.point_count;
  it.burn_in = cfg.burn_in;
  it.seed = seed;
  return it;
}

std::optional<RasterImage> try_render_system(const IfsSystem& system, const RenderConfig& cfg,
                                             std::uint64_t iteration_seed,
                                             std::uint64_t patch_seed) {
  std::vector<Point2> points;
  if (iterate_into(system, iteration_config(cfg, iteration_seed), points) ==
      IterateStatus::Diverged)
    return std::nullopt;
  return rasterize(points, cfg, patch_seed);
}

RasterImage render_system(const IfsSystem& system, const RenderConfig& cfg,
                          std::uint64_t iteration_seed, std::uint64_t patch_seed) {
  auto img = try_render_system(system, cfg, iteration_seed, patch_seed);
  if (!img) throw Diverged("system diverged while rendering");
  return std::move(*img);
}

}  // namespace fdsl
