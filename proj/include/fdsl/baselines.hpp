#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fdsl/ifs.hpp"
#include "fdsl/render.hpp"

namespace fdsl {

// Bezier-curve and Perlin-noise comparison datasets.

struct BezierCategory {
  std::size_t category_id = 0;
  int control_point_count = 3;
  int stroke_count = 1;
  int thickness = 1;
  std::uint64_t seed = 0;

  friend bool operator==(const BezierCategory&, const BezierCategory&) = default;
};

struct PerlinCategory {
  std::size_t category_id = 0;
  int freq_x = 1;
  int freq_y = 1;
  int octaves = 1;
  double threshold = 0.5;
  std::uint64_t seed = 0;

  friend bool operator==(const PerlinCategory&, const PerlinCategory&) = default;
};

/// Grid over control points {3..6} x strokes {1..6} x thickness {1..6}
/// (144 entries), then seeded random structures for ids beyond the grid.
std::vector<BezierCategory> generate_bezier_categories(std::size_t count, std::uint64_t seed);

/// Bezier point at parameter t by repeated linear interpolation.
Point2 de_casteljau(std::span<const Point2> control, double t);

using BezierStroke = std::vector<Point2>;

/// Control points live in the unit square, mapped onto [0, W-1] x [0, H-1].
/// Each stroke is sampled max(256, 2(W+H)) times and stamped with a
/// thickness x thickness square brush.
RasterImage rasterize_bezier_strokes(std::span<const BezierStroke> strokes, int thickness,
                                     const RenderConfig& cfg);

/// Category seed fixes the base control points; instance_seed jitters them.
std::vector<BezierStroke> bezier_strokes(const BezierCategory& category,
                                         std::uint64_t instance_seed);

RasterImage render_bezier(const BezierCategory& category, std::uint64_t instance_seed,
                          const RenderConfig& cfg);

/// Counts up to 100: frequencies {1..10}^2 at 2 octaves, threshold 0.5.
/// Larger counts: a k^4 grid with k = ceil(count^(1/4)) over freq_x, freq_y,
/// octaves and threshold. Truncated to `count` in grid order.
std::vector<PerlinCategory> generate_perlin_categories(std::size_t count, std::uint64_t seed);

/// Single-octave gradient noise at lattice coordinates (x, y), smoothstep
/// interpolated, using 8 gradient directions hashed from `seed`.
double gradient_noise(double x, double y, std::uint64_t seed);

/// Octave sum rescaled to [0, 1], sampled at pixel centres. Row-major.
std::vector<double> perlin_field(const PerlinCategory& category, std::uint64_t instance_seed,
                                 int width, int height);

/// Upper bound on |field(x+1, y) - field(x, y)| (and the y counterpart) for
/// perlin_field, from the interpolation kernel's Lipschitz constant.
double perlin_step_bound(const PerlinCategory& category, int width, int height);

/// Pixels whose field value is >= threshold become foreground.
RasterImage render_perlin(const PerlinCategory& category, std::uint64_t instance_seed,
                          const RenderConfig& cfg);

}  // namespace fdsl
