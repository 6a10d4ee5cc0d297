#include "fdsl/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdsl/errors.hpp"
#include "fdsl/rng.hpp"

namespace fdsl {

namespace {

constexpr int kBezierControlMin = 3, kBezierControlMax = 6;
constexpr int kBezierStrokeGrid = 6, kBezierThicknessGrid = 6;
constexpr double kBezierJitter = 0.08;

// Largest |n| reachable by gradient_noise with unit gradients.
constexpr double kNoiseBound = 0.70710678118654752;
constexpr double kInvSqrt2 = 0.70710678118654752;
constexpr Point2 kGradients[8] = {{1, 0},          {-1, 0},         {0, 1},
                                  {0, -1},         {kInvSqrt2, kInvSqrt2},
                                  {-kInvSqrt2, kInvSqrt2},        {kInvSqrt2, -kInvSqrt2},
                                  {-kInvSqrt2, -kInvSqrt2}};

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

}  // namespace

std::vector<BezierCategory> generate_bezier_categories(std::size_t count, std::uint64_t seed) {
  if (count < 1) throw InvalidCount("bezier category count must be >= 1");
  std::vector<BezierCategory> out;
  out.reserve(count);
  for (int cp = kBezierControlMin; cp <= kBezierControlMax; ++cp)
    for (int strokes = 1; strokes <= kBezierStrokeGrid; ++strokes)
      for (int thick = 1; thick <= kBezierThicknessGrid; ++thick) {
        if (out.size() == count) return out;
        const std::size_t id = out.size();
        out.push_back({id, cp, strokes, thick, mix(seed, id)});
      }
  while (out.size() < count) {
    const std::size_t id = out.size();
    const std::uint64_t s = mix(seed, id);
    Rng rng(mix(s, 0x6772696464ULL));
    BezierCategory c{id, 0, 0, 0, s};
    c.control_point_count = kBezierControlMin + static_cast<int>(rng.below(4));
    c.stroke_count = 1 + static_cast<int>(rng.below(8));
    c.thickness = 1 + static_cast<int>(rng.below(4));
    out.push_back(c);
  }
  return out;
}

Point2 de_casteljau(std::span<const Point2> control, double t) {
  if (control.empty()) throw InvalidConfig("Bezier curve needs at least one control point");
  std::vector<Point2> work(control.begin(), control.end());
  for (std::size_t level = work.size() - 1; level > 0; --level)
    for (std::size_t i = 0; i < level; ++i)
      work[i] = {work[i].x + t * (work[i + 1].x - work[i].x),
                 work[i].y + t * (work[i + 1].y - work[i].y)};
  return work[0];
}

RasterImage rasterize_bezier_strokes(std::span<const BezierStroke> strokes, int thickness,
                                     const RenderConfig& cfg) {
  cfg.validate();
  if (thickness < 1) throw InvalidConfig("stroke thickness must be >= 1");
  RasterImage img(cfg.width, cfg.height, cfg.background_value);
  const int samples = std::max(256, 2 * (cfg.width + cfg.height));
  const int lo = -(thickness - 1) / 2;
  const int hi = lo + thickness - 1;
  for (const BezierStroke& stroke : strokes) {
    for (int s = 0; s <= samples; ++s) {
      const Point2 p = de_casteljau(stroke, static_cast<double>(s) / samples);
      const int cx = static_cast<int>(std::lround(std::clamp(p.x, 0.0, 1.0) * (cfg.width - 1)));
      const int cy = static_cast<int>(std::lround(std::clamp(p.y, 0.0, 1.0) * (cfg.height - 1)));
      for (int dy = lo; dy <= hi; ++dy)
        for (int dx = lo; dx <= hi; ++dx) {
          const int x = cx + dx, y = cy + dy;
          if (x >= 0 && y >= 0 && x < cfg.width && y < cfg.height) img.at(x, y) = cfg.pixel_value;
        }
    }
  }
  return img;
}

std::vector<BezierStroke> bezier_strokes(const BezierCategory& category,
                                         std::uint64_t instance_seed) {
  if (category.control_point_count < 1 || category.stroke_count < 1)
    throw InvalidConfig("Bezier category needs control points and strokes");
  Rng base(category.seed);
  Rng jitter(mix(category.seed, instance_seed));
  std::vector<BezierStroke> strokes(static_cast<std::size_t>(category.stroke_count));
  for (BezierStroke& stroke : strokes) {
    stroke.resize(static_cast<std::size_t>(category.control_point_count));
    for (Point2& p : stroke) {
      p.x = base.uniform(0.05, 0.95);
      p.y = base.uniform(0.05, 0.95);
      p.x = std::clamp(p.x + jitter.uniform(-kBezierJitter, kBezierJitter), 0.0, 1.0);
      p.y = std::clamp(p.y + jitter.uniform(-kBezierJitter, kBezierJitter), 0.0, 1.0);
    }
  }
  return strokes;
}

RasterImage render_bezier(const BezierCategory& category, std::uint64_t instance_seed,
                          const RenderConfig& cfg) {
  const auto strokes = bezier_strokes(category, instance_seed);
  return rasterize_bezier_strokes(strokes, category.thickness, cfg);
}

std::vector<PerlinCategory> generate_perlin_categories(std::size_t count, std::uint64_t seed) {
  if (count < 1) throw InvalidCount("perlin category count must be >= 1");
  std::vector<PerlinCategory> out;
  out.reserve(count);
  if (count <= 100) {
    for (int fx = 1; fx <= 10 && out.size() < count; ++fx)
      for (int fy = 1; fy <= 10 && out.size() < count; ++fy) {
        const std::size_t id = out.size();
        out.push_back({id, fx, fy, 2, 0.5, mix(seed, id)});
      }
    return out;
  }
  int k = 1;
  while (static_cast<std::size_t>(k) * k * k * k < count) ++k;
  for (int fx = 1; fx <= k; ++fx)
    for (int fy = 1; fy <= k; ++fy)
      for (int oct = 1; oct <= k; ++oct)
        for (int t = 0; t < k; ++t) {
          if (out.size() == count) return out;
          const std::size_t id = out.size();
          const double threshold = 0.3 + 0.4 * (t + 0.5) / k;
          out.push_back({id, fx, fy, oct, threshold, mix(seed, id)});
        }
  return out;
}

double gradient_noise(double x, double y, std::uint64_t seed) {
  const double fx0 = std::floor(x), fy0 = std::floor(y);
  const auto ix = static_cast<std::int64_t>(fx0), iy = static_cast<std::int64_t>(fy0);
  const double u = x - fx0, v = y - fy0;
  auto corner = [&](std::int64_t cx, std::int64_t cy, double dx, double dy) {
    const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
                              static_cast<std::uint32_t>(cy);
    const Point2 g = kGradients[mix(seed, key) & 7];
    return g.x * dx + g.y * dy;
  };
  const double n00 = corner(ix, iy, u, v);
  const double n10 = corner(ix + 1, iy, u - 1.0, v);
  const double n01 = corner(ix, iy + 1, u, v - 1.0);
  const double n11 = corner(ix + 1, iy + 1, u - 1.0, v - 1.0);
  const double su = smoothstep(u), sv = smoothstep(v);
  const double nx0 = n00 + su * (n10 - n00);
  const double nx1 = n01 + su * (n11 - n01);
  return nx0 + sv * (nx1 - nx0);
}

namespace {

void check_perlin(const PerlinCategory& c, int width, int height) {
  if (c.freq_x < 1 || c.freq_y < 1 || c.octaves < 1)
    throw InvalidConfig("Perlin frequencies and octaves must be >= 1");
  if (c.freq_x > width / 4 || c.freq_y > height / 4)
    throw InvalidConfig("Perlin frequency exceeds image size / 4");
  if (!(c.threshold > 0.0 && c.threshold < 1.0))
    throw InvalidConfig("Perlin threshold must lie in (0, 1)");
}

}  // namespace

std::vector<double> perlin_field(const PerlinCategory& category, std::uint64_t instance_seed,
                                 int width, int height) {
  check_perlin(category, width, height);
  const std::uint64_t field_seed = mix(category.seed, instance_seed);
  std::vector<double> field(static_cast<std::size_t>(width) * height, 0.0);
  double amplitude = 1.0, scale = 1.0, amp_sum = 0.0;
  for (int o = 0; o < category.octaves; ++o) {
    const std::uint64_t octave_seed = mix(field_seed, static_cast<std::uint64_t>(o));
    const double sx = category.freq_x * scale / width;
    const double sy = category.freq_y * scale / height;
    for (int py = 0; py < height; ++py)
      for (int px = 0; px < width; ++px)
        field[static_cast<std::size_t>(py) * width + px] +=
            amplitude * gradient_noise((px + 0.5) * sx, (py + 0.5) * sy, octave_seed);
    amp_sum += amplitude;
    amplitude *= 0.5;
    scale *= 2.0;
  }
  for (double& v : field) v = std::clamp(0.5 + v / amp_sum / (2.0 * kNoiseBound), 0.0, 1.0);
  return field;
}

double perlin_step_bound(const PerlinCategory& category, int width, int height) {
  // Per unit lattice step: |sum w_i' d_i| <= 2 * max smoothstep' * sqrt(2)
  // plus |sum w_i g_i| <= 1.
  const double kernel = 2.0 * 1.5 * std::sqrt(2.0) + 1.0;
  double amp_sum = 0.0, weighted = 0.0, amplitude = 1.0, scale = 1.0;
  for (int o = 0; o < category.octaves; ++o) {
    amp_sum += amplitude;
    weighted += amplitude * scale;
    amplitude *= 0.5;
    scale *= 2.0;
  }
  const double freq = std::max(static_cast<double>(category.freq_x) / width,
                               static_cast<double>(category.freq_y) / height);
  return kernel * freq * weighted / amp_sum / (2.0 * kNoiseBound);
}

RasterImage render_perlin(const PerlinCategory& category, std::uint64_t instance_seed,
                          const RenderConfig& cfg) {
  cfg.validate();
  const auto field = perlin_field(category, instance_seed, cfg.width, cfg.height);
  RasterImage img(cfg.width, cfg.height, cfg.background_value);
  for (std::size_t i = 0; i < field.size(); ++i)
    if (field[i] >= category.threshold) img.pixels[i] = cfg.pixel_value;
  return img;
}

}  // namespace fdsl
