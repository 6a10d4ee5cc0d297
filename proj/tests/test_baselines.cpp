#include <doctest.h>

#include <cmath>
#include <set>
#include <tuple>

#include "fdsl/baselines.hpp"
#include "fdsl/errors.hpp"
#include "fdsl/rng.hpp"

using namespace fdsl;

namespace {

RenderConfig square(int size) {
  RenderConfig cfg;
  cfg.width = size;
  cfg.height = size;
  return cfg;
}

}  // namespace

TEST_CASE("bezier categories: 144 grid") {
  const auto cats = generate_bezier_categories(144, 0);
  REQUIRE(cats.size() == 144);
  std::set<std::tuple<int, int, int>> structures;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    CHECK(cats[i].category_id == i);
    CHECK(cats[i].control_point_count >= 3);
    CHECK(cats[i].control_point_count <= 6);
    structures.insert({cats[i].control_point_count, cats[i].stroke_count, cats[i].thickness});
  }
  CHECK(structures.size() == 144);
}

TEST_CASE("bezier categories: 1024 and 1") {
  const auto cats = generate_bezier_categories(1024, 9);
  REQUIRE(cats.size() == 1024);
  std::set<std::tuple<int, int, int, std::uint64_t>> unique;
  for (const auto& c : cats) {
    CHECK(c.control_point_count >= 3);
    CHECK(c.control_point_count <= 6);
    CHECK(c.stroke_count >= 1);
    CHECK(c.thickness >= 1);
    unique.insert({c.control_point_count, c.stroke_count, c.thickness, c.seed});
  }
  CHECK(unique.size() == 1024);
  CHECK(std::equal(cats.begin(), cats.begin() + 144, generate_bezier_categories(144, 9).begin()));

  const auto one = generate_bezier_categories(1, 3);
  REQUIRE(one.size() == 1);
  CHECK(one == generate_bezier_categories(1, 3));
  CHECK_THROWS_AS(generate_bezier_categories(0, 3), InvalidCount);
}

TEST_CASE("de Casteljau") {
  const std::vector<Point2> line{{0, 0}, {2, 4}};
  CHECK(de_casteljau(line, 0.25) == Point2{0.5, 1.0});
  const std::vector<Point2> quad{{0, 0}, {1, 2}, {2, 0}};
  const Point2 mid = de_casteljau(quad, 0.5);
  CHECK(mid.x == doctest::Approx(1.0));
  CHECK(mid.y == doctest::Approx(1.0));
  const std::vector<Point2> cubic{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  CHECK(de_casteljau(cubic, 0.0) == cubic.front());
  CHECK(de_casteljau(cubic, 1.0) == cubic.back());
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const double t = rng.uniform01();
    const double s = 1 - t;
    const Point2 p = de_casteljau(cubic, t);
    // Bernstein form.
    CHECK(p.x == doctest::Approx(3 * s * t * t + t * t * t));
    CHECK(p.y == doctest::Approx(3 * s * s * t + 3 * s * t * t));
  }
  CHECK_THROWS_AS(de_casteljau({}, 0.5), InvalidConfig);
}

TEST_CASE("bezier raster: straight strokes") {
  const std::vector<BezierStroke> diagonal{{{0, 0}, {1, 1}}};
  const auto img = rasterize_bezier_strokes(diagonal, 1, square(64));
  CHECK(img.foreground_count() == 64);
  for (int i = 0; i < 64; ++i) CHECK(img.at(i, i) == 127);
  CHECK(filling_rate(img) == doctest::Approx(64.0 / (64 * 64)));

  const std::vector<BezierStroke> horizontal{{{0, 0.5}, {1, 0.5}}};
  CHECK(rasterize_bezier_strokes(horizontal, 3, square(64)).foreground_count() == 3 * 64);

  const auto thick = rasterize_bezier_strokes(diagonal, 3, square(64));
  CHECK(thick.foreground_count() >= 3 * 64 - 4);
  CHECK(thick.foreground_count() <= 5 * 64);
}

TEST_CASE("bezier raster: constant curve is a dot") {
  const std::vector<BezierStroke> dot{{{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}};
  CHECK(rasterize_bezier_strokes(dot, 1, square(64)).foreground_count() == 1);
  CHECK(rasterize_bezier_strokes(dot, 3, square(64)).foreground_count() == 9);
  CHECK(rasterize_bezier_strokes(dot, 4, square(64)).foreground_count() == 16);
  CHECK_THROWS_AS(rasterize_bezier_strokes(dot, 0, square(64)), InvalidConfig);
}

TEST_CASE("bezier instances share structure and differ in content") {
  for (const auto& cat : generate_bezier_categories(200, 5)) {
    const auto a = bezier_strokes(cat, 1);
    const auto b = bezier_strokes(cat, 2);
    REQUIRE(a.size() == static_cast<std::size_t>(cat.stroke_count));
    REQUIRE(b.size() == a.size());
    for (std::size_t s = 0; s < a.size(); ++s) {
      CHECK(a[s].size() == static_cast<std::size_t>(cat.control_point_count));
      for (std::size_t k = 0; k < a[s].size(); ++k) {
        CHECK(std::abs(a[s][k].x - b[s][k].x) <= 0.16 + 1e-12);
        CHECK(std::abs(a[s][k].y - b[s][k].y) <= 0.16 + 1e-12);
      }
    }
    const RenderConfig cfg = square(96);
    CHECK(render_bezier(cat, 1, cfg) != render_bezier(cat, 2, cfg));
    CHECK(render_bezier(cat, 1, cfg) == render_bezier(cat, 1, cfg));
  }
}

TEST_CASE("perlin categories: 100 and 1") {
  const auto cats = generate_perlin_categories(100, 0);
  REQUIRE(cats.size() == 100);
  std::set<std::pair<int, int>> freqs;
  for (const auto& c : cats) {
    CHECK(c.freq_x >= 1);
    CHECK(c.freq_x <= 10);
    CHECK(c.freq_y >= 1);
    CHECK(c.freq_y <= 10);
    freqs.insert({c.freq_x, c.freq_y});
  }
  CHECK(freqs.size() == 100);
  CHECK(generate_perlin_categories(1, 0).size() == 1);
  CHECK_THROWS_AS(generate_perlin_categories(0, 0), InvalidCount);
}

TEST_CASE("perlin categories: 1296 = 6^4") {
  const auto cats = generate_perlin_categories(1296, 0);
  REQUIRE(cats.size() == 1296);
  std::set<std::tuple<int, int, int, double>> tuples;
  std::set<int> fx, fy, oct;
  std::set<double> thr;
  for (const auto& c : cats) {
    tuples.insert({c.freq_x, c.freq_y, c.octaves, c.threshold});
    fx.insert(c.freq_x);
    fy.insert(c.freq_y);
    oct.insert(c.octaves);
    thr.insert(c.threshold);
    CHECK(c.threshold > 0.0);
    CHECK(c.threshold < 1.0);
  }
  CHECK(tuples.size() == 1296);
  CHECK(fx.size() == 6);
  CHECK(fy.size() == 6);
  CHECK(oct.size() == 6);
  CHECK(thr.size() == 6);
  CHECK(generate_perlin_categories(200, 1).size() == 200);
}

TEST_CASE("gradient noise") {
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) CHECK(gradient_noise(i, j, 11) == 0.0);
  Rng rng(2);
  double max_abs = 0.0;
  for (int i = 0; i < 200000; ++i)
    max_abs = std::max(max_abs, std::abs(gradient_noise(rng.uniform(-50, 50), rng.uniform(-50, 50),
                                                         rng.below(4))));
  CHECK(max_abs <= 0.70710678118654752 + 1e-12);
  CHECK(max_abs > 0.3);
  CHECK(gradient_noise(0.3, 0.7, 5) == gradient_noise(0.3, 0.7, 5));
}

TEST_CASE("perlin threshold limits") {
  const RenderConfig cfg = square(64);
  PerlinCategory c{0, 4, 3, 3, 1e-9, 77};
  CHECK(filling_rate(render_perlin(c, 1, cfg)) >= 0.999);
  c.threshold = 1.0 - 1e-9;
  CHECK(filling_rate(render_perlin(c, 1, cfg)) <= 0.001);
  c.threshold = 0.5;
  const double mid = filling_rate(render_perlin(c, 1, cfg));
  CHECK(mid > 0.05);
  CHECK(mid < 0.95);
  c.threshold = 0.0;
  CHECK_THROWS_AS(render_perlin(c, 1, cfg), InvalidConfig);
  c.threshold = 0.5;
  c.freq_x = 17;
  CHECK_THROWS_AS(render_perlin(c, 1, cfg), InvalidConfig);
}

TEST_CASE("perlin rendering: determinism and instance variation") {
  const RenderConfig cfg = square(64);
  for (const auto& c : generate_perlin_categories(100, 3)) {
    CHECK(render_perlin(c, 5, cfg) == render_perlin(c, 5, cfg));
    CHECK(perlin_field(c, 5, 64, 64) != perlin_field(c, 6, 64, 64));
  }
}

TEST_CASE("perlin field is Lipschitz between adjacent pixels") {
  std::size_t checked = 0;
  double worst_ratio = 0.0;
  for (const auto& c : generate_perlin_categories(1296, 8)) {
    if (c.freq_x > 16 || c.freq_y > 16) continue;
    const auto field = perlin_field(c, 3, 64, 64);
    const double bound = perlin_step_bound(c, 64, 64);
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x) {
        const double v = field[y * 64 + x];
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        if (x + 1 < 64) {
          const double d = std::abs(field[y * 64 + x + 1] - v);
          worst_ratio = std::max(worst_ratio, d / bound);
          if (d > bound) FAIL_CHECK("step " << d << " exceeds " << bound);
        }
        if (y + 1 < 64) {
          const double d = std::abs(field[(y + 1) * 64 + x] - v);
          worst_ratio = std::max(worst_ratio, d / bound);
          if (d > bound) FAIL_CHECK("step " << d << " exceeds " << bound);
        }
      }
    ++checked;
  }
  CHECK(checked == 1296);
  CHECK(worst_ratio > 0.05);
}
