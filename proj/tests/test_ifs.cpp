#include <doctest.h>

#include <cmath>
#include <vector>

#include "fdsl/errors.hpp"
#include "fdsl/ifs.hpp"
#include "fdsl/render.hpp"
#include "fdsl/rng.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace fdsl;

namespace {

AffineMap scaled(double s, double e = 0.0, double f = 0.0) { return {s, 0, 0, s, e, f}; }

}  // namespace

TEST_CASE("probabilities: equal determinants are uniform") {
  const auto p = compute_probabilities(std::vector{scaled(0.5), scaled(0.5), scaled(0.5)});
  REQUIRE(p.size() == 3);
  for (double v : p) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("probabilities: single map") {
  CHECK(compute_probabilities(std::vector{AffineMap{0.3, 0.1, -0.2, 0.7, 1, 2}}) ==
        std::vector<double>{1.0});
}

TEST_CASE("probabilities: proportional to |det|") {
  const AffineMap m1{0.5, 0, 0, 0.5, 0, 0};   // det 0.25
  const AffineMap m2{-0.75, 0, 0, 1.0, 0, 0}; // det -0.75
  const auto p = compute_probabilities(std::vector{m1, m2});
  CHECK(p[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("probabilities: all-singular system is degenerate") {
  const AffineMap zero{};
  const AffineMap rank1{1, 2, 2, 4, 0, 0};
  CHECK_THROWS_AS(compute_probabilities(std::vector{zero, zero}), DegenerateSystem);
  CHECK_THROWS_AS(compute_probabilities(std::vector{rank1, zero}), DegenerateSystem);
  CHECK_THROWS_AS(compute_probabilities(std::vector<AffineMap>{}), DegenerateSystem);
}

TEST_CASE("probabilities: normalization over random maps") {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<AffineMap> maps(1 + rng.below(8));
    for (auto& m : maps)
      for (std::size_t k = 0; k < AffineMap::kParamCount; ++k) m.param(k) = rng.uniform(-1, 1);
    const auto p = compute_probabilities(maps);
    double sum = 0.0;
    for (double v : p) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("operator norm and spectral radius") {
  CHECK(operator_norm(scaled(0.5)) == doctest::Approx(0.5));
  CHECK(operator_norm(AffineMap{0, -2, 1, 0, 0, 0}) == doctest::Approx(2.0));
  CHECK(spectral_radius(AffineMap{0, -1, 1, 0, 0, 0}) == doctest::Approx(1.0));  // rotation
  CHECK(spectral_radius(AffineMap{0.5, 1, 0, 0.25, 0, 0}) == doctest::Approx(0.5));
}

TEST_CASE("iterate: single contraction converges to the origin") {
  const IfsSystem sys = make_system({scaled(0.5)});
  IterationConfig cfg;
  cfg.point_count = 1000;
  cfg.burn_in = 64;
  cfg.initial_point = {1.0, 1.0};
  const auto cloud = iterate(sys, cfg);
  REQUIRE(cloud.points.size() == 1000);
  for (const Point2& p : cloud.points) {
    CHECK(std::abs(p.x) <= 1e-9);
    CHECK(std::abs(p.y) <= 1e-9);
  }
}

TEST_CASE("iterate: expansion diverges") {
  const IfsSystem sys = make_system({scaled(1.5)});
  IterationConfig cfg;
  cfg.initial_point = {1.0, 1.0};
  CHECK_THROWS_AS(iterate(sys, cfg), Diverged);
  std::vector<Point2> out;
  CHECK(iterate_into(sys, cfg, out) == IterateStatus::Diverged);
}

TEST_CASE("iterate: invalid inputs") {
  IterationConfig cfg;
  cfg.point_count = 0;
  CHECK_THROWS_AS(iterate(testing::sierpinski(), cfg), InvalidConfig);
  cfg.point_count = 10;
  cfg.divergence_bound = 0.0;
  CHECK_THROWS_AS(iterate(testing::sierpinski(), cfg), InvalidConfig);
  IfsSystem bad = testing::sierpinski();
  bad.probs[0] = 0.5;
  CHECK_THROWS_AS(iterate(bad, IterationConfig{}), InvalidConfig);
}

TEST_CASE("iterate: burn-in discards a prefix of the same orbit") {
  const IfsSystem sys = testing::sierpinski();
  IterationConfig full;
  full.burn_in = 0;
  full.point_count = 500;
  full.seed = 99;
  IterationConfig burned = full;
  burned.burn_in = 20;
  burned.point_count = 480;
  const auto a = iterate(sys, full).points;
  const auto b = iterate(sys, burned).points;
  CHECK(std::equal(b.begin(), b.end(), a.begin() + 20));
}

TEST_CASE("iterate: determinism and seed sensitivity") {
  const IfsSystem sys = testing::sierpinski();
  IterationConfig cfg;
  cfg.point_count = 5000;
  cfg.seed = 1234;
  const auto a = iterate(sys, cfg).points;
  const auto b = iterate(sys, cfg).points;
  CHECK(a == b);
  cfg.seed = 1235;
  CHECK(iterate(sys, cfg).points != a);
}

TEST_CASE("iterate: empirical map frequencies follow probabilities") {
  // Maps with distinct translations reveal which one was applied.
  const IfsSystem sys = make_system({AffineMap{0.2, 0, 0, 0.5, 0, 0}, AffineMap{0.4, 0, 0, 0.5, 1, 0},
                                     AffineMap{0.8, 0, 0, 0.5, 2, 0}});
  IterationConfig cfg;
  cfg.point_count = 70000;
  cfg.seed = 5;
  const auto pts = iterate(sys, cfg).points;
  std::vector<double> counts(3, 0.0);
  double prev = 0.0;
  {
    IterationConfig pre = cfg;
    pre.point_count = cfg.burn_in;
    pre.burn_in = 0;
    prev = iterate(sys, pre).points.back().x;
  }
  for (const Point2& p : pts) {
    for (int i = 0; i < 3; ++i)
      if (std::abs(p.x - (sys.maps[i].a * prev + sys.maps[i].e)) < 1e-12) {
        counts[i] += 1;
        break;
      }
    prev = p.x;
  }
  for (int i = 0; i < 3; ++i)
    CHECK(counts[i] / pts.size() == doctest::Approx(sys.probs[i]).epsilon(0.02));
}

TEST_CASE("property: contractive systems never diverge under the analytic bound") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<AffineMap> maps(1 + rng.below(8));
    double max_norm = 0.0, max_shift = 0.0;
    for (auto& m : maps) {
      for (std::size_t k = 0; k < AffineMap::kParamCount; ++k) m.param(k) = rng.uniform(-1, 1);
      const double target = rng.uniform(0.05, 0.98);
      const double s = target / operator_norm(m);
      m.a *= s;
      m.b *= s;
      m.c *= s;
      m.d *= s;
      max_norm = std::max(max_norm, operator_norm(m));
      max_shift = std::max(max_shift, std::hypot(m.e, m.f));
    }
    IfsSystem sys;
    try {
      sys = make_system(std::move(maps));
    } catch (const DegenerateSystem&) {
      continue;
    }
    IterationConfig cfg;
    cfg.point_count = 3000;
    cfg.seed = trial;
    cfg.initial_point = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    cfg.divergence_bound = max_shift / (1.0 - max_norm) +
                           std::hypot(cfg.initial_point.x, cfg.initial_point.y) + 1e-9;
    std::vector<Point2> out;
    CHECK(iterate_into(sys, cfg, out) == IterateStatus::Ok);
  }
}

TEST_CASE("property: single map approaches its affine fixed point monotonically") {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    AffineMap m;
    for (std::size_t k = 0; k < AffineMap::kParamCount; ++k) m.param(k) = rng.uniform(-1, 1);
    const double s = rng.uniform(0.1, 0.9) / operator_norm(m);
    m.a *= s;
    m.b *= s;
    m.c *= s;
    m.d *= s;
    REQUIRE(spectral_radius(m) < 1.0);
    // (I - A) z = (e, f)
    const double det = (1 - m.a) * (1 - m.d) - m.b * m.c;
    const Point2 z{((1 - m.d) * m.e + m.b * m.f) / det, (m.c * m.e + (1 - m.a) * m.f) / det};
    IterationConfig cfg;
    cfg.burn_in = 0;
    cfg.point_count = 40;
    cfg.initial_point = {rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const auto pts = iterate(make_system({m}), cfg).points;
    const double norm = operator_norm(m);
    double prev = std::hypot(cfg.initial_point.x - z.x, cfg.initial_point.y - z.y);
    for (const Point2& p : pts) {
      const double dist = std::hypot(p.x - z.x, p.y - z.y);
      CHECK(dist <= norm * prev + 1e-12);
      prev = dist;
    }
  }
}

TEST_CASE("Sierpinski: orbit matches a long-double replay and stays in the hull") {
  IterationConfig cfg;
  cfg.burn_in = 0;
  cfg.point_count = 100'020;
  cfg.seed = 7;
  const auto orbit = iterate(testing::sierpinski(), cfg).points;
  const auto replay = oracle::replay_sierpinski(orbit);
  std::size_t outside = 0, mismatched = 0;
  for (std::size_t t = 20; t < orbit.size(); ++t) {
    if (!oracle::in_unit_triangle(replay[t][0], replay[t][1], 1e-6L) ||
        !oracle::in_unit_triangle(orbit[t].x, orbit[t].y, 1e-6L))
      ++outside;
    if (std::abs(replay[t][0] - orbit[t].x) > 1e-12L || std::abs(replay[t][1] - orbit[t].y) > 1e-12L)
      ++mismatched;
  }
  CHECK(outside == 0);
  CHECK(mismatched == 0);
}
