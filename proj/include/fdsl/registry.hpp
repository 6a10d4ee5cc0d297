#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdsl/baselines.hpp"
#include "fdsl/render.hpp"
#include "fdsl/search.hpp"

namespace fdsl {

/// Shortest-safe text for a double: 17 significant digits, round-trips.
std::string format_real(double value);
double parse_real(std::string_view text);
std::uint64_t parse_u64(std::string_view text);

// Category registry (params.csv).
//
//   fdsl-params v1, seed=<u64>, render=<W>x<H>,<t>,<mode>
//   <category_id>,<N>,<seed>,<filling_rate>
//   <a>,<b>,<c>,<d>,<e>,<f>,<p>      (N rows)
//   ...
//
// Baseline registries use the header `fdsl-params v1, family=bezier|perlin`
// followed by one row per category.

struct FractalRegistry {
  std::uint64_t seed = 0;
  std::string render;
  std::vector<CategorySpec> categories;
};

std::string format_fractal_registry(std::uint64_t seed, const RenderConfig& canonical_render,
                                    std::span<const CategorySpec> categories);
/// Throws ParseError.
FractalRegistry parse_fractal_registry(std::string_view text);

std::string format_bezier_registry(std::span<const BezierCategory> categories);
std::vector<BezierCategory> parse_bezier_registry(std::string_view text);

std::string format_perlin_registry(std::span<const PerlinCategory> categories);
std::vector<PerlinCategory> parse_perlin_registry(std::string_view text);

/// Splits on '\n', dropping a trailing '\r' and the final empty line.
std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');

}  // namespace fdsl
