#include "fdsl/registry.hpp"

#include <charconv>
#include <cstdio>

#include "fdsl/errors.hpp"

namespace fdsl {

namespace {

constexpr std::string_view kMagic = "fdsl-params v1";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view text) {
  text = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError("expected an integer, got '" + std::string(text) + "'");
  return v;
}

void expect_fields(const std::vector<std::string_view>& fields, std::size_t n, std::size_t line) {
  if (fields.size() != n)
    throw ParseError("registry line " + std::to_string(line + 1) + ": expected " +
                     std::to_string(n) + " fields, got " + std::to_string(fields.size()));
}

std::vector<std::string_view> body_lines(std::string_view text, std::string_view header) {
  auto lines = split_lines(text);
  if (lines.empty() || lines[0] != header)
    throw ParseError("registry header must be '" + std::string(header) + "'");
  lines.erase(lines.begin());
  return lines;
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_real(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError("expected a real number, got '" + std::string(text) + "'");
  return v;
}

std::uint64_t parse_u64(std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParseError("expected an unsigned integer, got '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  for (;;) {
    const auto pos = line.find(sep);
    fields.push_back(trim(line.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return fields;
}

std::string format_fractal_registry(std::uint64_t seed, const RenderConfig& canonical_render,
                                    std::span<const CategorySpec> categories) {
  std::string out;
  out += std::string(kMagic) + ", seed=" + std::to_string(seed) +
         ", render=" + canonical_render.summary() + "\n";
  for (const CategorySpec& c : categories) {
    out += std::to_string(c.category_id) + "," + std::to_string(c.system.size()) + "," +
           std::to_string(c.seed) + "," + format_real(c.canonical_filling_rate) + "\n";
    for (std::size_t i = 0; i < c.system.size(); ++i) {
      const AffineMap& m = c.system.maps[i];
      out += format_real(m.a) + "," + format_real(m.b) + "," + format_real(m.c) + "," +
             format_real(m.d) + "," + format_real(m.e) + "," + format_real(m.f) + "," +
             format_real(c.system.probs[i]) + "\n";
    }
  }
  return out;
}

FractalRegistry parse_fractal_registry(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty registry");
  const std::string_view header = lines[0];
  const std::string seed_key = std::string(kMagic) + ", seed=";
  const auto render_pos = header.find(", render=");
  if (header.substr(0, seed_key.size()) != seed_key || render_pos == std::string_view::npos)
    throw ParseError("registry header must be '" + seed_key + "<u64>, render=<WxH,t,mode>'");

  FractalRegistry reg;
  reg.seed = parse_u64(header.substr(seed_key.size(), render_pos - seed_key.size()));
  reg.render = std::string(header.substr(render_pos + std::string_view(", render=").size()));

  std::size_t i = 1;
  while (i < lines.size()) {
    if (lines[i].empty()) {
      ++i;
      continue;
    }
    const auto head = split_fields(lines[i]);
    expect_fields(head, 4, i);
    CategorySpec c;
    c.category_id = static_cast<std::size_t>(parse_u64(head[0]));
    const auto n = static_cast<std::size_t>(parse_u64(head[1]));
    c.seed = parse_u64(head[2]);
    c.canonical_filling_rate = parse_real(head[3]);
    if (n < 1) throw ParseError("registry category " + std::to_string(c.category_id) + " has N = 0");
    ++i;
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (i >= lines.size()) throw ParseError("registry is truncated");
      const auto row = split_fields(lines[i]);
      expect_fields(row, 7, i);
      AffineMap m;
      for (std::size_t p = 0; p < AffineMap::kParamCount; ++p) m.param(p) = parse_real(row[p]);
      c.system.maps.push_back(m);
      c.system.probs.push_back(parse_real(row[6]));
    }
    try {
      c.system.validate();
    } catch (const InvalidConfig& e) {
      throw ParseError("registry category " + std::to_string(c.category_id) + ": " + e.what());
    }
    reg.categories.push_back(std::move(c));
  }
  return reg;
}

std::string format_bezier_registry(std::span<const BezierCategory> categories) {
  std::string out = std::string(kMagic) + ", family=bezier\n";
  for (const BezierCategory& c : categories)
    out += std::to_string(c.category_id) + "," + std::to_string(c.control_point_count) + "," +
           std::to_string(c.stroke_count) + "," + std::to_string(c.thickness) + "," +
           std::to_string(c.seed) + "\n";
  return out;
}

std::vector<BezierCategory> parse_bezier_registry(std::string_view text) {
  std::vector<BezierCategory> out;
  const auto lines = body_lines(text, std::string(kMagic) + ", family=bezier");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_fields(lines[i]);
    expect_fields(f, 5, i + 1);
    out.push_back({static_cast<std::size_t>(parse_u64(f[0])), parse_int(f[1]), parse_int(f[2]),
                   parse_int(f[3]), parse_u64(f[4])});
  }
  return out;
}

std::string format_perlin_registry(std::span<const PerlinCategory> categories) {
  std::string out = std::string(kMagic) + ", family=perlin\n";
  for (const PerlinCategory& c : categories)
    out += std::to_string(c.category_id) + "," + std::to_string(c.freq_x) + "," +
           std::to_string(c.freq_y) + "," + std::to_string(c.octaves) + "," +
           format_real(c.threshold) + "," + std::to_string(c.seed) + "\n";
  return out;
}

std::vector<PerlinCategory> parse_perlin_registry(std::string_view text) {
  std::vector<PerlinCategory> out;
  const auto lines = body_lines(text, std::string(kMagic) + ", family=perlin");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_fields(lines[i]);
    expect_fields(f, 6, i + 1);
    out.push_back({static_cast<std::size_t>(parse_u64(f[0])), parse_int(f[1]), parse_int(f[2]),
                   parse_int(f[3]), parse_real(f[4]), parse_u64(f[5])});
  }
  return out;
}

}  // namespace fdsl
