#include "fdsl/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "fdsl/baselines.hpp"
#include "fdsl/errors.hpp"
#include "fdsl/parallel.hpp"
#include "fdsl/png_io.hpp"
#include "fdsl/registry.hpp"

namespace fs = std::filesystem;

namespace fdsl {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Fractal: return "fractal";
    case Family::Bezier: return "bezier";
    case Family::Perlin: return "perlin";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  if (text == "fractal") return Family::Fractal;
  if (text == "bezier") return Family::Bezier;
  if (text == "perlin") return Family::Perlin;
  throw InvalidConfig("unknown dataset family '" + std::string(text) + "'");
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

namespace {

std::uint64_t parse_hex64(std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, 16);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParseError("expected a hex digest, got '" + std::string(text) + "'");
  return v;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

void append_render(std::string& out, std::string_view prefix, const RenderConfig& r) {
  auto kv = [&](std::string_view key, const std::string& value) {
    out += std::string(prefix) + std::string(key) + "=" + value + "\n";
  };
  kv("width", std::to_string(r.width));
  kv("height", std::to_string(r.height));
  kv("dots", std::to_string(r.point_count));
  kv("draw", std::string(to_string(r.draw_mode)));
  kv("pixel", std::to_string(r.pixel_value));
  kv("background", std::to_string(r.background_value));
  kv("margin", format_real(r.margin));
  kv("burn_in", std::to_string(r.burn_in));
}

class KeyValues {
 public:
  explicit KeyValues(std::string_view text) {
    for (std::string_view line : split_lines(text)) {
      if (line.empty() || line.front() == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("config line without '=': " + std::string(line));
      values_.emplace(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
    }
  }

  const std::string& get(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ParseError("config is missing key '" + key + "'");
    used_.emplace(key);
    return it->second;
  }

  void expect_all_used() const {
    for (const auto& [key, value] : values_)
      if (!used_.contains(key)) throw ParseError("unknown config key '" + key + "'");
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

std::uint8_t parse_byte(const std::string& text) {
  const auto v = parse_u64(text);
  if (v > 255) throw ParseError("pixel value out of range: " + text);
  return static_cast<std::uint8_t>(v);
}

RenderConfig read_render(KeyValues& kv, const std::string& prefix) {
  RenderConfig r;
  r.width = static_cast<int>(parse_u64(kv.get(prefix + "width")));
  r.height = static_cast<int>(parse_u64(kv.get(prefix + "height")));
  r.point_count = static_cast<std::size_t>(parse_u64(kv.get(prefix + "dots")));
  r.draw_mode = parse_draw_mode(kv.get(prefix + "draw"));
  r.pixel_value = parse_byte(kv.get(prefix + "pixel"));
  r.background_value = parse_byte(kv.get(prefix + "background"));
  r.margin = parse_real(kv.get(prefix + "margin"));
  r.burn_in = static_cast<std::size_t>(parse_u64(kv.get(prefix + "burn_in")));
  return r;
}

}  // namespace

void DatasetConfig::validate() const {
  if (category_count < 1) throw InvalidConfig("category_count must be >= 1");
  if (instances_per_category < 1) throw InvalidConfig("instances_per_category must be >= 1");
  if (instances_per_category > 9999)
    throw InvalidConfig("instances_per_category must be <= 9999 (4-digit file names)");
  if (category_count > 99999)
    throw InvalidConfig("category_count must be <= 99999 (5-digit labels)");
  render.validate();
  if (!(weight_interval > 0.0 && weight_interval < 1.0))
    throw InvalidConfig("weight_interval must be in (0, 1)");
  if (family == Family::Fractal) effective_search().validate();
}

SearchConfig DatasetConfig::effective_search() const {
  SearchConfig s = search;
  s.category_count = category_count;
  s.seed = global_seed;
  s.worker_count = worker_count;
  return s;
}

std::string DatasetConfig::canonical_text() const {
  std::string out = "fdsl-config v1\n";
  out += "family=" + std::string(to_string(family)) + "\n";
  out += "categories=" + std::to_string(category_count) + "\n";
  out += "instances=" + std::to_string(instances_per_category) + "\n";
  out += "seed=" + std::to_string(global_seed) + "\n";
  out += "weight_interval=" + format_real(weight_interval) + "\n";
  append_render(out, "render.", render);
  out += "search.n_choices=" + join_ints(search.n_choices) + "\n";
  out += "search.param_min=" + format_real(search.param_min) + "\n";
  out += "search.param_max=" + format_real(search.param_max) + "\n";
  out += "search.rmin=" + format_real(search.r_min) + "\n";
  out += "search.rmax=" + format_real(search.r_max) + "\n";
  out += "search.max_attempts=" + std::to_string(search.max_attempts) + "\n";
  append_render(out, "search.render.", search.canonical_render);
  return out;
}

DatasetConfig DatasetConfig::from_canonical_text(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "fdsl-config v1") throw ParseError("not an fdsl-config v1 file");
  KeyValues kv(text.substr(lines[0].size()));
  DatasetConfig cfg;
  cfg.family = parse_family(kv.get("family"));
  cfg.category_count = static_cast<std::size_t>(parse_u64(kv.get("categories")));
  cfg.instances_per_category = static_cast<std::size_t>(parse_u64(kv.get("instances")));
  cfg.global_seed = parse_u64(kv.get("seed"));
  cfg.weight_interval = parse_real(kv.get("weight_interval"));
  cfg.render = read_render(kv, "render.");
  cfg.search.n_choices.clear();
  for (std::string_view n : split_fields(kv.get("search.n_choices")))
    cfg.search.n_choices.push_back(static_cast<int>(parse_u64(n)));
  cfg.search.param_min = parse_real(kv.get("search.param_min"));
  cfg.search.param_max = parse_real(kv.get("search.param_max"));
  cfg.search.r_min = parse_real(kv.get("search.rmin"));
  cfg.search.r_max = parse_real(kv.get("search.rmax"));
  cfg.search.max_attempts = static_cast<std::size_t>(parse_u64(kv.get("search.max_attempts")));
  cfg.search.canonical_render = read_render(kv, "search.render.");
  kv.expect_all_used();
  return cfg;
}

std::uint64_t DatasetConfig::digest() const { return fnv1a64(canonical_text()); }

fs::path DatasetConfig::dataset_dir() const {
  return output_root / (std::string(to_string(family)) + "-" + std::to_string(category_count));
}

std::string image_relative_path(std::size_t label, std::size_t instance) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%05zu/%05zu_%04zu.png", label, label, instance);
  return buf;
}

std::string DatasetManifest::to_text() const {
  std::string out = "# fdsl-manifest v1, digest=" + hex64(config_digest) + "\npath,label,fnv1a64\n";
  for (const ManifestRecord& r : records)
    out += r.relative_path + "," + std::to_string(r.label) + "," + hex64(r.file_digest) + "\n";
  return out;
}

DatasetManifest DatasetManifest::parse(std::string_view text) {
  const auto lines = split_lines(text);
  constexpr std::string_view kHeader = "# fdsl-manifest v1, digest=";
  if (lines.size() < 2 || lines[0].substr(0, kHeader.size()) != kHeader ||
      lines[1] != "path,label,fnv1a64")
    throw ParseError("not an fdsl-manifest v1 file");
  DatasetManifest m;
  m.config_digest = parse_hex64(lines[0].substr(kHeader.size()));
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_fields(lines[i]);
    if (f.size() != 3) throw ParseError("manifest line " + std::to_string(i + 1) + " is malformed");
    m.records.push_back(
        {std::string(f[0]), static_cast<std::size_t>(parse_u64(f[1])), parse_hex64(f[2])});
  }
  return m;
}

namespace {

// Writes `text` at `path` unless an identical file is already there.
// Returns true when it wrote.
bool ensure_file(const fs::path& path, const std::string& text, bool allow_replace) {
  if (fs::exists(path)) {
    const Bytes existing = read_file(path);
    if (std::string_view(reinterpret_cast<const char*>(existing.data()), existing.size()) == text)
      return false;
    if (!allow_replace)
      throw IntegrityError(path.string() + " differs from what this config produces");
  }
  write_file_atomic(path, text);
  return true;
}

struct Categories {
  std::vector<CategorySpec> fractal;
  std::vector<BezierCategory> bezier;
  std::vector<PerlinCategory> perlin;
  std::string registry_text;
  std::size_t attempts = 0;
};

Categories build_categories(const DatasetConfig& cfg) {
  Categories c;
  switch (cfg.family) {
    case Family::Fractal: {
      const SearchConfig search = cfg.effective_search();
      SearchResult result = run_search(search);
      if (!result.complete(search))
        throw SearchTimeout("accepted " + std::to_string(result.categories.size()) + " of " +
                            std::to_string(search.category_count) + " categories in " +
                            std::to_string(result.attempts) + " attempts");
      c.attempts = result.attempts;
      c.fractal = std::move(result.categories);
      c.registry_text = format_fractal_registry(search.seed, search.canonical_render, c.fractal);
      break;
    }
    case Family::Bezier:
      c.bezier = generate_bezier_categories(cfg.category_count, cfg.global_seed);
      c.registry_text = format_bezier_registry(c.bezier);
      break;
    case Family::Perlin:
      c.perlin = generate_perlin_categories(cfg.category_count, cfg.global_seed);
      c.registry_text = format_perlin_registry(c.perlin);
      break;
  }
  return c;
}

}  // namespace

GenerateResult generate_dataset(const DatasetConfig& cfg, const ProgressFn& progress) {
  cfg.validate();
  GenerateResult result;
  result.dataset_dir = cfg.dataset_dir();
  const fs::path& dir = result.dataset_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create " + dir.string());

  ensure_file(dir / kConfigFile, cfg.canonical_text(), false);
  const Categories cats = build_categories(cfg);
  ensure_file(dir / kRegistryFile, cats.registry_text, false);
  result.search_attempts = cats.attempts;

  std::unordered_map<std::string, std::uint64_t> previous;
  if (fs::exists(dir / kManifestFile)) {
    const Bytes bytes = read_file(dir / kManifestFile);
    DatasetManifest prev;
    try {
      prev = DatasetManifest::parse(
          std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    } catch (const ParseError& e) {
      throw IntegrityError((dir / kManifestFile).string() + ": " + e.what());
    }
    if (prev.config_digest != cfg.digest())
      throw IntegrityError((dir / kManifestFile).string() + " was written for another config");
    for (auto& r : prev.records) previous.emplace(std::move(r.relative_path), r.file_digest);
  }

  for (std::size_t label = 0; label < cfg.category_count; ++label) {
    fs::create_directories((dir / image_relative_path(label, 0)).parent_path(), ec);
    if (!fs::is_directory((dir / image_relative_path(label, 0)).parent_path()))
      throw IoError("cannot create category directory under " + dir.string());
  }

  const std::size_t per_cat = cfg.instances_per_category;
  const std::size_t total = cfg.category_count * per_cat;
  std::vector<ManifestRecord> records(total);
  std::atomic<std::size_t> written{0}, verified{0}, fallbacks{0}, done{0};
  std::mutex progress_mutex;
  auto tick = [&] {
    const std::size_t n = ++done;
    if (progress && (n % 1000 == 0 || n == total)) {
      const std::lock_guard lock(progress_mutex);
      progress(n, total);
    }
  };

  auto render_bytes = [&](std::size_t label, std::size_t instance) -> Bytes {
    switch (cfg.family) {
      case Family::Fractal: {
        const CategorySpec& cat = cats.fractal[label];
        const InstanceSpec inst = instance_at(cat, instance, per_cat, cfg.weight_interval);
        InstanceRender r = render_instance_detailed(cat, inst, cfg.render);
        if (r.applied_weight != inst.weight) ++fallbacks;
        return encode_png(r.image);
      }
      case Family::Bezier: {
        const BezierCategory& cat = cats.bezier[label];
        return encode_png(render_bezier(cat, instance_seed(cat.seed, instance), cfg.render));
      }
      case Family::Perlin: {
        const PerlinCategory& cat = cats.perlin[label];
        return encode_png(render_perlin(cat, instance_seed(cat.seed, instance), cfg.render));
      }
    }
    throw InvalidConfig("unknown family");
  };

  parallel_for(total, std::max(1u, cfg.worker_count), [&](std::size_t i) {
    const std::size_t label = i / per_cat;
    const std::size_t instance = i % per_cat;
    ManifestRecord& rec = records[i];
    rec.relative_path = image_relative_path(label, instance);
    rec.label = label;
    const fs::path path = dir / rec.relative_path;
    if (fs::exists(path)) {
      const Bytes existing = read_file(path);
      rec.file_digest = fnv1a64(existing);
      const auto it = previous.find(rec.relative_path);
      if (it != previous.end() ? it->second != rec.file_digest : render_bytes(label, instance) != existing)
        throw IntegrityError("digest mismatch for existing image " + path.string());
      ++verified;
      tick();
      return;
    }
    const Bytes bytes = render_bytes(label, instance);
    rec.file_digest = fnv1a64(bytes);
    write_file_atomic(path, bytes);
    ++written;
    tick();
  });

  result.manifest.config_digest = cfg.digest();
  result.manifest.records = std::move(records);
  ensure_file(dir / kManifestFile, result.manifest.to_text(), true);
  result.images_written = written;
  result.images_verified = verified;
  result.weight_fallbacks = fallbacks;
  return result;
}

DatasetStats dataset_stats(const fs::path& root) {
  fs::path dir = root;
  if (!fs::exists(dir / kManifestFile) && fs::is_directory(root)) {
    std::vector<fs::path> candidates;
    for (const auto& entry : fs::directory_iterator(root))
      if (entry.is_directory() && fs::exists(entry.path() / kManifestFile))
        candidates.push_back(entry.path());
    if (candidates.size() == 1) dir = candidates.front();
  }
  if (!fs::exists(dir / kManifestFile))
    throw IntegrityError("no " + std::string(kManifestFile) + " under " + root.string());
  if (!fs::exists(dir / kConfigFile))
    throw IntegrityError("no " + std::string(kConfigFile) + " under " + dir.string());

  auto read_text = [](const fs::path& p) {
    const Bytes b = read_file(p);
    return std::string(b.begin(), b.end());
  };

  DatasetStats stats;
  stats.dataset_dir = dir;
  DatasetManifest manifest;
  try {
    stats.config = DatasetConfig::from_canonical_text(read_text(dir / kConfigFile));
    manifest = DatasetManifest::parse(read_text(dir / kManifestFile));
  } catch (const ParseError& e) {
    throw IntegrityError(dir.string() + ": " + e.what());
  }
  stats.config_digest = stats.config.digest();
  if (manifest.config_digest != stats.config_digest)
    throw IntegrityError("manifest digest does not match " + (dir / kConfigFile).string());

  const DatasetConfig& cfg = stats.config;
  std::vector<double> fill(manifest.records.size());
  parallel_for(manifest.records.size(), default_worker_count(), [&](std::size_t i) {
    const ManifestRecord& r = manifest.records[i];
    const fs::path path = dir / r.relative_path;
    if (!fs::exists(path)) throw IntegrityError("missing image " + path.string());
    const Bytes bytes = read_file(path);
    if (fnv1a64(bytes) != r.file_digest) throw IntegrityError("corrupt image " + path.string());
    fill[i] = filling_rate(decode_png(bytes, cfg.render.background_value));
  });

  stats.categories.resize(cfg.category_count);
  for (std::size_t label = 0; label < cfg.category_count; ++label) stats.categories[label].label = label;
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    const std::size_t label = manifest.records[i].label;
    if (label >= cfg.category_count)
      throw IntegrityError("manifest label " + std::to_string(label) + " out of range");
    CategoryStats& c = stats.categories[label];
    if (c.images == 0) c.fill_min = c.fill_max = fill[i];
    c.fill_min = std::min(c.fill_min, fill[i]);
    c.fill_max = std::max(c.fill_max, fill[i]);
    c.fill_mean += fill[i];
    ++c.images;
  }
  for (CategoryStats& c : stats.categories) {
    if (c.images != cfg.instances_per_category)
      throw IntegrityError("category " + std::to_string(c.label) + " has " +
                           std::to_string(c.images) + " images, expected " +
                           std::to_string(cfg.instances_per_category));
    c.fill_mean /= static_cast<double>(c.images);
  }
  stats.image_count = manifest.records.size();

  if (cfg.family == Family::Fractal) {
    FractalRegistry reg;
    try {
      reg = parse_fractal_registry(read_text(dir / kRegistryFile));
    } catch (const Error& e) {
      throw IntegrityError((dir / kRegistryFile).string() + ": " + e.what());
    }
    if (reg.categories.size() != cfg.category_count)
      throw IntegrityError((dir / kRegistryFile).string() + " lists " +
                           std::to_string(reg.categories.size()) + " categories, expected " +
                           std::to_string(cfg.category_count));
    for (const CategorySpec& c : reg.categories)
      if (c.category_id < stats.categories.size())
        stats.categories[c.category_id].canonical_filling_rate = c.canonical_filling_rate;
  }
  return stats;
}

}  // namespace fdsl
