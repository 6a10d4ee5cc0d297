// fdsl: formula-driven dataset generator command line.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdsl/augment.hpp"
#include "fdsl/dataset.hpp"
#include "fdsl/errors.hpp"
#include "fdsl/explore.hpp"
#include "fdsl/parallel.hpp"
#include "fdsl/png_io.hpp"
#include "fdsl/registry.hpp"
#include "fdsl/search.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Options {
  std::size_t categories = 1000;
  std::size_t instances = 1000;
  int size = 256;
  std::size_t dots = 200'000;
  std::string draw = "patch-fix";
  double rmin = 0.05;
  double rmax = 0.25;
  double weight_interval = 0.4;
  std::uint64_t seed = 0;
  unsigned workers = fdsl::default_worker_count();
  std::size_t max_attempts = 0;
  std::string out = "out";
  bool progress = false;
};

void add_search_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--categories", o.categories, "Number of categories")->check(CLI::PositiveNumber);
  cmd->add_option("--rmin", o.rmin, "Lower filling-rate bound")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--rmax", o.rmax, "Upper filling-rate bound")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", o.seed, "Global seed");
  cmd->add_option("--workers", o.workers, "Worker threads (FDSL_WORKERS overrides)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-attempts", o.max_attempts, "Search attempt budget (0: 1000 per category)");
}

void add_render_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--instances", o.instances, "Instances per category")->check(CLI::PositiveNumber);
  cmd->add_option("--size", o.size, "Image width and height")->check(CLI::Range(8, 65536));
  cmd->add_option("--dots", o.dots, "Chaos-game points per image")->check(CLI::PositiveNumber);
  cmd->add_option("--draw", o.draw, "point | patch-random | patch-fix")
      ->check(CLI::IsMember({"point", "patch-random", "patch-fix"}));
  cmd->add_option("--weight-interval", o.weight_interval, "Spacing of the five weights");
  cmd->add_flag("--progress", o.progress, "Report progress on stderr");
}

fdsl::ProgressFn progress_printer(bool enabled) {
  if (!enabled) return {};
  const auto start = std::chrono::steady_clock::now();
  return [start](std::size_t done, std::size_t total) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << json{{"progress", done}, {"total", total}, {"seconds", s}}.dump() << std::endl;
  };
}

unsigned effective_workers(unsigned flag) {
  if (const char* env = std::getenv("FDSL_WORKERS")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw fdsl::InvalidConfig(std::string("FDSL_WORKERS must be a positive integer, got '") + env +
                              "'");
  }
  return flag;
}

fdsl::DatasetConfig to_config(const Options& o, fdsl::Family family) {
  fdsl::DatasetConfig cfg;
  cfg.family = family;
  cfg.category_count = o.categories;
  cfg.instances_per_category = o.instances;
  cfg.render.width = o.size;
  cfg.render.height = o.size;
  cfg.render.point_count = o.dots;
  cfg.render.draw_mode = fdsl::parse_draw_mode(o.draw);
  cfg.search.r_min = o.rmin;
  cfg.search.r_max = o.rmax;
  cfg.search.max_attempts = o.max_attempts;
  cfg.weight_interval = o.weight_interval;
  cfg.global_seed = o.seed;
  cfg.worker_count = effective_workers(o.workers);
  cfg.output_root = o.out;
  return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void emit(const json& j) { std::cout << j.dump() << std::endl; }

int cmd_search(const Options& o, const std::string& registry_out) {
  fdsl::DatasetConfig cfg = to_config(o, fdsl::Family::Fractal);
  const fdsl::SearchConfig search = cfg.effective_search();
  const auto start = std::chrono::steady_clock::now();
  const fdsl::SearchResult result = fdsl::run_search(search);
  const double elapsed = seconds_since(start);

  json j{{"command", "search"},
         {"accepted", result.categories.size()},
         {"attempts", result.attempts},
         {"diverged", result.diverged},
         {"rejected", result.rejected},
         {"acceptance_rate", result.attempts ? static_cast<double>(result.categories.size()) /
                                                   static_cast<double>(result.attempts)
                                             : 0.0},
         {"rmin", search.r_min},
         {"rmax", search.r_max},
         {"seconds", elapsed}};
  if (!result.categories.empty()) {
    double lo = 1.0, hi = 0.0;
    for (const auto& c : result.categories) {
      lo = std::min(lo, c.canonical_filling_rate);
      hi = std::max(hi, c.canonical_filling_rate);
    }
    j["min_filling_rate"] = lo;
    j["max_filling_rate"] = hi;
  }
  if (!result.complete(search)) {
    j = json{{"error", "SearchTimeout"},
             {"message", "max_attempts exhausted before category_count acceptances"},
             {"accepted", result.categories.size()},
             {"attempts", result.attempts},
             {"acceptance_rate", j["acceptance_rate"]}};
    std::cerr << j.dump() << std::endl;
    return 3;
  }
  const std::string text =
      fdsl::format_fractal_registry(search.seed, search.canonical_render, result.categories);
  if (registry_out == "-") {
    std::cout << text;
  } else {
    fdsl::write_file_atomic(registry_out, text);
    j["registry"] = registry_out;
  }
  emit(j);
  return 0;
}

json generate_summary(const fdsl::GenerateResult& r, double elapsed) {
  return json{{"dataset", r.dataset_dir.string()},
              {"images", r.manifest.records.size()},
              {"written", r.images_written},
              {"verified", r.images_verified},
              {"weight_fallbacks", r.weight_fallbacks},
              {"search_attempts", r.search_attempts},
              {"digest", fdsl::hex64(r.manifest.config_digest)},
              {"seconds", elapsed},
              {"images_per_sec", elapsed > 0 ? r.images_written / elapsed : 0.0}};
}

int cmd_generate(const Options& o, fdsl::Family family, const std::string& command) {
  const fdsl::DatasetConfig cfg = to_config(o, family);
  const auto start = std::chrono::steady_clock::now();
  const fdsl::GenerateResult r = fdsl::generate_dataset(cfg, progress_printer(o.progress));
  json j = generate_summary(r, seconds_since(start));
  j["command"] = command;
  j["workers"] = cfg.worker_count;
  emit(j);
  return 0;
}

int cmd_stats(const std::string& root, bool per_category) {
  const fdsl::DatasetStats s = fdsl::dataset_stats(root);
  double lo = 1.0, hi = 0.0, mean = 0.0;
  double canon_lo = 1.0, canon_hi = 0.0;
  bool has_canonical = false;
  json cats = json::array();
  for (const auto& c : s.categories) {
    lo = std::min(lo, c.fill_min);
    hi = std::max(hi, c.fill_max);
    mean += c.fill_mean;
    json cj{{"label", c.label}, {"images", c.images}, {"fill_mean", c.fill_mean},
            {"fill_min", c.fill_min}, {"fill_max", c.fill_max}};
    if (c.canonical_filling_rate) {
      has_canonical = true;
      canon_lo = std::min(canon_lo, *c.canonical_filling_rate);
      canon_hi = std::max(canon_hi, *c.canonical_filling_rate);
      cj["canonical_filling_rate"] = *c.canonical_filling_rate;
    }
    cats.push_back(std::move(cj));
  }
  json j{{"command", "stats"},
         {"dataset", s.dataset_dir.string()},
         {"family", std::string(fdsl::to_string(s.config.family))},
         {"digest", fdsl::hex64(s.config_digest)},
         {"categories", s.categories.size()},
         {"instances_per_category", s.config.instances_per_category},
         {"images", s.image_count},
         {"fill_min", lo},
         {"fill_max", hi},
         {"fill_mean", s.categories.empty() ? 0.0 : mean / s.categories.size()}};
  if (has_canonical) {
    j["canonical_fill_min"] = canon_lo;
    j["canonical_fill_max"] = canon_hi;
    j["rmin"] = s.config.search.r_min;
    j["rmax"] = s.config.search.r_max;
  }
  if (per_category) j["per_category"] = std::move(cats);
  emit(j);
  return 0;
}

int cmd_explore(const Options& o, const std::string& axis, const std::vector<std::string>& values,
                bool run) {
  const auto configs =
      fdsl::run_exploration_grid(fdsl::parse_axis(axis), values, to_config(o, fdsl::Family::Fractal));
  for (const auto& cfg : configs) {
    json j{{"command", "explore"},
           {"name", cfg.output_root.filename().string()},
           {"out", cfg.output_root.string()},
           {"digest", fdsl::hex64(cfg.digest())},
           {"categories", cfg.category_count},
           {"instances", cfg.instances_per_category},
           {"size", cfg.render.width},
           {"dots", cfg.render.point_count},
           {"draw", std::string(fdsl::to_string(cfg.render.draw_mode))},
           {"rmin", cfg.search.r_min},
           {"rmax", cfg.search.r_max},
           {"weight_interval", cfg.weight_interval}};
    if (run) {
      const auto start = std::chrono::steady_clock::now();
      j["result"] = generate_summary(fdsl::generate_dataset(cfg, progress_printer(o.progress)),
                                     seconds_since(start));
    }
    emit(j);
  }
  return 0;
}

int cmd_bench(const Options& o) {
  fdsl::DatasetConfig cfg = to_config(o, fdsl::Family::Fractal);
  const auto search_start = std::chrono::steady_clock::now();
  const auto categories = fdsl::search_categories(cfg.effective_search());
  const double search_seconds = seconds_since(search_start);

  const std::size_t total = cfg.category_count * cfg.instances_per_category;
  std::vector<std::size_t> png_bytes(total);
  const auto start = std::chrono::steady_clock::now();
  fdsl::parallel_for(total, cfg.worker_count, [&](std::size_t i) {
    const auto& cat = categories[i / cfg.instances_per_category];
    const auto inst = fdsl::instance_at(cat, i % cfg.instances_per_category,
                                        cfg.instances_per_category, cfg.weight_interval);
    png_bytes[i] = fdsl::encode_png(fdsl::render_instance(cat, inst, cfg.render)).size();
  });
  const double seconds = seconds_since(start);
  std::size_t bytes = 0;
  for (std::size_t b : png_bytes) bytes += b;
  const double ips = total / seconds;
  emit(json{{"command", "bench"},
            {"workers", cfg.worker_count},
            {"images", total},
            {"size", cfg.render.width},
            {"dots", cfg.render.point_count},
            {"draw", std::string(fdsl::to_string(cfg.render.draw_mode))},
            {"search_seconds", search_seconds},
            {"render_seconds", seconds},
            {"images_per_sec", ips},
            {"dots_per_sec", ips * static_cast<double>(cfg.render.point_count)},
            {"mean_png_bytes", static_cast<double>(bytes) / total},
            {"projected_fractaldb_1k_hours", 1e6 / ips / 3600.0}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formula-driven image dataset generator (IFS fractals, Bezier, Perlin)"};
  app.require_subcommand(1);
  Options o;

  std::string registry_out = "params.csv";
  auto* search = app.add_subcommand("search", "Search random IFS categories; write a registry");
  add_search_flags(search, o);
  search->add_option("--out", registry_out, "Registry path ('-' for stdout)");

  auto* generate = app.add_subcommand("generate", "Generate a FractalDB dataset");
  add_search_flags(generate, o);
  add_render_flags(generate, o);
  generate->add_option("--out", o.out, "Output root");

  std::string stats_root;
  bool per_category = false;
  auto* stats = app.add_subcommand("stats", "Verify a dataset and summarize filling rates");
  stats->add_option("root", stats_root, "Dataset directory or output root")->required();
  stats->add_flag("--per-category", per_category, "Include per-category rows");

  std::string axis;
  std::vector<std::string> values;
  bool run = false;
  auto* explore = app.add_subcommand("explore", "Emit (and optionally run) an exploration grid");
  add_search_flags(explore, o);
  add_render_flags(explore, o);
  explore->add_option("--axis", axis, "category | instance | patch_mode | filling_rate | "
                                      "weight_interval | dot_count | image_size")
      ->required();
  explore->add_option("--values", values, "Comma-separated axis values")->required()->delimiter(',');
  explore->add_option("--out", o.out, "Output root");
  explore->add_flag("--run", run, "Generate every config");

  std::string family = "bezier";
  auto* baseline = app.add_subcommand("baseline", "Generate a Bezier or Perlin dataset");
  baseline->add_option("family", family, "bezier | perlin")
      ->required()
      ->check(CLI::IsMember({"bezier", "perlin"}));
  add_search_flags(baseline, o);
  add_render_flags(baseline, o);
  baseline->add_option("--out", o.out, "Output root");

  auto* bench = app.add_subcommand("bench", "Measure render + encode throughput");
  add_search_flags(bench, o);
  add_render_flags(bench, o);

  // Smaller defaults for the commands that are usually run interactively.
  bench->preparse_callback([&](std::size_t) {
    o.categories = 4;
    o.instances = 25;
  });
  search->preparse_callback([&](std::size_t) { o.categories = 1000; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*search) return cmd_search(o, registry_out);
    if (*generate) return cmd_generate(o, fdsl::Family::Fractal, "generate");
    if (*stats) return cmd_stats(stats_root, per_category);
    if (*explore) return cmd_explore(o, axis, values, run);
    if (*baseline) return cmd_generate(o, fdsl::parse_family(family), "baseline");
    if (*bench) return cmd_bench(o);
  } catch (const fdsl::Error& e) {
    std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << std::endl;
    return 1;
  }
  return 0;
}
