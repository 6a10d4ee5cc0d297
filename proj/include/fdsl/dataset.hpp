#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdsl/augment.hpp"
#include "fdsl/render.hpp"
#include "fdsl/search.hpp"

namespace fdsl {

enum class Family { Fractal, Bezier, Perlin };

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

/// Everything that determines a dataset's bytes, plus where and how fast to
/// write it. Defaults are the FractalDB-1k operating point: 1000 x 1000
/// images, 256x256, 200k dots, fixed 3x3 patch, filling window
/// [0.05, 0.25], weight interval 0.4.
struct DatasetConfig {
  Family family = Family::Fractal;
  std::size_t category_count = 1000;
  std::size_t instances_per_category = 1000;
  RenderConfig render;
  /// category_count and seed are overridden from this config.
  SearchConfig search;
  double weight_interval = 0.4;
  std::filesystem::path output_root = "out";
  std::uint64_t global_seed = 0;
  unsigned worker_count = 1;

  void validate() const;

  /// The search config actually run: count and seed synced from above.
  SearchConfig effective_search() const;

  /// `key=value` lines covering every field that influences output bytes.
  /// worker_count and output_root are excluded.
  std::string canonical_text() const;
  static DatasetConfig from_canonical_text(std::string_view text);

  /// FNV-1a 64 of canonical_text().
  std::uint64_t digest() const;

  /// <output_root>/<family>-<category_count>
  std::filesystem::path dataset_dir() const;
};

std::string hex64(std::uint64_t value);

struct ManifestRecord {
  std::string relative_path;
  std::size_t label = 0;
  std::uint64_t file_digest = 0;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

/// manifest.csv:
///   # fdsl-manifest v1, digest=<hex>
///   path,label,fnv1a64
///   <label>/<label>_<instance>.png,<label>,<hex>
struct DatasetManifest {
  std::uint64_t config_digest = 0;
  std::vector<ManifestRecord> records;

  std::string to_text() const;
  static DatasetManifest parse(std::string_view text);

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

/// "<label:05>/<label:05>_<instance:04>.png"
std::string image_relative_path(std::size_t label, std::size_t instance);

inline constexpr const char* kConfigFile = "config.txt";
inline constexpr const char* kRegistryFile = "params.csv";
inline constexpr const char* kManifestFile = "manifest.csv";

struct GenerateResult {
  DatasetManifest manifest;
  std::filesystem::path dataset_dir;
  std::size_t images_written = 0;
  /// Existing images confirmed against the previous manifest or a re-render.
  std::size_t images_verified = 0;
  /// Instances whose weight was pulled toward Identity after divergence.
  std::size_t weight_fallbacks = 0;
  std::size_t search_attempts = 0;
};

/// Writes config.txt, params.csv, every image and manifest.csv under
/// cfg.dataset_dir(). Resumable: existing files are checked rather than
/// rewritten, and a mismatch raises IntegrityError naming the file.
/// `progress(done, total)` is called every 1000 images and at the end.
using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;
GenerateResult generate_dataset(const DatasetConfig& cfg, const ProgressFn& progress = {});

struct CategoryStats {
  std::size_t label = 0;
  std::size_t images = 0;
  double fill_mean = 0.0;
  double fill_min = 0.0;
  double fill_max = 0.0;
  /// Registry filling rate (fractal datasets only).
  std::optional<double> canonical_filling_rate;
};

struct DatasetStats {
  std::filesystem::path dataset_dir;
  DatasetConfig config;
  std::uint64_t config_digest = 0;
  std::size_t image_count = 0;
  std::vector<CategoryStats> categories;
};

/// Accepts a dataset directory, or a root holding exactly one dataset.
/// Throws IntegrityError on a missing manifest, missing or corrupt image, or
/// a label histogram that does not match the config.
DatasetStats dataset_stats(const std::filesystem::path& root);

}  // namespace fdsl
