#pragma once

#include <cstdint>
#include <vector>

#include "fdsl/ifs.hpp"
#include "fdsl/render.hpp"
#include "fdsl/rng.hpp"

namespace fdsl {

/// Render settings used to measure a candidate's filling rate during search:
/// 256x256, 100k dots, point mode, burn-in 20.
RenderConfig canonical_search_render();

struct SearchConfig {
  std::size_t category_count = 1000;
  std::vector<int> n_choices{2, 3, 4, 5, 6, 7, 8};
  double param_min = -1.0;
  double param_max = 1.0;
  double r_min = 0.05;
  double r_max = 0.25;
  RenderConfig canonical_render = canonical_search_render();
  std::uint64_t seed = 0;
  /// 0 selects the default of 1000 attempts per requested category.
  std::size_t max_attempts = 0;
  unsigned worker_count = 1;

  std::size_t effective_max_attempts() const;
  void validate() const;
};

struct CategorySpec {
  std::size_t category_id = 0;
  IfsSystem system;
  std::uint64_t seed = 0;
  double canonical_filling_rate = 0.0;

  friend bool operator==(const CategorySpec&, const CategorySpec&) = default;
};

// Seed derivations shared by search, augmentation and the pipeline.
inline std::uint64_t attempt_seed(std::uint64_t search_seed, std::uint64_t attempt) {
  return mix(search_seed, attempt);
}
inline std::uint64_t instance_seed(std::uint64_t category_seed, std::uint64_t instance_id) {
  return mix(category_seed, instance_id);
}
inline std::uint64_t patch_seed(std::uint64_t category_seed, std::uint64_t patch_variant) {
  return mix(mix(category_seed, 0x7061746368ULL), patch_variant);
}

/// Draws N uniformly from n_choices and 6N parameters uniformly on
/// [param_min, param_max]. Degenerate draws are redrawn from the same stream;
/// after 1000 consecutive ones throws ExhaustedRetries.
IfsSystem sample_system(Rng& rng, const SearchConfig& cfg);

/// Unaugmented rendering of a category: instance-0 iteration seed, patch
/// variant 0. This is the rendering the search measures.
std::optional<RasterImage> try_render_canonical(const IfsSystem& system, std::uint64_t category_seed,
                                                const RenderConfig& cfg);
RasterImage render_canonical(const CategorySpec& category, const RenderConfig& cfg);

struct SearchResult {
  std::vector<CategorySpec> categories;
  /// Attempts consumed, up to and including the last acceptance (or all of
  /// max_attempts when the search falls short).
  std::size_t attempts = 0;
  std::size_t diverged = 0;
  std::size_t rejected = 0;

  bool complete(const SearchConfig& cfg) const { return categories.size() == cfg.category_count; }
};

/// Rejection search without the timeout check. Attempt k is evaluated with
/// seed attempt_seed(cfg.seed, k); acceptances keep attempt order, so the
/// result does not depend on cfg.worker_count.
SearchResult run_search(const SearchConfig& cfg);

/// Throws SearchTimeout when max_attempts run out before category_count
/// acceptances.
std::vector<CategorySpec> search_categories(const SearchConfig& cfg);

}  // namespace fdsl
