#include "fdsl/search.hpp"

#include <algorithm>
#include <string>

#include "fdsl/errors.hpp"
#include "fdsl/parallel.hpp"

namespace fdsl {

RenderConfig canonical_search_render() {
  RenderConfig cfg;
  cfg.width = 256;
  cfg.height = 256;
  cfg.point_count = 100'000;
  cfg.draw_mode = DrawMode::Point;
  cfg.burn_in = 20;
  return cfg;
}

std::size_t SearchConfig::effective_max_attempts() const {
  return max_attempts != 0 ? max_attempts : 1000 * category_count;
}

void SearchConfig::validate() const {
  if (category_count < 1) throw InvalidConfig("category_count must be >= 1");
  if (n_choices.empty()) throw InvalidConfig("n_choices is empty");
  for (int n : n_choices)
    if (n < 1) throw InvalidConfig("n_choices entries must be >= 1");
  if (!(param_min <= param_max)) throw InvalidConfig("param range is empty");
  if (!(r_min >= 0.0 && r_min < r_max && r_max <= 1.0))
    throw InvalidConfig("filling-rate window must satisfy 0 <= r_min < r_max <= 1");
  canonical_render.validate();
}

IfsSystem sample_system(Rng& rng, const SearchConfig& cfg) {
  constexpr int kMaxDegenerate = 1000;
  for (int attempt = 0; attempt < kMaxDegenerate; ++attempt) {
    const int n = cfg.n_choices[rng.below(cfg.n_choices.size())];
    std::vector<AffineMap> maps(static_cast<std::size_t>(n));
    for (AffineMap& m : maps)
      for (std::size_t k = 0; k < AffineMap::kParamCount; ++k)
        m.param(k) = rng.uniform(cfg.param_min, cfg.param_max);
    try {
      return make_system(std::move(maps));
    } catch (const DegenerateSystem&) {
    }
  }
  throw ExhaustedRetries("1000 consecutive degenerate IFS draws");
}

std::optional<RasterImage> try_render_canonical(const IfsSystem& system,
                                                std::uint64_t category_seed,
                                                const RenderConfig& cfg) {
  return try_render_system(system, cfg, instance_seed(category_seed, 0),
                           patch_seed(category_seed, 0));
}

RasterImage render_canonical(const CategorySpec& category, const RenderConfig& cfg) {
  auto img = try_render_canonical(category.system, category.seed, cfg);
  if (!img) throw Diverged("category " + std::to_string(category.category_id) + " diverged");
  return std::move(*img);
}

namespace {

enum class Outcome { Accepted, Rejected, Diverged };

struct AttemptResult {
  Outcome outcome = Outcome::Rejected;
  IfsSystem system;
  std::uint64_t seed = 0;
  double filling_rate = 0.0;
};

AttemptResult evaluate_attempt(const SearchConfig& cfg, std::size_t attempt) {
  AttemptResult r;
  r.seed = attempt_seed(cfg.seed, attempt);
  Rng rng(r.seed);
  r.system = sample_system(rng, cfg);
  const auto img = try_render_canonical(r.system, r.seed, cfg.canonical_render);
  if (!img) {
    r.outcome = Outcome::Diverged;
    return r;
  }
  r.filling_rate = filling_rate(*img);
  r.outcome = (r.filling_rate >= cfg.r_min && r.filling_rate <= cfg.r_max) ? Outcome::Accepted
                                                                            : Outcome::Rejected;
  return r;
}

}  // namespace

SearchResult run_search(const SearchConfig& cfg) {
  cfg.validate();
  const std::size_t max_attempts = cfg.effective_max_attempts();
  const unsigned workers = std::max(1u, cfg.worker_count);
  const std::size_t batch = std::max<std::size_t>(64, 16 * static_cast<std::size_t>(workers));

  SearchResult result;
  std::vector<AttemptResult> outcomes;
  while (result.categories.size() < cfg.category_count && result.attempts < max_attempts) {
    const std::size_t base = result.attempts;
    const std::size_t n = std::min(batch, max_attempts - base);
    outcomes.assign(n, AttemptResult{});
    parallel_for(n, workers, [&](std::size_t i) { outcomes[i] = evaluate_attempt(cfg, base + i); });

    for (AttemptResult& r : outcomes) {
      ++result.attempts;
      switch (r.outcome) {
        case Outcome::Diverged: ++result.diverged; break;
        case Outcome::Rejected: ++result.rejected; break;
        case Outcome::Accepted:
          result.categories.push_back(CategorySpec{result.categories.size(), std::move(r.system),
                                                   r.seed, r.filling_rate});
          break;
      }
      if (result.categories.size() == cfg.category_count) break;
    }
  }
  return result;
}

std::vector<CategorySpec> search_categories(const SearchConfig& cfg) {
  SearchResult result = run_search(cfg);
  if (!result.complete(cfg))
    throw SearchTimeout("accepted " + std::to_string(result.categories.size()) + " of " +
                        std::to_string(cfg.category_count) + " categories in " +
                        std::to_string(result.attempts) + " attempts");
  return std::move(result.categories);
}

}  // namespace fdsl
