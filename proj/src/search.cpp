#include "cartier/search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "cartier/error.hpp"
#include "cartier/rng.hpp"

namespace cartier {

namespace {

constexpr std::uint64_t kMinExhaustiveShards = 64;

struct ShardResult {
  SearchCounts counts;
  std::vector<std::uint64_t> by_p_rank;
  std::vector<std::vector<Witness>> buckets;  // indexed by p-rank
};

// Per-thread evaluation state; every buffer is reused across candidates.
class Evaluator {
 public:
  Evaluator(const SearchSpec& spec, std::span<const Code> factor)
      : spec_(spec),
        field_(*spec.field),
        g_(spec.genus()),
        half_exponent_((field_.characteristic() - 1) / 2),
        factor_(factor.begin(), factor.end()),
        prefilter_(spec.prefilter && spec.target_a && *spec.target_a + 1 == g_ && g_ >= 2) {
    cofactor_.assign(spec.cofactor_degree() + 1, 0);
    for (const auto& [index, value] : spec.fixed) cofactor_[index] = value.code();
    matrix_.resize(g_ * g_);
    work_.resize(g_ * g_);
  }

  std::vector<Code>& cofactor() noexcept { return cofactor_; }

  void reset(ShardResult& out) const {
    out.counts = {};
    out.by_p_rank.assign(g_ + 1, 0);
    out.buckets.assign(g_ + 1, {});
  }

  void evaluate(ShardResult& out) {
    std::span<const Code> f = cofactor_;
    if (!factor_.empty()) {
      kernel::mul(field_, factor_, cofactor_, assembled_);
      f = assembled_;
    }
    ++out.counts.enumerated;

    const bool squarefree = kernel::is_squarefree(field_, f, squarefree_scratch_);
    if (squarefree) ++out.counts.squarefree;
    if (spec_.require_smooth && !squarefree) return;
    if (prefilter_ && kernel::boundary_rows_independent(field_, f, g_, boundary_scratch_)) return;

    kernel::power(field_, f, half_exponent_, kappa_, pow_scratch_);
    kernel::cartier_from_kappa(kappa_, field_.characteristic(), g_, matrix_);
    std::copy(matrix_.begin(), matrix_.end(), work_.begin());
    const std::size_t rank = kernel::rank_in_place(field_, work_, g_, g_);
    if (spec_.target_a && rank + *spec_.target_a != g_) return;
    ++out.counts.rank_matched;

    const std::size_t p_rank = kernel::p_rank(field_, matrix_, g_, p_rank_scratch_);
    if (squarefree) {
      ++out.counts.a_matched;
      ++out.by_p_rank[p_rank];
    }
    if (spec_.target_p_rank && p_rank != *spec_.target_p_rank) return;
    if (squarefree) ++out.counts.p_rank_matched;

    auto& bucket = out.buckets[p_rank];
    if (bucket.size() < spec_.collect_limit) {
      Witness w;
      w.coeffs.assign(f.begin(), f.end());
      w.invariants = {g_, squarefree, rank, g_ - rank, p_rank};
      bucket.push_back(std::move(w));
    }
  }

 private:
  const SearchSpec& spec_;
  const Field& field_;
  std::size_t g_;
  std::uint64_t half_exponent_;
  std::vector<Code> factor_;
  bool prefilter_;

  std::vector<Code> cofactor_;
  std::vector<Code> assembled_;
  std::vector<Code> kappa_;
  std::vector<Code> pow_scratch_;
  std::vector<Code> matrix_;
  std::vector<Code> work_;
  kernel::SquarefreeScratch squarefree_scratch_;
  kernel::BoundaryScratch boundary_scratch_;
  kernel::PRankScratch p_rank_scratch_;
};

struct ShardPlan {
  std::uint64_t shard_count = 0;
  std::size_t prefix_digits = 0;       // exhaustive: top free digits fixed per shard
  std::uint64_t per_shard = 0;         // exhaustive: candidates per shard
};

ShardPlan plan_shards(const SearchSpec& spec) {
  ShardPlan plan;
  if (spec.mode == SearchMode::random) {
    plan.shard_count = (spec.samples + kRandomShardSize - 1) / kRandomShardSize;
    return plan;
  }
  const std::uint64_t q = spec.field->order();
  const std::size_t m = spec.free.size();
  plan.shard_count = 1;
  while (plan.prefix_digits < m && plan.shard_count < kMinExhaustiveShards) {
    plan.shard_count *= q;
    ++plan.prefix_digits;
  }
  plan.per_shard = 1;
  for (std::size_t i = plan.prefix_digits; i < m; ++i) plan.per_shard *= q;
  return plan;
}

void run_exhaustive_shard(const SearchSpec& spec, const ShardPlan& plan, std::uint64_t shard, Evaluator& ev,
                          ShardResult& out) {
  const Code q = static_cast<Code>(spec.field->order());
  const std::size_t m = spec.free.size();
  const std::size_t low = m - plan.prefix_digits;
  auto& h = ev.cofactor();
  std::uint64_t rest = shard;
  for (std::size_t i = low; i < m; ++i) {
    h[spec.free[i]] = static_cast<Code>(rest % q);
    rest /= q;
  }
  for (std::size_t i = 0; i < low; ++i) h[spec.free[i]] = 0;
  for (std::uint64_t n = 0; n < plan.per_shard; ++n) {
    ev.evaluate(out);
    // odometer over the low free digits, free[0] least significant
    for (std::size_t i = 0; i < low; ++i) {
      Code& c = h[spec.free[i]];
      if (++c < q) break;
      c = 0;
    }
  }
}

void run_random_shard(const SearchSpec& spec, std::uint64_t shard, Evaluator& ev, ShardResult& out) {
  RandomStream rng(derive_seed(spec.seed, shard));
  const std::uint64_t begin = shard * kRandomShardSize;
  const std::uint64_t end = std::min(spec.samples, begin + kRandomShardSize);
  auto& h = ev.cofactor();
  for (std::uint64_t n = begin; n < end; ++n) {
    for (auto index : spec.free) h[index] = spec.field->random(rng);
    ev.evaluate(out);
  }
}

}  // namespace

std::size_t SearchSpec::cofactor_degree() const {
  const std::size_t factor_degree = factor ? factor->degree().value_or(0) : 0;
  if (factor_degree > degree) fail(ErrorKind::invalid_input, "factor degree exceeds family degree");
  return degree - factor_degree;
}

void SearchSpec::validate() const {
  if (!field) fail(ErrorKind::invalid_input, "search spec has no field");
  if (degree < 3) fail(ErrorKind::invalid_input, "family degree must be >= 3");
  if (degree % 2 == 0) fail(ErrorKind::unsupported, "unsupported-degree: even-degree family");
  if (factor) {
    if (factor->is_zero()) fail(ErrorKind::invalid_input, "fixed factor must be nonzero");
    require_same_field(*field, *factor->field());
  }
  const std::size_t cofactor_deg = cofactor_degree();
  std::vector<int> seen(cofactor_deg + 1, 0);
  for (const auto& [index, value] : fixed) {
    if (index > cofactor_deg) {
      fail(ErrorKind::invalid_input, "fixed index c" + std::to_string(index) + " beyond degree");
    }
    require_same_field(*field, *value.field());
    ++seen[index];
  }
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (free[i] > cofactor_deg) fail(ErrorKind::invalid_input, "free index beyond degree");
    if (i && free[i] <= free[i - 1]) fail(ErrorKind::invalid_input, "free indices must be strictly ascending");
    ++seen[free[i]];
  }
  for (std::size_t i = 0; i <= cofactor_deg; ++i) {
    if (seen[i] != 1) {
      fail(ErrorKind::invalid_input, "coefficient c" + std::to_string(i) +
                                         (seen[i] ? " is both fixed and free" : " is neither fixed nor free"));
    }
  }
  auto top = fixed.find(cofactor_deg);
  if (top == fixed.end() || top->second.is_zero()) {
    fail(ErrorKind::invalid_input, "leading coefficient c" + std::to_string(cofactor_deg) +
                                       " must be fixed and nonzero");
  }
  if (target_a && *target_a > genus()) fail(ErrorKind::invalid_input, "target a-number exceeds genus");
  if (target_p_rank && *target_p_rank > genus()) fail(ErrorKind::invalid_input, "target p-rank exceeds genus");
}

SearchSpec normalized_family(FieldPtr field, std::size_t genus) {
  SearchSpec spec;
  spec.degree = 2 * genus + 1;
  spec.fixed.emplace(0, FieldElement::zero(field));
  spec.fixed.emplace(spec.degree, FieldElement::one(field));
  for (std::size_t i = 1; i < spec.degree; ++i) spec.free.push_back(i);
  spec.field = std::move(field);
  return spec;
}

SearchCounts& SearchCounts::operator+=(const SearchCounts& o) {
  enumerated += o.enumerated;
  squarefree += o.squarefree;
  rank_matched += o.rank_matched;
  a_matched += o.a_matched;
  p_rank_matched += o.p_rank_matched;
  return *this;
}

std::optional<std::uint64_t> exhaustive_size(const SearchSpec& spec) {
  std::uint64_t size = 1;
  const std::uint64_t q = spec.field->order();
  for (std::size_t i = 0; i < spec.free.size(); ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / q) return std::nullopt;
    size *= q;
  }
  return size;
}

SearchReport run_search(const SearchSpec& spec, const RunOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  spec.validate();
  if (spec.mode == SearchMode::exhaustive) {
    auto size = exhaustive_size(spec);
    if (!size) fail(ErrorKind::budget, "exhaustive space exceeds 2^64 candidates");
    if (*size > options.budget) {
      fail(ErrorKind::budget, "exhaustive space of " + std::to_string(*size) + " candidates exceeds budget " +
                                  std::to_string(options.budget));
    }
  }

  const ShardPlan plan = plan_shards(spec);
  std::vector<Code> factor;
  if (spec.factor) factor.assign(spec.factor->coeffs().begin(), spec.factor->coeffs().end());

  std::vector<ShardResult> results(plan.shard_count);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    Evaluator ev(spec, factor);
    for (;;) {
      const std::uint64_t shard = next.fetch_add(1);
      if (shard >= plan.shard_count) return;
      ev.reset(results[shard]);
      if (spec.mode == SearchMode::exhaustive) {
        run_exhaustive_shard(spec, plan, shard, ev, results[shard]);
      } else {
        run_random_shard(spec, shard, ev, results[shard]);
      }
    }
  };

  const auto threads = static_cast<std::uint64_t>(std::max(1u, options.threads));
  const auto workers = std::min(threads, plan.shard_count);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  const std::size_t g = spec.genus();
  SearchReport report{spec, {}, std::vector<std::uint64_t>(g + 1, 0), {}, spec.seed, plan.shard_count, 0};
  std::vector<std::vector<Witness>> buckets(g + 1);
  for (auto& shard : results) {
    report.counts += shard.counts;
    for (std::size_t r = 0; r <= g; ++r) {
      report.a_matched_by_p_rank[r] += shard.by_p_rank[r];
      for (auto& w : shard.buckets[r]) {
        if (buckets[r].size() >= spec.collect_limit) break;
        buckets[r].push_back(std::move(w));
      }
    }
  }
  for (auto& bucket : buckets) {
    for (auto& w : bucket) report.witnesses.push_back(std::move(w));
  }
  report.elapsed_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count());
  return report;
}

}  // namespace cartier
