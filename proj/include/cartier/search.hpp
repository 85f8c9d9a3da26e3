#pragma once

// Enumeration and sampling of hyperelliptic curve families.
//
// A family is f = factor * h where h has degree (degree - deg factor), some
// coefficients of h fixed and the remaining "free" ones varied. Without a
// factor, h is f itself, so the usual normalized family c_0 = 0, c_{2g+1} = 1
// is expressed as fixed {0: 0, 2g+1: 1}.
//
// Per candidate the pipeline is:
//   assemble f -> squarefree test (always counted)
//   -> skip if require_smooth and not squarefree
//   -> optional boundary-row prefilter (only when the target rank is 1)
//   -> Cartier-Manin matrix and rank -> rank target -> p-rank -> p-rank target.
//
// Counts:
//   enumerated      candidates assembled
//   squarefree      squarefree candidates
//   rank_matched    candidates that reached the matrix stage and hit the
//                   rank target g - target_a (all of them without a target)
//   a_matched       rank_matched and squarefree
//   p_rank_matched  a_matched and hitting target_p_rank (if any)
// Witnesses are candidates passing every requested filter, kept up to
// collect_limit per p-rank value, in enumeration order.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cartier/curve.hpp"
#include "cartier/field.hpp"
#include "cartier/poly.hpp"

namespace cartier {

enum class SearchMode { exhaustive, random };

struct SearchSpec {
  FieldPtr field;
  std::size_t degree = 0;                     // deg f = 2g + 1
  std::optional<Poly> factor;                 // fixed factor of f; none means 1
  std::map<std::size_t, FieldElement> fixed;  // cofactor coefficient index -> value
  std::vector<std::size_t> free;              // cofactor indices varied, ascending
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t samples = 0;  // random mode
  std::uint64_t seed = 0;     // random mode
  std::optional<std::size_t> target_a;
  std::optional<std::size_t> target_p_rank;
  bool require_smooth = true;
  std::size_t collect_limit = 10;
  bool prefilter = false;

  std::size_t genus() const noexcept { return (degree - 1) / 2; }
  std::size_t cofactor_degree() const;
  /// Throws Error(invalid_input) on inconsistent specs.
  void validate() const;
};

/// Exhaustive family over `field`: f = c_1 x + ... + c_{2g} x^{2g} + x^{2g+1}.
SearchSpec normalized_family(FieldPtr field, std::size_t genus);

struct SearchCounts {
  std::uint64_t enumerated = 0;
  std::uint64_t squarefree = 0;
  std::uint64_t rank_matched = 0;
  std::uint64_t a_matched = 0;
  std::uint64_t p_rank_matched = 0;

  SearchCounts& operator+=(const SearchCounts& o);
  friend bool operator==(const SearchCounts&, const SearchCounts&) = default;
};

struct Witness {
  std::vector<Code> coeffs;  // expanded f, ascending, length degree + 1
  Invariants invariants;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct SearchReport {
  SearchSpec spec;
  SearchCounts counts;
  /// a_matched split by p-rank, indexed 0..g.
  std::vector<std::uint64_t> a_matched_by_p_rank;
  std::vector<Witness> witnesses;
  std::uint64_t seed = 0;
  std::uint64_t shard_count = 0;
  std::uint64_t elapsed_ms = 0;
};

struct RunOptions {
  unsigned threads = 1;
  std::uint64_t budget = std::uint64_t{1} << 32;  // exhaustive candidate cap
};

/// Random-mode samples per shard; sample i belongs to shard i / kRandomShardSize
/// and shard s draws from RandomStream(derive_seed(seed, s)).
inline constexpr std::uint64_t kRandomShardSize = std::uint64_t{1} << 16;

/// Number of exhaustive candidates, or nullopt when it overflows 64 bits.
std::optional<std::uint64_t> exhaustive_size(const SearchSpec& spec);

/// Throws Error(budget) when an exhaustive space exceeds options.budget.
SearchReport run_search(const SearchSpec& spec, const RunOptions& options = {});

}  // namespace cartier
