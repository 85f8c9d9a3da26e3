#pragma once

// Named verification runs built on run_search: non-existence of smooth
// curves with a = g - 1 for g >= p, the factored shape of rank-1 Cartier-Manin
// matrices at g = p - 1, the two historical search scripts, and p-rank
// witnesses for genus 3 curves with a = 2.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cartier/search.hpp"

namespace cartier {

struct ConsistencyReport {
  std::string claim;
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::size_t genus = 0;
  std::string expected;
  std::string observed;
  bool pass = false;
  std::vector<Witness> failures;
  std::optional<SearchReport> search;
};

/// Exhaustive normalized family over F_{p^k} (c_0 = 0, monic, degree 2g + 1):
/// expects no smooth curve with a = g - 1. Requires g >= p.
ConsistencyReport verify_theorem1(std::uint32_t p, std::uint32_t k, std::size_t genus,
                                  const RunOptions& options = {});

/// x (x + ((p-1)/2) c_{2g})^(p-2) (x + c_g^(1/p))^p with g = p - 1, for
/// p in {5, 7, 11}. Throws Error(invalid_input) for other p.
Poly genus_p_minus_1_form(const FieldElement& c_2g, const FieldElement& c_g);

struct FormCheck {
  Poly f;
  Invariants invariants;
};

/// Builds genus_p_minus_1_form and reports its invariants; nothing about
/// the rank is asserted.
FormCheck forward_form_check(const FieldElement& c_2g, const FieldElement& c_g);

/// Exhaustive over monic degree 2p - 1 f with c_0 = 0 over F_p: expects no
/// smooth f with a rank-1 matrix and every rank-1 f equal to
/// genus_p_minus_1_form(c_{2g}, c_g) read off f itself. Only p = 5 fits the
/// default budget.
ConsistencyReport verify_genus_p_minus_1(std::uint32_t p = 5, const RunOptions& options = {});

inline constexpr std::uint64_t kScript2Samples = 1'000'000;
inline constexpr std::uint64_t kScript2DefaultSeed = 42;

/// Script 1: exhaustive F_7, genus 4, c_0 = 0, monic. Script 2: F_49,
/// f = x (x - 1) h with h monic of degree 7, random samples.
SearchSpec script_spec(int which, std::uint64_t seed = kScript2DefaultSeed,
                       std::uint64_t samples = kScript2Samples);
SearchReport reproduce_script(int which, const RunOptions& options = {}, std::uint64_t seed = kScript2DefaultSeed,
                              std::uint64_t samples = kScript2Samples);

/// Exhaustive genus-g normalized family over F_p with target a = g - 1,
/// smooth only; a_matched_by_p_rank holds the split and witnesses are kept
/// per p-rank class.
SearchReport find_p_rank_witnesses(std::uint32_t p, std::size_t genus = 3, const RunOptions& options = {},
                                   std::size_t per_class = 5);

/// Pass iff both p-rank 0 and p-rank 1 witnesses exist, and for p = 7 the
/// p-rank 1 class is strictly larger.
ConsistencyReport verify_p_rank_witnesses(std::uint32_t p, const RunOptions& options = {});

}  // namespace cartier
