#include <doctest.h>

#include <map>

#include "cartier/error.hpp"
#include "cartier/report.hpp"
#include "cartier/search.hpp"
#include "cartier/suites.hpp"
#include "oracles.hpp"

using namespace cartier;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected cartier::Error");
  return ErrorKind::invalid_input;
}

SearchSpec quintic_family(std::uint32_t p) { return normalized_family(Field::make(p), 2); }

}  // namespace

TEST_SUITE("search-engine") {
  TEST_CASE("spec validation") {
    auto f3 = Field::make(3);
    auto spec = quintic_family(3);
    CHECK_NOTHROW(spec.validate());
    CHECK(exhaustive_size(spec) == 81u);

    auto even = spec;
    even.degree = 6;
    CHECK(kind_of([&] { even.validate(); }) == ErrorKind::unsupported);

    auto overlap = spec;
    overlap.free.push_back(5);
    CHECK(kind_of([&] { overlap.validate(); }) == ErrorKind::invalid_input);

    auto missing = spec;
    missing.free.pop_back();
    CHECK(kind_of([&] { missing.validate(); }) == ErrorKind::invalid_input);

    auto unordered = spec;
    std::swap(unordered.free[0], unordered.free[1]);
    CHECK(kind_of([&] { unordered.validate(); }) == ErrorKind::invalid_input);

    auto free_top = spec;
    free_top.fixed.erase(5);
    free_top.free.push_back(5);
    CHECK(kind_of([&] { free_top.validate(); }) == ErrorKind::invalid_input);

    auto zero_top = spec;
    zero_top.fixed.at(5) = FieldElement::zero(f3);
    CHECK(kind_of([&] { zero_top.validate(); }) == ErrorKind::invalid_input);

    auto big_target = spec;
    big_target.target_a = 3;
    CHECK(kind_of([&] { big_target.validate(); }) == ErrorKind::invalid_input);

    auto wrong_field = spec;
    wrong_field.fixed.at(0) = FieldElement::zero(Field::make(5));
    CHECK(kind_of([&] { wrong_field.validate(); }) == ErrorKind::invalid_input);
  }

  TEST_CASE("budget") {
    auto spec = normalized_family(Field::make(7), 5);
    CHECK(exhaustive_size(spec) == 282475249u);
    CHECK(kind_of([&] { run_search(spec, {1, 1000}); }) == ErrorKind::budget);
    auto huge = normalized_family(Field::make(7, 2), 6);
    CHECK_FALSE(exhaustive_size(huge).has_value());  // 49^12 > 2^64
    CHECK(kind_of([&] { run_search(huge); }) == ErrorKind::budget);
  }

  TEST_CASE("counts agree with a direct loop over the family") {
    for (std::uint32_t p : {3u, 5u}) {
      auto spec = quintic_family(p);
      auto field = spec.field;
      const auto report = run_search(spec);
      std::uint64_t sf = 0;
      std::map<std::size_t, std::uint64_t> by_a;
      oracle::for_each_monic(5, p, [&](const oracle::IntPoly& q) {
        if (q[0] != 0) return;
        if (!oracle::squarefree_by_divisibility(q, p)) return;
        ++sf;
        ++by_a[2 - oracle::rank(oracle::cartier(q, p), p)];
      });
      CHECK(report.counts.enumerated == std::uint64_t{p} * p * p * p);
      CHECK(report.counts.squarefree == sf);
      CHECK(report.counts.a_matched == sf);  // no target
      std::uint64_t total = 0;
      for (auto v : report.a_matched_by_p_rank) total += v;
      CHECK(total == sf);

      for (std::size_t a = 0; a <= 2; ++a) {
        auto targeted = spec;
        targeted.target_a = a;
        CHECK(run_search(targeted).counts.a_matched == by_a[a]);
      }
    }
  }

  TEST_CASE("partition by a-number, p = 3, degree 5") {
    auto spec = quintic_family(3);
    std::uint64_t sum = 0;
    for (std::size_t a = 0; a <= 2; ++a) {
      spec.target_a = a;
      sum += run_search(spec).counts.a_matched;
    }
    spec.target_a.reset();
    CHECK(sum == run_search(spec).counts.squarefree);
  }

  TEST_CASE("genus 2 with a = 1 exists at p = 3") {
    auto spec = quintic_family(3);
    spec.target_a = 1;
    const auto report = run_search(spec);
    CHECK(report.counts.enumerated == 81);
    CHECK(report.counts.a_matched >= 1);
    for (const auto& w : report.witnesses) {
      CHECK(invariants(Poly(spec.field, w.coeffs)) == w.invariants);
      CHECK(w.invariants.a_number == 1);
      CHECK(w.invariants.smooth);
    }
  }

  TEST_CASE("require_smooth off counts singular curves too") {
    auto spec = quintic_family(5);
    spec.target_a = 1;
    spec.require_smooth = false;
    const auto loose = run_search(spec);
    spec.require_smooth = true;
    const auto strict = run_search(spec);
    CHECK(loose.counts.squarefree == strict.counts.squarefree);
    CHECK(loose.counts.a_matched == strict.counts.a_matched);
    CHECK(loose.counts.rank_matched > strict.counts.rank_matched);
    bool singular_witness = false;
    for (const auto& w : loose.witnesses) singular_witness |= !w.invariants.smooth;
    CHECK(singular_witness);
  }

  TEST_CASE("prefilter does not change counts") {
    for (auto [p, k, g] : {std::tuple{5u, 1u, 3u}, {7u, 1u, 3u}, {3u, 2u, 3u}, {5u, 1u, 4u}}) {
      auto spec = normalized_family(Field::make(p, k), g);
      spec.target_a = g - 1;
      spec.require_smooth = false;
      spec.collect_limit = 1000;
      const auto plain = run_search(spec, {4});
      spec.prefilter = true;
      const auto filtered = run_search(spec, {4});
      CHECK(plain.counts == filtered.counts);
      CHECK(plain.a_matched_by_p_rank == filtered.a_matched_by_p_rank);
      CHECK(plain.witnesses == filtered.witnesses);
    }
  }

  TEST_CASE("reports do not depend on the thread count") {
    auto spec = normalized_family(Field::make(5), 3);
    spec.target_a = 1;
    const auto one = run_search(spec, {1});
    const auto four = run_search(spec, {4});
    CHECK(one.counts == four.counts);
    CHECK(one.witnesses == four.witnesses);
    CHECK(one.shard_count == four.shard_count);
    CHECK(without_timing(to_json(one)).dump() == without_timing(to_json(four)).dump());

    auto random = script_spec(2, 7, 200'000);
    const auto r1 = run_search(random, {1});
    const auto r3 = run_search(random, {3});
    CHECK(r1.counts.enumerated == 200'000);
    CHECK(without_timing(to_json(r1)).dump() == without_timing(to_json(r3)).dump());
    auto other_seed = script_spec(2, 8, 200'000);
    CHECK(run_search(other_seed).counts.squarefree != r1.counts.squarefree);
  }

  TEST_CASE("random mode with zero samples") {
    const auto report = run_search(script_spec(2, 42, 0));
    CHECK(report.counts.enumerated == 0);
    CHECK(report.counts.a_matched == 0);
    CHECK(report.witnesses.empty());
  }

  TEST_CASE("script 2 assembles f = x (x - 1) h") {
    auto spec = script_spec(2, 1, 5000);
    spec.target_a.reset();
    spec.prefilter = false;
    spec.collect_limit = 3;
    const auto report = run_search(spec);
    REQUIRE_FALSE(report.witnesses.empty());
    const auto one = FieldElement::one(spec.field);
    for (const auto& w : report.witnesses) {
      const Poly f(spec.field, w.coeffs);
      CHECK(f.degree() == 9u);
      CHECK(f.coeff(9) == one);
      CHECK(eval(f, FieldElement::zero(spec.field)).is_zero());
      CHECK(eval(f, one).is_zero());
    }
  }

  TEST_CASE("witnesses re-validate after a JSON round trip") {
    auto spec = normalized_family(Field::make(3, 2), 2);
    spec.target_a = 1;
    const auto doc = nlohmann::json::parse(to_json(run_search(spec)).dump());
    CHECK(doc["schema"] == kReportSchema);
    CHECK(doc["kind"] == "search");
    CHECK_FALSE(doc["witnesses"].empty());
    CHECK(revalidate_witnesses(doc).empty());

    auto tampered = doc;
    tampered["witnesses"][0]["a_number"] = 2;
    CHECK(revalidate_witnesses(tampered).size() == 1);
  }

  TEST_CASE("target p-rank and per-class witnesses") {
    const auto report = find_p_rank_witnesses(5, 3, {}, 5);
    const auto& hist = report.a_matched_by_p_rank;
    REQUIRE(hist.size() == 4);
    CHECK(hist[0] >= 1);
    CHECK(hist[1] >= 1);
    CHECK(hist[2] == 0);
    CHECK(hist[3] == 0);
    std::map<std::size_t, std::size_t> per_class;
    for (const auto& w : report.witnesses) ++per_class[w.invariants.p_rank];
    CHECK(per_class[0] == std::min<std::uint64_t>(5, hist[0]));
    CHECK(per_class[1] == std::min<std::uint64_t>(5, hist[1]));

    auto spec = report.spec;
    spec.target_p_rank = 0;
    CHECK(run_search(spec).counts.p_rank_matched == hist[0]);
  }

  TEST_CASE("theorem1 examples") {
    for (auto [p, k, g, n] : {std::tuple{3u, 1u, 3u, 729u}, {3u, 2u, 3u, 531441u}, {3u, 1u, 4u, 6561u}}) {
      const auto r = verify_theorem1(p, k, g, {4});
      CHECK(r.pass);
      CHECK(r.observed == "matched=0");
      REQUIRE(r.search);
      CHECK(r.search->counts.enumerated == n);
    }
    CHECK(kind_of([] { verify_theorem1(5, 1, 3); }) == ErrorKind::invalid_input);
  }

  TEST_CASE("genus 3, p = 5: no curve with a = g") {
    auto spec = normalized_family(Field::make(5), 3);
    spec.target_a = 3;
    const auto r = run_search(spec, {4});
    CHECK(r.counts.enumerated == 15625);
    CHECK(r.counts.a_matched == 0);
  }

  TEST_CASE("forward form") {
    auto f7 = Field::make(7);
    const auto zero = FieldElement::zero(f7);
    const auto check = forward_form_check(zero, zero);
    CHECK(check.f == Poly::monomial(f7, 13));
    CHECK(check.invariants.genus == 6);
    CHECK_FALSE(check.invariants.smooth);

    // Distinct nonzero parameters still give a repeated factor (x + r)^p.
    auto f5 = Field::make(5);
    for (long long a = 1; a < 5; ++a) {
      const auto form = forward_form_check(FieldElement::from_integer(f5, a), FieldElement::from_integer(f5, 5 - a));
      CHECK(form.f.degree() == 9u);
      CHECK_FALSE(form.invariants.smooth);
      CHECK(form.invariants.rank_a <= 4);
    }
    // With c_2g = 0 the form is x^(p-1) (x + r)^p = x^4 (x^5 + r^5), and r^5 = c_g.
    const auto form = genus_p_minus_1_form(FieldElement::zero(f5), FieldElement::from_integer(f5, 3));
    CHECK(form == Poly::monomial(f5, 1) * Poly::monomial(f5, 3) * Poly(f5, {3, 0, 0, 0, 0, 1}));
    CHECK(kind_of([] { genus_p_minus_1_form(FieldElement::zero(Field::make(3)), FieldElement::zero(Field::make(3))); }) ==
          ErrorKind::invalid_input);
  }

  TEST_CASE("csv rows") {
    auto spec = quintic_family(3);
    spec.target_a = 1;
    spec.collect_limit = 2;
    const auto r = run_search(spec);
    const auto csv = witness_csv(*spec.field, r.witnesses);
    CHECK(csv.rfind("p,k,genus,coeffs,a_number,p_rank,smooth\n", 0) == 0);
    CHECK(csv.find("3,1,2,") != std::string::npos);
    auto f9 = Field::make(3, 2);
    std::vector<Witness> rows{{{0, 1, 0, 0, 0, 1}, invariants(Poly(f9, {0, 1, 0, 0, 0, 1}))}};
    CHECK(witness_csv(*f9, rows).find("\"[0,0];[1,0];[0,0];[0,0];[0,0];[1,0]\"") != std::string::npos);
  }
}
