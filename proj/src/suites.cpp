#include "cartier/suites.hpp"

#include <limits>

#include "cartier/error.hpp"

namespace cartier {

namespace {

std::string matched(std::uint64_t n) { return "matched=" + std::to_string(n); }

}  // namespace

ConsistencyReport verify_theorem1(std::uint32_t p, std::uint32_t k, std::size_t genus, const RunOptions& options) {
  if (genus < p) {
    fail(ErrorKind::invalid_input, "theorem1 applies to g >= p (got g=" + std::to_string(genus) +
                                       ", p=" + std::to_string(p) + ")");
  }
  auto spec = normalized_family(Field::make(p, k), genus);
  spec.target_a = genus - 1;
  spec.prefilter = true;
  auto search = run_search(spec, options);

  ConsistencyReport report;
  report.claim = "theorem1";
  report.p = p;
  report.k = k;
  report.genus = genus;
  report.expected = matched(0);
  report.observed = matched(search.counts.a_matched);
  report.pass = search.counts.a_matched == 0;
  if (!report.pass) report.failures = search.witnesses;
  report.search = std::move(search);
  return report;
}

Poly genus_p_minus_1_form(const FieldElement& c_2g, const FieldElement& c_g) {
  require_same_field(*c_2g.field(), *c_g.field());
  const auto& field = c_2g.field();
  const std::uint32_t p = field->characteristic();
  if (p != 5 && p != 7 && p != 11) fail(ErrorKind::invalid_input, "factored form is stated for p in {5, 7, 11}");
  const auto shift = FieldElement::from_integer(field, (p - 1) / 2) * c_2g;
  const auto root = c_g.pth_root();
  const Poly x = Poly::monomial(field, 1);
  const Poly first(field, {shift.code(), 1});
  const Poly second(field, {root.code(), 1});
  return x * pow(first, p - 2) * pow(second, p);
}

FormCheck forward_form_check(const FieldElement& c_2g, const FieldElement& c_g) {
  auto f = genus_p_minus_1_form(c_2g, c_g);
  auto inv = invariants(f);
  return {std::move(f), inv};
}

ConsistencyReport verify_genus_p_minus_1(std::uint32_t p, const RunOptions& options) {
  if (p != 5 && p != 7 && p != 11) fail(ErrorKind::invalid_input, "prop check supports p in {5, 7, 11}");
  const auto field = Field::make(p);
  const std::size_t g = p - 1;
  auto spec = normalized_family(field, g);
  spec.target_a = g - 1;
  spec.require_smooth = false;
  spec.prefilter = true;
  spec.collect_limit = std::numeric_limits<std::size_t>::max();
  auto search = run_search(spec, options);

  ConsistencyReport report;
  report.claim = "prop-genus-p-minus-1";
  report.p = p;
  report.k = 1;
  report.genus = g;
  std::uint64_t mismatched = 0;
  std::uint64_t c1_nonzero = 0;
  std::uint64_t c1_nonzero_mismatched = 0;
  for (const auto& w : search.witnesses) {
    const Poly f(field, w.coeffs);
    const auto candidate = genus_p_minus_1_form(f.coeff(2 * g), f.coeff(g));
    const bool equal = candidate == f;
    const bool c1 = !f.coeff(1).is_zero();
    if (c1) ++c1_nonzero;
    if (!equal) {
      ++mismatched;
      if (c1) ++c1_nonzero_mismatched;
    }
    if (!equal || w.invariants.smooth) report.failures.push_back(w);
  }
  // The c_1 != 0 split isolates models smooth at x = 0; x^2 | f otherwise.
  report.expected = "smooth_rank1=0,rank1_off_form=0";
  report.observed = "smooth_rank1=" + std::to_string(search.counts.a_matched) +
                    ",rank1_off_form=" + std::to_string(mismatched) +
                    ",rank1=" + std::to_string(search.counts.rank_matched) +
                    ",rank1_c1_nonzero=" + std::to_string(c1_nonzero) +
                    ",rank1_c1_nonzero_off_form=" + std::to_string(c1_nonzero_mismatched);
  report.pass = search.counts.a_matched == 0 && mismatched == 0 &&
                search.witnesses.size() == search.counts.rank_matched;
  report.search = std::move(search);
  return report;
}

SearchSpec script_spec(int which, std::uint64_t seed, std::uint64_t samples) {
  if (which == 1) {
    auto spec = normalized_family(Field::make(7), 4);
    spec.target_a = 3;
    spec.prefilter = true;
    return spec;
  }
  if (which == 2) {
    const auto field = Field::make(7, 2);
    SearchSpec spec;
    spec.field = field;
    spec.degree = 9;
    spec.factor = Poly(field, {0, field->neg(1), 1});  // x (x - 1)
    spec.fixed.emplace(7, FieldElement::one(field));
    for (std::size_t i = 0; i < 7; ++i) spec.free.push_back(i);
    spec.mode = SearchMode::random;
    spec.samples = samples;
    spec.seed = seed;
    spec.target_a = 3;
    spec.prefilter = true;
    return spec;
  }
  fail(ErrorKind::invalid_input, "unknown script " + std::to_string(which) + " (expected 1 or 2)");
}

SearchReport reproduce_script(int which, const RunOptions& options, std::uint64_t seed, std::uint64_t samples) {
  return run_search(script_spec(which, seed, samples), options);
}

SearchReport find_p_rank_witnesses(std::uint32_t p, std::size_t genus, const RunOptions& options,
                                   std::size_t per_class) {
  auto spec = normalized_family(Field::make(p), genus);
  spec.target_a = genus - 1;
  spec.collect_limit = per_class;
  return run_search(spec, options);
}

ConsistencyReport verify_p_rank_witnesses(std::uint32_t p, const RunOptions& options) {
  auto search = find_p_rank_witnesses(p, 3, options);
  const auto rank0 = search.a_matched_by_p_rank[0];
  const auto rank1 = search.a_matched_by_p_rank[1];

  ConsistencyReport report;
  report.claim = "p-rank-witnesses";
  report.p = p;
  report.k = 1;
  report.genus = 3;
  report.expected = p == 7 ? "p_rank0>=1,p_rank1>rank0" : "p_rank0>=1,p_rank1>=1";
  report.observed = "p_rank0=" + std::to_string(rank0) + ",p_rank1=" + std::to_string(rank1);
  report.pass = rank0 >= 1 && rank1 >= 1 && (p != 7 || rank1 > rank0);
  report.search = std::move(search);
  return report;
}

}  // namespace cartier
