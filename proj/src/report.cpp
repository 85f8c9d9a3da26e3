#include "cartier/report.hpp"

#include <sstream>

#include "cartier/error.hpp"

namespace cartier {

using nlohmann::json;

json element_json(const Field& field, Code c) {
  if (field.is_prime_field()) return c;
  return field.coords(c);
}

Code element_from_json(const Field& field, const json& j) {
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v >= field.characteristic()) fail(ErrorKind::invalid_input, "element out of range");
    return static_cast<Code>(v);
  }
  if (j.is_array()) return field.from_coords(j.get<std::vector<std::uint32_t>>());
  fail(ErrorKind::invalid_input, "malformed element in report");
}

json invariants_json(const Field& field, std::span<const Code> coeffs, const Invariants& inv) {
  json c = json::array();
  for (auto code : coeffs) c.push_back(element_json(field, code));
  return {{"p", field.characteristic()}, {"k", field.degree()},   {"genus", inv.genus},
          {"smooth", inv.smooth},       {"rank_A", inv.rank_a},   {"a_number", inv.a_number},
          {"p_rank", inv.p_rank},       {"coeffs", std::move(c)}};
}

json invariants_report(const Poly& f, const Invariants& inv) {
  auto doc = invariants_json(*f.field(), f.coeffs(), inv);
  doc["schema"] = kReportSchema;
  doc["kind"] = "invariants";
  doc["field"] = f.field()->to_string();
  return doc;
}

namespace {

json optional_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

json witnesses_json(const Field& field, std::span<const Witness> witnesses) {
  json out = json::array();
  for (const auto& w : witnesses) out.push_back(invariants_json(field, w.coeffs, w.invariants));
  return out;
}

}  // namespace

json to_json(const SearchSpec& spec) {
  const Field& field = *spec.field;
  json fixed = json::array();
  for (const auto& [index, value] : spec.fixed) fixed.push_back({index, element_json(field, value.code())});
  return {{"field", field.to_string()},
          {"p", field.characteristic()},
          {"k", field.degree()},
          {"degree", spec.degree},
          {"genus", spec.genus()},
          {"factor", spec.factor ? json(spec.factor->to_string()) : json(nullptr)},
          {"fixed", std::move(fixed)},
          {"free", spec.free},
          {"mode", spec.mode == SearchMode::exhaustive ? "exhaustive" : "random"},
          {"samples", spec.samples},
          {"seed", spec.seed},
          {"target_a", optional_json(spec.target_a)},
          {"target_p_rank", optional_json(spec.target_p_rank)},
          {"require_smooth", spec.require_smooth},
          {"collect_limit", spec.collect_limit},
          {"prefilter", spec.prefilter}};
}

json to_json(const SearchReport& report) {
  const auto& c = report.counts;
  return {{"schema", kReportSchema},
          {"kind", "search"},
          {"spec", to_json(report.spec)},
          {"counts",
           {{"enumerated", c.enumerated},
            {"squarefree", c.squarefree},
            {"rank_matched", c.rank_matched},
            {"a_matched", c.a_matched},
            {"p_rank_matched", c.p_rank_matched}}},
          {"a_matched_by_p_rank", report.a_matched_by_p_rank},
          {"witnesses", witnesses_json(*report.spec.field, report.witnesses)},
          {"seed", report.seed},
          {"shard_count", report.shard_count},
          {"elapsed_ms", report.elapsed_ms}};
}

json to_json(const ConsistencyReport& report) {
  json doc = {{"schema", kReportSchema}, {"kind", "consistency"}, {"claim", report.claim},
              {"p", report.p},           {"k", report.k},         {"genus", report.genus},
              {"expected", report.expected}, {"observed", report.observed}, {"pass", report.pass}};
  if (report.search) {
    doc["failures"] = witnesses_json(*report.search->spec.field, report.failures);
    doc["search"] = to_json(*report.search);
  } else {
    doc["failures"] = json::array();
    doc["search"] = nullptr;
  }
  return doc;
}

std::string witness_csv(const Field& field, std::span<const Witness> witnesses) {
  std::ostringstream out;
  out << "p,k,genus,coeffs,a_number,p_rank,smooth\n";
  for (const auto& w : witnesses) {
    std::string coeffs;
    for (std::size_t i = 0; i < w.coeffs.size(); ++i) {
      if (i) coeffs += ';';
      coeffs += field.format(w.coeffs[i]);
    }
    if (coeffs.find(',') != std::string::npos) coeffs = '"' + coeffs + '"';
    out << field.characteristic() << ',' << field.degree() << ',' << w.invariants.genus << ',' << coeffs << ','
        << w.invariants.a_number << ',' << w.invariants.p_rank << ',' << (w.invariants.smooth ? "true" : "false")
        << '\n';
  }
  return out.str();
}

std::vector<std::string> revalidate_witnesses(const json& report) {
  std::vector<std::string> problems;
  const json& search = report.contains("search") ? report.at("search") : report;
  if (search.is_null()) return problems;
  const auto field = Field::parse(search.at("spec").at("field").get<std::string>());
  std::size_t index = 0;
  for (const auto& w : search.at("witnesses")) {
    std::vector<Code> coeffs;
    for (const auto& c : w.at("coeffs")) coeffs.push_back(element_from_json(*field, c));
    const Poly f(field, std::move(coeffs));
    const auto inv = invariants(f);
    const auto stored = invariants_json(*field, f.coeffs(), inv);
    for (const char* key : {"genus", "smooth", "rank_A", "a_number", "p_rank", "coeffs"}) {
      if (stored.at(key) != w.at(key)) {
        problems.push_back("witness " + std::to_string(index) + ": " + key + " stored " + w.at(key).dump() +
                           ", recomputed " + stored.at(key).dump());
      }
    }
    ++index;
  }
  return problems;
}

json without_timing(json doc) {
  if (doc.is_object()) {
    doc.erase("elapsed_ms");
    for (auto& item : doc.items()) item.value() = without_timing(item.value());
  } else if (doc.is_array()) {
    for (auto& value : doc) value = without_timing(value);
  }
  return doc;
}

}  // namespace cartier
