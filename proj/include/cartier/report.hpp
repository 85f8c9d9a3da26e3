#pragma once

// JSON and CSV serialization of invariants, search and consistency reports.
//
// Every top-level document carries "schema": "cartier-report/1" and a "kind".
// Field elements are JSON numbers for prime fields and coordinate arrays
// (ascending powers of the generator) for extension fields, which matches the
// element text format. Object keys are emitted in sorted order, so equal
// reports serialize to identical bytes.

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartier/curve.hpp"
#include "cartier/search.hpp"
#include "cartier/suites.hpp"

namespace cartier {

inline constexpr const char* kReportSchema = "cartier-report/1";

nlohmann::json element_json(const Field& field, Code c);
Code element_from_json(const Field& field, const nlohmann::json& j);

/// {"p", "k", "genus", "smooth", "rank_A", "a_number", "p_rank", "coeffs"}
nlohmann::json invariants_json(const Field& field, std::span<const Code> coeffs, const Invariants& inv);

/// Top-level document for a single curve.
nlohmann::json invariants_report(const Poly& f, const Invariants& inv);

nlohmann::json to_json(const SearchSpec& spec);
nlohmann::json to_json(const SearchReport& report);
nlohmann::json to_json(const ConsistencyReport& report);

/// Header plus one row per witness: p,k,genus,coeffs,a_number,p_rank,smooth
/// with coeffs semicolon-joined in element text format (quoted when the
/// text contains commas).
std::string witness_csv(const Field& field, std::span<const Witness> witnesses);

/// Recomputes invariants for every witness in a serialized search report
/// (or the "search" member of a consistency report) and returns one message
/// per discrepancy; empty means every witness re-validates.
std::vector<std::string> revalidate_witnesses(const nlohmann::json& report);

/// Copy of a document with every "elapsed_ms" member removed, recursively.
nlohmann::json without_timing(nlohmann::json doc);

}  // namespace cartier
