#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <fstream>
#include <optional>
#include <string_view>

#include <CLI11.hpp>

#include "cartier/error.hpp"
#include "cartier/report.hpp"
#include "cartier/search.hpp"
#include "cartier/suites.hpp"

namespace cartier::cli {

namespace {

struct FieldFlags {
  std::uint32_t p = 0;
  std::uint32_t k = 1;
  std::string modulus;
};

struct OutputFlags {
  bool json = false;
  bool csv = false;
  std::string out_path;
  unsigned threads = 1;
  std::uint64_t budget = std::uint64_t{1} << 32;
};

void add_field_flags(CLI::App* app, FieldFlags& flags, bool require_p) {
  auto* opt = app->add_option("--p", flags.p, "Field characteristic (odd prime)");
  if (require_p) opt->required();
  app->add_option("--k", flags.k, "Extension degree")->capture_default_str();
  app->add_option("--mod", flags.modulus, "Monic irreducible modulus, ascending, e.g. [1,0,1]");
}

void add_output_flags(CLI::App* app, OutputFlags& flags) {
  app->add_flag("--json", flags.json, "Emit the JSON report (default)");
  app->add_flag("--csv", flags.csv, "Emit witness rows as CSV");
  app->add_option("--out", flags.out_path, "Write the report to PATH instead of stdout");
  app->add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--budget", flags.budget, "Cap on exhaustive candidates")->capture_default_str();
}

std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    } else if (text[i] == '[') {
      ++depth;
    } else if (text[i] == ']') {
      --depth;
    }
  }
  return parts;
}

std::size_t parse_index(std::string_view text) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorKind::invalid_input, "malformed coefficient index '" + std::string(text) + "'");
  }
  return v;
}

FieldPtr make_field(const FieldFlags& flags) {
  std::optional<std::vector<std::uint32_t>> modulus;
  if (!flags.modulus.empty()) {
    std::string text = flags.modulus;
    if (text.front() == '[') {
      if (text.back() != ']') fail(ErrorKind::invalid_input, "malformed --mod list");
      text = text.substr(1, text.size() - 2);
    }
    std::vector<std::uint32_t> coeffs;
    for (auto part : split_top_level(text)) coeffs.push_back(static_cast<std::uint32_t>(parse_index(part)));
    modulus = std::move(coeffs);
  }
  return Field::make(flags.p, flags.k, std::move(modulus));
}

// "c0=0,c9=1" with extension elements written as "c3=[1,2]".
std::map<std::size_t, FieldElement> parse_fixed(const FieldPtr& field, std::string_view text) {
  std::map<std::size_t, FieldElement> fixed;
  if (text.empty()) return fixed;
  for (auto part : split_top_level(text)) {
    auto eq = part.find('=');
    if (part.empty() || part.front() != 'c' || eq == std::string_view::npos) {
      fail(ErrorKind::invalid_input, "malformed --fix entry '" + std::string(part) + "' (expected cN=value)");
    }
    auto index = parse_index(part.substr(1, eq - 1));
    if (!fixed.emplace(index, FieldElement::parse(field, part.substr(eq + 1))).second) {
      fail(ErrorKind::invalid_input, "coefficient c" + std::to_string(index) + " fixed twice");
    }
  }
  return fixed;
}

class Emitter {
 public:
  Emitter(const OutputFlags& flags, std::ostream& out) : flags_(flags), out_(out) {}

  void emit(const nlohmann::json& doc, const Field* field, std::span<const Witness> witnesses) {
    std::string text;
    if (flags_.csv) {
      text = field ? witness_csv(*field, witnesses) : "";
    } else {
      text = doc.dump(2) + "\n";
    }
    if (flags_.out_path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(flags_.out_path, std::ios::binary);
    if (!file) fail(ErrorKind::invalid_input, "cannot open output file " + flags_.out_path);
    file << text;
  }

 private:
  const OutputFlags& flags_;
  std::ostream& out_;
};

void summarize_counts(std::ostream& err, const SearchReport& r) {
  err << "enumerated=" << r.counts.enumerated << " squarefree=" << r.counts.squarefree
      << " rank_matched=" << r.counts.rank_matched << " a_matched=" << r.counts.a_matched
      << " p_rank_matched=" << r.counts.p_rank_matched << " witnesses=" << r.witnesses.size() << '\n';
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
      return kInvalidInput;
    case ErrorKind::unsupported:
      return kUnsupported;
    case ErrorKind::budget:
      return kBudgetExceeded;
  }
  return kInvalidInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cartier-Manin matrices, a-numbers and p-ranks of hyperelliptic curves y^2 = f(x)", "cartier"};
  app.require_subcommand(1);

  FieldFlags field_flags;
  OutputFlags output;

  auto* inv_cmd = app.add_subcommand("invariants", "Invariants of y^2 = f(x)");
  std::string poly_text;
  add_field_flags(inv_cmd, field_flags, true);
  add_output_flags(inv_cmd, output);
  inv_cmd->add_option("--poly", poly_text, "Coefficients of f, ascending, comma-separated")->required();

  auto* search_cmd = app.add_subcommand("search", "Exhaustive or random search over a curve family");
  std::optional<std::size_t> genus, degree, target_a, target_p_rank;
  std::string fix_text, free_text, factor_text;
  bool exhaustive = false, random = false, require_smooth = false, prefilter = false;
  std::uint64_t samples = 0, seed = 0;
  std::size_t limit = 10;
  add_field_flags(search_cmd, field_flags, true);
  add_output_flags(search_cmd, output);
  search_cmd->add_option("--genus", genus, "Genus g (degree 2g+1)");
  search_cmd->add_option("--degree", degree, "Degree of f (odd)");
  search_cmd->add_option("--fix", fix_text, "Fixed cofactor coefficients, e.g. c0=0,c9=1");
  search_cmd->add_option("--free", free_text, "Free coefficient indices (default: all unfixed)");
  search_cmd->add_option("--factor", factor_text, "Fixed factor polynomial, e.g. 0,6,1 for x(x-1) over F_7");
  auto* ex_flag = search_cmd->add_flag("--exhaustive", exhaustive, "Enumerate the whole family");
  auto* rnd_flag = search_cmd->add_flag("--random", random, "Sample the family");
  ex_flag->excludes(rnd_flag);
  search_cmd->add_option("--samples", samples, "Random samples");
  search_cmd->add_option("--seed", seed, "Random seed");
  search_cmd->add_flag("--require-smooth", require_smooth, "Only count squarefree f");
  search_cmd->add_option("--target-a", target_a, "Target a-number");
  search_cmd->add_option("--target-p-rank", target_p_rank, "Target p-rank");
  search_cmd->add_flag("--prefilter", prefilter, "Boundary-row rank test before full expansion (rank-1 targets)");
  search_cmd->add_option("--limit", limit, "Witnesses kept per p-rank class")->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  std::optional<std::size_t> verify_genus;
  add_field_flags(verify_cmd, field_flags, false);
  add_output_flags(verify_cmd, output);
  verify_cmd->add_option("suite", suite, "theorem1 | prop-p5 | p-rank-witnesses")
      ->required()
      ->check(CLI::IsMember({"theorem1", "prop-p5", "p-rank-witnesses"}));
  verify_cmd->add_option("--genus", verify_genus, "Genus (theorem1)");

  auto* repro_cmd = app.add_subcommand("reproduce", "Re-run one of the two historical search scripts");
  int script = 0;
  std::uint64_t repro_seed = kScript2DefaultSeed;
  std::uint64_t repro_samples = kScript2Samples;
  add_output_flags(repro_cmd, output);
  repro_cmd->add_option("--script", script, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  repro_cmd->add_option("--seed", repro_seed, "Seed for script 2")->capture_default_str();
  repro_cmd->add_option("--samples", repro_samples, "Samples for script 2")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: invalid-input: " << msg << '\n';
    return kInvalidInput;
  }

  try {
    const RunOptions run_options{output.threads, output.budget};
    Emitter emitter(output, out);

    if (inv_cmd->parsed()) {
      const auto field = make_field(field_flags);
      const Poly f = Poly::parse(field, poly_text);
      const auto inv = invariants(f);
      std::vector<Witness> rows{{std::vector<Code>(f.coeffs().begin(), f.coeffs().end()), inv}};
      emitter.emit(invariants_report(f, inv), field.get(), rows);
      err << "genus=" << inv.genus << " smooth=" << (inv.smooth ? "true" : "false") << " rank_A=" << inv.rank_a
          << " a_number=" << inv.a_number << " p_rank=" << inv.p_rank << '\n';
      return kOk;
    }

    if (search_cmd->parsed()) {
      const auto field = make_field(field_flags);
      SearchSpec spec;
      spec.field = field;
      if (genus && degree && *degree != 2 * *genus + 1) {
        fail(ErrorKind::invalid_input, "--genus and --degree disagree");
      }
      if (genus) {
        spec.degree = 2 * *genus + 1;
      } else if (degree) {
        spec.degree = *degree;
      } else {
        fail(ErrorKind::invalid_input, "one of --genus or --degree is required");
      }
      if (!factor_text.empty()) spec.factor = Poly::parse(field, factor_text);
      if (spec.degree < 3) fail(ErrorKind::invalid_input, "family degree must be >= 3");
      spec.fixed = parse_fixed(field, fix_text);
      const std::size_t cofactor_deg = spec.cofactor_degree();
      if (!free_text.empty()) {
        for (auto part : split_top_level(free_text)) spec.free.push_back(parse_index(part));
      } else {
        for (std::size_t i = 0; i <= cofactor_deg; ++i) {
          if (!spec.fixed.contains(i)) spec.free.push_back(i);
        }
      }
      spec.mode = random ? SearchMode::random : SearchMode::exhaustive;
      spec.samples = samples;
      spec.seed = seed;
      spec.target_a = target_a;
      spec.target_p_rank = target_p_rank;
      spec.require_smooth = require_smooth;
      spec.collect_limit = limit;
      spec.prefilter = prefilter;
      const auto report = run_search(spec, run_options);
      emitter.emit(to_json(report), field.get(), report.witnesses);
      summarize_counts(err, report);
      return kOk;
    }

    if (verify_cmd->parsed()) {
      ConsistencyReport report;
      if (suite == "theorem1") {
        if (field_flags.p == 0 || !verify_genus) fail(ErrorKind::invalid_input, "theorem1 needs --p and --genus");
        report = verify_theorem1(field_flags.p, field_flags.k, *verify_genus, run_options);
      } else if (suite == "prop-p5") {
        if (field_flags.p != 0 && field_flags.p != 5) fail(ErrorKind::invalid_input, "prop-p5 runs at p = 5");
        report = verify_genus_p_minus_1(5, run_options);
      } else {
        if (field_flags.p == 0) fail(ErrorKind::invalid_input, "p-rank-witnesses needs --p");
        report = verify_p_rank_witnesses(field_flags.p, run_options);
      }
      const Field* field = report.search ? report.search->spec.field.get() : nullptr;
      const auto& rows = report.pass ? report.search->witnesses : report.failures;
      emitter.emit(to_json(report), field, rows);
      err << report.claim << ": expected " << report.expected << ", observed " << report.observed << ", "
          << (report.pass ? "PASS" : "FAIL") << '\n';
      return report.pass ? kOk : kVerificationFailed;
    }

    if (repro_cmd->parsed()) {
      const auto report = reproduce_script(script, run_options, repro_seed, repro_samples);
      emitter.emit(to_json(report), report.spec.field.get(), report.witnesses);
      const auto observed = report.counts.a_matched;
      summarize_counts(err, report);
      if (script == 1) {
        err << "script 1: expected N=0, observed " << observed << ", " << (observed == 0 ? "PASS" : "FAIL") << '\n';
        return observed == 0 ? kOk : kVerificationFailed;
      }
      err << "script 2: expected N=0, observed " << observed << " over " << report.counts.enumerated
          << " samples (seed " << report.seed << "), " << (observed == 0 ? "PASS" : "NOTABLE: re-verify witnesses")
          << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << to_string(e.kind()) << ": " << msg << '\n';
    return exit_code_for(e.kind());
  }
  return kInvalidInput;
}

}  // namespace cartier::cli
