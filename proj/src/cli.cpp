#include "multifid/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "multifid/io.hpp"

namespace multifid {

namespace {

using Fields = std::vector<std::pair<std::string, std::string>>;

void emit(std::ostream& out, std::ofstream* file, const Fields& fields) {
  const std::string line = record_line(fields);
  out << line << "\n";
  if (file && file->is_open()) (*file) << line << "\n";
}

void append_cert(Fields& fields, const Certificate& cert) {
  if (std::isfinite(cert.gap)) fields.emplace_back("gap", format_double(cert.gap));
  if (std::isfinite(cert.eps_used)) fields.emplace_back("eps", format_double(cert.eps_used));
  if (cert.iterations > 0) fields.emplace_back("iterations", std::to_string(cert.iterations));
  if (std::isfinite(cert.gap) && !cert.optimal) fields.emplace_back("status", "approximate");
}

struct MeasureOutcome {
  FidelityValue value;
  Fields extra;
};

MeasureOutcome evaluate_measure(const std::string& measure, const StateTuple& tuple,
                                const ComputeOptions& options) {
  SolveOptions solve_opts;
  solve_opts.gap_tol = options.gap_tol;
  if (options.verbose) solve_opts.trace = &std::cerr;
  EpsSchedule schedule = EpsSchedule::defaults();
  if (!options.eps_schedule.empty()) schedule.eps = options.eps_schedule;

  MeasureOutcome outcome;
  if (measure == "fsdp" || measure == "fsdp-dual") {
    outcome.value = f_sdp(tuple, FsdpRoute::Dual, solve_opts);
  } else if (measure == "fsdp-primal") {
    outcome.value = f_sdp(tuple, FsdpRoute::Primal, solve_opts);
  } else if (measure == "fsdp-both") {
    outcome.value = f_sdp(tuple, FsdpRoute::Both, solve_opts);
  } else if (measure == "avg-pairwise-z") {
    outcome.value = avg_pairwise_z(tuple, ZParam::of(options.z));
  } else if (measure == "avg-pairwise-uhlmann") {
    outcome.value = avg_pairwise_z(tuple, ZParam::of(0.5));
  } else if (measure == "avg-pairwise-holevo") {
    outcome.value = avg_pairwise_z(tuple, ZParam::of(1.0));
  } else if (measure == "avg-pairwise-flat") {
    outcome.value = avg_kwise_log_euclidean(tuple, 2, schedule);
  } else if (measure == "secrecy") {
    outcome.value = f_secrecy(tuple, solve_opts);
    outcome.extra.emplace_back("secrecy_s",
                               format_double(secrecy_measure(tuple, solve_opts)));
  } else if (measure == "secrecy-measure") {
    FidelityValue v;
    v.raw_value = secrecy_measure(tuple, solve_opts);
    v.value = std::min(1.0, std::max(0.0, v.raw_value));
    v.method = Method::Secrecy;
    outcome.value = v;
  } else if (measure == "log-euclidean") {
    outcome.value = f_log_euclidean(tuple, schedule);
  } else if (measure == "kwise-log-euclidean") {
    outcome.value = avg_kwise_log_euclidean(tuple, options.k, schedule);
  } else if (measure == "oveloh") {
    OvelohResult ov = oveloh(tuple, schedule, options.seed);
    outcome.value = ov.divergence;
    outcome.extra.emplace_back("descent_improvement", format_double(ov.descent_improvement));
    outcome.extra.emplace_back("objective_at_optimizer",
                               format_double(ov.objective_at_optimizer));
  } else if (measure == "min-d-half") {
    FidelityValue v;
    v.raw_value = min_d_half_closed_form(tuple);
    v.value = std::min(1.0, std::max(0.0, v.raw_value));
    v.method = Method::MinDHalf;
    outcome.value = v;
  } else if (measure == "measured") {
    MeasuredOptions mo;
    mo.seed = options.seed;
    outcome.value = f_measured(tuple, mo);
  } else if (measure == "geometric-sdp") {
    outcome.value = geometric_multi_value(tuple, solve_opts);
  } else if (measure == "kstar") {
    outcome.value = kstar_value(tuple, solve_opts);
  } else if (measure == "sdp-lower-bound") {
    FidelityValue v;
    v.raw_value = sdp_lower_bound_perm(tuple);
    v.value = std::min(1.0, std::max(0.0, v.raw_value));
    v.method = Method::PermLowerBound;
    outcome.value = v;
  } else {
    throw InvariantViolation("unknown measure '" + measure + "'");
  }
  return outcome;
}

}  // namespace

std::vector<std::string> known_measures() {
  return {"fsdp",          "fsdp-primal",        "fsdp-dual",
          "fsdp-both",     "avg-pairwise-z",     "avg-pairwise-uhlmann",
          "avg-pairwise-holevo", "avg-pairwise-flat", "secrecy",
          "secrecy-measure", "log-euclidean",    "kwise-log-euclidean",
          "oveloh",        "min-d-half",         "measured",
          "geometric-sdp", "kstar",              "sdp-lower-bound"};
}

int cmd_compute(const ComputeOptions& options, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  if (!options.out_path.empty()) file.open(options.out_path, std::ios::binary);
  try {
    StateTupleFile raw = read_state_file(options.input_path);
    StateTuple tuple =
        to_tuple(raw, options.strict ? Validation::Strict : Validation::Repair);
    MeasureOutcome outcome = evaluate_measure(options.measure, tuple, options);
    Fields fields;
    fields.emplace_back("measure", options.measure);
    if (tuple.size() * tuple.dim() > 27)
      fields.emplace_back("note", "\"large tuple: SDP cost grows cubically beyond r*d=27\"");
    fields.emplace_back("value", format_double(outcome.value.value));
    fields.emplace_back("raw", format_double(outcome.value.raw_value));
    append_cert(fields, outcome.value.cert);
    for (auto& f : outcome.extra) fields.push_back(std::move(f));
    fields.emplace_back("input", options.input_path);
    emit(out, &file, fields);
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

namespace {

void emit_reports(std::ostream& out, std::ofstream* file, const std::string& header_key,
                  const std::string& header_value,
                  const std::vector<PropertyReport>& reports) {
  for (const auto& rep : reports) {
    Fields fields;
    fields.emplace_back(header_key, header_value);
    fields.emplace_back("property", rep.property_id);
    fields.emplace_back("trials", std::to_string(rep.trials));
    fields.emplace_back("failures", std::to_string(rep.failures));
    fields.emplace_back("worst_margin", format_double(rep.worst_margin));
    fields.emplace_back("slack", format_double(rep.slack));
    fields.emplace_back("worst_input", rep.worst_input_digest);
    fields.emplace_back("elapsed_s", format_double(rep.elapsed_seconds));
    emit(out, file, fields);
  }
}

int total_failures(const std::vector<PropertyReport>& reports) {
  int n = 0;
  for (const auto& rep : reports) n += rep.failures;
  return n;
}

}  // namespace

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  if (!options.out_path.empty()) file.open(options.out_path, std::ios::binary);
  try {
    if (!options.input_path.empty()) {
      // validate the provided tuple before running the suite
      StateTupleFile raw = read_state_file(options.input_path);
      StateTuple tuple =
          to_tuple(raw, options.strict ? Validation::Strict : Validation::Repair);
      Fields fields;
      fields.emplace_back("input", options.input_path);
      fields.emplace_back("states", std::to_string(tuple.size()));
      fields.emplace_back("dim", std::to_string(tuple.dim()));
      fields.emplace_back("validated", "1");
      emit(out, &file, fields);
    }
    SuiteOptions suite_opts;
    suite_opts.trials = options.trials;
    suite_opts.seed = options.seed;
    suite_opts.threads = options.threads;
    std::vector<PropertyReport> reports = run_property_suite(options.suite, suite_opts);
    emit_reports(out, &file, "suite", options.suite, reports);
    Fields summary;
    summary.emplace_back("suite", options.suite);
    summary.emplace_back("result", total_failures(reports) == 0 ? "pass" : "fail");
    summary.emplace_back("digest", report_digest(reports));
    emit(out, &file, summary);
    return total_failures(reports) == 0 ? kExitOk : kExitVerifyFailed;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int cmd_reproduce(const ReproduceOptions& options, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  if (!options.out_path.empty()) file.open(options.out_path, std::ios::binary);
  try {
    std::vector<PropertyReport> all = reproduce_published_counterexamples();
    std::vector<PropertyReport> selected;
    for (const auto& rep : all) {
      const bool is_supermult = rep.property_id.rfind("published-supermult", 0) == 0;
      const bool is_measured = rep.property_id.rfind("published-measured-gap", 0) == 0;
      const bool is_matusita = rep.property_id.rfind("published-matusita", 0) == 0;
      if (options.which == "all" || (options.which == "supermult" && is_supermult) ||
          (options.which == "measured-gap" && is_measured) ||
          (options.which == "matusita-zero" && is_matusita))
        selected.push_back(rep);
    }
    if (selected.empty())
      throw InvariantViolation("unknown reproduction target '" + options.which + "'");
    emit_reports(out, &file, "reproduce", options.which, selected);
    Fields summary;
    summary.emplace_back("reproduce", options.which);
    summary.emplace_back("result", total_failures(selected) == 0 ? "pass" : "fail");
    emit(out, &file, summary);
    return total_failures(selected) == 0 ? kExitOk : kExitVerifyFailed;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int cmd_search(const SearchOptions& options, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  if (!options.out_path.empty()) file.open(options.out_path, std::ios::binary);
  try {
    std::vector<SearchCandidate> found = search_counterexamples(options.config);
    int rank = 0;
    for (const auto& cand : found) {
      Fields fields;
      fields.emplace_back("target", options.config.target);
      fields.emplace_back("rank", std::to_string(rank++));
      fields.emplace_back("margin", format_double(cand.margin));
      fields.emplace_back("seed", std::to_string(cand.trial_seed));
      fields.emplace_back("r", std::to_string(cand.r));
      fields.emplace_back("d", std::to_string(cand.d));
      fields.emplace_back("detail", "\"" + cand.description + "\"");
      emit(out, &file, fields);
    }
    return kExitOk;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace multifid
