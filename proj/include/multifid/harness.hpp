#pragma once

#include <string>
#include <vector>

#include "multifid/multivariate.hpp"

namespace multifid {

// Aggregated outcome of one verified property across a suite's trials.
// A trial fails the property when its margin drops below -slack.
struct PropertyReport {
  std::string property_id;
  int trials = 0;
  int failures = 0;
  double worst_margin = 0.0;
  double slack = 0.0;
  std::string worst_input_digest;  // seed + tuple descriptor of the worst trial
  double elapsed_seconds = 0.0;
};

struct SuiteOptions {
  int trials = 100;
  std::uint64_t seed = 1;
  int threads = 0;              // 0 -> hardware concurrency (capped at 8)
  std::string dump_dir;         // failing inputs are serialized here ("" -> cwd)
  bool dump_failures = true;
};

std::vector<std::string> known_suites();

// Deterministic given (suite_id, trials, seed); trials run concurrently with
// per-trial derived seeds and are aggregated by trial index.
std::vector<PropertyReport> run_property_suite(const std::string& suite_id,
                                               const SuiteOptions& options);

// Recomputes the published concrete examples from their hard-coded inputs
// and checks the published directions and values.
std::vector<PropertyReport> reproduce_published_counterexamples();

// Digest of a report sequence, excluding elapsed time (bit-reproducible for
// fixed suite/trials/seed).
std::string report_digest(const std::vector<PropertyReport>& reports);

struct SearchConfig {
  std::string target;  // supermult-fsdp | fu-vs-fsdp-strict | chain
  int trials = 1000;
  std::uint64_t seed = 1;
  int r_min = 3, r_max = 3;
  int d_min = 3, d_max = 3;
  int top_k = 5;
};

struct SearchCandidate {
  double margin = 0.0;  // violation margin (or closeness score for "chain")
  std::uint64_t trial_seed = 0;
  int r = 0, d = 0;
  std::string description;
};

// Randomized counterexample search; candidates ranked by raw margin, ties
// broken by smaller dimension then smaller r.
std::vector<SearchCandidate> search_counterexamples(const SearchConfig& config);

// ---- hard-coded published inputs ---------------------------------------------

// The three 2x2 density matrices exhibiting F_U > F_SDP.
StateTuple published_qubit_triple();

// The three 3-dimensional pure states published with the
// super-multiplicativity violation claim (normalized as given).
std::vector<std::vector<cplx>> published_pure_triple();

// The three probability vectors with zero Matusita fidelity but pairwise
// overlapping supports.
std::vector<ProbabilityVector> matusita_zero_vectors();

// ---- deterministic random generators shared by suites and search -------------

StateTuple random_tuple(int r, int d, bool full_rank, std::uint64_t seed);
ClassicalTuple random_classical_tuple(int r, int n, std::uint64_t seed);

}  // namespace multifid
