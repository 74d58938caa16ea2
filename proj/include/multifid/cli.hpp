#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "multifid/harness.hpp"

namespace multifid {

// Exit-code contract: 0 ok, 1 verification failures, 2 parse error,
// 3 invariant violation, 4 numerical/solver failure.
enum ExitCode {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitParse = 2,
  kExitInvariant = 3,
  kExitNumerical = 4,
};

struct ComputeOptions {
  std::string input_path;
  std::string measure = "fsdp";
  double z = 0.5;
  int k = 2;
  bool strict = false;
  double gap_tol = 1e-9;
  std::vector<double> eps_schedule;  // empty -> defaults
  std::uint64_t seed = 0x5eedULL;
  bool verbose = false;
  std::string out_path;
};

struct VerifyOptions {
  std::string suite;
  int trials = 100;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_path;
  std::string input_path;  // optional: validated (and dumped back) before the run
  bool strict = false;
};

struct ReproduceOptions {
  std::string which = "all";  // supermult | measured-gap | matusita-zero | all
  std::string out_path;
};

struct SearchOptions {
  SearchConfig config;
  std::string out_path;
};

int cmd_compute(const ComputeOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int cmd_reproduce(const ReproduceOptions& options, std::ostream& out, std::ostream& err);
int cmd_search(const SearchOptions& options, std::ostream& out, std::ostream& err);

std::vector<std::string> known_measures();

}  // namespace multifid
