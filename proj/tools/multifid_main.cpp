#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "multifid/cli.hpp"
#include "multifid/io.hpp"

namespace {

std::uint64_t env_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("MULTIFID_SEED")) {
    std::istringstream ss(env);
    std::uint64_t value = 0;
    if (ss >> value) return value;
  }
  return fallback;
}

std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> out;
  std::istringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multivariate quantum fidelities: compute, verify, reproduce, search"};
  app.require_subcommand(1);

  multifid::ComputeOptions compute;
  std::string compute_schedule;
  auto* c = app.add_subcommand("compute", "evaluate one fidelity measure on a state-tuple file");
  c->add_option("--input", compute.input_path, "state tuple file")->required();
  c->add_option("--measure", compute.measure,
                "one of: " + [] {
                  std::string s;
                  for (const auto& m : multifid::known_measures()) {
                    if (!s.empty()) s += "|";
                    s += m;
                  }
                  return s;
                }());
  c->add_option("--z", compute.z, "order for avg-pairwise-z (>= 0.5)");
  c->add_option("--k", compute.k, "subset size for kwise-log-euclidean");
  c->add_flag("--strict", compute.strict, "reject inputs beyond 1e-10 tolerances");
  c->add_option("--gap-tol", compute.gap_tol, "SDP duality gap tolerance");
  c->add_option("--eps-schedule", compute_schedule, "comma-separated regularization offsets");
  c->add_option("--seed", compute.seed, "seed for measured-fidelity restarts");
  c->add_flag("--verbose", compute.verbose, "extra diagnostics");
  c->add_option("--out", compute.out_path, "also append the record to this file");

  multifid::VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "run a property suite");
  v->add_option("--suite", verify.suite, "suite id")->required();
  v->add_option("--trials", verify.trials, "number of trials");
  v->add_option("--seed", verify.seed, "root seed");
  v->add_option("--threads", verify.threads, "worker threads (0 = auto)");
  v->add_option("--out", verify.out_path, "report file");
  v->add_option("--input", verify.input_path, "validate this tuple file before the run");
  v->add_flag("--strict", verify.strict, "strict validation of --input");

  multifid::ReproduceOptions reproduce;
  auto* p = app.add_subcommand("reproduce", "recompute the published concrete examples");
  p->add_option("--which", reproduce.which, "supermult|measured-gap|matusita-zero|all");
  p->add_option("--out", reproduce.out_path, "report file");

  multifid::SearchOptions search;
  auto* s = app.add_subcommand("search", "randomized counterexample search");
  s->add_option("--target", search.config.target, "supermult-fsdp|fu-vs-fsdp-strict|chain")
      ->required();
  s->add_option("--trials", search.config.trials, "number of candidates to draw");
  s->add_option("--seed", search.config.seed, "root seed");
  s->add_option("--r-min", search.config.r_min, "smallest tuple size");
  s->add_option("--r-max", search.config.r_max, "largest tuple size");
  s->add_option("--d-min", search.config.d_min, "smallest dimension");
  s->add_option("--d-max", search.config.d_max, "largest dimension");
  s->add_option("--top-k", search.config.top_k, "candidates to report");
  s->add_option("--out", search.out_path, "report file");

  CLI11_PARSE(app, argc, argv);

  if (c->parsed()) {
    if (!compute_schedule.empty()) compute.eps_schedule = parse_schedule(compute_schedule);
    if (c->count("--seed") == 0) compute.seed = env_seed(compute.seed);
    return multifid::cmd_compute(compute, std::cout, std::cerr);
  }
  if (v->parsed()) {
    if (v->count("--seed") == 0) verify.seed = env_seed(verify.seed);
    return multifid::cmd_verify(verify, std::cout, std::cerr);
  }
  if (p->parsed()) return multifid::cmd_reproduce(reproduce, std::cout, std::cerr);
  if (s->parsed()) {
    if (s->count("--seed") == 0) search.config.seed = env_seed(search.config.seed);
    return multifid::cmd_search(search, std::cout, std::cerr);
  }
  return 0;
}
