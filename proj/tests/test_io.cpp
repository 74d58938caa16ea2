#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "multifid/cli.hpp"
#include "multifid/harness.hpp"
#include "multifid/io.hpp"

using namespace multifid;

namespace {

std::string write_to_string(const StateTupleFile& file) {
  std::ostringstream os;
  write_state_file(os, file);
  return os.str();
}

std::string temp_path(const std::string& name) { return "./" + name; }

}  // namespace

TEST_CASE("round trip is byte identical") {
  StateTuple t = random_tuple(3, 3, false, 21);
  StateTupleFile file = from_tuple(t, {"a", "b", "c"});
  const std::string first = write_to_string(file);
  std::istringstream in(first);
  StateTupleFile parsed = read_state_file(in);
  const std::string second = write_to_string(parsed);
  CHECK(first == second);
  CHECK(parsed.states[0].label == "a");

  // and the parsed tuple matches the original to the last bit
  StateTuple back = to_tuple(parsed, Validation::Strict);
  for (int i = 0; i < t.size(); ++i)
    CHECK((back[i].matrix() - t[i].matrix()).max_abs() == 0.0);
}

TEST_CASE("format_double round trips through parsing") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 123456.789}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("parse errors carry line information") {
  const std::string missing_header = "dim 2\n";
  std::istringstream in1(missing_header);
  CHECK_THROWS_AS(read_state_file(in1), ParseError);

  const std::string bad_number =
      "multifid-states\nschema_version 1\ndim 2\ncount 1\nstate 0\nre\n0.5 x\n0 0.5\nim\n0 0\n0 "
      "0\n";
  std::istringstream in2(bad_number);
  try {
    read_state_file(in2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(std::string(e.what()).find("line 7") != std::string::npos);
  }

  const std::string short_row =
      "multifid-states\nschema_version 1\ndim 2\ncount 1\nstate 0\nre\n0.5\n";
  std::istringstream in3(short_row);
  CHECK_THROWS_AS(read_state_file(in3), ParseError);
}

TEST_CASE("strict and repair validation modes") {
  // slightly non-Hermitian, trace-drifted input
  StateTupleFile file;
  file.dim = 2;
  StateTupleFile::RawState s1;
  s1.re = {0.5, 0.1, 0.1, 0.5005};
  s1.im = {0.0, 0.02, -0.019, 0.0};  // asymmetric imaginary part
  file.states.push_back(s1);
  file.states.push_back(s1);
  CHECK_THROWS_AS(to_tuple(file, Validation::Strict), Error);
  StateTuple repaired = to_tuple(file, Validation::Repair);
  CHECK(repaired[0].hermitian().trace_real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("record lines") {
  const std::string line = record_line({{"measure", "fsdp"}, {"value", "0.5"}});
  CHECK(line == "measure=fsdp value=0.5");
}

TEST_CASE("cmd_compute end to end") {
  const std::string path = temp_path("io_test_tuple.states");
  {
    ClassicalTuple probs = random_classical_tuple(3, 2, 31);
    StateTuple t = commuting_tuple_from_probs(probs.dists());
    write_state_file(path, from_tuple(t));

    ComputeOptions opts;
    opts.input_path = path;
    opts.measure = "fsdp";
    std::ostringstream out, err;
    CHECK(cmd_compute(opts, out, err) == kExitOk);
    CHECK(out.str().find("measure=fsdp") != std::string::npos);
    CHECK(out.str().find("value=") != std::string::npos);

    // the computed value equals the classical average pairwise fidelity
    const std::string text = out.str();
    const auto pos = text.find("value=");
    const double value = std::stod(text.substr(pos + 6));
    CHECK(value == doctest::Approx(avg_pairwise_classical(probs)).epsilon(1e-6));
  }

  // identical states: every measure returns 1
  {
    Rng rng(37);
    DensityMatrix rho = random_density(2, 2, rng);
    StateTuple same({rho, rho, rho});
    write_state_file(path, from_tuple(same));
    for (const std::string measure :
         {"fsdp", "avg-pairwise-uhlmann", "secrecy", "log-euclidean"}) {
      ComputeOptions opts;
      opts.input_path = path;
      opts.measure = measure;
      std::ostringstream out, err;
      CHECK(cmd_compute(opts, out, err) == kExitOk);
      const auto pos = out.str().find("value=");
      const double value = std::stod(out.str().substr(pos + 6));
      INFO(measure);
      CHECK(value == doctest::Approx(1.0).epsilon(1e-5));
    }
  }
  std::remove(path.c_str());
}

TEST_CASE("cmd_compute exit codes") {
  std::ostringstream out, err;
  // missing file -> parse error
  ComputeOptions opts;
  opts.input_path = "./does-not-exist.states";
  CHECK(cmd_compute(opts, out, err) == kExitParse);

  // malformed file -> parse error with location
  const std::string bad_path = temp_path("io_test_bad.states");
  {
    std::ofstream f(bad_path);
    f << "multifid-states\nschema_version 1\ndim 2\ncount 1\nstate 0\nre\nnot a number here\n";
  }
  opts.input_path = bad_path;
  CHECK(cmd_compute(opts, out, err) == kExitParse);
  std::remove(bad_path.c_str());

  // invariant violation (negative eigenvalue) under --strict -> exit 3
  const std::string invalid_path = temp_path("io_test_invalid.states");
  {
    std::ofstream f(invalid_path);
    f << "multifid-states\nschema_version 1\ndim 2\ncount 2\n";
    f << "state 0\nre\n1.2 0\n0 -0.2\nim\n0 0\n0 0\n";
    f << "state 1\nre\n0.5 0\n0 0.5\nim\n0 0\n0 0\n";
  }
  opts.input_path = invalid_path;
  opts.strict = true;
  CHECK(cmd_compute(opts, out, err) == kExitInvariant);
  // repair mode accepts it
  opts.strict = false;
  CHECK(cmd_compute(opts, out, err) == kExitOk);

  // unknown measure -> invariant violation
  opts.measure = "bogus";
  CHECK(cmd_compute(opts, out, err) == kExitInvariant);
  std::remove(invalid_path.c_str());
}

TEST_CASE("cmd_verify produces a report file and deterministic digest") {
  VerifyOptions opts;
  opts.suite = "kwise-ordering-classical";
  opts.trials = 5;
  opts.seed = 777;
  opts.out_path = temp_path("io_test_report.txt");
  std::ostringstream out1, out2, err;
  CHECK(cmd_verify(opts, out1, err) == kExitOk);
  CHECK(cmd_verify(opts, out2, err) == kExitOk);

  // digest line identical across runs
  auto digest_of = [](const std::string& text) {
    const auto pos = text.find("digest=");
    return text.substr(pos, text.find('\n', pos) - pos);
  };
  CHECK(digest_of(out1.str()) == digest_of(out2.str()));

  std::ifstream report(opts.out_path);
  REQUIRE(report.good());
  std::string first_line;
  std::getline(report, first_line);
  CHECK(first_line.find("suite=kwise-ordering-classical") != std::string::npos);
  std::remove(opts.out_path.c_str());

  // unknown suite -> invariant exit
  opts.suite = "nope";
  opts.out_path.clear();
  std::ostringstream out3;
  CHECK(cmd_verify(opts, out3, err) == kExitInvariant);

  // corrupted state file via --input -> invariant exit
  const std::string invalid_path = temp_path("io_test_invalid2.states");
  {
    std::ofstream f(invalid_path);
    f << "multifid-states\nschema_version 1\ndim 2\ncount 2\n";
    f << "state 0\nre\n1.4 0\n0 -0.4\nim\n0 0\n0 0\n";
    f << "state 1\nre\n0.5 0\n0 0.5\nim\n0 0\n0 0\n";
  }
  VerifyOptions with_input;
  with_input.suite = "kwise-ordering-classical";
  with_input.trials = 2;
  with_input.input_path = invalid_path;
  with_input.strict = true;
  std::ostringstream out4;
  CHECK(cmd_verify(with_input, out4, err) == kExitInvariant);
  std::remove(invalid_path.c_str());

  // failing suite -> exit 1
  VerifyOptions failing;
  failing.suite = "selftest-always-fail";
  failing.trials = 1;
  std::ostringstream out5;
  CHECK(cmd_verify(failing, out5, err) == kExitVerifyFailed);
  std::remove("./multifid-fail-selftest-always-fail-0.states");
}

TEST_CASE("cmd_reproduce and cmd_search") {
  std::ostringstream out, err;
  ReproduceOptions rep;
  rep.which = "matusita-zero";
  CHECK(cmd_reproduce(rep, out, err) == kExitOk);
  CHECK(out.str().find("published-matusita.zero") != std::string::npos);

  rep.which = "bogus";
  std::ostringstream out2;
  CHECK(cmd_reproduce(rep, out2, err) == kExitInvariant);

  SearchOptions search;
  search.config.target = "supermult-fsdp";
  search.config.trials = 16;
  search.config.seed = 3;
  search.config.top_k = 2;
  std::ostringstream out3;
  CHECK(cmd_search(search, out3, err) == kExitOk);
  CHECK(out3.str().find("target=supermult-fsdp") != std::string::npos);
  CHECK(out3.str().find("rank=0") != std::string::npos);
}
