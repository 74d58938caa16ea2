#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "multifid/quantum.hpp"

namespace multifid {

// On-disk form of a state tuple: explicit real/imaginary grids, canonical
// field order, shortest round-trip decimals.  Reading then re-writing a
// canonical file is byte-identical.
struct StateTupleFile {
  struct RawState {
    std::vector<double> re;  // row-major d x d
    std::vector<double> im;
    std::string label;       // optional
  };

  int schema_version = 1;
  int dim = 0;
  std::vector<RawState> states;
};

StateTupleFile read_state_file(std::istream& in);
StateTupleFile read_state_file(const std::string& path);

void write_state_file(std::ostream& out, const StateTupleFile& file);
void write_state_file(const std::string& path, const StateTupleFile& file);

// Validation::Repair symmetrizes and clamps within the documented
// tolerances; Validation::Strict rejects deviations beyond 1e-10.
StateTuple to_tuple(const StateTupleFile& file, Validation mode);

StateTupleFile from_tuple(const StateTuple& tuple,
                          const std::vector<std::string>& labels = {});

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

// One structured record: space-separated key=value pairs, LF-terminated by
// the caller.
std::string record_line(const std::vector<std::pair<std::string, std::string>>& fields);

}  // namespace multifid
