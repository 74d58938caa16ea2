#include "multifid/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace multifid {

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string record_line(const std::vector<std::pair<std::string, std::string>>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ' ';
    out += fields[i].first;
    out += '=';
    out += fields[i].second;
  }
  return out;
}

namespace {

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // next non-empty line; false at EOF
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }

  std::size_t line_no() const { return line_no_; }

private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

[[noreturn]] void fail(const std::string& msg, std::size_t line, std::size_t col = 1) {
  throw ParseError(msg, line, col);
}

long parse_int(const std::string& token, std::size_t line, std::size_t col) {
  long value = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    fail("expected an integer, got '" + token + "'", line, col);
  return value;
}

double parse_real(const std::string& token, std::size_t line, std::size_t col) {
  double value = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    fail("expected a real number, got '" + token + "'", line, col);
  return value;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

// reads d rows of d reals
std::vector<double> read_grid(LineReader& reader, int d) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(d) * d);
  std::string line;
  for (int row = 0; row < d; ++row) {
    if (!reader.next(line)) fail("unexpected end of file inside a matrix grid", reader.line_no());
    auto toks = split(line);
    if (static_cast<int>(toks.size()) != d)
      fail("expected " + std::to_string(d) + " entries in matrix row, got " +
               std::to_string(toks.size()),
           reader.line_no());
    for (int col = 0; col < d; ++col)
      grid.push_back(parse_real(toks[static_cast<std::size_t>(col)], reader.line_no(),
                                static_cast<std::size_t>(col) + 1));
  }
  return grid;
}

}  // namespace

StateTupleFile read_state_file(std::istream& in) {
  LineReader reader(in);
  std::string line;

  if (!reader.next(line) || line != "multifid-states")
    fail("missing 'multifid-states' header", reader.line_no() ? reader.line_no() : 1);

  StateTupleFile file;
  if (!reader.next(line)) fail("missing schema_version", reader.line_no());
  {
    auto toks = split(line);
    if (toks.size() != 2 || toks[0] != "schema_version")
      fail("expected 'schema_version <n>'", reader.line_no());
    file.schema_version = static_cast<int>(parse_int(toks[1], reader.line_no(), 2));
    if (file.schema_version != 1)
      fail("unsupported schema_version " + toks[1], reader.line_no());
  }
  if (!reader.next(line)) fail("missing dim", reader.line_no());
  {
    auto toks = split(line);
    if (toks.size() != 2 || toks[0] != "dim") fail("expected 'dim <d>'", reader.line_no());
    file.dim = static_cast<int>(parse_int(toks[1], reader.line_no(), 2));
    if (file.dim < 1 || file.dim > 256) fail("dim out of range", reader.line_no());
  }
  int count = 0;
  if (!reader.next(line)) fail("missing count", reader.line_no());
  {
    auto toks = split(line);
    if (toks.size() != 2 || toks[0] != "count") fail("expected 'count <r>'", reader.line_no());
    count = static_cast<int>(parse_int(toks[1], reader.line_no(), 2));
    if (count < 1 || count > 4096) fail("count out of range", reader.line_no());
  }

  for (int s = 0; s < count; ++s) {
    if (!reader.next(line)) fail("unexpected end of file, expected 'state'", reader.line_no());
    auto toks = split(line);
    if (toks.size() != 2 || toks[0] != "state" ||
        parse_int(toks[1], reader.line_no(), 2) != s)
      fail("expected 'state " + std::to_string(s) + "'", reader.line_no());

    StateTupleFile::RawState raw;
    if (!reader.next(line)) fail("unexpected end of file in state block", reader.line_no());
    if (line.rfind("label ", 0) == 0) {
      raw.label = line.substr(6);
      if (!reader.next(line)) fail("unexpected end of file after label", reader.line_no());
    }
    if (line != "re") fail("expected 're'", reader.line_no());
    raw.re = read_grid(reader, file.dim);
    if (!reader.next(line) || line != "im") fail("expected 'im'", reader.line_no());
    raw.im = read_grid(reader, file.dim);
    file.states.push_back(std::move(raw));
  }
  return file;
}

StateTupleFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  return read_state_file(in);
}

void write_state_file(std::ostream& out, const StateTupleFile& file) {
  out << "multifid-states\n";
  out << "schema_version " << file.schema_version << "\n";
  out << "dim " << file.dim << "\n";
  out << "count " << file.states.size() << "\n";
  const int d = file.dim;
  for (std::size_t s = 0; s < file.states.size(); ++s) {
    const auto& raw = file.states[s];
    out << "state " << s << "\n";
    if (!raw.label.empty()) out << "label " << raw.label << "\n";
    out << "re\n";
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (j) out << ' ';
        out << format_double(raw.re[static_cast<std::size_t>(i) * d + j]);
      }
      out << "\n";
    }
    out << "im\n";
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (j) out << ' ';
        out << format_double(raw.im[static_cast<std::size_t>(i) * d + j]);
      }
      out << "\n";
    }
  }
}

void write_state_file(const std::string& path, const StateTupleFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  write_state_file(out, file);
}

StateTuple to_tuple(const StateTupleFile& file, Validation mode) {
  const int d = file.dim;
  std::vector<DensityMatrix> states;
  states.reserve(file.states.size());
  for (const auto& raw : file.states) {
    if (raw.re.size() != static_cast<std::size_t>(d) * d ||
        raw.im.size() != static_cast<std::size_t>(d) * d)
      throw InvariantViolation("state grid has the wrong size");
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m(i, j) = cplx(raw.re[static_cast<std::size_t>(i) * d + j],
                       raw.im[static_cast<std::size_t>(i) * d + j]);
    HermitianMatrix h = [&] {
      if (mode == Validation::Strict) return HermitianMatrix(m);  // rejects beyond 1e-12-ish
      // repair: symmetrize whatever came in
      ComplexMatrix sym(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) sym(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      return HermitianMatrix(sym);
    }();
    states.emplace_back(h, mode);
  }
  return StateTuple(std::move(states));
}

StateTupleFile from_tuple(const StateTuple& tuple, const std::vector<std::string>& labels) {
  StateTupleFile file;
  file.dim = tuple.dim();
  const int d = file.dim;
  for (int s = 0; s < tuple.size(); ++s) {
    StateTupleFile::RawState raw;
    raw.re.resize(static_cast<std::size_t>(d) * d);
    raw.im.resize(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        raw.re[static_cast<std::size_t>(i) * d + j] = tuple[s](i, j).real();
        raw.im[static_cast<std::size_t>(i) * d + j] = tuple[s](i, j).imag();
      }
    if (static_cast<std::size_t>(s) < labels.size()) raw.label = labels[static_cast<std::size_t>(s)];
    file.states.push_back(std::move(raw));
  }
  return file;
}

}  // namespace multifid
