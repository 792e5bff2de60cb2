#include "parsol/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace parsol {

std::string format_hex(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

namespace {

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  /// Next non-comment, non-empty line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++lineno_;
      if (line.empty() || line[0] == '#') continue;
      return true;
    }
    return false;
  }

  int lineno() const { return lineno_; }

 private:
  std::istringstream in_;
  int lineno_ = 0;
};

double parse_real(const std::string& line, int lineno) {
  const char* c = line.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end == c) fail(Errc::ParseError, "line " + std::to_string(lineno) + ": expected a real");
  return v;
}

}  // namespace

std::string write_matrix(const StructuredMatrix& A, const std::vector<std::string>& comments) {
  std::ostringstream out;
  out << "STRUCTMAT 1 " << kind_name(A.kind) << ' ' << A.n << ' ' << A.m << ' ' << A.s << ' '
      << A.r;
  if (A.kind == Kind::Babd) out << ' ' << A.corner_rows << ' ' << A.corner_cols;
  out << '\n';
  for (const auto& c : comments) out << "# " << c << '\n';
  for (double v : A.data) out << format_hex(v) << '\n';
  for (double v : A.corner) out << format_hex(v) << '\n';
  return out.str();
}

StructuredMatrix parse_matrix(const std::string& text) {
  LineReader rd(text);
  std::string line;
  if (!rd.next(line)) fail(Errc::ParseError, "empty input");
  std::istringstream hdr(line);
  std::string magic, kind_s;
  int version = 0, n = 0, m = 0, s = 0, r = 0;
  hdr >> magic >> version >> kind_s >> n >> m >> s >> r;
  if (magic != "STRUCTMAT" || hdr.fail())
    fail(Errc::ParseError, "line " + std::to_string(rd.lineno()) + ": bad STRUCTMAT header");
  if (version != 1) fail(Errc::UnsupportedVersion, "STRUCTMAT version " + std::to_string(version));
  Kind kind = kind_from_name(kind_s);
  int cr = 0, cc = 0;
  if (kind == Kind::Babd) {
    hdr >> cr >> cc;
    if (hdr.fail())
      fail(Errc::ParseError, "line " + std::to_string(rd.lineno()) + ": missing corner shape");
  }

  if (n <= 0 || m <= 0)
    fail(Errc::ParseError, "line " + std::to_string(rd.lineno()) + ": bad dimensions");
  std::size_t body = body_entry_count(kind, n, m, s, r);
  std::vector<double> data(body);
  for (std::size_t i = 0; i < body; ++i) {
    if (!rd.next(line))
      fail(Errc::ParseError, "line " + std::to_string(rd.lineno() + 1) + ": unexpected end of data");
    data[i] = parse_real(line, rd.lineno());
  }
  std::vector<double> corner(std::size_t(cr) * cc);
  for (auto& v : corner) {
    if (!rd.next(line))
      fail(Errc::ParseError, "line " + std::to_string(rd.lineno() + 1) + ": unexpected end of corner");
    v = parse_real(line, rd.lineno());
  }
  if (rd.next(line))
    fail(Errc::ParseError, "line " + std::to_string(rd.lineno()) + ": trailing data");

  try {
    return make(kind, n, m, s, r, std::move(data), std::move(corner), cr, cc);
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    fail(Errc::ParseError, "invalid matrix: " + e.detail());
  }
}

std::string write_vector(const Vector& v, const std::vector<std::string>& comments) {
  std::ostringstream out;
  out << "VEC 1 " << v.size() << '\n';
  for (const auto& c : comments) out << "# " << c << '\n';
  for (double x : v) out << format_hex(x) << '\n';
  return out.str();
}

Vector parse_vector(const std::string& text) {
  LineReader rd(text);
  std::string line;
  if (!rd.next(line)) fail(Errc::ParseError, "empty input");
  std::istringstream hdr(line);
  std::string magic;
  int version = 0;
  long len = -1;
  hdr >> magic >> version >> len;
  if (magic != "VEC" || hdr.fail() || len < 0)
    fail(Errc::ParseError, "line " + std::to_string(rd.lineno()) + ": bad VEC header");
  if (version != 1) fail(Errc::UnsupportedVersion, "VEC version " + std::to_string(version));
  Vector v(len);
  for (long i = 0; i < len; ++i) {
    if (!rd.next(line))
      fail(Errc::ParseError, "line " + std::to_string(rd.lineno() + 1) + ": unexpected end of data");
    v[i] = parse_real(line, rd.lineno());
  }
  return v;
}

std::string write_trajectory(const Vector& flat, int m, int p, int N) {
  if (int(flat.size()) != (p * N + 1) * m) fail(Errc::DimensionMismatch, "trajectory length");
  std::ostringstream out;
  out << "TRAJ 1 " << m << ' ' << p << ' ' << N << '\n';
  for (double x : flat) out << format_hex(x) << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + path);
  out << content;
}

}  // namespace parsol
