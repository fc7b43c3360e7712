#include "tailcens/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "tailcens/errors.hpp"

namespace tailcens {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << "csv line " << line << ": " << what;
  throw validation_error(os.str());
}

double parse_double(std::string_view field, std::size_t line, const char* name) {
  double v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    fail(line, std::string("could not parse ") + name + " value '" +
                   std::string(field) + "'");
  return v;
}

}  // namespace

CensoredSample read_censored_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  CensoredSample sample;

  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (!header_seen) {
      if (sv != "z,delta")
        fail(lineno, "expected header 'z,delta', got '" + std::string(sv) + "'");
      header_seen = true;
      continue;
    }
    const std::size_t comma = sv.find(',');
    if (comma == std::string_view::npos || sv.find(',', comma + 1) != std::string_view::npos)
      fail(lineno, "expected exactly two comma-separated fields");
    const std::string_view zf = trim(sv.substr(0, comma));
    const std::string_view df = trim(sv.substr(comma + 1));

    const double z = parse_double(zf, lineno, "z");
    if (!std::isfinite(z) || z <= 0.0) fail(lineno, "z must be positive and finite");
    if (df != "0" && df != "1") fail(lineno, "delta must be 0 or 1");

    sample.z.push_back(z);
    sample.delta.push_back(df == "1" ? 1 : 0);
  }
  if (!header_seen) throw validation_error("csv input is empty, expected header 'z,delta'");
  if (sample.z.empty()) throw validation_error("csv input has a header but no data rows");
  return sample;
}

CensoredSample read_censored_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open input file '" + path + "'");
  return read_censored_csv(in);
}

void write_censored_csv(std::ostream& out, const CensoredSample& sample) {
  out << "z,delta\n";
  out.precision(17);
  for (std::size_t i = 0; i < sample.z.size(); ++i)
    out << sample.z[i] << ',' << int{sample.delta[i]} << '\n';
}

}  // namespace tailcens
