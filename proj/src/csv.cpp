#include "wigner/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace wigner::csv {

std::string number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

void comment(std::ostream& out, std::string_view text) {
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::string_view line =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    out << "# " << line << '\n';
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
}

}  // namespace wigner::csv
