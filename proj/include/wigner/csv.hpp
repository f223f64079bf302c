#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

namespace wigner::csv {

/// Scientific notation with 17 significant digits.
std::string number(double value);

/// Writes "# text" for every line of `text`.
void comment(std::ostream& out, std::string_view text);

}  // namespace wigner::csv
