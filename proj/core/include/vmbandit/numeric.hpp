#pragma once

#include <string>
#include <string_view>

namespace vmbandit {

// Shortest decimal form that parses back to the same double; locale-free.
std::string format_double(double v);

// Strict full-string parse of a finite double. Throws DataError.
double parse_double(std::string_view s);

}  // namespace vmbandit
