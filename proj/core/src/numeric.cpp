#include "vmbandit/numeric.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "vmbandit/errors.hpp"

namespace vmbandit {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v))
    throw DataError("not a finite number: '" + std::string(s) + "'");
  return v;
}

}  // namespace vmbandit
