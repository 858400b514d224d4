#include "vmbandit/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace vmbandit {

std::uint64_t Rng::uniform_below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t mask = (std::bit_ceil(n)) - 1;
  std::uint64_t r;
  do {
    r = engine_() & mask;
  } while (r >= n);
  return r;
}

double Rng::normal(double mean, double stddev) {
  const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
  const double u2 = uniform01();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + stddev * z;
}

double Rng::gamma(double shape) {
  if (shape < 1.0) {
    const double u = uniform01();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal(0.0, 1.0);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  const double s = x + y;
  if (s == 0.0) return 0.5;  // both underflowed; measure-zero event
  return x / s;
}

}  // namespace vmbandit
