#pragma once

#include <cstdint>

#include <boost/rational.hpp>

namespace rqc {

// Exact fractions for chain-row assembly. Denominators here divide
// 15 * n * (n-1), so int64 never overflows at the guarded sizes.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

}  // namespace rqc
