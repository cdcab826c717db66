#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace scut {

// Arbitrary-precision integers and exact rationals. Conductances and walk
// probabilities are ratios of (possibly huge) integer counts; doing the
// comparisons exactly removes every tie-break ambiguity that floating point
// would introduce.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::rational<BigInt>;

inline double to_double(const Rat& r) {
  return static_cast<double>(boost::multiprecision::cpp_rational(
      r.numerator(), r.denominator()));
}

inline std::string to_string(const Rat& r) {
  if (r.denominator() == 1) return r.numerator().str();
  return r.numerator().str() + "/" + r.denominator().str();
}

// Compares a/b against c/d without division or overflow (all inputs are
// 64-bit counts, so the cross products fit in 128 bits). Returns -1, 0, +1.
// Denominators must be positive.
inline int compare_ratio(std::uint64_t a, std::uint64_t b,
                         std::uint64_t c, std::uint64_t d) {
  const unsigned __int128 lhs = static_cast<unsigned __int128>(a) * d;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(c) * b;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

}  // namespace scut
