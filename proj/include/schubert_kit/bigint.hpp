#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace schubert_kit {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt ipow(const BigInt &base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline std::string to_string(const BigInt &x) { return x.str(); }

/// True if x fits in an IEEE double without rounding (|x| <= 2^53 - 1).
inline bool fits_json_number(const BigInt &x) {
  static const BigInt limit = (BigInt(1) << 53) - 1;
  return x <= limit && x >= -limit;
}

inline std::int64_t to_int64(const BigInt &x) { return x.convert_to<std::int64_t>(); }

} // namespace schubert_kit
