#pragma once

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace gridlinks {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// 50 decimal digits; used only at the reporting/bound-comparison boundary
using Float50 = boost::multiprecision::cpp_bin_float_50;

inline BigInt rational_num(const BigRational& q) { return numerator(q); }
inline BigInt rational_den(const BigRational& q) { return denominator(q); }

inline double to_double(const BigRational& q) { return q.convert_to<double>(); }

inline Float50 to_float50(const BigRational& q) {
    return Float50(numerator(q)) / Float50(denominator(q));
}

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const BigRational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace gridlinks
