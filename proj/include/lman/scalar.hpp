#ifndef LMAN_SCALAR_HPP
#define LMAN_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace lman {

// Exact rational arithmetic. Everything downstream is an integer rank or a
// sign, so no floating point appears anywhere in the engine.
using Integer = boost::multiprecision::cpp_int;
using Scalar = boost::multiprecision::cpp_rational;

inline Scalar scalar_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Scalar(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Scalar(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  }
}

inline std::string scalar_to_string(const Scalar& x) {
  std::string num = numerator(x).str();
  if (denominator(x) == 1) return num;
  return num + "/" + denominator(x).str();
}

}  // namespace lman

#endif
