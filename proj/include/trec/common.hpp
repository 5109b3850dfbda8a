#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace trec {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Configuration / input problems (bad curve file, unknown flag value, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A series window is too short to decide the question asked.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated precondition or internal inconsistency in an engine.
class EngineError : public std::runtime_error {
 public:
  explicit EngineError(const std::string& msg) : std::runtime_error(msg) {}
};

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

inline Rational rational_pow(const Rational& r, long e) {
  Rational acc = 1;
  Rational base = e >= 0 ? r : Rational(1) / r;
  long n = e >= 0 ? e : -e;
  for (long i = 0; i < n; ++i) acc *= base;
  return acc;
}

}  // namespace trec
