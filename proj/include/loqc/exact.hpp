#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace loqc::exact {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Splits n >= 0 into (s, r) with n = s^2 * r and r square-free.
std::pair<Int, Int> squarefree_split(const Int& n);

/// Real number of the form sum_r c_r * sqrt(r), with rational c_r and
/// square-free positive integer radicals r. Closed under + and *.
/// Radical 1 holds the rational part.
class SqrtAmp {
 public:
  SqrtAmp() = default;
  explicit SqrtAmp(const Rat& rational) {
    if (rational != 0) terms_[Int(1)] = rational;
  }
  SqrtAmp(int v) : SqrtAmp(Rat(v)) {}  // NOLINT: implicit for literals

  /// sqrt(x) for rational x >= 0: sqrt(p/q) = sqrt(p*q)/q.
  static SqrtAmp sqrt_of(const Rat& x);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Rational value; throws if an irrational component remains.
  Rat as_rational() const;
  double to_double() const;

  SqrtAmp operator-() const;
  SqrtAmp& operator+=(const SqrtAmp& o);
  friend SqrtAmp operator+(SqrtAmp a, const SqrtAmp& b) { return a += b; }
  friend SqrtAmp operator-(SqrtAmp a, const SqrtAmp& b) { return a += -b; }
  friend SqrtAmp operator*(const SqrtAmp& a, const SqrtAmp& b);
  friend bool operator==(const SqrtAmp& a, const SqrtAmp& b) {
    return a.terms_ == b.terms_;
  }

  const std::map<Int, Rat>& terms() const { return terms_; }

 private:
  void insert(const Int& radical, const Rat& coeff);
  std::map<Int, Rat> terms_;
};

}  // namespace loqc::exact
