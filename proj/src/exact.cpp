#include "loqc/exact.hpp"

namespace loqc::exact {

std::pair<Int, Int> squarefree_split(const Int& n) {
  if (n < 0) throw std::domain_error("squarefree_split: negative radicand");
  if (n == 0) return {Int(0), Int(1)};
  Int square_part = 1;
  Int radical = 1;
  Int rest = n;
  for (Int d = 2; d * d <= rest; ++d) {
    int count = 0;
    while (rest % d == 0) {
      rest /= d;
      ++count;
    }
    for (int i = 0; i + 1 < count; i += 2) square_part *= d;
    if (count % 2 == 1) radical *= d;
  }
  radical *= rest;
  return {square_part, radical};
}

SqrtAmp SqrtAmp::sqrt_of(const Rat& x) {
  if (x < 0) throw std::domain_error("SqrtAmp::sqrt_of: negative argument");
  if (x == 0) return SqrtAmp{};
  const Int p = boost::multiprecision::numerator(x);
  const Int q = boost::multiprecision::denominator(x);
  auto [s, r] = squarefree_split(p * q);
  SqrtAmp out;
  out.terms_[r] = Rat(s, q);
  return out;
}

bool SqrtAmp::is_rational() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == 1;
}

Rat SqrtAmp::as_rational() const {
  if (terms_.empty()) return Rat(0);
  if (!is_rational())
    throw std::domain_error("SqrtAmp::as_rational: irrational residue");
  return terms_.begin()->second;
}

double SqrtAmp::to_double() const {
  double out = 0.0;
  for (const auto& [radical, coeff] : terms_)
    out += coeff.convert_to<double>() *
           std::sqrt(radical.convert_to<double>());
  return out;
}

SqrtAmp SqrtAmp::operator-() const {
  SqrtAmp out;
  for (const auto& [radical, coeff] : terms_) out.terms_[radical] = -coeff;
  return out;
}

SqrtAmp& SqrtAmp::operator+=(const SqrtAmp& o) {
  for (const auto& [radical, coeff] : o.terms_) insert(radical, coeff);
  return *this;
}

SqrtAmp operator*(const SqrtAmp& a, const SqrtAmp& b) {
  SqrtAmp out;
  for (const auto& [ra, ca] : a.terms_) {
    for (const auto& [rb, cb] : b.terms_) {
      auto [s, r] = squarefree_split(ra * rb);
      out.insert(r, ca * cb * Rat(s));
    }
  }
  return out;
}

void SqrtAmp::insert(const Int& radical, const Rat& coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(radical);
  if (it == terms_.end()) {
    terms_[radical] = coeff;
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

}  // namespace loqc::exact
