#pragma once

#include <string>
#include <vector>

#include "arbor/rational.hpp"

namespace arbor {

// Dense univariate polynomial over Q, coefficients ascending. All arithmetic
// is exact; nothing in this module touches floating point.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);
  static Poly zero() { return Poly(); }
  static Poly constant(const Rat& c);
  static Poly x();
  // Comma-separated ascending coefficients, each "p" or "p/q",
  // e.g. "1,0,-3,2" for 2z^3 - 3z^2 + 1.
  static Poly parse(const std::string& text);
  std::string to_coeff_string() const;  // inverse of parse
  std::string to_pretty_string() const;

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const Rat& coeff(int i) const;
  const Rat& leading() const;

  Poly operator+(const Poly&) const;
  Poly operator-(const Poly&) const;
  Poly operator*(const Poly&) const;
  Poly operator*(const Rat&) const;
  Poly operator-() const;
  bool operator==(const Poly&) const = default;

  Rat evaluate(const Rat& x) const;
  Poly derivative() const;
  Poly compose(const Poly& inner) const;  // this(inner(x))
  static Poly iterate(const Poly& f, int n);  // n-fold self-composition; n=0 gives x

 private:
  std::vector<Rat> c_;
  void normalize();
};

// Exact resultant via the integer subresultant PRS after clearing
// denominators. Res(f,g) = lc(f)^{deg g} * prod g(roots of f).
Rat resultant(const Poly& f, const Poly& g);
// disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f), d = deg f >= 1.
Rat discriminant(const Poly& f);

Poly poly_gcd(const Poly& a, const Poly& b);  // monic
Poly squarefree_part(const Poly& f);          // f / gcd(f, f'), monic
Poly make_monic(const Poly& f);

}  // namespace arbor
