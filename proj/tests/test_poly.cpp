#include <random>
#include <stdexcept>

#include "arbor/poly.hpp"
#include "doctest.h"

using namespace arbor;

namespace {

// Sylvester-determinant oracle: (df+dg) x (df+dg) matrix over Q, expanded by
// fraction-free Gaussian elimination with exact rationals.
Rat sylvester_resultant(const Poly& f, const Poly& g) {
  const int df = f.degree(), dg = g.degree();
  if (df == 0 && dg == 0) return Rat(1);
  if (df == 0) return pow_rat(f.coeff(0), Int(dg));
  if (dg == 0) return pow_rat(g.coeff(0), Int(df));
  const int n = df + dg;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (int r = 0; r < dg; ++r)
    for (int i = 0; i <= df; ++i) m[r][r + i] = f.coeff(df - i);
  for (int r = 0; r < df; ++r)
    for (int i = 0; i <= dg; ++i) m[dg + r][r + i] = g.coeff(dg - i);
  Rat det(1);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rat(0);
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rat factor = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  return det;
}

Poly random_zpoly(std::mt19937_64& rng, int maxdeg) {
  std::uniform_int_distribution<int> degd(0, maxdeg), coeffd(-9, 9);
  int d = degd(rng);
  std::vector<Rat> c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = Rat(coeffd(rng));
  if (c[d] == 0) c[d] = Rat(1);
  return Poly(c);
}

const Poly kBelyi = Poly::parse("1,0,-3,2");  // 2z^3 - 3z^2 + 1

}  // namespace

TEST_CASE("parse and print") {
  CHECK(kBelyi.degree() == 3);
  CHECK(kBelyi.leading() == 2);
  CHECK(kBelyi.to_coeff_string() == "1,0,-3,2");
  CHECK(Poly::parse("1/2, 0, -3/4").coeff(2) == Rat(-3, 4));
  CHECK_THROWS_AS(Poly::parse("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(Poly::parse("1/0"), std::invalid_argument);
  CHECK(kBelyi.to_pretty_string() == "2*z^3 - 3*z^2 + 1");
}

TEST_CASE("compose, iterate, derivative basics") {
  CHECK(Poly::iterate(kBelyi, 0) == Poly::x());
  Poly f2 = Poly::iterate(kBelyi, 2);
  CHECK(f2.degree() == 9);
  CHECK(f2.leading() == 16);  // a_f^{(d^2-1)/(d-1)} = 2^4
  CHECK(Poly::iterate(kBelyi, 3).leading() == Rat(Int(8192)));  // 2^13
  CHECK(kBelyi.derivative() == Poly::parse("0,-6,6"));
  CHECK_THROWS_AS(Poly::iterate(kBelyi, -1), std::invalid_argument);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    Poly a = random_zpoly(rng, 3), b = random_zpoly(rng, 3), c = random_zpoly(rng, 2);
    CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
  }
  CHECK(Poly::iterate(kBelyi, 3) ==
        Poly::iterate(kBelyi, 1).compose(Poly::iterate(kBelyi, 2)));
}

TEST_CASE("resultant matches the Sylvester oracle") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 300; ++t) {
    Poly f = random_zpoly(rng, 4), g = random_zpoly(rng, 4);
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(resultant(f, g) == sylvester_resultant(f, g));
  }
  // rational coefficients too
  for (int t = 0; t < 100; ++t) {
    Poly f = random_zpoly(rng, 3) * Rat(1, 3), g = random_zpoly(rng, 4) * Rat(2, 5);
    CHECK(resultant(f, g) == sylvester_resultant(f, g));
  }
}

TEST_CASE("resultant pinned identities") {
  // Res(x - a, g) = g(a)
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    Poly g = random_zpoly(rng, 4);
    Rat a(static_cast<long>(rng() % 19) - 9);
    Poly lin({-a, Rat(1)});
    CHECK(resultant(lin, g) == g.evaluate(a));
  }
  CHECK_THROWS_AS(resultant(Poly::zero(), kBelyi), std::invalid_argument);

  // multiplicativity Res(fg, h) = Res(f,h) Res(g,h)
  for (int t = 0; t < 60; ++t) {
    Poly f = random_zpoly(rng, 3), g = random_zpoly(rng, 3), h = random_zpoly(rng, 3);
    if (f.is_zero() || g.is_zero() || h.is_zero() || (f * g).is_zero()) continue;
    CHECK(resultant(f * g, h) == resultant(f, h) * resultant(g, h));
  }
}

TEST_CASE("discriminant pinned values") {
  CHECK(discriminant(Poly::parse("-1,0,1")) == 4);    // x^2 - 1
  CHECK(discriminant(Poly::parse("1,-2,1")) == 0);    // (x-1)^2
  CHECK(discriminant(Poly::parse("0,1")) == 1);       // linear
  CHECK_THROWS_AS(discriminant(Poly::constant(Rat(3))), std::invalid_argument);

  // disc(2z^3 - 3z^2 + (1 - alpha)) = 108 alpha (1 - alpha)
  for (long a : {-5L, -2L, 0L, 1L, 3L, 7L}) {
    Poly shifted = kBelyi - Poly::constant(Rat(a));
    Rat expect = Rat(108) * Rat(a) * Rat(1 - a);
    CHECK(discriminant(shifted) == expect);
  }
  CHECK(discriminant(kBelyi - Poly::constant(Rat(3))) == -648);

  // disc = 0 iff gcd(f, f') is nontrivial, using planted repeated roots
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    Poly f = random_zpoly(rng, 3);
    if (f.degree() < 1) continue;
    Poly sq = f * f;
    CHECK(discriminant(sq * Poly::x() + Poly::zero()) == 0);
    bool nontrivial_gcd = poly_gcd(f, f.derivative()).degree() > 0;
    CHECK((discriminant(f) == 0) == nontrivial_gcd);
  }
}

TEST_CASE("gcd and squarefree part") {
  Poly f = Poly::parse("1,-2,1");  // (x-1)^2
  CHECK(squarefree_part(f) == Poly::parse("-1,1"));
  Poly g = kBelyi.derivative();  // 6z^2 - 6z
  CHECK(squarefree_part(g) == Poly::parse("0,-1,1"));  // z(z-1) monic
  CHECK(poly_gcd(f, Poly::parse("-1,1")) == Poly::parse("-1,1"));
}

TEST_CASE("perfect square testing") {
  Rat root;
  CHECK(is_square_rat(Rat(4, 9), &root));
  CHECK(root == Rat(2, 3));
  CHECK(!is_square_rat(Rat(-648)));
  CHECK(is_square_rat(Rat(11664), &root));
  CHECK(root == 108);
  CHECK(is_square_rat(Rat(0)));
  CHECK(!is_square_rat(Rat(2)));
  CHECK(!is_square_rat(Rat(1, 2)));
  // witnesses square exactly
  std::mt19937_64 rng(77);
  for (int t = 0; t < 200; ++t) {
    Rat q(static_cast<long>(rng() % 3000) - 1500, 1 + static_cast<long>(rng() % 50));
    q.canonicalize();
    Rat sq = q * q, w;
    CHECK(is_square_rat(sq, &w));
    CHECK(w * w == sq);
  }
}
