#include "arbor/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace arbor {

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }

Poly Poly::constant(const Rat& c) { return Poly({c}); }

Poly Poly::x() { return Poly({Rat(0), Rat(1)}); }

Poly Poly::parse(const std::string& text) {
  std::vector<Rat> coeffs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    // trim blanks
    auto b = tok.find_first_not_of(" \t");
    auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty coefficient in '" + text + "'");
    coeffs.push_back(parse_rat(tok.substr(b, e - b + 1)));
  }
  if (coeffs.empty()) throw std::invalid_argument("empty polynomial");
  return Poly(std::move(coeffs));
}

std::string Poly::to_coeff_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += rat_to_string(c_[i]);
  }
  return out;
}

std::string Poly::to_pretty_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += (sgn(c_[i]) > 0) ? " + " : " - ";
    else if (sgn(c_[i]) < 0) out += "-";
    Rat a = abs(c_[i]);
    bool unit = (a == 1) && i > 0;
    if (!unit) out += rat_to_string(a);
    if (i > 0) {
      if (!unit) out += "*";
      out += "z";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

const Rat& Poly::coeff(int i) const {
  static const Rat zero(0);
  if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
  return c_[i];
}

const Rat& Poly::leading() const {
  if (is_zero()) throw std::invalid_argument("leading: zero polynomial");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Rat> r(c_);
  for (auto& v : r) v = -v;
  return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(r));
}

Poly Poly::operator*(const Rat& s) const {
  std::vector<Rat> r(c_);
  for (auto& v : r) v *= s;
  return Poly(std::move(r));
}

Rat Poly::evaluate(const Rat& x) const {
  Rat acc(0);
  for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::derivative() const {
  if (degree() < 1) return Poly();
  std::vector<Rat> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return Poly(std::move(r));
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc;
  for (int i = degree(); i >= 0; --i) acc = acc * inner + Poly::constant(c_[i]);
  return acc;
}

Poly Poly::iterate(const Poly& f, int n) {
  if (n < 0) throw std::invalid_argument("iterate: n must be >= 0");
  Poly acc = Poly::x();
  for (int k = 0; k < n; ++k) acc = f.compose(acc);
  return acc;
}

namespace {

using ZPoly = std::vector<Int>;  // ascending

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

void znormalize(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// lc(B)^{deg A - deg B + 1} * A mod B. Each elimination step scales by lc(B)
// once; leftover powers are applied at the end so the factor is exact.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  const Int lb = b.back();
  const int db = zdeg(b);
  int pending = zdeg(a) - db + 1;
  while (!a.empty() && zdeg(a) >= db) {
    const Int la = a.back();
    const int shift = zdeg(a) - db;
    ZPoly next(a.size() - 1);
    for (int i = 0; i + 1 < static_cast<int>(a.size()); ++i) next[i] = lb * a[i];
    for (int i = 0; i < db; ++i) next[i + shift] -= la * b[i];
    a = std::move(next);
    znormalize(a);
    --pending;
  }
  for (; pending > 0; --pending)
    for (auto& c : a) c *= lb;
  return a;
}

Int zpow(const Int& b, long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

// Resultant of integer polynomials by the subresultant PRS (Cohen, Alg. 3.3.7
// without the content extraction). Exact including sign.
Int resultant_z(ZPoly a, ZPoly b) {
  znormalize(a);
  znormalize(b);
  if (a.empty() || b.empty()) return Int(0);
  int s = 1;
  if (zdeg(a) < zdeg(b)) {
    if ((zdeg(a) & 1) && (zdeg(b) & 1)) s = -s;
    std::swap(a, b);
  }
  if (zdeg(b) == 0) return s * zpow(b[0], zdeg(a));
  Int g(1), h(1);
  while (true) {
    int da = zdeg(a), db = zdeg(b);
    int delta = da - db;
    if ((da & 1) && (db & 1)) s = -s;
    ZPoly r = pseudo_rem(a, b);
    if (r.empty()) return Int(0);  // positive-degree common factor
    a = std::move(b);
    Int div = g * zpow(h, delta);
    b = std::move(r);
    for (auto& c : b) {
      Int q;
      mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
      c = q;
    }
    g = a.back();
    if (delta == 0) {
      // h unchanged
    } else {
      Int num = zpow(g, delta);
      Int den = zpow(h, delta - 1);
      Int q;
      mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      h = q;
    }
    if (zdeg(b) == 0) {
      int q = zdeg(a);
      Int num = zpow(b[0], q);
      Int den = zpow(h, q - 1);
      Int out;
      mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return s * out;
    }
  }
}

// Clears denominators: returns integer coefficients and the common factor D
// with D * f integral.
std::pair<ZPoly, Int> clear_denominators(const Poly& f) {
  Int d(1);
  for (int i = 0; i <= f.degree(); ++i) {
    Int den = f.coeff(i).get_den();
    Int g;
    mpz_lcm(g.get_mpz_t(), d.get_mpz_t(), den.get_mpz_t());
    d = g;
  }
  ZPoly z(f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i) {
    Rat scaled = f.coeff(i) * Rat(d);
    z[i] = Int(scaled.get_num());
  }
  return {z, d};
}

}  // namespace

Rat resultant(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
  if (f.degree() == 0 && g.degree() == 0) return Rat(1);
  auto [fz, fd] = clear_denominators(f);
  auto [gz, gd] = clear_denominators(g);
  // Res(f, g) = Res(F, G) / (fd^{deg g} gd^{deg f})
  Int rz = resultant_z(fz, gz);
  Rat out(rz);
  out /= Rat(zpow(fd, g.degree()));
  out /= Rat(zpow(gd, f.degree()));
  out.canonicalize();
  return out;
}

Rat discriminant(const Poly& f) {
  const int d = f.degree();
  if (d < 1) throw std::invalid_argument("discriminant: degree must be >= 1");
  if (d == 1) return Rat(1);
  Rat res = resultant(f, f.derivative());
  Rat out = res / f.leading();
  if (((static_cast<long>(d) * (d - 1)) / 2) % 2 == 1) out = -out;
  out.canonicalize();
  return out;
}

Poly make_monic(const Poly& f) {
  if (f.is_zero()) return f;
  Rat inv = 1 / f.leading();
  return f * inv;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly u = a, v = b;
  while (!v.is_zero()) {
    // remainder of u by v over Q
    Poly r = u;
    while (!r.is_zero() && r.degree() >= v.degree()) {
      Rat q = r.leading() / v.leading();
      int shift = r.degree() - v.degree();
      std::vector<Rat> sub(shift + v.degree() + 1, Rat(0));
      for (int i = 0; i <= v.degree(); ++i) sub[i + shift] = v.coeff(i) * q;
      r = r - Poly(std::move(sub));
    }
    u = std::move(v);
    v = make_monic(r);
  }
  return make_monic(u);
}

Poly squarefree_part(const Poly& f) {
  if (f.degree() < 1) return make_monic(f);
  Poly g = poly_gcd(f, f.derivative());
  if (g.degree() == 0) return make_monic(f);
  // exact division f / g
  Poly num = f, out;
  std::vector<Rat> q(f.degree() - g.degree() + 1, Rat(0));
  Poly r = f;
  while (!r.is_zero() && r.degree() >= g.degree()) {
    Rat c = r.leading() / g.leading();
    int shift = r.degree() - g.degree();
    q[shift] = c;
    std::vector<Rat> sub(shift + g.degree() + 1, Rat(0));
    for (int i = 0; i <= g.degree(); ++i) sub[i + shift] = g.coeff(i) * c;
    r = r - Poly(std::move(sub));
  }
  if (!r.is_zero()) throw std::logic_error("squarefree_part: inexact division");
  return make_monic(Poly(std::move(q)));
}

}  // namespace arbor
