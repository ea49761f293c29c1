#include "arbor/pcf.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "arbor/errors.hpp"

namespace arbor {

namespace {

constexpr std::uint64_t kMaxIterateDegree = 6561;

// bit size of a rational, used by the height-growth early exit
std::size_t rat_bits(const Rat& q) {
  return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) +
         mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
}

std::uint64_t checked_pow(int d, int n) {
  std::uint64_t v = 1;
  for (int i = 0; i < n; ++i) {
    v *= static_cast<std::uint64_t>(d);
    if (v > kMaxIterateDegree)
      throw ResourceLimitError("iterate degree " + std::to_string(d) + "^" +
                               std::to_string(n) + " exceeds the supported range");
  }
  return v;
}

// Divide f by (x - r) as often as it stays exact; returns the multiplicity.
int root_multiplicity(const Poly& f, const Rat& r) {
  Poly cur = f;
  int mult = 0;
  while (cur.degree() >= 1 && cur.evaluate(r) == 0) {
    // synthetic division by (x - r)
    std::vector<Rat> q(cur.degree());
    Rat carry(0);
    for (int i = cur.degree(); i >= 1; --i) {
      carry = cur.coeff(i) + carry * r;
      q[i - 1] = carry;
      carry = q[i - 1];
    }
    cur = Poly(std::move(q));
    ++mult;
  }
  return mult;
}

std::vector<Int> small_divisors(const Int& n) {
  std::vector<Int> divs;
  Int a = abs(n);
  for (Int t = 1; t * t <= a; ++t) {
    if (a % t == 0) {
      divs.push_back(t);
      divs.push_back(a / t);
    }
  }
  return divs;
}

// All roots of a squarefree polynomial when they are rational; nullopt when
// any root is irrational (or the coefficients are too large to factor).
std::optional<std::vector<Rat>> rational_roots(Poly p) {
  std::vector<Rat> roots;
  while (true) {
    if (p.degree() <= 0) return roots;
    if (p.coeff(0) == 0) {
      roots.push_back(Rat(0));
      std::vector<Rat> q(p.degree());
      for (int i = 1; i <= p.degree(); ++i) q[i - 1] = p.coeff(i);
      p = Poly(std::move(q));
      continue;
    }
    if (p.degree() == 1) {
      roots.push_back(-p.coeff(0) / p.coeff(1));
      return roots;
    }
    if (p.degree() == 2) {
      Rat a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
      Rat disc = b * b - 4 * a * c, root;
      if (!is_square_rat(disc, &root)) return std::nullopt;
      roots.push_back((-b + root) / (2 * a));
      roots.push_back((-b - root) / (2 * a));
      return roots;
    }
    // rational root theorem on the primitive integer form
    Int den(1);
    for (int i = 0; i <= p.degree(); ++i) {
      Int g;
      mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), Int(p.coeff(i).get_den()).get_mpz_t());
      den = g;
    }
    std::vector<Int> z(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i) z[i] = Int(Rat(p.coeff(i) * Rat(den)).get_num());
    if (abs(z[0]) > 1000000 || abs(z.back()) > 1000000) return std::nullopt;
    bool found = false;
    for (const Int& pn : small_divisors(z[0])) {
      for (const Int& qd : small_divisors(z.back())) {
        for (int sign : {1, -1}) {
          Rat cand(sign * pn, qd);
          cand.canonicalize();
          if (p.evaluate(cand) == 0) {
            roots.push_back(cand);
            // deflate
            std::vector<Rat> q(p.degree());
            Rat carry(0);
            for (int i = p.degree(); i >= 1; --i) {
              carry = p.coeff(i) + carry * cand;
              q[i - 1] = carry;
            }
            p = Poly(std::move(q));
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
  }
}

Poly lagrange_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  Poly acc;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    Poly basis = Poly::constant(Rat(1));
    Rat denom(1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i == j) continue;
      basis = basis * Poly({-xs[i], Rat(1)});
      denom *= xs[j] - xs[i];
    }
    acc = acc + basis * (ys[j] / denom);
  }
  return acc;
}

// Monic squarefree encoding of {f(r) : P(r) = 0}, via evaluation of
// Res_z(P(z), y0 - f(z)) at deg(P)+1 points and interpolation.
Poly pushforward_set(const Poly& p, const Poly& f) {
  const int t = p.degree();
  std::vector<Rat> xs, ys;
  for (int j = 0; j <= t; ++j) {
    xs.push_back(Rat(j));
    ys.push_back(resultant(p, Poly::constant(Rat(j)) - f));
  }
  Poly res = lagrange_interpolate(xs, ys);
  if (res.is_zero()) throw std::logic_error("pushforward_set: vanishing resultant");
  return squarefree_part(res);
}

std::size_t poly_bits(const Poly& p) {
  std::size_t m = 0;
  for (int i = 0; i <= p.degree(); ++i) m = std::max(m, rat_bits(p.coeff(i)));
  return m;
}

std::size_t row_bits(const std::vector<Rat>& row) {
  std::size_t m = 0;
  for (const Rat& q : row) m = std::max(m, rat_bits(q));
  return m;
}

bool height_exploding(std::vector<std::size_t>& sizes, std::size_t next) {
  sizes.push_back(next);
  const std::size_t k = sizes.size();
  if (k < 4 || next <= 256) return false;
  return sizes[k - 1] >= 2 * sizes[k - 2] && sizes[k - 2] >= 2 * sizes[k - 3] &&
         sizes[k - 3] >= 2 * sizes[k - 4];
}

std::vector<Rat> set_key(const std::vector<Rat>& row) {
  std::vector<Rat> key = row;
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  return key;
}

// First repetition in the sequence of set keys: (L, O), or nullopt.
template <typename Key>
std::optional<std::pair<int, int>> find_repeat(const std::vector<Key>& keys) {
  for (std::size_t b = 1; b < keys.size(); ++b)
    for (std::size_t a = 0; a < b; ++a)
      if (keys[a] == keys[b]) return std::make_pair(static_cast<int>(a),
                                                    static_cast<int>(b - a));
  return std::nullopt;
}

}  // namespace

CriticalOrbit critical_orbit(const Poly& f, int max_iters) {
  if (f.degree() < 2) throw std::invalid_argument("critical_orbit: degree must be >= 2");
  CriticalOrbit out;
  out.f = f;
  Poly fp = f.derivative();
  Poly sf = squarefree_part(fp);
  auto roots = rational_roots(sf);
  if (roots) {
    out.rational = true;
    out.points = set_key(*roots);
    for (const Rat& r : out.points) out.mults.push_back(root_multiplicity(fp, r));
    out.orbit.push_back(out.points);
    std::vector<std::vector<Rat>> keys{set_key(out.points)};
    std::vector<std::size_t> sizes{row_bits(out.points)};
    for (int k = 1; k <= max_iters; ++k) {
      std::vector<Rat> row;
      for (const Rat& v : out.orbit.back()) row.push_back(f.evaluate(v));
      out.orbit.push_back(row);
      out.steps = k;
      keys.push_back(set_key(row));
      if (find_repeat(keys)) break;
      if (height_exploding(sizes, row_bits(row))) break;
    }
  } else {
    out.rational = false;
    out.set_polys.push_back(sf);
    std::vector<std::size_t> sizes{poly_bits(sf)};
    for (int k = 1; k <= max_iters; ++k) {
      out.set_polys.push_back(pushforward_set(out.set_polys.back(), f));
      out.steps = k;
      if (find_repeat(out.set_polys)) break;
      if (height_exploding(sizes, poly_bits(out.set_polys.back()))) break;
    }
  }
  return out;
}

PcfProfile pcf_classify(const Poly& f, int max_iters) {
  CriticalOrbit co = critical_orbit(f, max_iters);
  PcfProfile prof;
  prof.degree = f.degree();
  prof.degree_odd = (f.degree() % 2 == 1);
  prof.leading_coeff_square = is_square_rat(f.leading());

  std::optional<std::pair<int, int>> rep;
  if (co.rational) {
    std::vector<std::vector<Rat>> keys;
    for (const auto& row : co.orbit) keys.push_back(set_key(row));
    rep = find_repeat(keys);
  } else {
    rep = find_repeat(co.set_polys);
  }
  if (!rep) {
    prof.is_pcf = false;
    prof.reason = "no repetition of f^k(C_f) within " + std::to_string(max_iters) +
                  " iterations (height growth or bound)";
    return prof;
  }
  prof.is_pcf = true;
  prof.tail = rep->first;
  prof.period = rep->second;

  const int L = prof.tail, O = prof.period;
  const bool af_ok = prof.leading_coeff_square || (O % 2 == 0);
  if (prof.degree_odd) {
    if (L == 0) {
      prof.case_id = 1;
      prof.n_star = 2 * O;
      prof.m_star = 0;
    } else {
      prof.case_id = 3;
      prof.n_star = L + 2 * O - 1;
      prof.m_star = L - 1;
    }
  } else {
    if (L == 0) {
      prof.case_id = 2;
      prof.n_star = af_ok ? O + 1 : O + 2;
      prof.m_star = af_ok ? 1 : O + 1;
    } else {
      prof.case_id = 4;
      prof.n_star = af_ok ? L + O : L + O + 1;
      prof.m_star = af_ok ? L : L + O;
    }
  }
  if (prof.degree_odd && L <= 1)
    prof.target = Family::E(2 * O);
  else
    prof.target = Family::F(prof.n_star, prof.m_star);
  return prof;
}

Rat critical_product(const Poly& f, const Rat& alpha, int k) {
  Poly fp = f.derivative();
  Poly fk = Poly::iterate(f, k) - Poly::constant(alpha);
  Rat res = resultant(fp, fk);
  return res / pow_rat(fp.leading(), Int(fk.degree()));
}

int disc_parity_sign(int d, int n) {
  Int dn = pow_int(Int(d), static_cast<unsigned long>(n));
  Int dn1 = pow_int(Int(d), static_cast<unsigned long>(n - 1));
  Int a = dn * (dn - 1) / 2 + Int(d) * (dn1 * (dn1 - 1) / 2);
  return mpz_odd_p(a.get_mpz_t()) ? -1 : 1;
}

Int disc_b_exponent(int d, int n) {
  return pow_int(Int(d), static_cast<unsigned long>(2 * n - 1)) - 1;
}

DiscReport disc_iterate(const Poly& f, const Rat& alpha, int n) {
  if (n < 1) throw std::invalid_argument("disc_iterate: n must be >= 1");
  const int d = f.degree();
  if (d < 2) throw std::invalid_argument("disc_iterate: degree must be >= 2");
  checked_pow(d, n);

  // disc(f^k - alpha) by the level-k recursion, starting from disc(x - alpha) = 1
  Rat rec(1);
  for (int k = 1; k <= n; ++k) {
    Rat step = pow_rat(f.leading(), disc_b_exponent(d, k));
    step *= Rat(pow_int(Int(d), checked_pow(d, k)));
    step *= pow_rat(rec, Int(d));
    step *= critical_product(f, alpha, k);
    if (disc_parity_sign(d, k) < 0) step = -step;
    rec = step;
  }

  Rat oracle = discriminant(Poly::iterate(f, n) - Poly::constant(alpha));
  if (rec != oracle)
    throw std::logic_error("disc_iterate: recursion disagrees with the resultant oracle");

  DiscReport rep;
  rep.n = n;
  rep.disc_value = rec;
  rep.a_parity_sign = disc_parity_sign(d, n);
  rep.b_exponent = disc_b_exponent(d, n);
  rep.nonsquare_part = nonsquare_part(f, alpha, n);
  if (rep.nonsquare_part != 0) {
    rep.square_quotient = rep.disc_value / rep.nonsquare_part;
    rep.quotient_is_square = is_square_rat(rep.square_quotient);
  }
  try {
    PcfProfile prof = pcf_classify(f);
    if (prof.is_pcf && n == prof.n_star) {
      rep.predicted_square_field = prof.m_star;
      if (prof.m_star == 0) rep.square_verified = is_square_rat(rep.disc_value);
    }
  } catch (const ResourceLimitError&) {
    // classification is advisory inside the report
  }
  return rep;
}

Rat nonsquare_part(const Poly& f, const Rat& alpha, int n) {
  if (n < 1) throw std::invalid_argument("nonsquare_part: n must be >= 1");
  const int d = f.degree();
  if (d < 2) throw std::invalid_argument("nonsquare_part: degree must be >= 2");
  if (d % 2 == 1) {
    // ((d/4) d)^{n mod 2} * prod_{k<=n} prod_i (f^k(c_i) - alpha)
    Rat out(1);
    if (n % 2 == 1) {
      out = Rat(d);
      if (d % 4 == 3) out = -out;
    }
    for (int k = 1; k <= n; ++k) out *= critical_product(f, alpha, k);
    return out;
  }
  // Even degree: the a_f exponent d^{2n-1}-1 is odd at every level and the
  // previous level enters to the d-th (even) power, so only the level-n
  // critical product survives, with one a_f and the sign (-1)^{A(d,n)}.
  Rat out = f.leading() * critical_product(f, alpha, n);
  if (disc_parity_sign(d, n) < 0) out = -out;
  return out;
}

PcfProfile square_prediction(const Poly& f) {
  PcfProfile prof = pcf_classify(f);
  if (!prof.is_pcf)
    throw std::invalid_argument("square_prediction: not PCF within bound (" + prof.reason + ")");
  return prof;
}

namespace {

// Multiset of level-k critical factors f^k(c_i) - alpha with f'-multiplicity.
std::map<Rat, int> factor_multiset(const CriticalOrbit& co, const Rat& alpha, int k) {
  std::map<Rat, int> ms;
  std::vector<Rat> row = co.orbit.front();
  for (int step = 0; step < k; ++step)
    for (auto& v : row) v = co.f.evaluate(v);
  for (std::size_t i = 0; i < row.size(); ++i) ms[row[i] - alpha] += co.mults[i];
  return ms;
}

}  // namespace

SquareVerification verify_square_prediction(const Poly& f, const Rat& alpha) {
  PcfProfile prof = square_prediction(f);
  SquareVerification v;
  v.case_id = prof.case_id;
  v.n_star = prof.n_star;
  v.m_star = prof.m_star;
  if (prof.m_star == 0) {
    v.mode = "exact";
    Rat disc = discriminant(Poly::iterate(f, prof.n_star) - Poly::constant(alpha));
    v.ok = is_square_rat(disc);
    return v;
  }
  v.mode = "structural";
  CriticalOrbit co = critical_orbit(f);
  if (co.rational) {
    if (f.degree() % 2 == 1) {
      // the factors from levels m*+1 .. n* pair up exactly (orbit repetition)
      std::map<Rat, int> window;
      for (int k = prof.m_star + 1; k <= prof.n_star; ++k)
        for (const auto& [val, mult] : factor_multiset(co, alpha, k)) window[val] += mult;
      v.ok = std::all_of(window.begin(), window.end(),
                         [](const auto& kv) { return kv.second % 2 == 0; });
    } else {
      // the level-n* factor multiset already occurs at some level <= m*
      auto top = factor_multiset(co, alpha, prof.n_star);
      v.ok = false;
      for (int k = 1; k <= prof.m_star && !v.ok; ++k)
        v.ok = (factor_multiset(co, alpha, k) == top);
    }
    return v;
  }
  // encoding route: fall back to exact products
  if (f.degree() % 2 == 1) {
    Rat window(1);
    for (int k = prof.m_star + 1; k <= prof.n_star; ++k)
      window *= critical_product(f, alpha, k);
    v.ok = is_square_rat(window);
  } else {
    Rat top = critical_product(f, alpha, prof.n_star);
    v.ok = false;
    for (int k = 1; k <= prof.m_star && !v.ok; ++k)
      v.ok = (critical_product(f, alpha, k) == top);
  }
  return v;
}

Family embedding_target(const Poly& f) { return square_prediction(f).target; }

}  // namespace arbor
