#include "arbor/localfields.hpp"

#include <stdexcept>

namespace arbor {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                          31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  // deterministic Miller-Rabin for 64-bit inputs
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                          31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PadicVal valuation(const Int& x, std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("valuation: p must be prime");
  if (x == 0) return {true, 0};
  Int a = x;
  Int pp(static_cast<unsigned long>(p));
  long v = 0;
  while (mpz_divisible_p(a.get_mpz_t(), pp.get_mpz_t())) {
    a /= pp;
    ++v;
  }
  return {false, v};
}

PadicVal valuation(const Rat& x, std::uint64_t p) {
  if (x == 0) return {true, 0};
  PadicVal num = valuation(Int(x.get_num()), p);
  PadicVal den = valuation(Int(x.get_den()), p);
  return {false, num.v - den.v};
}

ConditionReport condition_check(const Rat& alpha) {
  if (alpha == 0 || alpha == 1)
    throw std::invalid_argument("condition_check: alpha must avoid {0, 1}");
  ConditionReport r;
  r.alpha = alpha;
  Rat om = Rat(1) - alpha;
  r.v3_alpha = valuation(alpha, 3);
  r.v3_one_minus = valuation(om, 3);
  r.v2_alpha = valuation(alpha, 2);
  r.v2_one_minus = valuation(om, 2);
  r.at3 = (!r.v3_alpha.infinite && r.v3_alpha.v == 1) ||
          (!r.v3_one_minus.infinite && r.v3_one_minus.v == 1);
  r.at2 = (!r.v2_alpha.infinite && r.v2_alpha.v == 1) ||
          (!r.v2_one_minus.infinite && r.v2_one_minus.v == 1);
  r.ok = r.at3 && r.at2;
  return r;
}

NewtonPolygon newton_polygon(const Poly& f, std::uint64_t p) {
  if (f.is_zero()) throw std::invalid_argument("newton_polygon: zero polynomial");
  if (!is_prime_u64(p)) throw std::invalid_argument("newton_polygon: p must be prime");
  std::vector<std::pair<long, long>> pts;  // (i, v_p(c_i)), finite only
  for (int i = 0; i <= f.degree(); ++i) {
    if (f.coeff(i) == 0) continue;
    pts.emplace_back(i, valuation(f.coeff(i), p).v);
  }
  // lower convex hull, left to right
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // keep b only if it turns strictly upward: (b-a) x (pt-a) < 0 keeps
      long cross = (b.first - a.first) * (pt.second - a.second) -
                   (b.second - a.second) * (pt.first - a.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  NewtonPolygon np;
  np.p = p;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    Rat slope(hull[i + 1].second - hull[i].second, hull[i + 1].first - hull[i].first);
    slope.canonicalize();
    np.segments.push_back({slope, static_cast<int>(hull[i + 1].first - hull[i].first)});
  }
  return np;
}

std::optional<long> eisenstein_shifted(const Poly& f, const Rat& alpha, int n, std::uint64_t p,
                                       const std::vector<long>& shifts) {
  if (!is_prime_u64(p)) throw std::invalid_argument("eisenstein_shifted: p must be prime");
  if (n < 1) throw std::invalid_argument("eisenstein_shifted: n must be >= 1");
  Poly fn = Poly::iterate(f, n);
  for (long s : shifts) {
    Poly g = fn.compose(Poly({Rat(s), Rat(1)})) - Poly::constant(alpha);
    if (valuation(g.leading(), p).v != 0) continue;
    PadicVal c0 = valuation(g.coeff(0), p);
    if (c0.infinite || c0.v != 1) continue;
    bool ok = true;
    for (int i = 1; i < g.degree() && ok; ++i) {
      PadicVal vi = valuation(g.coeff(i), p);
      if (!vi.infinite && vi.v < 1) ok = false;
    }
    if (ok) return s;
  }
  return std::nullopt;
}

const Poly& belyi_like_cubic() {
  static const Poly f = Poly::parse("1,0,-3,2");
  return f;
}

RamificationReport ramification_report(const Rat& alpha, int n) {
  if (n < 1) throw std::invalid_argument("ramification_report: n must be >= 1");
  RamificationReport rep;
  rep.alpha = alpha;
  rep.n = n;
  rep.condition = condition_check(alpha);
  if (!rep.condition.ok)
    throw std::invalid_argument("ramification_report: alpha fails the unit-step condition");
  const Poly& f = belyi_like_cubic();
  rep.eisenstein_shift3 = eisenstein_shifted(f, alpha, n, 3);
  rep.newton2_level1 = newton_polygon(f - Poly::constant(alpha), 2);
  for (const auto& seg : rep.newton2_level1.segments)
    if (seg.length == 2 && seg.slope * 2 == -1) rep.has_len2_height1_segment = true;
  rep.e2 = pow_int(Int(2), static_cast<unsigned long>(n));
  rep.e3 = pow_int(Int(3), static_cast<unsigned long>(n));
  rep.degree_divisor = pow_int(Int(6), static_cast<unsigned long>(n));
  return rep;
}

}  // namespace arbor
