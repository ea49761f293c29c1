#include "arbor/frobenius.hpp"

#include <algorithm>
#include <stdexcept>

#include "arbor/errors.hpp"
#include "arbor/localfields.hpp"

namespace arbor {

namespace {

// Dense polynomials over F_p, ascending coefficients, normalized.
using FpPoly = std::vector<std::uint64_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

FpPoly mod(FpPoly a, const FpPoly& m, std::uint64_t p) {
  const std::uint64_t inv = invmod(m.back(), p);
  while (deg(a) >= deg(m)) {
    std::uint64_t c = mulmod(a.back(), inv, p);
    int shift = deg(a) - deg(m);
    for (int i = 0; i <= deg(m); ++i) {
      std::uint64_t sub = mulmod(c, m[i], p);
      a[i + shift] = (a[i + shift] + p - sub) % p;
    }
    trim(a);
  }
  return a;
}

FpPoly gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint64_t inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

FpPoly derivative(const FpPoly& f, std::uint64_t p) {
  if (f.size() <= 1) return {};
  FpPoly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = mulmod(f[i], i % p, p);
  trim(r);
  return r;
}

FpPoly divexact(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly rem = a, q;
  const std::uint64_t inv = invmod(b.back(), p);
  q.assign(a.size() - b.size() + 1, 0);
  while (deg(rem) >= deg(b)) {
    std::uint64_t c = mulmod(rem.back(), inv, p);
    int shift = deg(rem) - deg(b);
    q[shift] = c;
    for (int i = 0; i <= deg(b); ++i) {
      std::uint64_t sub = mulmod(c, b[i], p);
      rem[i + shift] = (rem[i + shift] + p - sub) % p;
    }
    trim(rem);
  }
  if (!rem.empty()) throw std::logic_error("divexact: inexact division");
  trim(q);
  return q;
}

FpPoly poly_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::uint64_t p) {
  FpPoly r{1};
  base = mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = mod(mul(r, base, p), m, p);
    base = mod(mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

DdfOutcome ddf_partition_of(const Poly& g, std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("ddf_partition: p must be prime");
  DdfOutcome out;
  FpPoly gp(g.degree() + 1, 0);
  for (int i = 0; i <= g.degree(); ++i) {
    const Rat& c = g.coeff(i);
    if (mpz_divisible_ui_p(Int(c.get_den()).get_mpz_t(), static_cast<unsigned long>(p))) {
      out.ramified = true;
      out.why = "bad reduction";
      return out;
    }
    Int num = Int(c.get_num()) % Int(static_cast<unsigned long>(p));
    if (num < 0) num += static_cast<unsigned long>(p);
    std::uint64_t nv = num.get_ui();
    std::uint64_t dv = invmod(Int(Int(c.get_den()) % Int(static_cast<unsigned long>(p))).get_ui(), p);
    gp[i] = mulmod(nv, dv, p);
  }
  trim(gp);
  if (deg(gp) != g.degree()) {
    out.ramified = true;
    out.why = "leading coefficient";
    return out;
  }
  // monic
  std::uint64_t inv = invmod(gp.back(), p);
  for (auto& c : gp) c = mulmod(c, inv, p);

  FpPoly d = derivative(gp, p);
  if (d.empty() || deg(gcd(gp, d, p)) > 0) {
    out.ramified = true;
    out.why = "repeated factor";
    return out;
  }

  // distinct-degree stages: after removing all factors of degree < k, the
  // gcd with x^{p^k} - x collects exactly the degree-k factors.
  FpPoly rest = gp;
  FpPoly xp_k{0, 1};  // x^{p^k} mod rest, maintained by Frobenius powering
  int k = 0;
  while (deg(rest) > 0) {
    ++k;
    if (2 * k > deg(rest)) {
      out.partition.push_back(deg(rest));
      break;
    }
    xp_k = poly_powmod(std::move(xp_k), p, rest, p);
    FpPoly probe = xp_k;
    if (probe.size() < 2) probe.resize(2, 0);
    probe[1] = (probe[1] + p - 1) % p;  // x^{p^k} - x
    trim(probe);
    FpPoly fk = probe.empty() ? rest : gcd(rest, probe, p);
    if (deg(fk) > 0) {
      for (int copies = deg(fk) / k; copies > 0; --copies) out.partition.push_back(k);
      rest = divexact(rest, fk, p);
      xp_k = mod(std::move(xp_k), rest, p);
    }
  }
  std::sort(out.partition.begin(), out.partition.end());
  return out;
}

DdfOutcome ddf_partition(const Poly& f, const Rat& alpha, int n, std::uint64_t p) {
  return ddf_partition_of(Poly::iterate(f, n) - Poly::constant(alpha), p);
}

Rat CycleCensus::frequency(const DegreePartition& part) const {
  auto it = counts.find(part);
  if (it == counts.end()) return Rat(0);
  Rat f(Int(it->second), group_order);
  f.canonicalize();
  return f;
}

CycleCensus census(const PermGroup& g, std::uint64_t bound) {
  CycleCensus c;
  c.group_order = g.order();
  g.for_each_element([&](const Perm& e) { ++c.counts[e.cycle_type()]; }, bound);
  return c;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<bool> sieve(bound + 1, true);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return primes;
}

std::string partition_to_string(const DegreePartition& part) {
  std::string s;
  for (std::size_t i = 0; i < part.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(part[i]);
  }
  return s;
}

FrobeniusReport frobenius_compare(
    const Poly& f, const Rat& alpha, int n, std::uint64_t prime_bound,
    const std::vector<std::pair<std::string, const PermGroup*>>& candidates,
    bool keep_per_prime) {
  FrobeniusReport rep;
  rep.f_text = f.to_coeff_string();
  rep.alpha = alpha;
  rep.n = n;
  rep.prime_bound = prime_bound;

  Poly g = Poly::iterate(f, n) - Poly::constant(alpha);
  for (std::uint64_t p : primes_up_to(prime_bound)) {
    DdfOutcome out = ddf_partition_of(g, p);
    if (out.ramified) {
      ++rep.ramified_primes;
      continue;
    }
    ++rep.good_primes;
    ++rep.observed[out.partition];
    if (keep_per_prime) rep.per_prime.emplace_back(p, out.partition);
  }
  rep.sufficient_data = rep.good_primes > 0;

  for (const auto& [name, group] : candidates) {
    CandidateComparison cmp;
    cmp.name = name;
    cmp.order = group->order();
    CycleCensus cs = census(*group);
    cmp.containment = true;
    for (const auto& [part, count] : rep.observed)
      if (cs.counts.find(part) == cs.counts.end()) cmp.containment = false;
    Rat tv(0);
    if (rep.good_primes > 0) {
      const Rat total(static_cast<unsigned long>(rep.good_primes));
      for (const auto& [part, count] : cs.counts) {
        Rat obs(0);
        auto it = rep.observed.find(part);
        if (it != rep.observed.end()) obs = Rat(static_cast<unsigned long>(it->second)) / total;
        tv += abs(obs - cs.frequency(part));
        if (it == rep.observed.end()) cmp.unobserved_types.push_back(part);
      }
      for (const auto& [part, count] : rep.observed)
        if (cs.counts.find(part) == cs.counts.end())
          tv += Rat(static_cast<unsigned long>(count)) / total;
      tv /= 2;
      tv.canonicalize();
    } else {
      tv = Rat(1);
      for (const auto& [part, count] : cs.counts) cmp.unobserved_types.push_back(part);
    }
    cmp.tv_distance = tv;
    rep.candidates.push_back(std::move(cmp));
  }
  return rep;
}

}  // namespace arbor
