#include "arbor/families.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

#include "arbor/errors.hpp"

namespace arbor {

Family Family::E(int m) {
  if (m < 1) throw std::invalid_argument("Family::E: m must be >= 1");
  return {FamilyKind::E, m, 0, 0};
}

Family Family::F(int m1, int m2) {
  if (!(m1 > m2 && m2 >= 1)) throw std::invalid_argument("Family::F: need m1 > m2 >= 1");
  return {FamilyKind::F, 0, m1, m2};
}

std::string Family::name() const {
  switch (kind) {
    case FamilyKind::Full: return "full";
    case FamilyKind::E: return "E^" + std::to_string(m);
    case FamilyKind::F:
      return "F^(" + std::to_string(m1) + "," + std::to_string(m2) + ")";
  }
  return "?";
}

namespace {

Int factorial(int d) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(d));
  return f;
}

// Number of tree vertices at levels 0..t, i.e. (d^{t+1}-1)/(d-1); 0 for t < 0.
Int vertex_count_through(int d, int t) {
  Int c = 0, w = 1;
  for (int k = 0; k <= t; ++k) {
    c += w;
    w *= d;
  }
  return c;
}

}  // namespace

Int closed_form_order(const TreeShape& shape, const Family& family) {
  const int d = shape.arity, n = shape.depth;
  Int full;
  mpz_pow_ui(full.get_mpz_t(), factorial(d).get_mpz_t(),
             vertex_count_through(d, n - 1).get_ui());
  int threshold = 0;  // conditions live at vertices of height >= m, levels 0..n-m
  switch (family.kind) {
    case FamilyKind::Full: return full;
    case FamilyKind::E: threshold = family.m; break;
    case FamilyKind::F: threshold = family.m1; break;
  }
  if (n < threshold) return full;
  Int two_exp;
  mpz_pow_ui(two_exp.get_mpz_t(), Int(2).get_mpz_t(),
             vertex_count_through(d, n - threshold).get_ui());
  return full / two_exp;
}

bool is_member(const WreathElement& s, const Family& family) {
  switch (family.kind) {
    case FamilyKind::Full: return true;
    case FamilyKind::E: return is_member_E(s, family.m);
    case FamilyKind::F: return is_member_F(s, family.m1, family.m2);
  }
  return false;
}

WreathElement random_member(const TreeShape& shape, const Family& family,
                            std::mt19937_64& rng) {
  WreathElement w = WreathElement::random(shape, rng);
  if (family.kind == FamilyKind::Full) return w;
  const int d = shape.arity, n = shape.depth;
  const int mm = family.kind == FamilyKind::E ? family.m : family.m1;
  if (mm > n) return w;
  const Perm swap12 = Perm::from_cycles(static_cast<std::size_t>(d), {{1, 2}});
  // Root-down sweep: a toggle at the deepest relevant descendant flips the
  // current vertex's condition and only disturbs levels not yet visited.
  std::uint64_t stride = 1;
  for (int k = 0; k < mm - 1; ++k) stride *= static_cast<std::uint64_t>(d);
  for (int level = 0; level <= n - mm; ++level) {
    const std::uint64_t count = shape.vertex_count_at(level);
    for (std::uint64_t v = 0; v < count; ++v) {
      WreathElement sub = w.subtree_at(level, v);
      int sign = family.kind == FamilyKind::E
                     ? sign_restricted(sub, family.m)
                     : sign_pair(sub, family.m1, family.m2);
      if (sign == -1) {
        std::uint64_t target = v * stride;
        w.set_vertex_perm(level + mm - 1, target,
                          w.vertex_perm(level + mm - 1, target) * swap12);
      }
    }
  }
  return w;
}

HarvestedGroup harvest_group(const TreeShape& shape, const Family& family, std::uint64_t seed,
                             int max_random) {
  const int d = shape.arity, n = shape.depth;
  const Int target = closed_form_order(shape, family);
  std::vector<WreathElement> wgens;

  std::vector<Perm> vertex_perms;
  if (family.kind == FamilyKind::Full) {
    vertex_perms.push_back(Perm::from_cycles(d, {{1, 2}}));
    std::vector<std::uint32_t> dcycle(d);
    for (int i = 0; i < d; ++i) dcycle[i] = static_cast<std::uint32_t>(i + 1);
    vertex_perms.push_back(Perm::from_cycles(d, {dcycle}));
  } else {
    if (d >= 3) vertex_perms.push_back(Perm::from_cycles(d, {{1, 2, 3}}));
    if (d > 3 && d % 2 == 1) {
      std::vector<std::uint32_t> dcycle(d);
      for (int i = 0; i < d; ++i) dcycle[i] = static_cast<std::uint32_t>(i + 1);
      vertex_perms.push_back(Perm::from_cycles(d, {dcycle}));
    }
  }
  for (int level = 0; level < n; ++level) {
    const std::uint64_t count = shape.vertex_count_at(level);
    for (std::uint64_t v = 0; v < count; ++v)
      for (const Perm& p : vertex_perms) {
        WreathElement w(shape);
        w.set_vertex_perm(level, v, p);
        wgens.push_back(std::move(w));
      }
  }
  for (const auto& w : wgens) assert(is_member(w, family));

  PermGroup group(static_cast<std::size_t>(shape.leaf_count()));
  for (const auto& w : wgens) group.add_generator(w.to_flat());

  std::mt19937_64 rng(seed);
  int attempts = 0;
  while (group.order() != target && attempts < max_random) {
    ++attempts;
    WreathElement w = random_member(shape, family, rng);
    if (!is_member(w, family)) continue;  // fix-up is exact; defensive only
    Perm flat = w.to_flat();
    if (group.contains(flat)) continue;
    group.add_generator(flat);
    wgens.push_back(std::move(w));
  }
  if (group.order() != target)
    throw HarvestError("harvest " + family.name() + " at (d=" + std::to_string(d) +
                       ",n=" + std::to_string(n) + "): certified order " +
                       group.order().get_str() + " != closed form " + target.get_str() +
                       " after " + std::to_string(attempts) + " random members");
  return HarvestedGroup{shape, family, std::move(group), std::move(wgens)};
}

NormalTower tower_E(const TreeShape& shape, std::uint64_t seed) {
  const int d = shape.arity, n = shape.depth;
  if (d % 2 == 0) throw std::invalid_argument("tower_E: even arity unsupported");
  if (n < 2) throw std::invalid_argument("tower_E: depth must be >= 2");
  const std::size_t degree = static_cast<std::size_t>(shape.leaf_count());

  std::vector<Perm> even_vertex_perms{Perm::from_cycles(d, {{1, 2, 3}})};
  if (d > 3) {
    std::vector<std::uint32_t> dcycle(d);
    for (int i = 0; i < d; ++i) dcycle[i] = static_cast<std::uint32_t>(i + 1);
    even_vertex_perms.push_back(Perm::from_cycles(d, {dcycle}));
  }

  // M_n: alternating groups at every bottom vertex.
  PermGroup m_group(degree);
  const std::uint64_t bottom = shape.vertex_count_at(n - 1);
  for (std::uint64_t v = 0; v < bottom; ++v)
    for (const Perm& p : even_vertex_perms) {
      WreathElement w(shape);
      w.set_vertex_perm(n - 1, v, p);
      m_group.add_generator(w.to_flat());
    }
  Int ad;
  mpz_pow_ui(ad.get_mpz_t(), Int(factorial(d) / 2).get_mpz_t(),
             static_cast<unsigned long>(bottom));
  if (m_group.order() != ad) throw std::logic_error("tower_E: M_n order mismatch");

  // ker(res_{n-1}) within E_n^2: bottom-level elements whose d sibling signs
  // multiply to +1 under each level-(n-2) vertex.
  PermGroup k_group(degree);
  const Perm swap12 = Perm::from_cycles(d, {{1, 2}});
  const std::uint64_t upper = shape.vertex_count_at(n - 2);
  for (std::uint64_t u = 0; u < upper; ++u) {
    for (int c = 0; c < d; ++c)
      for (const Perm& p : even_vertex_perms) {
        WreathElement w(shape);
        w.set_vertex_perm(n - 1, u * d + c, p);
        k_group.add_generator(w.to_flat());
      }
    for (int c = 0; c + 1 < d; ++c) {
      WreathElement w(shape);
      w.set_vertex_perm(n - 1, u * d + c, swap12);
      w.set_vertex_perm(n - 1, u * d + c + 1, swap12);
      k_group.add_generator(w.to_flat());
    }
  }
  Int kexp;
  mpz_pow_ui(kexp.get_mpz_t(), Int(pow_int(factorial(d), d) / 2).get_mpz_t(),
             static_cast<unsigned long>(upper));
  if (k_group.order() != kexp) throw std::logic_error("tower_E: ker(res) order mismatch");

  HarvestedGroup e2 = harvest_group(shape, Family::E(2), seed);

  NormalTower tower;
  tower.subgroups.push_back(PermGroup(degree));
  tower.subgroups.push_back(std::move(m_group));
  tower.subgroups.push_back(std::move(k_group));
  tower.subgroups.push_back(std::move(e2.group));
  tower.names = {"1", "M_n", "ker(res_{n-1})", "E_n^2"};
  tower.normality_verified = true;
  for (std::size_t i = 0; i + 1 < tower.subgroups.size(); ++i) {
    if (!(tower.subgroups[i].order() < tower.subgroups[i + 1].order()))
      tower.normality_verified = false;
    for (std::size_t j = i + 1; j < tower.subgroups.size(); ++j)
      if (!is_normal_in(tower.subgroups[i], tower.subgroups[j]))
        tower.normality_verified = false;
  }
  return tower;
}

namespace {

// x with x a x^{-1} = b, for permutations of the same cycle type.
Perm conjugator_between(const Perm& a, const Perm& b) {
  auto cycles_of = [](const Perm& p) {
    std::vector<std::vector<std::uint32_t>> cycles;
    std::vector<bool> seen(p.degree(), false);
    for (std::uint32_t x = 0; x < p.degree(); ++x) {
      if (seen[x]) continue;
      std::vector<std::uint32_t> cyc;
      for (std::uint32_t y = x; !seen[y]; y = p(y)) {
        seen[y] = true;
        cyc.push_back(y);
      }
      cycles.push_back(std::move(cyc));
    }
    std::stable_sort(cycles.begin(), cycles.end(),
                     [](const auto& u, const auto& v) { return u.size() < v.size(); });
    return cycles;
  };
  auto ca = cycles_of(a), cb = cycles_of(b);
  if (ca.size() != cb.size()) throw std::logic_error("conjugator_between: cycle types differ");
  std::vector<std::uint32_t> img(a.degree());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].size() != cb[i].size())
      throw std::logic_error("conjugator_between: cycle types differ");
    for (std::size_t j = 0; j < ca[i].size(); ++j) img[ca[i][j]] = cb[i][j] + 1;
  }
  std::vector<std::uint32_t> img1(a.degree());
  for (std::size_t i = 0; i < a.degree(); ++i) img1[i] = img[i];
  return Perm::from_images1(img1);
}

Perm inverting_conjugator(const Perm& a) { return conjugator_between(a, a.inverse()); }

WreathElement extend_with_trivial_bottom(const WreathElement& t, const TreeShape& shape) {
  WreathElement out(shape);
  for (int k = 0; k < t.shape().depth; ++k) {
    const std::uint64_t count = t.shape().vertex_count_at(k);
    for (std::uint64_t v = 0; v < count; ++v) out.set_vertex_perm(k, v, t.vertex_perm(k, v));
  }
  return out;
}

}  // namespace

WreathElement conjugating_inverter(const WreathElement& sigma) {
  const TreeShape& shape = sigma.shape();
  const int n = shape.depth;
  if (n == 1) {
    WreathElement tau(shape);
    tau.set_vertex_perm(0, 0, inverting_conjugator(sigma.vertex_perm(0, 0)));
    return tau;
  }
  WreathElement tau0 = conjugating_inverter(sigma.restrict_to(n - 1));
  WreathElement top = extend_with_trivial_bottom(tau0, shape);
  WreathElement conj = top * sigma * top.inverse();
  WreathElement target = sigma.inverse();
  // conj and target now share the truncation sigma0^{-1}; a bottom-only
  // element B with B conj B^{-1} = target is pinned down cycle by cycle along
  // the truncation's action t on bottom vertices:
  //   beta_w . c_w = m_w . beta_{t^{-1}(w)}
  // whose closure needs a conjugator between the two cycle products.
  const std::uint64_t bottom = shape.vertex_count_at(n - 1);
  std::vector<std::uint64_t> tmap(bottom);
  for (std::uint64_t v = 0; v < bottom; ++v) tmap[v] = target.apply_vertex0(n - 1, v);

  WreathElement fixer(shape);
  std::vector<bool> done(bottom, false);
  for (std::uint64_t start = 0; start < bottom; ++start) {
    if (done[start]) continue;
    std::vector<std::uint64_t> cyc;
    for (std::uint64_t v = start; !done[v]; v = tmap[v]) {
      done[v] = true;
      cyc.push_back(v);
    }
    const std::size_t k = cyc.size();
    Perm cprod = Perm::identity(shape.arity);
    Perm mprod = Perm::identity(shape.arity);
    // C = c_{v0} c_{v_{k-1}} ... c_{v1}, M likewise.
    cprod = conj.vertex_perm(n - 1, cyc[0]);
    mprod = target.vertex_perm(n - 1, cyc[0]);
    for (std::size_t t = k - 1; t >= 1; --t) {
      cprod = cprod * conj.vertex_perm(n - 1, cyc[t]);
      mprod = mprod * target.vertex_perm(n - 1, cyc[t]);
    }
    Perm beta = conjugator_between(cprod, mprod);
    fixer.set_vertex_perm(n - 1, cyc[0], beta);
    for (std::size_t t = 0; t + 1 < k; ++t) {
      beta = target.vertex_perm(n - 1, cyc[t + 1]) * beta *
             conj.vertex_perm(n - 1, cyc[t + 1]).inverse();
      fixer.set_vertex_perm(n - 1, cyc[t + 1], beta);
    }
  }
  return fixer * top;
}

// --- Parity tuples ----------------------------------------------------------

ParityTuple::ParityTuple(std::vector<int> e) : entries(std::move(e)) {
  for (int v : entries)
    if (v != 1 && v != -1) throw std::invalid_argument("ParityTuple: entries must be +-1");
}

int ParityTuple::minus_count() const {
  int c = 0;
  for (int v : entries)
    if (v == -1) ++c;
  return c;
}

const ParityTuple& ReduceTrace::final_tuple() const {
  return steps.empty() ? initial : steps.back().after;
}

namespace {

ParityTuple rotate_right(const ParityTuple& a) {
  std::vector<int> e(a.entries.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = a.entries[(i + e.size() - 1) % e.size()];
  return ParityTuple(e);
}

ParityTuple block_form_of(int d, int minus) {
  std::vector<int> e(d, 1);
  for (int i = 0; i < minus; ++i) e[i] = -1;
  return ParityTuple(e);
}

bool is_block_form(const ParityTuple& a) {
  return a == block_form_of(static_cast<int>(a.entries.size()), a.minus_count());
}

void require_step_budget(const std::vector<ReduceStep>& steps, int cap) {
  if (static_cast<int>(steps.size()) >= cap)
    throw NonTerminationError("parity tuple reduction exceeded the step cap");
}

// Sorts the -1 entries to the front with consecutive-triple rotations only.
void bubble_to_block(ParityTuple& cur, std::vector<ReduceStep>& steps, int cap) {
  const int d = static_cast<int>(cur.entries.size());
  while (!is_block_form(cur)) {
    require_step_budget(steps, cap);
    int t = 0;
    while (cur.entries[t] == -1) ++t;
    int q = t + 1;
    while (cur.entries[q] == 1) ++q;
    auto& e = cur.entries;
    if (q + 1 <= d - 1) {
      // left rotation on (q-1, q, q+1) walks the -1 one slot left
      int x = e[q - 1], m = e[q], z = e[q + 1];
      e[q - 1] = m;
      e[q] = z;
      e[q + 1] = x;
      steps.push_back({ReduceStepKind::ThreeShift, q - 1, cur});
    } else {
      // right edge: right rotation on (q-2, q-1, q)
      int x = e[q - 2], y = e[q - 1], m = e[q];
      e[q - 2] = m;
      e[q - 1] = x;
      e[q] = y;
      steps.push_back({ReduceStepKind::ThreeShift, q - 2, cur});
    }
  }
}

}  // namespace

ReduceTrace reduce_parity_tuple(const ParityTuple& a, int step_cap) {
  const int d = static_cast<int>(a.entries.size());
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("reduce_parity_tuple: d must be odd >= 3");
  if (a.minus_count() % 2 != 0)
    throw std::invalid_argument("reduce_parity_tuple: minus count must be even");
  if (a.is_all_ones())
    throw std::invalid_argument("reduce_parity_tuple: the all-ones tuple is excluded");

  ReduceTrace trace{a, {}};
  ParityTuple cur = a;
  bubble_to_block(cur, trace.steps, step_cap);
  if (cur.minus_count() > 2) {
    ParityTuple block = cur;
    ParityTuple rotated = rotate_right(block);
    trace.steps.push_back({ReduceStepKind::Rotation, -1, rotated});
    std::vector<int> prod(d);
    for (int i = 0; i < d; ++i) prod[i] = block.entries[i] * rotated.entries[i];
    cur = ParityTuple(prod);
    trace.steps.push_back({ReduceStepKind::BlockProduct, -1, cur});
    bubble_to_block(cur, trace.steps, step_cap);
  }
  if (cur != block_form_of(d, 2)) throw std::logic_error("reduce_parity_tuple: bad final tuple");
  return trace;
}

ReduceTrace literal_algorithm1(const ParityTuple& a0, int step_cap) {
  const int d = static_cast<int>(a0.entries.size());
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("literal_algorithm1: d must be odd >= 3");
  ReduceTrace trace{a0, {}};
  ParityTuple a = a0;
  const ParityTuple goal = block_form_of(d, 2);
  int budget = step_cap;
  while (!(a == goal)) {
    if (--budget < 0) throw NonTerminationError("literal Algorithm 1 exceeded the step cap");
    ParityTuple ap = a;
    ParityTuple b = block_form_of(d, a.minus_count());
    while (!(ap == b)) {
      if (--budget < 0) throw NonTerminationError("literal Algorithm 1 exceeded the step cap");
      int i = -1;
      for (int j = 0; j + 1 < d; ++j)
        if (ap.entries[j] == 1 && ap.entries[j + 1] == -1) {
          i = j;
          break;
        }
      if (i < 0 || i + 2 >= d)
        throw NonTerminationError("literal Algorithm 1 is stuck (no shiftable triple)");
      auto& e = ap.entries;
      int x = e[i], y = e[i + 1], z = e[i + 2];
      e[i] = y;
      e[i + 1] = z;
      e[i + 2] = x;
    }
    ap = rotate_right(ap);
    std::vector<int> prod(d);
    for (int i = 0; i < d; ++i) prod[i] = a.entries[i] * ap.entries[i];
    a = ParityTuple(prod);
    trace.steps.push_back({ReduceStepKind::BlockProduct, -1, a});
  }
  return trace;
}

bool validate_reduce_trace(const ReduceTrace& trace) {
  auto even = [](const ParityTuple& t) { return t.minus_count() % 2 == 0; };
  if (!even(trace.initial)) return false;
  ParityTuple prev = trace.initial;
  const int d = static_cast<int>(prev.entries.size());
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const ReduceStep& step = trace.steps[s];
    const ParityTuple& next = step.after;
    if (!even(next)) return false;
    switch (step.kind) {
      case ReduceStepKind::ThreeShift: {
        int w = step.window;
        if (w < 0 || w + 2 >= d) return false;
        ParityTuple left = prev, right = prev;
        std::swap(left.entries[w], left.entries[w + 1]);
        std::swap(left.entries[w + 1], left.entries[w + 2]);  // (a,b,c) -> (b,c,a)
        std::swap(right.entries[w + 1], right.entries[w + 2]);
        std::swap(right.entries[w], right.entries[w + 1]);  // (a,b,c) -> (c,a,b)
        if (!(next == left || next == right)) return false;
        break;
      }
      case ReduceStepKind::Rotation: {
        if (!(next == rotate_right(prev))) return false;
        if (!is_block_form(prev)) return false;
        break;
      }
      case ReduceStepKind::BlockProduct: {
        if (s == 0 || trace.steps[s - 1].kind != ReduceStepKind::Rotation) return false;
        const ParityTuple& before_rot =
            (s >= 2) ? trace.steps[s - 2].after : trace.initial;
        for (int i = 0; i < d; ++i)
          if (next.entries[i] != prev.entries[i] * before_rot.entries[i]) return false;
        break;
      }
    }
    prev = next;
  }
  return true;
}

}  // namespace arbor
