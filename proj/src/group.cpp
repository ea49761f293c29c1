#include "arbor/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "arbor/errors.hpp"

namespace arbor {

PermGroup::PermGroup(std::size_t degree) : degree_(degree), order_(1) {}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators) : PermGroup(degree) {
  for (const auto& g : generators) add_generator(g);
}

void PermGroup::add_generator(const Perm& g) {
  if (g.degree() != degree_) throw std::invalid_argument("PermGroup: generator degree mismatch");
  if (g.is_identity()) return;
  if (contains(g)) {
    gens_.push_back(g);
    return;
  }
  gens_.push_back(g);
  auto [res, l] = sift(g, 0);
  place(res, l);
  verify_from(l);
  recompute_order();
}

void PermGroup::place(const Perm& residue, std::size_t level) {
  if (level == chain_.size()) {
    ChainLevel fresh;
    fresh.base = residue.smallest_moved();
    chain_.push_back(std::move(fresh));
  }
  chain_[level].gens.push_back(residue);
}

// Strong generators acting at this level: everything placed at level or
// deeper (deeper generators fix this base but can move other orbit points).
void PermGroup::collect_gens_from(std::size_t level, std::vector<const Perm*>& out) const {
  out.clear();
  for (std::size_t l = level; l < chain_.size(); ++l)
    for (const Perm& s : chain_[l].gens) out.push_back(&s);
}

// Standard down-up pass: verify that every Schreier generator of each level
// sifts to the identity, descending whenever a residue has to be placed.
void PermGroup::verify_from(std::size_t start) {
  std::int64_t i = static_cast<std::int64_t>(start);
  std::vector<const Perm*> sgens;
  while (i >= 0) {
    const std::size_t lvl = static_cast<std::size_t>(i);
    recompute_orbit(lvl);
    collect_gens_from(lvl, sgens);
    bool clean = true;
    const std::size_t npts = chain_[lvl].orbit_pts.size();
    const std::size_t ngens = sgens.size();
    for (std::size_t a = 0; a < npts && clean; ++a) {
      for (std::size_t si = 0; si < ngens; ++si) {
        // place() below may reallocate chain_ and gens vectors, so nothing
        // collected above is touched after it; we restart from the loop top.
        Perm schreier;
        {
          const ChainLevel& L = chain_[lvl];
          const Perm& s = *sgens[si];
          std::uint32_t y = s(L.orbit_pts[a]);
          schreier = L.transversal[L.orbit_pos[y]].inverse() * (s * L.transversal[a]);
        }
        if (schreier.is_identity()) continue;
        auto [res, l] = sift(std::move(schreier), lvl + 1);
        if (res.is_identity()) continue;
        place(res, l);
        i = static_cast<std::int64_t>(l);
        clean = false;
        break;
      }
    }
    if (clean) --i;
  }
}

std::pair<Perm, std::size_t> PermGroup::sift(Perm p, std::size_t from) const {
  for (std::size_t l = from; l < chain_.size(); ++l) {
    const ChainLevel& L = chain_[l];
    std::uint32_t x = p(L.base);
    if (x == L.base) continue;
    std::int64_t pos = L.orbit_pos[x];
    if (pos < 0) return {std::move(p), l};
    p = L.transversal[pos].inverse() * p;
  }
  return {std::move(p), chain_.size()};
}

void PermGroup::recompute_orbit(std::size_t level) {
  std::vector<const Perm*> sgens;
  collect_gens_from(level, sgens);
  ChainLevel& L = chain_[level];
  L.orbit_pos.assign(degree_, -1);
  L.orbit_pts.clear();
  L.transversal.clear();
  L.orbit_pos[L.base] = 0;
  L.orbit_pts.push_back(L.base);
  L.transversal.push_back(Perm::identity(degree_));
  for (std::size_t i = 0; i < L.orbit_pts.size(); ++i) {
    for (const Perm* s : sgens) {
      std::uint32_t y = (*s)(L.orbit_pts[i]);
      if (L.orbit_pos[y] < 0) {
        L.orbit_pos[y] = static_cast<std::int64_t>(L.orbit_pts.size());
        L.orbit_pts.push_back(y);
        L.transversal.push_back(*s * L.transversal[i]);
      }
    }
  }
}

void PermGroup::recompute_order() {
  order_ = 1;
  for (const auto& L : chain_) order_ *= static_cast<unsigned long>(L.orbit_pts.size());
}

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree_) return false;
  auto [res, l] = sift(p, 0);
  (void)l;
  return res.is_identity();
}

std::vector<std::uint32_t> PermGroup::orbit1(std::uint32_t point1) const {
  if (point1 < 1 || point1 > degree_) throw std::invalid_argument("orbit: point out of range");
  std::vector<bool> seen(degree_, false);
  std::deque<std::uint32_t> queue{point1 - 1};
  seen[point1 - 1] = true;
  std::vector<std::uint32_t> out;
  while (!queue.empty()) {
    std::uint32_t x = queue.front();
    queue.pop_front();
    out.push_back(x + 1);
    for (const Perm& g : gens_) {
      std::uint32_t y = g(x);
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool PermGroup::is_transitive() const { return orbit1(1).size() == degree_; }

Perm PermGroup::random_element(std::mt19937_64& rng) const {
  Perm e = Perm::identity(degree_);
  for (const auto& L : chain_) {
    std::uniform_int_distribution<std::size_t> dist(0, L.orbit_pts.size() - 1);
    e = e * L.transversal[dist(rng)];
  }
  return e;
}

void PermGroup::for_each_element(const std::function<void(const Perm&)>& fn,
                                 std::uint64_t bound) const {
  if (order_ > bound)
    throw ResourceLimitError("group of order " + order_.get_str() +
                             " exceeds enumeration bound " + std::to_string(bound));
  std::function<void(std::size_t, const Perm&)> walk = [&](std::size_t l, const Perm& acc) {
    if (l == chain_.size()) {
      fn(acc);
      return;
    }
    for (const Perm& u : chain_[l].transversal) walk(l + 1, acc * u);
  };
  walk(0, Perm::identity(degree_));
}

std::vector<Perm> PermGroup::elements(std::uint64_t bound) const {
  std::vector<Perm> out;
  out.reserve(order_.fits_ulong_p() ? order_.get_ui() : 0);
  for_each_element([&](const Perm& p) { out.push_back(p); }, bound);
  return out;
}

bool is_subgroup_of(const PermGroup& sub, const PermGroup& sup) {
  for (const Perm& g : sub.generators())
    if (!sup.contains(g)) return false;
  return true;
}

bool is_normal_in(const PermGroup& sub, const PermGroup& sup) {
  if (!is_subgroup_of(sub, sup)) return false;
  for (const Perm& g : sup.generators())
    for (const Perm& s : sub.generators())
      if (!sub.contains(g * s * g.inverse())) return false;
  return true;
}

PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seeds) {
  for (const Perm& s : seeds)
    if (!g.contains(s)) throw std::invalid_argument("normal_closure: seed not in group");
  PermGroup h(g.degree());
  std::deque<Perm> queue;
  for (const Perm& s : seeds) {
    if (!h.contains(s)) {
      h.add_generator(s);
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    Perm x = queue.front();
    queue.pop_front();
    for (const Perm& gg : g.generators()) {
      Perm c = gg * x * gg.inverse();
      if (!h.contains(c)) {
        h.add_generator(c);
        queue.push_back(c);
      }
    }
  }
  return h;
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Perm> comms;
  for (const Perm& a : g.generators())
    for (const Perm& b : g.generators()) {
      Perm c = a * b * a.inverse() * b.inverse();
      if (!c.is_identity()) comms.push_back(c);
    }
  return normal_closure(g, comms);
}

std::vector<Int> abelianization_invariants(const PermGroup& g, std::uint64_t quotient_bound) {
  PermGroup der = derived_subgroup(g);
  Int qorder = g.order() / der.order();
  if (!qorder.fits_ulong_p() || qorder.get_ui() > quotient_bound)
    throw ResourceLimitError("abelianization: quotient order " + qorder.get_str() +
                             " exceeds bound");
  const std::uint64_t m = qorder.get_ui();

  // Coset representatives of [g,g] by breadth-first multiplication.
  std::vector<Perm> reps{Perm::identity(g.degree())};
  auto find_rep = [&](const Perm& p) -> std::size_t {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (der.contains(reps[i].inverse() * p)) return i;
    return reps.size();
  };
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const Perm& gg : g.generators()) {
      Perm cand = reps[i] * gg;
      if (find_rep(cand) == reps.size()) reps.push_back(std::move(cand));
    }
  }
  if (reps.size() != m) throw std::logic_error("abelianization: coset count mismatch");

  // Orders of the cosets determine the abelian group up to isomorphism.
  std::vector<std::uint64_t> orders(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    Perm pw = reps[i];
    std::uint64_t k = 1;
    while (!der.contains(pw)) {
      pw = pw * reps[i];
      ++k;
    }
    orders[i] = k;
  }

  std::vector<Int> invariants;
  std::uint64_t rest = m;
  for (std::uint64_t p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    auto is_p_power = [p](std::uint64_t o) {
      while (o % p == 0) o /= p;
      return o == 1;
    };
    std::uint64_t p_part_size = 0;  // cosets with p-power order, identity included
    for (std::uint64_t o : orders)
      if (is_p_power(o)) ++p_part_size;
    // N_j = #cosets with order dividing p^j; e_j = log_p(N_j / N_{j-1}) is the
    // number of cyclic factors C_{p^i} with i >= j.
    std::vector<std::uint64_t> counts;  // counts[j-1] = N_j
    for (std::uint64_t pj = p;; pj *= p) {
      std::uint64_t c = 0;
      for (std::uint64_t o : orders)
        if (is_p_power(o) && o <= pj) ++c;
      counts.push_back(c);
      if (c == p_part_size) break;
    }
    std::vector<int> e;  // e[j-1] = #{factors with exponent >= j}
    std::uint64_t prev = 1;
    for (std::uint64_t c : counts) {
      std::uint64_t ratio = c / prev;
      int lg = 0;
      while (ratio > 1) {
        ratio /= p;
        ++lg;
      }
      e.push_back(lg);
      prev = c;
    }
    for (int j = static_cast<int>(e.size()); j >= 1; --j) {
      int here = e[j - 1];
      int above = (j < static_cast<int>(e.size())) ? e[j] : 0;
      for (int t = 0; t < here - above; ++t) invariants.push_back(pow_int(Int(p), j));
    }
  }
  std::sort(invariants.begin(), invariants.end());
  return invariants;
}

namespace {

std::vector<Perm> class_representatives(const PermGroup& g, std::uint64_t bound) {
  std::vector<Perm> elems = g.elements(bound);
  std::unordered_map<Perm, std::size_t, PermHash> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
  std::vector<bool> seen(elems.size(), false);
  std::vector<Perm> reps;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (seen[i]) continue;
    reps.push_back(elems[i]);
    std::deque<std::size_t> queue{i};
    seen[i] = true;
    while (!queue.empty()) {
      std::size_t j = queue.front();
      queue.pop_front();
      for (const Perm& gg : g.generators()) {
        Perm c = gg * elems[j] * gg.inverse();
        std::size_t k = index.at(c);
        if (!seen[k]) {
          seen[k] = true;
          queue.push_back(k);
        }
      }
    }
  }
  return reps;
}

bool same_group(const PermGroup& a, const PermGroup& b) {
  return a.order() == b.order() && is_subgroup_of(a, b);
}

}  // namespace

std::vector<PermGroup> conjugacy_class_closures(const PermGroup& g, std::uint64_t bound) {
  std::vector<PermGroup> closures;
  for (const Perm& rep : class_representatives(g, bound)) {
    if (rep.is_identity()) continue;
    PermGroup n = normal_closure(g, {rep});
    bool known = false;
    for (const auto& c : closures)
      if (same_group(c, n)) {
        known = true;
        break;
      }
    if (!known) closures.push_back(std::move(n));
  }
  return closures;
}

std::vector<PermGroup> minimal_normal_subgroups(const PermGroup& g, std::uint64_t bound) {
  std::vector<PermGroup> closures = conjugacy_class_closures(g, bound);
  std::vector<PermGroup> minimal;
  for (const auto& n : closures) {
    bool is_min = true;
    for (const auto& m : closures)
      if (m.order() < n.order() && is_subgroup_of(m, n)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(n);
  }
  return minimal;
}

std::vector<PermGroup> normal_subgroup_lattice(const PermGroup& g, std::uint64_t bound) {
  std::vector<PermGroup> atoms = conjugacy_class_closures(g, bound);
  std::vector<PermGroup> lattice{PermGroup(g.degree())};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& atom : atoms) {
      std::vector<Perm> gens = lattice[i].generators();
      gens.insert(gens.end(), atom.generators().begin(), atom.generators().end());
      PermGroup join(g.degree(), gens);
      bool known = false;
      for (const auto& known_n : lattice)
        if (same_group(known_n, join)) {
          known = true;
          break;
        }
      if (!known) {
        lattice.push_back(std::move(join));
        queue.push_back(lattice.size() - 1);
      }
    }
  }
  std::sort(lattice.begin(), lattice.end(),
            [](const PermGroup& a, const PermGroup& b) { return a.order() < b.order(); });
  return lattice;
}

std::vector<ChiefSeries> chief_series(const PermGroup& g, std::uint64_t bound) {
  std::vector<PermGroup> lattice = normal_subgroup_lattice(g, bound);
  const std::size_t n = lattice.size();
  // covers[i]: indices j with lattice[i] < lattice[j] and nothing strictly between
  std::vector<std::vector<std::size_t>> leq(n, std::vector<std::size_t>());
  auto contained = [&](std::size_t a, std::size_t b) {
    return lattice[a].order() < lattice[b].order() && is_subgroup_of(lattice[a], lattice[b]);
  };
  std::vector<std::vector<std::size_t>> covers(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!contained(i, j)) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k)
        if (k != i && k != j && contained(i, k) && contained(k, j)) cover = false;
      if (cover) covers[i].push_back(j);
    }

  std::size_t bottom = 0, top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (lattice[i].order() == 1) bottom = i;
    if (lattice[i].order() == g.order()) top = i;
  }

  std::vector<ChiefSeries> all;
  std::vector<std::size_t> path{bottom};
  std::function<void()> dfs = [&]() {
    std::size_t cur = path.back();
    if (cur == top) {
      ChiefSeries s;
      for (std::size_t idx : path) s.subgroups.push_back(lattice[idx]);
      for (std::size_t t = 1; t < path.size(); ++t)
        s.factor_orders.push_back(lattice[path[t]].order() / lattice[path[t - 1]].order());
      all.push_back(std::move(s));
      if (all.size() > 10000) throw ResourceLimitError("chief_series: too many chains");
      return;
    }
    for (std::size_t nxt : covers[cur]) {
      path.push_back(nxt);
      dfs();
      path.pop_back();
    }
  };
  dfs();
  return all;
}

bool is_unique_chief_series(const PermGroup& g, std::uint64_t bound) {
  return chief_series(g, bound).size() == 1;
}

std::optional<std::pair<Perm, Perm>> rank2_witness(const PermGroup& g, std::uint64_t attempts,
                                                   std::uint64_t seed) {
  if (g.is_trivial()) throw std::invalid_argument("rank2_witness: group is trivial");
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < attempts; ++t) {
    Perm x = g.random_element(rng);
    Perm y = g.random_element(rng);
    if (x.is_identity() || y.is_identity()) continue;
    PermGroup h(g.degree(), {x, y});
    if (h.order() == g.order()) return std::make_pair(x, y);
  }
  return std::nullopt;
}

}  // namespace arbor
