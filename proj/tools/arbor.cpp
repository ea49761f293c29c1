// arbor: exact experiments with arboreal groups, iterate discriminants and
// Frobenius statistics. Subcommands: group, census, disc, pcf, local, frob.
// Exit codes: 0 success, 1 check failure, 2 usage, 3 resource limit.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arbor/errors.hpp"
#include "arbor/families.hpp"
#include "arbor/frobenius.hpp"
#include "arbor/group.hpp"
#include "arbor/localfields.hpp"
#include "arbor/pcf.hpp"
#include "arbor/poly.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace arbor;

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  std::uint64_t enum_bound = 100000;
  std::uint64_t prime_bound = 10000;
  std::uint64_t rank_attempts = 10000;
  std::string format = "json";
};

bool g_check_failed = false;

std::string int_str(const Int& v) { return v.get_str(); }

json val_json(const PadicVal& v) {
  if (v.infinite) return "inf";
  return v.v;
}

void emit(const RunConfig& cfg, const json& doc) {
  if (cfg.format == "json") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  if (cfg.format == "text" || cfg.format == "tsv") {
    const char* sep = cfg.format == "text" ? ": " : "\t";
    std::function<void(const std::string&, const json&)> walk =
        [&](const std::string& prefix, const json& node) {
          if (node.is_object()) {
            for (auto it = node.begin(); it != node.end(); ++it)
              walk(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
          } else if (node.is_array()) {
            std::size_t i = 0;
            for (const auto& item : node) walk(prefix + "[" + std::to_string(i++) + "]", item);
          } else {
            std::cout << prefix << sep << (node.is_string() ? node.get<std::string>() : node.dump())
                      << "\n";
          }
        };
    walk("", doc);
    return;
  }
  throw CLI::ValidationError("--format must be json, text or tsv");
}

Family parse_family(const std::string& name, const std::vector<int>& ms) {
  if (name == "full") {
    if (!ms.empty()) throw CLI::ValidationError("family full takes no level parameters");
    return Family::full();
  }
  if (name == "E") {
    if (ms.size() != 1) throw CLI::ValidationError("family E needs one level parameter m");
    return Family::E(ms[0]);
  }
  if (name == "F") {
    if (ms.size() != 2) throw CLI::ValidationError("family F needs parameters m1 m2");
    return Family::F(ms[0], ms[1]);
  }
  throw CLI::ValidationError("family must be E, F or full");
}

json tower_json(const NormalTower& tower) {
  json t;
  json orders = json::array();
  for (const auto& g : tower.subgroups) orders.push_back(int_str(g.order()));
  t["names"] = tower.names;
  t["orders"] = orders;
  t["normality_verified"] = tower.normality_verified;
  if (!tower.normality_verified) g_check_failed = true;
  return t;
}

int cmd_group(const RunConfig& cfg, const std::string& fam_name, int d, int n,
              const std::vector<int>& ms, bool want_chief, bool want_rank, bool want_tower) {
  Family family = parse_family(fam_name, ms);
  TreeShape shape(d, n);
  HarvestedGroup h = harvest_group(shape, family, cfg.seed);

  json doc;
  doc["family"] = family.name();
  doc["d"] = d;
  doc["n"] = n;
  if (family.kind == FamilyKind::E) doc["m"] = family.m;
  if (family.kind == FamilyKind::F) doc["m"] = json::array({family.m1, family.m2});
  doc["order"] = int_str(h.group.order());
  doc["closed_form_order"] = int_str(closed_form_order(shape, family));
  doc["degree"] = static_cast<std::uint64_t>(shape.leaf_count());
  doc["generators"] = h.group.generators().size();
  doc["transitive"] = h.group.is_transitive();

  if (want_chief) {
    auto all = chief_series(h.group, cfg.enum_bound);
    json c;
    c["count"] = all.size();
    c["unique"] = all.size() == 1;
    json series = json::array();
    for (const auto& s : all) {
      json one;
      json orders = json::array(), factors = json::array();
      for (const auto& g : s.subgroups) orders.push_back(int_str(g.order()));
      for (const auto& f : s.factor_orders) factors.push_back(int_str(f));
      one["subgroup_orders"] = orders;
      one["factor_orders"] = factors;
      series.push_back(one);
    }
    c["series"] = series;
    auto mins = minimal_normal_subgroups(h.group, cfg.enum_bound);
    json morders = json::array();
    for (const auto& m : mins) morders.push_back(int_str(m.order()));
    c["minimal_normal_orders"] = morders;
    doc["chief"] = c;
  }
  if (want_rank) {
    auto witness = rank2_witness(h.group, cfg.rank_attempts, cfg.seed);
    json r;
    r["witness_found"] = witness.has_value();
    if (witness) {
      r["x"] = witness->first.cycle_string();
      r["y"] = witness->second.cycle_string();
      PermGroup pair(h.group.degree(), {witness->first, witness->second});
      r["pair_order"] = int_str(pair.order());
    } else {
      r["note"] = "no witness found in budget (not a disproof)";
      g_check_failed = true;
    }
    doc["rank"] = r;
  }
  if (want_tower) doc["tower"] = tower_json(tower_E(shape, cfg.seed));

  emit(cfg, doc);
  return 0;
}

int cmd_census(const RunConfig& cfg, const std::string& fam_name, int d, int n,
               const std::vector<int>& ms) {
  Family family = parse_family(fam_name, ms);
  HarvestedGroup h = harvest_group(TreeShape(d, n), family, cfg.seed);
  CycleCensus cs = census(h.group, cfg.enum_bound);
  json doc;
  doc["family"] = family.name();
  doc["d"] = d;
  doc["n"] = n;
  doc["order"] = int_str(cs.group_order);
  json table;
  for (const auto& [part, count] : cs.counts) {
    json row;
    row["count"] = count;
    row["frequency"] = rat_to_string(cs.frequency(part));
    table[partition_to_string(part)] = row;
  }
  doc["census"] = table;
  emit(cfg, doc);
  return 0;
}

json profile_json(const PcfProfile& prof) {
  json doc;
  doc["is_pcf"] = prof.is_pcf;
  if (!prof.is_pcf) {
    doc["reason"] = prof.reason;
    return doc;
  }
  doc["L"] = prof.tail;
  doc["O"] = prof.period;
  doc["degree"] = prof.degree;
  doc["degree_odd"] = prof.degree_odd;
  doc["leading_coeff_square"] = prof.leading_coeff_square;
  doc["case"] = prof.case_id;
  doc["n_star"] = prof.n_star;
  doc["m_star"] = prof.m_star;
  doc["target_group"] = prof.target.name() + " at depth n";
  return doc;
}

int cmd_pcf(const RunConfig& cfg, const std::string& poly_text) {
  Poly f = Poly::parse(poly_text);
  if (f.degree() < 2) throw CLI::ValidationError("pcf: polynomial degree must be >= 2");
  json doc;
  doc["f"] = f.to_coeff_string();
  doc["pretty"] = f.to_pretty_string();
  PcfProfile prof = pcf_classify(f);
  doc.update(profile_json(prof));
  emit(cfg, doc);
  return 0;
}

int cmd_disc(const RunConfig& cfg, const std::string& poly_text, const std::string& alpha_text,
             int n, bool verify_square) {
  Poly f = Poly::parse(poly_text);
  if (f.degree() < 2) throw CLI::ValidationError("disc: polynomial degree must be >= 2");
  Rat alpha = parse_rat(alpha_text);
  DiscReport rep = disc_iterate(f, alpha, n);
  json doc;
  doc["f"] = f.to_coeff_string();
  doc["alpha"] = rat_to_string(alpha);
  doc["d"] = f.degree();
  doc["n"] = n;
  doc["disc_n"] = rat_to_string(rep.disc_value);
  doc["a_parity_sign"] = rep.a_parity_sign;
  doc["b_exponent"] = int_str(rep.b_exponent);
  doc["nonsquare_part"] = rat_to_string(rep.nonsquare_part);
  doc["quotient_is_square"] = rep.quotient_is_square;
  if (rep.predicted_square_field)
    doc["predicted_square_field"] = *rep.predicted_square_field;
  if (verify_square) {
    SquareVerification v = verify_square_prediction(f, alpha);
    json vj;
    vj["case"] = v.case_id;
    vj["n_star"] = v.n_star;
    vj["m_star"] = v.m_star;
    vj["mode"] = v.mode;
    vj["ok"] = v.ok;
    doc["square_checked"] = vj;
    if (!v.ok) g_check_failed = true;
    if (!rep.quotient_is_square && rep.nonsquare_part != 0) g_check_failed = true;
  }
  emit(cfg, doc);
  return 0;
}

int cmd_local(const RunConfig& cfg, const std::string& poly_text, const std::string& alpha_text,
              int n) {
  Poly f = Poly::parse(poly_text);
  if (f.degree() < 2) throw CLI::ValidationError("local: polynomial degree must be >= 2");
  Rat alpha = parse_rat(alpha_text);
  json doc;
  doc["f"] = f.to_coeff_string();
  doc["alpha"] = rat_to_string(alpha);
  doc["n"] = n;
  ConditionReport cond = condition_check(alpha);
  json cj;
  cj["v3_alpha"] = val_json(cond.v3_alpha);
  cj["v3_one_minus_alpha"] = val_json(cond.v3_one_minus);
  cj["v2_alpha"] = val_json(cond.v2_alpha);
  cj["v2_one_minus_alpha"] = val_json(cond.v2_one_minus);
  cj["unit_step_at_3"] = cond.at3;
  cj["unit_step_at_2"] = cond.at2;
  cj["ok"] = cond.ok;
  doc["condition"] = cj;

  json eis = json::array();
  for (std::uint64_t p : {3ull, 2ull}) {
    json e;
    e["p"] = p;
    auto s = eisenstein_shifted(f, alpha, n, p);
    if (s)
      e["shift"] = *s;
    else
      e["shift"] = nullptr;
    eis.push_back(e);
  }
  doc["eisenstein"] = eis;

  json np = json::array();
  for (std::uint64_t p : {2ull, 3ull}) {
    json seg_list = json::array();
    for (const auto& seg : newton_polygon(f - Poly::constant(alpha), p).segments) {
      json s;
      s["slope"] = rat_to_string(seg.slope);
      s["len"] = seg.length;
      seg_list.push_back(s);
    }
    json entry;
    entry["p"] = p;
    entry["segments"] = seg_list;
    np.push_back(entry);
  }
  doc["newton_level1"] = np;

  if (f == belyi_like_cubic() && cond.ok) {
    RamificationReport ram = ramification_report(alpha, n);
    json rj;
    rj["predicted_e"] = {{"2", int_str(ram.e2)}, {"3", int_str(ram.e3)}};
    rj["degree_divisor"] = int_str(ram.degree_divisor);
    rj["eisenstein_shift3"] =
        ram.eisenstein_shift3 ? json(*ram.eisenstein_shift3) : json(nullptr);
    rj["len2_height1_segment_at_2"] = ram.has_len2_height1_segment;
    doc["ramification"] = rj;
    if (!ram.eisenstein_shift3 || !ram.has_len2_height1_segment) g_check_failed = true;
  }
  emit(cfg, doc);
  return 0;
}

int cmd_frob(const RunConfig& cfg, const std::string& poly_text, const std::string& alpha_text,
             int n, const std::string& cand_text) {
  Poly f = Poly::parse(poly_text);
  if (f.degree() < 2) throw CLI::ValidationError("frob: polynomial degree must be >= 2");
  Rat alpha = parse_rat(alpha_text);

  std::vector<std::pair<std::string, Family>> fams;
  std::stringstream ss(cand_text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "auto") {
      Family target = embedding_target(f);
      fams.emplace_back(target.name() + " (auto)", target);
    } else if (tok == "full") {
      fams.emplace_back("full", Family::full());
    } else if (tok.rfind("E:", 0) == 0) {
      fams.emplace_back(tok, Family::E(std::stoi(tok.substr(2))));
    } else if (tok.rfind("F:", 0) == 0) {
      auto rest = tok.substr(2);
      auto colon = rest.find(':');
      if (colon == std::string::npos)
        throw CLI::ValidationError("candidate F needs F:m1:m2");
      fams.emplace_back(tok, Family::F(std::stoi(rest.substr(0, colon)),
                                       std::stoi(rest.substr(colon + 1))));
    } else {
      throw CLI::ValidationError("unknown candidate '" + tok + "'");
    }
  }

  std::vector<HarvestedGroup> groups;
  groups.reserve(fams.size());
  for (const auto& [name, family] : fams)
    groups.push_back(harvest_group(TreeShape(f.degree(), n), family, cfg.seed));
  std::vector<std::pair<std::string, const PermGroup*>> candidates;
  for (std::size_t i = 0; i < fams.size(); ++i)
    candidates.emplace_back(fams[i].first, &groups[i].group);

  FrobeniusReport rep =
      frobenius_compare(f, alpha, n, cfg.prime_bound, candidates, cfg.format == "tsv");

  if (cfg.format == "tsv") {
    std::cout << "p\tpartition\n";
    for (const auto& [p, part] : rep.per_prime)
      std::cout << p << "\t" << partition_to_string(part) << "\n";
    for (const auto& c : rep.candidates)
      if (!c.containment) g_check_failed = true;
    return 0;
  }

  json doc;
  doc["f"] = rep.f_text;
  doc["alpha"] = rat_to_string(rep.alpha);
  doc["n"] = rep.n;
  doc["prime_bound"] = rep.prime_bound;
  doc["primes_used"] = rep.good_primes;
  doc["ramified_primes"] = rep.ramified_primes;
  doc["sufficient_data"] = rep.sufficient_data;
  json obs;
  for (const auto& [part, count] : rep.observed) obs[partition_to_string(part)] = count;
  doc["observed"] = obs;
  json cands = json::array();
  for (const auto& c : rep.candidates) {
    json cj;
    cj["name"] = c.name;
    cj["order"] = int_str(c.order);
    cj["containment"] = c.containment;
    cj["tv_distance"] = rat_to_string(c.tv_distance);
    cj["unobserved_census_types"] = c.unobserved_types.size();
    cands.push_back(cj);
    if (!c.containment) g_check_failed = true;
  }
  doc["candidates"] = cands;
  emit(cfg, doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for arboreal groups, iterate discriminants and "
               "Frobenius cycle statistics"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for randomized searches (never affects values)");
  app.add_option("--format", cfg.format, "output format: json, text or tsv")
      ->check(CLI::IsMember({"json", "text", "tsv"}));
  app.add_option("--prime-bound", cfg.prime_bound, "prime bound for frob");
  app.add_option("--enum-bound", cfg.enum_bound, "element-enumeration bound");
  app.add_option("--rank-attempts", cfg.rank_attempts, "budget for rank witness search");

  std::string fam_name, poly_text, alpha_text, cand_text = "auto,full";
  std::vector<int> ms;
  int d = 3, n = 2, iter_n = 1;
  bool want_chief = false, want_rank = false, want_tower = false, verify_square = false;

  auto* group = app.add_subcommand("group", "harvest a group and certify its order");
  group->add_option("family", fam_name, "E, F or full")->required();
  group->add_option("d", d, "tree arity")->required();
  group->add_option("n", n, "tree depth")->required();
  group->add_option("m", ms, "level parameter(s): m for E, m1 m2 for F");
  group->add_flag("--chief", want_chief, "exhaustive chief series");
  group->add_flag("--rank", want_rank, "search for a generating pair");
  group->add_flag("--tower", want_tower, "verify the tower 1 < M_n < ker(res) < E_n^2");
  group->add_flag("--order", "certify the order (always on)");

  auto* cen = app.add_subcommand("census", "exact cycle-type census of a harvested group");
  cen->add_option("family", fam_name, "E, F or full")->required();
  cen->add_option("d", d, "tree arity")->required();
  cen->add_option("n", n, "tree depth")->required();
  cen->add_option("m", ms, "level parameter(s)");

  auto* disc = app.add_subcommand("disc", "iterate discriminant by recursion + oracle");
  disc->add_option("poly", poly_text, "ascending coefficients, e.g. 1,0,-3,2")->required();
  disc->add_option("alpha", alpha_text, "base point (rational)")->required();
  disc->add_option("n", iter_n, "iterate depth")->required();
  disc->add_flag("--verify-square", verify_square, "check the periodic-discriminant case law");

  auto* pcf = app.add_subcommand("pcf", "critical-orbit classification and embedding target");
  pcf->add_option("poly", poly_text, "ascending coefficients")->required();

  auto* local = app.add_subcommand("local", "valuations, Eisenstein shifts, Newton polygons");
  local->add_option("poly", poly_text, "ascending coefficients")->required();
  local->add_option("alpha", alpha_text, "base point (rational)")->required();
  local->add_option("n", iter_n, "iterate depth")->required();

  auto* frob = app.add_subcommand("frob", "Frobenius degree partitions vs candidate censuses");
  frob->add_option("poly", poly_text, "ascending coefficients")->required();
  frob->add_option("alpha", alpha_text, "base point (rational)")->required();
  frob->add_option("n", iter_n, "iterate depth")->required();
  frob->add_option("--candidates", cand_text, "comma list: auto, full, E:m, F:m1:m2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    int rc = 0;
    if (group->parsed()) rc = cmd_group(cfg, fam_name, d, n, ms, want_chief, want_rank, want_tower);
    else if (cen->parsed()) rc = cmd_census(cfg, fam_name, d, n, ms);
    else if (disc->parsed()) rc = cmd_disc(cfg, poly_text, alpha_text, iter_n, verify_square);
    else if (pcf->parsed()) rc = cmd_pcf(cfg, poly_text);
    else if (local->parsed()) rc = cmd_local(cfg, poly_text, alpha_text, iter_n);
    else if (frob->parsed()) rc = cmd_frob(cfg, poly_text, alpha_text, iter_n, cand_text);
    if (rc != 0) return rc;
    return g_check_failed ? 1 : 0;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const HarvestError& e) {
    std::cerr << "harvest failure: " << e.what() << "\n";
    return 1;
  } catch (const NonTerminationError& e) {
    std::cerr << "non-termination: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
