#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "arbor/group.hpp"
#include "arbor/poly.hpp"
#include "arbor/rational.hpp"

namespace arbor {

using DegreePartition = std::vector<int>;  // ascending, sums to the degree

struct DdfOutcome {
  bool ramified = false;
  std::string why;  // "bad reduction", "leading coefficient", "repeated factor"
  DegreePartition partition;
};

// Degree partition of the irreducible factorization of the monic reduction of
// g mod p, by distinct-degree factorization (no equal-degree splitting is
// needed for partitions). Primes meeting the discriminant or the leading
// coefficient are flagged ramified.
DdfOutcome ddf_partition_of(const Poly& g, std::uint64_t p);
DdfOutcome ddf_partition(const Poly& f, const Rat& alpha, int n, std::uint64_t p);

struct CycleCensus {
  Int group_order;
  std::map<DegreePartition, std::uint64_t> counts;
  Rat frequency(const DegreePartition& part) const;
};

CycleCensus census(const PermGroup& g, std::uint64_t bound = 100000);

struct CandidateComparison {
  std::string name;
  Int order;
  bool containment = false;  // every observed partition occurs in the census
  Rat tv_distance;           // exact total-variation distance
  std::vector<DegreePartition> unobserved_types;  // census support never seen
};

struct FrobeniusReport {
  std::string f_text;
  Rat alpha;
  int n = 0;
  std::uint64_t prime_bound = 0;
  std::uint64_t good_primes = 0;
  std::uint64_t ramified_primes = 0;
  bool sufficient_data = false;
  std::map<DegreePartition, std::uint64_t> observed;
  std::vector<std::pair<std::uint64_t, DegreePartition>> per_prime;  // good primes only
  std::vector<CandidateComparison> candidates;
};

FrobeniusReport frobenius_compare(
    const Poly& f, const Rat& alpha, int n, std::uint64_t prime_bound,
    const std::vector<std::pair<std::string, const PermGroup*>>& candidates,
    bool keep_per_prime = false);

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

std::string partition_to_string(const DegreePartition& part);  // "1,2"

}  // namespace arbor
