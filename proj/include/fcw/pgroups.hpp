#pragma once

// Finite Abelian p-groups: Ulm sequences from the partition representation
// and from an element-level chain computation, and Ulm's classification
// checked exhaustively at small sizes.

#include <vector>

#include "fcw/logic.hpp"

namespace fcw {

/// Direct sum (+) Z_{p^li} with parts non-increasing.
struct Partition {
  long long p = 2;
  std::vector<int> parts;

  static Partition make(long long p, std::vector<int> parts);
};

/// Elements are tuples (a_1,...,a_r) with a_i mod p^{l_i}, componentwise
/// addition.
struct ExplicitPGroup {
  long long p = 2;
  std::vector<int> exponents;

  static ExplicitPGroup from_partition(const Partition& g);
  long long order() const;
  std::vector<std::vector<long long>> elements() const;
  std::vector<long long> add(const std::vector<long long>& a,
                             const std::vector<long long>& b) const;
  std::vector<long long> scale(long long k, const std::vector<long long>& a) const;
  long long element_order(const std::vector<long long>& a) const;
};

struct UlmSequence {
  std::vector<long long> u;
  bool operator==(const UlmSequence& o) const { return u == o.u; }
};

/// u_k = number of parts equal to k+1; length = largest part.
UlmSequence ulm_from_partition(const Partition& g);

/// Walks the chain G_{k+1} = p G_k over explicit elements, with
/// u_k = log_p |P_k| - log_p |P_{k+1}| for P_k the order-<=p part of G_k.
UlmSequence ulm_bruteforce(const ExplicitPGroup& g, long long max_order = -1);

int group_length(const Partition& g);

/// Additive isomorphism test, independent of Ulm data: order-statistics
/// comparison, confirmed by a generator-mapping search when |G| <= p^5.
bool iso_groups(const ExplicitPGroup& g, const ExplicitPGroup& h);

/// For every pair of partitions with sum <= max_log:
/// iso_groups <=> equal Ulm sequences.
bool ulm_theorem_check(long long p, int max_log);

std::vector<Partition> partitions_up_to(long long p, int max_log);

}  // namespace fcw
