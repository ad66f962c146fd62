#pragma once

// Finite subtrees of omega^{<omega}: tree rank, Kleene-Brouwer
// linearization, rank-homogeneity and thinness surrogates, and ordinal
// arithmetic in Cantor normal form below omega^omega.

#include <map>
#include <vector>

#include "fcw/logic.hpp"

namespace fcw {

/// Ordinal below omega^omega in Cantor normal form: terms
/// omega^exp * coeff with exponents strictly decreasing.  Zero is the
/// empty list.
struct Ordinal {
  std::vector<std::pair<int, long long>> terms;

  static Ordinal nat(long long n);
  static Ordinal omega_times(long long n);  // omega * n
  static Ordinal make(std::vector<std::pair<int, long long>> terms);

  bool is_nat() const;
  long long as_nat() const;  // throws when infinite
  bool operator==(const Ordinal& o) const { return terms == o.terms; }
  bool operator<(const Ordinal& o) const;
};

Ordinal ord_add(const Ordinal& a, const Ordinal& b);
Ordinal ord_mul(const Ordinal& a, const Ordinal& b);
int ord_cmp(const Ordinal& a, const Ordinal& b);  // -1, 0, 1

std::string format_ordinal(const Ordinal& a);

/// Prefix-closed set of finite sequences of naturals; the empty sequence is
/// the top node of a nonempty tree.
struct FinTree {
  std::vector<std::vector<int>> nodes;  // sorted

  static FinTree from_paths(std::vector<std::vector<int>> paths);
  bool contains(const std::vector<int>& path) const;
  std::vector<std::vector<int>> children(const std::vector<int>& path) const;
  size_t size() const { return nodes.size(); }
};

/// 0 for leaves, otherwise least natural greater than all children's ranks.
int tree_rank(const FinTree& T, const std::vector<int>& node);
int tree_rank(const FinTree& T);  // rank of the root

/// Kleene-Brouwer linear order on the nodes: sigma < tau iff sigma properly
/// extends tau, or they first differ at a coordinate where sigma is smaller.
/// Elements are numbered by the sorted node order; second component maps the
/// new names back to node paths.
std::pair<FinStructure, std::vector<std::vector<int>>> kb_order(const FinTree& T);

/// Finite surrogate of rank-homogeneity: every achievable smaller rank at
/// the next level is achieved by at least k successors.
bool is_rank_homogeneous(const FinTree& T, int k);

struct RankEntry {
  Ordinal rank;
  long long count = 1;  // exact multiplicity
  bool many = false;    // "many(k)" marker: at least k, unbounded block
};

struct LevelRankProfile {
  std::vector<std::vector<RankEntry>> levels;
};

LevelRankProfile rank_profile(const FinTree& T);

/// Rank-homogeneous comparison by levelwise rank multisets with
/// multiplicities truncated at k.  Both trees must pass
/// is_rank_homogeneous at k.
bool iso_by_profile(const FinTree& T, const FinTree& U, int k);

/// Order type of the level-n rank set at most omega*n.  Exact finite rank
/// sets contribute their cardinality; a `many` entry at an infinite rank is
/// read as a block of ranks cofinal in it.
bool is_thin_profile(const LevelRankProfile& P);

/// Finite tree of the given depth realizing the profile's levelwise rank
/// sets (multiplicities clamped at k) and passing is_rank_homogeneous(k).
FinTree build_rank_homogeneous(const LevelRankProfile& P, int k, int depth);

/// Canonical form for rooted tree isomorphism (test oracle helper).
std::string tree_canon(const FinTree& T);

}  // namespace fcw
