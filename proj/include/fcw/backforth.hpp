#pragma once

// Back-and-forth equivalences, Scott ranks, isomorphism and automorphism
// oracles, Scott sentences, and duplicate-free enumeration for finite
// structures.

#include <map>
#include <optional>
#include <vector>

#include "fcw/logic.hpp"

namespace fcw {

struct ScottReport {
  std::map<std::vector<int>, int> tuple_ranks;  // all tuples of length <= size
  int structure_rank = 0;
};

struct IsoWitness {
  std::vector<int> bijection;  // element map A -> B
};

/// Joint level-by-level refinement over the injective tuples of one or two
/// structures.  Level 0 is quantifier-free type equality; level a+1 matches
/// tuple extensions of every length up to max(|A|,|B|) at level a.  Tuples
/// with repeated entries reduce to their deduplications, which is why the
/// injective tuples suffice.  Levels are computed up to stabilization.
class BFEngine {
 public:
  explicit BFEngine(const FinStructure& A);
  BFEngine(const FinStructure& A, const FinStructure& B);

  /// Least level at which the partition stops refining.
  int stable_level() const { return stable_; }

  /// The relation ==^alpha between a tuple of the first structure (side 0)
  /// and a tuple of the second (side 1; equal to side 0 in the one-structure
  /// case).  Tuples may repeat entries.
  bool equiv(const std::vector<int>& a, const std::vector<int>& b, int alpha) const;

  /// Color id of an injective tuple at a level (clamped at stabilization).
  int color(int side, const std::vector<int>& tuple, int level) const;

  const std::vector<std::vector<int>>& injective_tuples(int side) const;

 private:
  void build();

  const FinStructure* str_[2];
  // per side: injective tuples (incl. empty), sorted; index into joint list
  std::vector<std::vector<int>> tuples_[2];
  std::map<std::vector<int>, int> index_[2];  // tuple -> joint index
  std::vector<int> side_of_;                  // joint index -> side
  std::vector<std::vector<int>> ext_;         // joint index -> joint indices of extensions
  std::vector<std::vector<int>> colors_;      // level -> joint index -> color
  int stable_ = 0;
};

bool equiv_alpha(const FinStructure& A, const std::vector<int>& a,
                 const FinStructure& B, const std::vector<int>& b, int alpha);

std::vector<std::vector<int>> automorphisms(const FinStructure& A);
bool automorphic(const FinStructure& A, const std::vector<int>& a,
                 const std::vector<int>& b);

/// Partition of all k-tuples into automorphism orbits.
std::vector<std::vector<std::vector<int>>> orbits(const FinStructure& A, int k);

/// Least beta such that ==^beta membership pins down the automorphism orbit.
int tuple_rank(const FinStructure& A, const std::vector<int>& a);

ScottReport scott_rank(const FinStructure& A);

/// Closed formula true in a finite structure B over the same signature
/// iff B is isomorphic to A.
FormulaPtr scott_sentence(const FinStructure& A);

std::optional<IsoWitness> iso(const FinStructure& A, const FinStructure& B);

/// First representatives of pairwise non-isomorphic types in stream order.
std::vector<FinStructure> friedberg_enumerate(const std::vector<FinStructure>& src,
                                              size_t limit);

/// Stabilized ==^alpha coincides with automorphism-orbit equivalence on all
/// tuple pairs of length <= size.  Expected true for every finite structure.
bool check_nadel_finite(const FinStructure& A);

}  // namespace fcw
