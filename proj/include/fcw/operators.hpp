#pragma once

// Enumeration operators: budget-truncated computable transformations of
// atomic-diagram fragments, the four concrete embeddings, and the
// monotonicity checker.  Each operator documents its own complexity
// measure; all element encodings are input-independent and stable.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fcw/field.hpp"
#include "fcw/logic.hpp"
#include "fcw/trees.hpp"

namespace fcw {

/// Finite consistent fragment of an atomic diagram.
struct FactSet {
  Signature sig;
  std::set<AtomicFact> facts;
};

/// Complete closed-world diagram of a structure as a fragment.
FactSet factset_of(const FinStructure& A);

/// Structure spanned by the positive facts: universe is the set of
/// mentioned element ids, renumbered in increasing order.  Second
/// component maps new names back to the original ids.
std::pair<FinStructure, std::vector<long long>> structure_of_fragment(
    const FactSet& F);

struct Budget {
  long long level = 3;
};

struct EnumOperator {
  std::string name;
  Signature input_sig;
  Signature output_sig;
  std::function<std::set<AtomicFact>(const FactSet&, long long)> transform;
};

/// Runs the operator after validating the input fragment against the
/// input signature, and rejects inconsistent output as an internal defect.
FactSet apply_operator(const EnumOperator& op, const FactSet& F, Budget b);

/// True iff the images of a subset-increasing chain of fragments are
/// themselves subset-increasing at the fixed budget.
bool check_monotone(const EnumOperator& op, const std::vector<FactSet>& chain,
                    Budget b);

// ---------------------------------------------------------------------------
// Linear orders -> rational vector spaces (additive-group fragments)

/// Vector over Q with finitely many nonzero coordinates.
struct QVector {
  std::map<int, Rational> coords;  // no zero entries
  bool operator==(const QVector& o) const { return coords == o.coords; }
};

/// Complexity: sum over nonzero coordinates k of (k+1) + 3*cost(coef),
/// where a rational p/q in lowest terms costs |p|+q-2.
long long qvector_cost(const QVector& v);
std::string qvector_serialize(const QVector& v);

/// Stable numbering: rank in the global (cost, serialization) enumeration.
long long encode_vector(const QVector& v);
QVector decode_vector(long long id);

/// Input {< /2} linear orders, output {Plus/3}.  Emits Plus(u,v,w) for all
/// triples of vectors with support inside the mentioned universe and
/// complexity <= budget: positive when u+v=w, negative otherwise.
EnumOperator flo_to_fvs();

/// Number of linearly independent vectors mentioned in the fragment with
/// complexity <= budget.  Exact once the budget reaches the source order's
/// universe size.
long long fvs_dimension(const FactSet& F, Budget b);

// ---------------------------------------------------------------------------
// Graphs -> multiquadratic field extensions

/// Stable numbering of field normal forms (shared global enumeration).
long long encode_field(const FieldElement& e);
FieldElement decode_field(long long id);

/// Input {E/2} loop-free symmetric graphs, output {Plus/3, Times/3} over
/// encoded elements of K_G = Q(x_v)(r_ij), r_ij^2 = x_i + x_j.  Operands
/// are drawn from normal forms of complexity <= budget/3 built on the
/// mentioned vertices and positively known edges; a positive fact
/// op(a,b,c) is emitted when cost(a)+cost(b) <= budget and the exact
/// result c also has cost <= budget, a negative fact op(a,b,c) when
/// cost(a)+cost(b)+cost(c) <= budget and c differs from the result.
EnumOperator graph_to_field();

/// True iff some normal form over G's vertices and edges of complexity
/// <= b squares to x_i + x_j (exhaustive search within the budget).
bool field_has_edge_root(const FinStructure& G, int i, int j, Budget b);

// ---------------------------------------------------------------------------
// Graphs -> linear orders (lexicographic sequence fragments)

/// Atomic type of an n-tuple: equality pattern as a restricted-growth
/// string over positions, plus the set of adjacent class pairs.
struct AtomicType {
  int n = 1;
  std::vector<int> eq;                  // eq[i] = class of position i
  std::set<std::pair<int, int>> edges;  // class pairs (u < v)

  bool operator<(const AtomicType& o) const {
    if (n != o.n) return n < o.n;
    if (eq != o.eq) return eq < o.eq;
    return edges < o.edges;
  }
  bool operator==(const AtomicType& o) const {
    return n == o.n && eq == o.eq && edges == o.edges;
  }
};

/// All atomic types of tuple length <= max_n in length-then-lexicographic
/// order; a type's position in this list is its index m.
std::vector<AtomicType> atomic_types_up_to(int max_n);
long long atomic_type_index(const AtomicType& t);

/// Dyadic color classes: q belongs to Q_a when the finite binary expansion
/// of its fractional part ends in 1 0^a 1.  dyadic_of(a, r) is the r-th
/// member of Q_a, indexed by the length-then-lex rank of the prefix bits.
Rational dyadic_of(int color, long long rank);
int dyadic_color(const Rational& q);  // -1 when q is in no class

/// Image sequence r_0 q_1 r_1 ... q_n r_n k in coordinate form: the colors
/// of q_1..q_n (the witnessing tuple), the class ranks of all rational
/// coordinates in order r_0, q_1, r_1, ..., q_n, r_n, and the tag k.
struct LOSeq {
  std::vector<int> colors;       // length n >= 1
  std::vector<long long> ranks;  // length 2n+1
  long long k = 0;
};

/// Stable self-delimiting bit encoding of a sequence (documented in the
/// README); throws when the code exceeds 62 bits.
long long seq_encode(const LOSeq& s);
LOSeq seq_decode(long long id);

/// The rational coordinate vector (r_0, q_1, ..., r_n, k) of a sequence.
std::vector<Rational> seq_values(const LOSeq& s);

/// Input {E/2} graphs, output {< /2} over encoded sequences.  A sequence
/// with witnessing tuple a_1..a_n is admitted when the fragment decides
/// the tuple's full atomic type t_m, k <= m, q_i in Q_{a_i}, interior r_i
/// in Q_0 and r_n in Q_n; its complexity is n + sum of class ranks + k.
/// Order facts compare admitted sequences of complexity <= budget
/// lexicographically by rational coordinates.
EnumOperator graph_to_lo();

// ---------------------------------------------------------------------------
// Trees -> graphs

long long cantor_pair(long long a, long long b);

/// Input {child/2} trees presented with root 0 and every parent index
/// below its child index.  A node v of depth d whose ancestor path is
/// positively present and with v <= budget becomes hub cantor_pair(v,0)
/// carrying a pendant cycle cantor_pair(v,1..d+3); hubs of parent and
/// child are joined.  Output {E/2}, symmetric.
EnumOperator tree_to_graph();

/// Child-relation structure of a finite tree, nodes numbered by sorted
/// path order (so parents precede children and the root is 0).
FinStructure tree_structure(const FinTree& T);

}  // namespace fcw
