#pragma once

// Finite relational structures identified with their atomic diagrams,
// plus a finitary first-order formula AST with Tarskian satisfaction.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcw {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Relation {
  std::string name;
  int arity = 1;
  bool operator==(const Relation& o) const { return name == o.name && arity == o.arity; }
};

/// A finite list of relation symbols with arities.  Names are pairwise
/// distinct, arities are >= 1; the empty signature is allowed.
struct Signature {
  std::vector<Relation> relations;

  static Signature make(std::vector<Relation> rels);
  int index_of(const std::string& name) const;  // -1 when absent
  bool operator==(const Signature& o) const { return relations == o.relations; }
};

struct AtomicFact {
  std::string rel;
  std::vector<long long> args;
  bool positive = true;

  bool operator<(const AtomicFact& o) const {
    if (rel != o.rel) return rel < o.rel;
    if (args != o.args) return args < o.args;
    return positive < o.positive;
  }
  bool operator==(const AtomicFact& o) const {
    return rel == o.rel && args == o.args && positive == o.positive;
  }
};

/// Structure with universe {0,...,size-1}.  Unlisted tuples are false
/// (closed-world atomic diagram).
struct FinStructure {
  Signature sig;
  int size = 0;
  std::vector<std::set<std::vector<int>>> tables;  // parallel to sig.relations

  bool holds(int rel, const std::vector<int>& args) const;
};

FinStructure validate_structure(const Signature& sig, int size,
                                const std::vector<AtomicFact>& facts);

/// Complete atomic diagram in the canonical enumeration: relations in
/// signature order, argument tuples lexicographic.
std::vector<AtomicFact> diagram(const FinStructure& A);

// ---------------------------------------------------------------------------
// Formulas

struct Term {
  bool is_var = true;
  int id = 0;

  static Term var(int v) { return Term{true, v}; }
  static Term cons(int c) { return Term{false, c}; }
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum Kind { Atomic, Equal, Not, And, Or, Exists, Forall };
  Kind kind;
  std::string rel;             // Atomic
  std::vector<Term> terms;     // Atomic args; Equal uses terms[0], terms[1]
  std::vector<FormulaPtr> sub; // Not: 1 child; And/Or: any; quantifiers: body
  int var = 0;                 // Exists/Forall
};

FormulaPtr f_atom(std::string rel, std::vector<Term> terms);
FormulaPtr f_eq(Term a, Term b);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(std::vector<FormulaPtr> fs);
FormulaPtr f_or(std::vector<FormulaPtr> fs);
FormulaPtr f_exists(int var, FormulaPtr body);
FormulaPtr f_forall(int var, FormulaPtr body);

std::set<int> free_vars(const Formula& f);

/// Tarskian truth over the finite universe.  Throws on unbound free
/// variables or malformed atoms.
bool satisfies(const FinStructure& A, const Formula& phi,
               const std::map<int, int>& env = {});

std::string format_formula(const Formula& f);

// ---------------------------------------------------------------------------

/// Induced substructure on S, renumbered order-preservingly; second
/// component maps new names to old.
std::pair<FinStructure, std::vector<int>> substructure(const FinStructure& A,
                                                       const std::set<int>& S);

/// Yields every structure with universe {0,...,n-1} exactly once.  Tables
/// are driven by a bit-vector over the canonical slot enumeration, counted
/// up lexicographically.
class StructureStream {
 public:
  StructureStream(Signature sig, int n);
  std::optional<FinStructure> next();
  unsigned long long total() const { return total_; }

 private:
  Signature sig_;
  int n_ = 0;
  std::vector<std::pair<int, std::vector<int>>> slots_;  // (relation, tuple)
  std::vector<char> bits_;
  bool done_ = false;
  bool first_ = true;
  unsigned long long total_ = 1;
};

std::vector<FinStructure> all_structures(const Signature& sig, int n);

}  // namespace fcw
