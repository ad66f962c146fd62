#include "fcw/logic.hpp"

#include <algorithm>
#include <sstream>

namespace fcw {

Signature Signature::make(std::vector<Relation> rels) {
  std::set<std::string> seen;
  for (const auto& r : rels) {
    if (r.arity < 1) throw error("relation '" + r.name + "': arity must be >= 1");
    if (!seen.insert(r.name).second)
      throw error("duplicate relation name '" + r.name + "'");
  }
  Signature s;
  s.relations = std::move(rels);
  return s;
}

int Signature::index_of(const std::string& name) const {
  for (size_t i = 0; i < relations.size(); ++i)
    if (relations[i].name == name) return static_cast<int>(i);
  return -1;
}

bool FinStructure::holds(int rel, const std::vector<int>& args) const {
  return tables[rel].count(args) > 0;
}

static std::string fact_str(const AtomicFact& f) {
  std::ostringstream os;
  os << (f.positive ? "" : "!") << f.rel;
  for (auto a : f.args) os << ' ' << a;
  return os.str();
}

FinStructure validate_structure(const Signature& sig, int size,
                                const std::vector<AtomicFact>& facts) {
  if (size < 0) throw error("negative universe size");
  FinStructure A;
  A.sig = sig;
  A.size = size;
  A.tables.resize(sig.relations.size());
  for (const auto& f : facts) {
    int r = sig.index_of(f.rel);
    if (r < 0) throw error("unknown relation in fact: " + fact_str(f));
    if ((int)f.args.size() != sig.relations[r].arity)
      throw error("arity mismatch in fact: " + fact_str(f));
    std::vector<int> t;
    for (auto a : f.args) {
      if (a < 0 || a >= size)
        throw error("out-of-range element in fact: " + fact_str(f));
      t.push_back((int)a);
    }
    if (f.positive) A.tables[r].insert(t);
    // negative facts are redundant under the closed-world convention,
    // but must not contradict a listed positive fact
  }
  for (const auto& f : facts) {
    if (f.positive) continue;
    int r = sig.index_of(f.rel);
    std::vector<int> t(f.args.begin(), f.args.end());
    if (A.tables[r].count(t))
      throw error("contradictory polarity for fact: " + fact_str(f));
  }
  return A;
}

// Enumerate all arity-length tuples over {0..size-1} lexicographically.
static std::vector<std::vector<int>> all_tuples(int size, int len) {
  std::vector<std::vector<int>> out;
  if (len == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> cur(len, 0);
  if (size == 0) return out;
  while (true) {
    out.push_back(cur);
    int i = len - 1;
    while (i >= 0 && cur[i] == size - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

std::vector<AtomicFact> diagram(const FinStructure& A) {
  std::vector<AtomicFact> out;
  for (size_t r = 0; r < A.sig.relations.size(); ++r) {
    const auto& rel = A.sig.relations[r];
    for (const auto& t : all_tuples(A.size, rel.arity)) {
      AtomicFact f;
      f.rel = rel.name;
      f.args.assign(t.begin(), t.end());
      f.positive = A.holds((int)r, t);
      out.push_back(std::move(f));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

FormulaPtr f_atom(std::string rel, std::vector<Term> terms) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Atomic;
  f->rel = std::move(rel);
  f->terms = std::move(terms);
  return f;
}
FormulaPtr f_eq(Term a, Term b) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Equal;
  f->terms = {a, b};
  return f;
}
FormulaPtr f_not(FormulaPtr g) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Not;
  f->sub = {std::move(g)};
  return f;
}
FormulaPtr f_and(std::vector<FormulaPtr> fs) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::And;
  f->sub = std::move(fs);
  return f;
}
FormulaPtr f_or(std::vector<FormulaPtr> fs) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Or;
  f->sub = std::move(fs);
  return f;
}
FormulaPtr f_exists(int var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Exists;
  f->var = var;
  f->sub = {std::move(body)};
  return f;
}
FormulaPtr f_forall(int var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Forall;
  f->var = var;
  f->sub = {std::move(body)};
  return f;
}

static void collect_free(const Formula& f, std::set<int>& bound, std::set<int>& out) {
  switch (f.kind) {
    case Formula::Atomic:
    case Formula::Equal:
      for (const auto& t : f.terms)
        if (t.is_var && !bound.count(t.id)) out.insert(t.id);
      break;
    case Formula::Not:
    case Formula::And:
    case Formula::Or:
      for (const auto& s : f.sub) collect_free(*s, bound, out);
      break;
    case Formula::Exists:
    case Formula::Forall: {
      bool was = bound.count(f.var) > 0;
      bound.insert(f.var);
      collect_free(*f.sub[0], bound, out);
      if (!was) bound.erase(f.var);
      break;
    }
  }
}

std::set<int> free_vars(const Formula& f) {
  std::set<int> bound, out;
  collect_free(f, bound, out);
  return out;
}

namespace {

struct Evaluator {
  const FinStructure& A;
  std::vector<int> env;  // var -> element, -1 unset

  int term_value(const Term& t) const {
    if (t.is_var) {
      if (t.id < 0 || t.id >= (int)env.size() || env[t.id] < 0)
        throw error("unbound free variable x" + std::to_string(t.id));
      return env[t.id];
    }
    if (t.id < 0 || t.id >= A.size)
      throw error("constant out of universe: " + std::to_string(t.id));
    return t.id;
  }

  bool eval(const Formula& f) {
    switch (f.kind) {
      case Formula::Atomic: {
        int r = A.sig.index_of(f.rel);
        if (r < 0) throw error("unknown relation in formula: " + f.rel);
        if ((int)f.terms.size() != A.sig.relations[r].arity)
          throw error("arity mismatch in formula atom: " + f.rel);
        std::vector<int> args;
        args.reserve(f.terms.size());
        for (const auto& t : f.terms) args.push_back(term_value(t));
        return A.holds(r, args);
      }
      case Formula::Equal:
        return term_value(f.terms[0]) == term_value(f.terms[1]);
      case Formula::Not:
        return !eval(*f.sub[0]);
      case Formula::And:
        for (const auto& s : f.sub)
          if (!eval(*s)) return false;
        return true;
      case Formula::Or:
        for (const auto& s : f.sub)
          if (eval(*s)) return true;
        return false;
      case Formula::Exists: {
        ensure(f.var);
        int saved = env[f.var];
        for (int e = 0; e < A.size; ++e) {
          env[f.var] = e;
          if (eval(*f.sub[0])) {
            env[f.var] = saved;
            return true;
          }
        }
        env[f.var] = saved;
        return false;
      }
      case Formula::Forall: {
        ensure(f.var);
        int saved = env[f.var];
        for (int e = 0; e < A.size; ++e) {
          env[f.var] = e;
          if (!eval(*f.sub[0])) {
            env[f.var] = saved;
            return false;
          }
        }
        env[f.var] = saved;
        return true;
      }
    }
    throw error("unreachable formula kind");
  }

  void ensure(int var) {
    if (var >= (int)env.size()) env.resize(var + 1, -1);
  }
};

}  // namespace

bool satisfies(const FinStructure& A, const Formula& phi,
               const std::map<int, int>& env) {
  for (int v : free_vars(phi))
    if (!env.count(v)) throw error("unbound free variable x" + std::to_string(v));
  Evaluator ev{A, {}};
  for (const auto& [v, e] : env) {
    if (v < 0) throw error("negative variable id in environment");
    ev.ensure(v);
    ev.env[v] = e;
  }
  return ev.eval(phi);
}

static std::string term_str(const Term& t) {
  return t.is_var ? "x" + std::to_string(t.id) : std::to_string(t.id);
}

std::string format_formula(const Formula& f) {
  std::ostringstream os;
  switch (f.kind) {
    case Formula::Atomic: {
      os << f.rel << '(';
      for (size_t i = 0; i < f.terms.size(); ++i)
        os << (i ? "," : "") << term_str(f.terms[i]);
      os << ')';
      break;
    }
    case Formula::Equal:
      os << term_str(f.terms[0]) << '=' << term_str(f.terms[1]);
      break;
    case Formula::Not:
      os << "~" << format_formula(*f.sub[0]);
      break;
    case Formula::And:
    case Formula::Or: {
      os << (f.kind == Formula::And ? "And[" : "Or[");
      for (size_t i = 0; i < f.sub.size(); ++i)
        os << (i ? ", " : "") << format_formula(*f.sub[i]);
      os << ']';
      break;
    }
    case Formula::Exists:
      os << "E x" << f.var << '.' << format_formula(*f.sub[0]);
      break;
    case Formula::Forall:
      os << "A x" << f.var << '.' << format_formula(*f.sub[0]);
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::pair<FinStructure, std::vector<int>> substructure(const FinStructure& A,
                                                       const std::set<int>& S) {
  for (int e : S)
    if (e < 0 || e >= A.size) throw error("substructure: element not in universe");
  std::vector<int> new_to_old(S.begin(), S.end());
  std::map<int, int> old_to_new;
  for (size_t i = 0; i < new_to_old.size(); ++i) old_to_new[new_to_old[i]] = (int)i;

  FinStructure B;
  B.sig = A.sig;
  B.size = (int)new_to_old.size();
  B.tables.resize(A.tables.size());
  for (size_t r = 0; r < A.tables.size(); ++r) {
    for (const auto& t : A.tables[r]) {
      std::vector<int> u;
      bool inside = true;
      for (int e : t) {
        auto it = old_to_new.find(e);
        if (it == old_to_new.end()) { inside = false; break; }
        u.push_back(it->second);
      }
      if (inside) B.tables[r].insert(u);
    }
  }
  return {B, new_to_old};
}

StructureStream::StructureStream(Signature sig, int n) : sig_(std::move(sig)), n_(n) {
  if (n < 0) throw error("negative universe size");
  for (size_t r = 0; r < sig_.relations.size(); ++r) {
    std::vector<int> cur(sig_.relations[r].arity, 0);
    if (n == 0) continue;
    while (true) {
      slots_.push_back({(int)r, cur});
      int i = (int)cur.size() - 1;
      while (i >= 0 && cur[i] == n - 1) cur[i--] = 0;
      if (i < 0) break;
      ++cur[i];
    }
  }
  bits_.assign(slots_.size(), 0);
  total_ = 1;
  for (size_t i = 0; i < slots_.size(); ++i) total_ = total_ * 2ULL;
}

std::optional<FinStructure> StructureStream::next() {
  if (done_) return std::nullopt;
  if (!first_) {
    // count up: bits as a big-endian binary counter
    int i = (int)bits_.size() - 1;
    while (i >= 0 && bits_[i] == 1) bits_[i--] = 0;
    if (i < 0) { done_ = true; return std::nullopt; }
    bits_[i] = 1;
  }
  first_ = false;
  FinStructure A;
  A.sig = sig_;
  A.size = n_;
  A.tables.resize(sig_.relations.size());
  for (size_t s = 0; s < slots_.size(); ++s)
    if (bits_[s]) A.tables[slots_[s].first].insert(slots_[s].second);
  return A;
}

std::vector<FinStructure> all_structures(const Signature& sig, int n) {
  StructureStream st(sig, n);
  std::vector<FinStructure> out;
  while (auto A = st.next()) out.push_back(std::move(*A));
  return out;
}

}  // namespace fcw
