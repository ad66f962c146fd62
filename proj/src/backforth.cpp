#include "fcw/backforth.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fcw {

namespace {

void check_range(const FinStructure& A, const std::vector<int>& t) {
  for (int e : t)
    if (e < 0 || e >= A.size) throw error("tuple entry out of range");
}

// Injective tuples over {0..size-1} of all lengths 0..size, sorted.
std::vector<std::vector<int>> injective(int size) {
  std::vector<std::vector<int>> out{{}};
  size_t lo = 0;
  for (int len = 1; len <= size; ++len) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; ++i) {
      for (int e = 0; e < size; ++e) {
        if (std::find(out[i].begin(), out[i].end(), e) != out[i].end()) continue;
        auto t = out[i];
        t.push_back(e);
        out.push_back(std::move(t));
      }
    }
    lo = hi;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Quantifier-free type of an injective tuple: truth of every relation on
// every tuple of positions.  Lengths are kept apart by the prefix.
std::string qf_type(const FinStructure& A, const std::vector<int>& t) {
  std::ostringstream os;
  os << t.size() << ':';
  int L = (int)t.size();
  for (size_t r = 0; r < A.sig.relations.size(); ++r) {
    int k = A.sig.relations[r].arity;
    std::vector<int> pos(k, 0);
    if (L == 0) { os << '|'; continue; }
    while (true) {
      std::vector<int> args(k);
      for (int i = 0; i < k; ++i) args[i] = t[pos[i]];
      os << (A.holds((int)r, args) ? '1' : '0');
      int i = k - 1;
      while (i >= 0 && pos[i] == L - 1) pos[i--] = 0;
      if (i < 0) break;
      ++pos[i];
    }
    os << '|';
  }
  return os.str();
}

std::vector<int> dedup(const std::vector<int>& t) {
  std::vector<int> out;
  for (int e : t)
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  return out;
}

bool patterns_match(const std::vector<int>& a, const std::vector<int>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

bool is_prefix(const std::vector<int>& p, const std::vector<int>& t) {
  if (p.size() > t.size()) return false;
  return std::equal(p.begin(), p.end(), t.begin());
}

}  // namespace

BFEngine::BFEngine(const FinStructure& A) : str_{&A, &A} { build(); }

BFEngine::BFEngine(const FinStructure& A, const FinStructure& B) : str_{&A, &B} {
  if (!(A.sig == B.sig)) throw error("signature mismatch");
  build();
}

void BFEngine::build() {
  bool same = (str_[0] == str_[1]);
  int nsides = same ? 1 : 2;
  for (int s = 0; s < nsides; ++s) {
    tuples_[s] = injective(str_[s]->size);
    for (const auto& t : tuples_[s]) {
      int id = (int)side_of_.size();
      index_[s][t] = id;
      side_of_.push_back(s);
    }
  }
  if (same) {
    tuples_[1] = tuples_[0];
    index_[1] = index_[0];
  }

  // extension lists (a tuple is an extension of each of its prefixes)
  ext_.resize(side_of_.size());
  for (int s = 0; s < nsides; ++s) {
    for (const auto& t : tuples_[s]) {
      int ti = index_[s].at(t);
      for (const auto& u : tuples_[s])
        if (is_prefix(t, u)) ext_[ti].push_back(index_[s].at(u));
    }
  }

  // level 0: quantifier-free types, shared id space across sides
  std::map<std::string, int> type_ids;
  std::vector<int> c0(side_of_.size());
  for (int s = 0; s < nsides; ++s) {
    for (const auto& t : tuples_[s]) {
      auto ty = qf_type(*str_[s], t);
      auto [it, fresh] = type_ids.insert({ty, (int)type_ids.size()});
      (void)fresh;
      c0[index_[s].at(t)] = it->second;
    }
  }
  colors_.push_back(std::move(c0));

  // refine until the partition stabilizes
  while (true) {
    const auto& cur = colors_.back();
    int ncur = *std::max_element(cur.begin(), cur.end()) + 1;
    std::map<std::pair<int, std::vector<int>>, int> keys;
    std::vector<int> next(cur.size());
    for (size_t i = 0; i < cur.size(); ++i) {
      std::vector<int> extc;
      extc.reserve(ext_[i].size());
      for (int j : ext_[i]) extc.push_back(cur[j]);
      std::sort(extc.begin(), extc.end());
      extc.erase(std::unique(extc.begin(), extc.end()), extc.end());
      auto [it, fresh] = keys.insert({{cur[i], std::move(extc)}, (int)keys.size()});
      (void)fresh;
      next[i] = it->second;
    }
    int nnext = (int)keys.size();
    if (nnext == ncur) {
      stable_ = (int)colors_.size() - 1;
      break;
    }
    colors_.push_back(std::move(next));
  }
}

int BFEngine::color(int side, const std::vector<int>& tuple, int level) const {
  if (level > stable_) level = stable_;
  auto it = index_[side].find(tuple);
  if (it == index_[side].end()) throw error("tuple not injective or out of range");
  return colors_[level][it->second];
}

const std::vector<std::vector<int>>& BFEngine::injective_tuples(int side) const {
  return tuples_[side];
}

bool BFEngine::equiv(const std::vector<int>& a, const std::vector<int>& b,
                     int alpha) const {
  if (a.size() != b.size()) throw error("tuple length mismatch");
  check_range(*str_[0], a);
  check_range(*str_[1], b);
  if (!patterns_match(a, b)) return false;
  return color(0, dedup(a), alpha) == color(1, dedup(b), alpha);
}

bool equiv_alpha(const FinStructure& A, const std::vector<int>& a,
                 const FinStructure& B, const std::vector<int>& b, int alpha) {
  if (alpha < 0) throw error("negative level");
  if (&A == &B) {
    BFEngine e(A);
    return e.equiv(a, b, alpha);
  }
  BFEngine e(A, B);
  return e.equiv(a, b, alpha);
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> automorphisms(const FinStructure& A) {
  std::vector<int> perm(A.size);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (size_t r = 0; r < A.tables.size() && ok; ++r) {
      for (const auto& t : A.tables[r]) {
        std::vector<int> u(t.size());
        for (size_t i = 0; i < t.size(); ++i) u[i] = perm[t[i]];
        if (!A.holds((int)r, u)) { ok = false; break; }
      }
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

bool automorphic(const FinStructure& A, const std::vector<int>& a,
                 const std::vector<int>& b) {
  if (a.size() != b.size()) throw error("tuple length mismatch");
  check_range(A, a);
  check_range(A, b);
  for (const auto& g : automorphisms(A)) {
    bool ok = true;
    for (size_t i = 0; i < a.size(); ++i)
      if (g[a[i]] != b[i]) { ok = false; break; }
    if (ok) return true;
  }
  return false;
}

namespace {

std::vector<std::vector<int>> all_k_tuples(int size, int k) {
  std::vector<std::vector<int>> out;
  if (k == 0) { out.push_back({}); return out; }
  if (size == 0) return out;
  std::vector<int> cur(k, 0);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == size - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

std::vector<int> orbit_canon(const std::vector<std::vector<int>>& group,
                             const std::vector<int>& t) {
  std::vector<int> best;
  for (const auto& g : group) {
    std::vector<int> u(t.size());
    for (size_t i = 0; i < t.size(); ++i) u[i] = g[t[i]];
    if (best.empty() && !t.empty()) best = u;
    if (t.empty()) return t;
    if (u < best) best = u;
  }
  return best;
}

}  // namespace

std::vector<std::vector<std::vector<int>>> orbits(const FinStructure& A, int k) {
  if (k < 0) throw error("negative tuple length");
  auto group = automorphisms(A);
  std::map<std::vector<int>, std::vector<std::vector<int>>> classes;
  for (const auto& t : all_k_tuples(A.size, k))
    classes[orbit_canon(group, t)].push_back(t);
  std::vector<std::vector<std::vector<int>>> out;
  for (auto& [rep, cls] : classes) out.push_back(std::move(cls));
  return out;
}

namespace {

// Orbit canon per injective tuple, for rank computations.
std::map<std::vector<int>, std::vector<int>> injective_orbit_map(
    const FinStructure& A, const BFEngine& eng) {
  auto group = automorphisms(A);
  std::map<std::vector<int>, std::vector<int>> canon;
  for (const auto& t : eng.injective_tuples(0)) canon[t] = orbit_canon(group, t);
  return canon;
}

int rank_of_injective(const BFEngine& eng,
                      const std::map<std::vector<int>, std::vector<int>>& canon,
                      const std::vector<int>& t) {
  for (int beta = 0;; ++beta) {
    bool pinned = true;
    for (const auto& u : eng.injective_tuples(0)) {
      if (u.size() != t.size()) continue;
      if (eng.color(0, u, beta) == eng.color(0, t, beta) &&
          canon.at(u) != canon.at(t)) {
        pinned = false;
        break;
      }
    }
    if (pinned) return beta;
    if (beta > eng.stable_level())
      throw error("stabilized equivalence coarser than orbits (engine defect)");
  }
}

}  // namespace

int tuple_rank(const FinStructure& A, const std::vector<int>& a) {
  check_range(A, a);
  BFEngine eng(A);
  auto canon = injective_orbit_map(A, eng);
  return rank_of_injective(eng, canon, dedup(a));
}

ScottReport scott_rank(const FinStructure& A) {
  BFEngine eng(A);
  auto canon = injective_orbit_map(A, eng);
  std::map<std::vector<int>, int> inj_rank;
  for (const auto& t : eng.injective_tuples(0))
    inj_rank[t] = rank_of_injective(eng, canon, t);

  ScottReport rep;
  int mx = 0;
  for (int len = 0; len <= A.size; ++len) {
    for (const auto& t : all_k_tuples(A.size, len)) {
      int r = inj_rank.at(dedup(t));
      rep.tuple_ranks[t] = r;
      mx = std::max(mx, r);
    }
  }
  rep.structure_rank = mx + 1;
  return rep;
}

FormulaPtr scott_sentence(const FinStructure& A) {
  int n = A.size;
  std::vector<FormulaPtr> body;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      body.push_back(f_not(f_eq(Term::var(i), Term::var(j))));
  for (size_t r = 0; r < A.sig.relations.size(); ++r) {
    const auto& rel = A.sig.relations[r];
    for (const auto& t : all_k_tuples(n, rel.arity)) {
      std::vector<Term> terms;
      for (int e : t) terms.push_back(Term::var(e));
      auto atom = f_atom(rel.name, terms);
      body.push_back(A.holds((int)r, t) ? atom : f_not(atom));
    }
  }
  int y = n;
  std::vector<FormulaPtr> cover;
  for (int i = 0; i < n; ++i) cover.push_back(f_eq(Term::var(y), Term::var(i)));
  body.push_back(f_forall(y, f_or(std::move(cover))));

  FormulaPtr phi = f_and(std::move(body));
  for (int i = n - 1; i >= 0; --i) phi = f_exists(i, phi);
  return phi;
}

// ---------------------------------------------------------------------------

namespace {

// Iterated color refinement on elements, joint over both structures.
std::pair<std::vector<int>, std::vector<int>> wl_colors(const FinStructure& A,
                                                        const FinStructure& B) {
  auto initial = [](const FinStructure& S, std::map<std::string, int>& ids,
                    std::vector<int>& out) {
    for (int e = 0; e < S.size; ++e) {
      std::ostringstream os;
      for (size_t r = 0; r < S.tables.size(); ++r) {
        int k = S.sig.relations[r].arity;
        std::vector<int> cnt(k, 0);
        for (const auto& t : S.tables[r])
          for (int i = 0; i < k; ++i)
            if (t[i] == e) ++cnt[i];
        for (int c : cnt) os << c << ',';
        os << '|';
      }
      auto [it, f] = ids.insert({os.str(), (int)ids.size()});
      (void)f;
      out[e] = it->second;
    }
  };
  std::vector<int> ca(A.size), cb(B.size);
  {
    std::map<std::string, int> ids;
    initial(A, ids, ca);
    initial(B, ids, cb);
  }
  while (true) {
    std::map<std::string, int> ids;
    auto refine = [&ids](const FinStructure& S, const std::vector<int>& cur,
                         std::vector<int>& out) {
      for (int e = 0; e < S.size; ++e) {
        std::vector<std::string> occ;
        for (size_t r = 0; r < S.tables.size(); ++r) {
          for (const auto& t : S.tables[r]) {
            bool has = false;
            for (int x : t)
              if (x == e) { has = true; break; }
            if (!has) continue;
            std::ostringstream os;
            os << r << ':';
            for (int x : t) os << (x == e ? -1 : cur[x]) << ',';
            occ.push_back(os.str());
          }
        }
        std::sort(occ.begin(), occ.end());
        std::ostringstream key;
        key << cur[e] << ';';
        for (const auto& s : occ) key << s << ' ';
        auto [it, f] = ids.insert({key.str(), (int)ids.size()});
        (void)f;
        out[e] = it->second;
      }
    };
    std::vector<int> na(A.size), nb(B.size);
    refine(A, ca, na);
    refine(B, cb, nb);
    std::set<int> before(ca.begin(), ca.end());
    for (int c : cb) before.insert(c);
    if (ids.size() == before.size()) break;
    ca = std::move(na);
    cb = std::move(nb);
  }
  return {ca, cb};
}

bool extend_iso(const FinStructure& A, const FinStructure& B,
                const std::vector<int>& ca, const std::vector<int>& cb,
                std::vector<int>& map, std::vector<char>& used, int next) {
  if (next == A.size) return true;
  for (int img = 0; img < B.size; ++img) {
    if (used[img] || cb[img] != ca[next]) continue;
    // check every tuple over assigned elements that mentions `next`
    bool ok = true;
    map[next] = img;
    for (size_t r = 0; r < A.tables.size() && ok; ++r) {
      int k = A.sig.relations[r].arity;
      std::vector<int> pos(k, 0);
      while (ok) {
        bool mentions = false;
        std::vector<int> t(k), u(k);
        for (int i = 0; i < k; ++i) {
          if (pos[i] > next) { mentions = false; break; }
          t[i] = pos[i];
          u[i] = map[pos[i]];
          if (pos[i] == next) mentions = true;
        }
        if (mentions && A.holds((int)r, t) != B.holds((int)r, u)) ok = false;
        int i = k - 1;
        while (i >= 0 && pos[i] == next) pos[i--] = 0;
        if (i < 0) break;
        ++pos[i];
      }
    }
    if (ok) {
      used[img] = 1;
      if (extend_iso(A, B, ca, cb, map, used, next + 1)) return true;
      used[img] = 0;
    }
    map[next] = -1;
  }
  return false;
}

}  // namespace

std::optional<IsoWitness> iso(const FinStructure& A, const FinStructure& B) {
  if (!(A.sig == B.sig)) throw error("signature mismatch");
  if (A.size != B.size) return std::nullopt;
  for (size_t r = 0; r < A.tables.size(); ++r)
    if (A.tables[r].size() != B.tables[r].size()) return std::nullopt;
  auto [ca, cb] = wl_colors(A, B);
  {
    auto ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return std::nullopt;
  }
  std::vector<int> map(A.size, -1);
  std::vector<char> used(B.size, 0);
  if (extend_iso(A, B, ca, cb, map, used, 0)) return IsoWitness{map};
  return std::nullopt;
}

std::vector<FinStructure> friedberg_enumerate(const std::vector<FinStructure>& src,
                                              size_t limit) {
  std::vector<FinStructure> reps;
  for (const auto& A : src) {
    if (reps.size() >= limit) break;
    bool dup = false;
    for (const auto& R : reps) {
      if (R.size != A.size) continue;
      if (iso(R, A)) { dup = true; break; }
    }
    if (!dup) reps.push_back(A);
  }
  return reps;
}

bool check_nadel_finite(const FinStructure& A) {
  BFEngine eng(A);
  auto canon = injective_orbit_map(A, eng);
  const auto& ts = eng.injective_tuples(0);
  int L = eng.stable_level();
  for (size_t i = 0; i < ts.size(); ++i) {
    for (size_t j = 0; j < ts.size(); ++j) {
      if (ts[i].size() != ts[j].size()) continue;
      bool eq = eng.color(0, ts[i], L) == eng.color(0, ts[j], L);
      bool aut = canon.at(ts[i]) == canon.at(ts[j]);
      if (eq != aut) return false;
    }
  }
  return true;
}

}  // namespace fcw
