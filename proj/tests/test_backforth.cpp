#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "fcw/backforth.hpp"

using namespace fcw;

namespace {

FinStructure echain(int n) {  // chain in the {E/2} signature
  FinStructure A;
  A.sig = Signature::make({{"E", 2}});
  A.size = n;
  A.tables.resize(1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) A.tables[0].insert({i, j});
  return A;
}

FinStructure chain(int n) {
  FinStructure A = echain(n);
  A.sig = Signature::make({{"<", 2}});
  return A;
}

FinStructure antichain(int n) {
  FinStructure A;
  A.sig = Signature::make({{"<", 2}});
  A.size = n;
  A.tables.resize(1);
  return A;
}

// Direct evaluation of the definition: level 0 is quantifier-free type
// equality, level a+1 demands matched extensions of every length up to
// max(|A|,|B|) at all lower levels.  Exponential; usable only at toy sizes.
struct NaiveBF {
  const FinStructure& A;
  const FinStructure& B;
  std::map<std::tuple<std::vector<int>, std::vector<int>, int>, bool> memo;

  bool same_qf(const std::vector<int>& a, const std::vector<int>& b) {
    size_t n = a.size();
    if (n == 0) return true;  // no atoms over the empty tuple
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    for (size_t r = 0; r < A.sig.relations.size(); ++r) {
      int k = A.sig.relations[r].arity;
      std::vector<int> pos(k, 0);
      while (true) {
        std::vector<int> ta(k), tb(k);
        for (int i = 0; i < k; ++i) { ta[i] = a[pos[i]]; tb[i] = b[pos[i]]; }
        if (A.holds((int)r, ta) != B.holds((int)r, tb)) return false;
        int i = k - 1;
        while (i >= 0 && pos[i] == (int)n - 1) pos[i--] = 0;
        if (i < 0) break;
        ++pos[i];
      }
    }
    return true;
  }

  bool extend_all(const FinStructure& X, const std::vector<int>& x,
                  const FinStructure& Y, const std::vector<int>& y, int len,
                  int beta, bool flip) {
    // forall d over Y of length len, exists c over X
    std::vector<int> d(len, 0);
    while (true) {
      bool found = false;
      std::vector<int> c(len, 0);
      while (!found) {
        std::vector<int> xc = x, yd = y;
        xc.insert(xc.end(), c.begin(), c.end());
        yd.insert(yd.end(), d.begin(), d.end());
        found = flip ? equiv(yd, xc, beta) : equiv(xc, yd, beta);
        int i = len - 1;
        while (i >= 0 && c[i] == X.size - 1) c[i--] = 0;
        if (i < 0) break;
        ++c[i];
      }
      if (!found) return false;
      int i = len - 1;
      while (i >= 0 && d[i] == Y.size - 1) d[i--] = 0;
      if (i < 0) break;
      ++d[i];
    }
    return true;
  }

  bool equiv(const std::vector<int>& a, const std::vector<int>& b, int alpha) {
    auto key = std::make_tuple(a, b, alpha);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    memo[key] = true;  // provisional; cycles impossible (alpha decreases)
    bool r = same_qf(a, b);
    int cap = std::max(A.size, B.size);
    for (int beta = 0; r && beta < alpha; ++beta)
      for (int len = 1; r && len <= cap; ++len)
        r = extend_all(A, a, B, b, len, beta, false) &&
            extend_all(B, b, A, a, len, beta, true);
    memo[key] = r;
    return r;
  }
};

std::vector<std::vector<int>> all_tuples(int n, int maxlen) {
  std::vector<std::vector<int>> out{{}};
  size_t lo = 0;
  for (int len = 1; len <= maxlen; ++len) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; ++i)
      for (int v = 0; v < n; ++v) {
        auto t = out[i];
        t.push_back(v);
        out.push_back(std::move(t));
      }
    lo = hi;
  }
  return out;
}

}  // namespace

TEST_CASE("equiv_alpha matches the definition-evaluation oracle (size <= 2)") {
  Signature g = Signature::make({{"E", 2}});
  auto structs1 = all_structures(g, 1);
  auto structs2 = all_structures(g, 2);
  std::vector<FinStructure> all;
  for (auto& A : structs1) all.push_back(A);
  for (auto& A : structs2) all.push_back(A);

  for (const auto& A : all) {
    for (const auto& B : all) {
      NaiveBF oracle{A, B, {}};
      auto ta = all_tuples(A.size, 2);
      auto tb = all_tuples(B.size, 2);
      for (const auto& a : ta)
        for (const auto& b : tb) {
          if (a.size() != b.size()) continue;
          for (int alpha = 0; alpha <= 3; ++alpha) {
            CAPTURE(a);
            CAPTURE(b);
            CAPTURE(alpha);
            REQUIRE(equiv_alpha(A, a, B, b, alpha) == oracle.equiv(a, b, alpha));
          }
        }
    }
  }
}

TEST_CASE("equiv_alpha vs oracle on selected size-3 structures") {
  std::vector<FinStructure> picks = {echain(3), antichain(3)};
  {
    FinStructure A = echain(3);  // chain plus a loop at the top
    A.tables[0].insert({2, 2});
    picks.push_back(A);
  }
  for (const auto& A : picks) {
    NaiveBF oracle{A, A, {}};
    auto ts = all_tuples(A.size, 1);
    for (const auto& a : ts)
      for (const auto& b : ts) {
        if (a.size() != b.size()) continue;
        for (int alpha = 0; alpha <= 2; ++alpha)
          REQUIRE(equiv_alpha(A, a, A, b, alpha) == oracle.equiv(a, b, alpha));
      }
  }
}

TEST_CASE("equiv_alpha worked examples and basic laws") {
  FinStructure C = chain(3);
  CHECK(equiv_alpha(C, {0}, C, {1}, 0));
  CHECK(!equiv_alpha(C, {0}, C, {1}, 1));  // only (0) has two elements above it
  CHECK(equiv_alpha(C, {0, 2}, C, {0, 2}, 4));  // reflexivity

  CHECK_THROWS_AS(equiv_alpha(C, {0}, C, {0, 1}, 0), error);
  CHECK_THROWS_AS(equiv_alpha(C, {0}, echain(3), {0}, 0), error);  // signature mismatch
  // anti-monotonicity and symmetry on all pairs
  auto ts = all_tuples(3, 2);
  for (const auto& a : ts)
    for (const auto& b : ts) {
      if (a.size() != b.size()) continue;
      for (int alpha = 0; alpha < 3; ++alpha) {
        if (equiv_alpha(C, a, C, b, alpha + 1)) CHECK(equiv_alpha(C, a, C, b, alpha));
        CHECK(equiv_alpha(C, a, C, b, alpha) == equiv_alpha(C, b, C, a, alpha));
      }
    }
}

TEST_CASE("automorphic and orbits") {
  FinStructure AC = antichain(2), C = chain(3);
  CHECK(automorphic(AC, {0}, {1}));
  CHECK(!automorphic(C, {0}, {1}));  // orders are rigid
  CHECK(automorphic(C, {0, 2}, {0, 2}));

  CHECK_THROWS_AS(automorphic(C, {0}, {0, 1}), error);

  CHECK(orbits(AC, 1).size() == 1);
  CHECK(orbits(C, 1).size() == 3);
  auto o2 = orbits(AC, 2);
  REQUIRE(o2.size() == 2);
  size_t total = 0;
  for (const auto& orb : o2) total += orb.size();
  CHECK(total == 4);
  for (const auto& orb : o2) {
    bool diag = orb[0][0] == orb[0][1];
    for (const auto& t : orb) CHECK((t[0] == t[1]) == diag);
  }
}

TEST_CASE("tuple_rank and scott_rank") {
  FinStructure one = validate_structure(Signature::make({}), 1, {});
  CHECK(tuple_rank(one, {0}) == 0);

  FinStructure C = chain(3);
  // independent computation: least beta such that beta-equivalence implies
  // automorphism-orbit equality, via the naive oracle
  NaiveBF oracle{C, C, {}};
  auto singles = all_tuples(3, 1);
  auto oracle_rank = [&](const std::vector<int>& a) {
    for (int beta = 0;; ++beta) {
      bool good = true;
      for (const auto& b : singles) {
        if (b.size() != a.size()) continue;
        if (oracle.equiv(a, b, beta) && !automorphic(C, a, b)) good = false;
      }
      if (good) return beta;
    }
  };
  for (const auto& a : singles)
    if (a.size() == 1) CHECK(tuple_rank(C, a) == oracle_rank(a));

  ScottReport r1 = scott_rank(one);
  CHECK(r1.structure_rank == 1);
  ScottReport r2 = scott_rank(antichain(2));
  CHECK(r2.structure_rank == 1);
  for (const auto& [t, rk] : r2.tuple_ranks) CHECK(rk == 0);

  for (int n = 1; n <= 4; ++n) {
    ScottReport r = scott_rank(chain(n));
    int mx = 0;
    for (const auto& [t, rk] : r.tuple_ranks) {
      CHECK(rk <= n);
      mx = std::max(mx, rk);
    }
    CHECK(r.structure_rank == mx + 1);  // report invariant
  }
}

TEST_CASE("scott_sentence characterizes the isomorphism type") {
  // pure-cardinality sentence
  FinStructure two = validate_structure(Signature::make({}), 2, {});
  FormulaPtr phi2 = scott_sentence(two);
  for (int n = 0; n <= 4; ++n)
    CHECK(satisfies(validate_structure(Signature::make({}), n, {}), *phi2) ==
          (n == 2));

  CHECK(!satisfies(antichain(2), *scott_sentence(chain(2))));

  FormulaPtr phi3 = scott_sentence(echain(3));
  for (const auto& B : all_structures(Signature::make({{"E", 2}}), 2))
    CHECK(!satisfies(B, *phi3));  // cardinality clause

  // soundness against the iso oracle at sizes <= 3
  std::vector<FinStructure> as = {echain(2), echain(3), antichain(3)};
  as[2].sig = Signature::make({{"E", 2}});
  Signature g = Signature::make({{"E", 2}});
  for (const auto& A : as) {
    FormulaPtr phi = scott_sentence(A);
    for (int n = 0; n <= 3; ++n)
      for (const auto& B : all_structures(g, n))
        REQUIRE(satisfies(B, *phi) == iso(A, B).has_value());
  }
}

TEST_CASE("iso: witnesses and determinism") {
  FinStructure C = chain(3);
  FinStructure P = validate_structure(
      Signature::make({{"<", 2}}), 3,
      {{"<", {2, 0}, true}, {"<", {2, 1}, true}, {"<", {0, 1}, true}});  // 2<0<1
  auto w = iso(C, P);
  REQUIRE(w.has_value());
  CHECK(w->bijection == std::vector<int>{2, 0, 1});  // the order-preserving map

  CHECK(!iso(C, antichain(3)).has_value());
  auto self = iso(C, C);
  REQUIRE(self.has_value());
  CHECK(self->bijection == std::vector<int>{0, 1, 2});  // identity, lex-least

  CHECK_THROWS_AS(iso(C, echain(3)), error);  // signature mismatch
}

TEST_CASE("friedberg_enumerate") {
  Signature g = Signature::make({{"E", 2}});
  std::vector<FinStructure> src;
  for (int n = 0; n <= 1; ++n)
    for (auto& A : all_structures(g, n)) src.push_back(std::move(A));
  auto reps = friedberg_enumerate(src, 100);
  CHECK(reps.size() == 3);  // empty, loop-free point, looped point

  std::vector<FinStructure> dup(5, echain(2));
  CHECK(friedberg_enumerate(dup, 100).size() == 1);

  // undirected loop-free graphs on 3 labeled vertices
  std::vector<FinStructure> graphs;
  for (auto& A : all_structures(g, 3)) {
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      if (A.holds(0, {i, i})) ok = false;
      for (int j = 0; j < 3 && ok; ++j)
        if (A.holds(0, {i, j}) != A.holds(0, {j, i})) ok = false;
    }
    if (ok) graphs.push_back(std::move(A));
  }
  CHECK(graphs.size() == 8);
  auto greps = friedberg_enumerate(graphs, 100);
  CHECK(greps.size() == 4);
  for (size_t i = 0; i < greps.size(); ++i)
    for (size_t j = i + 1; j < greps.size(); ++j)
      CHECK(!iso(greps[i], greps[j]).has_value());
  for (const auto& A : graphs) {
    bool covered = false;
    for (const auto& r : greps)
      if (iso(A, r).has_value()) covered = true;
    CHECK(covered);
  }

  CHECK(friedberg_enumerate(src, 2).size() == 2);  // limit respected
}

TEST_CASE("check_nadel_finite and stabilization bound") {
  Signature g = Signature::make({{"E", 2}});
  for (int n = 0; n <= 3; ++n)
    for (const auto& A : all_structures(g, n)) {
      REQUIRE(check_nadel_finite(A));
      BFEngine eng(A);
      CHECK(eng.stable_level() <= n * (n + 1));
    }
  CHECK(check_nadel_finite(chain(4)));
  CHECK(check_nadel_finite(validate_structure(Signature::make({}), 3, {})));
}
