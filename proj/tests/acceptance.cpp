// Acceptance suite: one pass/fail line per criterion.  Exit code is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fcw/backforth.hpp"
#include "fcw/cli.hpp"
#include "fcw/operators.hpp"
#include "fcw/pgroups.hpp"
#include "fcw/trees.hpp"
#include "fcw/workspace.hpp"

using namespace fcw;
using Clock = std::chrono::steady_clock;

namespace {

Signature graph_sig() { return Signature::make({{"E", 2}}); }

FinStructure from_mask(int n, unsigned long long mask) {
  std::vector<AtomicFact> facts;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (mask >> bit & 1) facts.push_back({"E", {i, j}, true});
      ++bit;
    }
  return validate_structure(graph_sig(), n, facts);
}

FinStructure permuted(const FinStructure& A, const std::vector<int>& perm) {
  FinStructure B = A;
  for (auto& table : B.tables) {
    std::set<std::vector<int>> t;
    for (const auto& row : table) {
      std::vector<int> r;
      for (int x : row) r.push_back(perm[x]);
      t.insert(std::move(r));
    }
    table = std::move(t);
  }
  return B;
}

/// Independent isomorphism oracle: diagrams of all permuted copies.
std::set<std::vector<AtomicFact>> perm_diagrams(const FinStructure& A) {
  std::vector<int> perm(A.size);
  for (int i = 0; i < A.size; ++i) perm[i] = i;
  std::set<std::vector<AtomicFact>> out;
  do {
    out.insert(diagram(permuted(A, perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (A.size == 0) out.insert(diagram(A));
  return out;
}

bool is_simple_graph(const FinStructure& A) {
  for (int i = 0; i < A.size; ++i) {
    if (A.holds(0, {i, i})) return false;
    for (int j = 0; j < A.size; ++j)
      if (A.holds(0, {i, j}) != A.holds(0, {j, i})) return false;
  }
  return true;
}

std::vector<FinStructure> simple_graphs(int n) {
  std::vector<FinStructure> out;
  for (auto& A : all_structures(graph_sig(), n))
    if (is_simple_graph(A)) out.push_back(std::move(A));
  return out;
}

/// All rooted trees with exactly n nodes, one per isomorphism type, as
/// canonical path lists.  Children are multisets of smaller trees.
const std::vector<std::vector<FinTree>>& trees_by_size(int max_n) {
  static std::vector<std::vector<FinTree>> byn;
  while ((int)byn.size() <= max_n) {
    int n = (int)byn.size();
    std::vector<FinTree> out;
    if (n == 1) {
      out.push_back(FinTree::from_paths({{}}));
    } else if (n >= 2) {
      // non-increasing sequences of (size, index) child descriptors
      std::vector<std::pair<int, int>> cur;
      auto rec = [&](auto&& self, int rem, int max_size, int max_idx) -> void {
        if (rem == 0) {
          std::vector<std::vector<int>> paths{{}};
          for (size_t c = 0; c < cur.size(); ++c) {
            const FinTree& sub = byn[cur[c].first][cur[c].second];
            for (const auto& p : sub.nodes) {
              std::vector<int> q{(int)c};
              q.insert(q.end(), p.begin(), p.end());
              paths.push_back(std::move(q));
            }
          }
          out.push_back(FinTree::from_paths(std::move(paths)));
          return;
        }
        for (int s = std::min(rem, max_size); s >= 1; --s) {
          int start = (s == max_size) ? max_idx : (int)byn[s].size() - 1;
          for (int idx = start; idx >= 0; --idx) {
            cur.push_back({s, idx});
            self(self, rem - s, s, idx);
            cur.pop_back();
          }
        }
      };
      rec(rec, n - 1, n - 1, n >= 2 ? (int)byn[std::min(n - 1, (int)byn.size() - 1)].size() - 1 : 0);
    }
    byn.push_back(std::move(out));
  }
  return byn;
}

std::vector<FinTree> all_trees_up_to(int max_nodes) {
  const auto& byn = trees_by_size(max_nodes);
  std::vector<FinTree> out;
  for (int n = 1; n <= max_nodes; ++n)
    for (const auto& t : byn[n]) out.push_back(t);
  return out;
}

bool report(int num, bool ok, Clock::time_point start) {
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream t;
  t.setf(std::ios::fixed);
  t.precision(1);
  t << secs;
  std::cout << "criterion " << num << ": " << (ok ? "PASS" : "FAIL") << " ("
            << t.str() << "s)" << std::endl;
  return ok;
}

// ---------------------------------------------------------------------------
// 1. stabilized back-and-forth equivalence = automorphism orbits

bool criterion1() {
  for (int n = 0; n <= 3; ++n)
    for (const auto& A : all_structures(graph_sig(), n))
      if (!check_nadel_finite(A)) return false;
  std::mt19937 rng(20260824);
  std::uniform_int_distribution<unsigned> mask(0, 65535);
  for (int s = 0; s < 500; ++s)
    if (!check_nadel_finite(from_mask(4, mask(rng)))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// 2. Scott sentences characterize isomorphism types

bool criterion2() {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> size(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    int n = size(rng);
    std::uniform_int_distribution<unsigned> mask(0, (1u << (n * n)) - 1);
    FinStructure A = from_mask(n, mask(rng));
    FormulaPtr phi = scott_sentence(A);
    auto copies = perm_diagrams(A);
    for (int m = 0; m <= 4; ++m)
      for (const auto& B : all_structures(graph_sig(), m)) {
        bool is_copy = (m == n) && copies.count(diagram(B));
        if (satisfies(B, *phi) != is_copy) return false;
      }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 3. Ulm's theorem at desk scale

bool criterion3() {
  for (long long p : {2LL, 3LL}) {
    if (!ulm_theorem_check(p, 6)) return false;
    long long total = 0;
    for (const auto& part : partitions_up_to(p, 6)) {
      ++total;
      ExplicitPGroup g = ExplicitPGroup::from_partition(part);
      UlmSequence direct = ulm_from_partition(part);
      if (!(ulm_bruteforce(g) == direct)) return false;
      long long lhs = 0, logp = 0;
      for (size_t k = 0; k < direct.u.size(); ++k)
        lhs += direct.u[k] * (long long)(k + 1);
      for (int e : part.parts) logp += e;
      if (lhs != logp) return false;
    }
    if (total != 30) return false;  // p(0)+...+p(6)
  }
  return true;
}

// ---------------------------------------------------------------------------
// 4. operator monotonicity on randomized chains

std::vector<FactSet> random_chain(const FinStructure& src, int depth,
                                  std::mt19937& rng) {
  FactSet full = factset_of(src);
  std::vector<AtomicFact> facts(full.facts.begin(), full.facts.end());
  std::shuffle(facts.begin(), facts.end(), rng);
  std::vector<size_t> cuts;
  std::uniform_int_distribution<size_t> cut(0, facts.size());
  for (int d = 0; d < depth; ++d) cuts.push_back(cut(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<FactSet> chain;
  for (size_t c : cuts) {
    FactSet F{full.sig, {}};
    F.facts.insert(facts.begin(), facts.begin() + c);
    chain.push_back(std::move(F));
  }
  return chain;
}

bool criterion4() {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> size(1, 5);

  auto rand_order = [&]() {
    int n = size(rng);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<AtomicFact> facts;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        facts.push_back({"<", {perm[i], perm[j]}, true});
    return validate_structure(Signature::make({{"<", 2}}), n, facts);
  };
  auto rand_graph = [&]() {
    int n = size(rng);
    std::vector<AtomicFact> facts;
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) {
          facts.push_back({"E", {i, j}, true});
          facts.push_back({"E", {j, i}, true});
        }
    return validate_structure(graph_sig(), n, facts);
  };
  auto rand_tree = [&]() {
    int n = size(rng);
    std::vector<AtomicFact> facts;
    for (int i = 1; i < n; ++i) {
      std::uniform_int_distribution<int> parent(0, i - 1);
      facts.push_back({"child", {parent(rng), i}, true});
    }
    return validate_structure(Signature::make({{"child", 2}}), n, facts);
  };

  std::vector<std::pair<EnumOperator, std::function<FinStructure()>>> cases;
  cases.push_back({flo_to_fvs(), rand_order});
  cases.push_back({graph_to_field(), rand_graph});
  cases.push_back({graph_to_lo(), rand_graph});
  cases.push_back({tree_to_graph(), rand_tree});

  for (auto& [op, gen] : cases)
    for (int c = 0; c < 20; ++c) {
      auto chain = random_chain(gen(), 4, rng);
      for (long long b = 0; b <= 4; ++b)
        if (!check_monotone(op, chain, {b})) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// 5. embedding property shadows

bool criterion5a() {
  EnumOperator op = flo_to_fvs();
  for (int n = 0; n <= 6; ++n) {
    std::vector<AtomicFact> facts;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) facts.push_back({"<", {i, j}, true});
    FinStructure C = validate_structure(Signature::make({{"<", 2}}), n, facts);
    FactSet img = apply_operator(op, factset_of(C), {n});
    if (fvs_dimension(img, {n}) != n) return false;
  }
  return true;
}

bool criterion5b() {
  // representatives of the simple graphs on up to 4 vertices
  for (int n = 0; n <= 4; ++n) {
    std::vector<FinStructure> reps;
    std::vector<std::set<std::vector<AtomicFact>>> classes;
    for (auto& G : simple_graphs(n)) {
      bool seen = false;
      for (const auto& cls : classes)
        if (cls.count(diagram(G))) seen = true;
      if (seen) continue;
      classes.push_back(perm_diagrams(G));
      reps.push_back(std::move(G));
    }
    if (n == 4 && reps.size() != 11) return false;
    for (const auto& G : reps)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          if (field_has_edge_root(G, i, j, {3}) != G.holds(0, {i, j}))
            return false;
        }
  }
  return true;
}

bool criterion5c() {
  EnumOperator op = tree_to_graph();
  std::vector<FinTree> trees = all_trees_up_to(6);
  if (trees.size() != 1 + 1 + 2 + 4 + 9 + 20) return false;
  std::vector<FinStructure> images;
  for (const auto& T : trees) {
    FactSet img = apply_operator(op, factset_of(tree_structure(T)), {10});
    images.push_back(structure_of_fragment(img).first);
  }
  for (size_t a = 0; a < trees.size(); ++a)
    for (size_t b = 0; b < trees.size(); ++b) {
      bool tree_iso = tree_canon(trees[a]) == tree_canon(trees[b]);
      bool graph_iso = iso(images[a], images[b]).has_value();
      if (tree_iso != graph_iso) return false;
    }
  return true;
}

/// The induced order on the sequences a complete {< /2} fragment mentions.
std::vector<long long> fragment_order(const FactSet& F) {
  std::set<long long> ids;
  for (const auto& f : F.facts)
    for (long long a : f.args) ids.insert(a);
  std::vector<long long> order(ids.begin(), ids.end());
  std::sort(order.begin(), order.end(), [&](long long a, long long b) {
    return F.facts.count({"<", {a, b}, true}) > 0;
  });
  return order;
}

bool order_isomorphic(const FactSet& F, const FactSet& G) {
  auto a = fragment_order(F), b = fragment_order(G);
  if (a.size() != b.size()) return false;
  // the positional bijection must translate every fact of F into G and back
  std::map<long long, long long> fwd;
  for (size_t i = 0; i < a.size(); ++i) fwd[a[i]] = b[i];
  if (F.facts.size() != G.facts.size()) return false;
  for (const auto& f : F.facts)
    if (!G.facts.count({f.rel, {fwd.at(f.args[0]), fwd.at(f.args[1])}, f.positive}))
      return false;
  return true;
}

bool criterion5d() {
  EnumOperator op = graph_to_lo();
  for (long long budget : {3LL, 4LL}) {
    for (int n = 0; n <= 3; ++n) {
      std::vector<std::vector<FinStructure>> classes;
      std::vector<std::set<std::vector<AtomicFact>>> keys;
      for (auto& G : simple_graphs(n)) {
        bool placed = false;
        for (size_t c = 0; c < classes.size(); ++c)
          if (keys[c].count(diagram(G))) {
            classes[c].push_back(std::move(G));
            placed = true;
            break;
          }
        if (!placed) {
          keys.push_back(perm_diagrams(G));
          classes.push_back({std::move(G)});
        }
      }
      for (const auto& cls : classes) {
        FactSet base = apply_operator(op, factset_of(cls[0]), {budget});
        for (size_t i = 1; i < cls.size(); ++i) {
          FactSet other = apply_operator(op, factset_of(cls[i]), {budget});
          if (!order_isomorphic(base, other)) return false;
        }
      }
    }
  }
  return true;
}

bool criterion5() { return criterion5a() && criterion5b() && criterion5c() && criterion5d(); }

// ---------------------------------------------------------------------------
// 6. duplicate-free enumeration of the simple graphs of size <= 3

bool criterion6() {
  std::vector<FinStructure> src;
  for (int n = 0; n <= 3; ++n)
    for (auto& G : simple_graphs(n)) src.push_back(std::move(G));
  auto reps = friedberg_enumerate(src, src.size());
  if (reps.size() != 8) return false;
  std::map<int, int> by_size;
  for (const auto& r : reps) by_size[r.size]++;
  if (by_size != std::map<int, int>{{0, 1}, {1, 1}, {2, 2}, {3, 4}}) return false;
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j)
      if (iso(reps[i], reps[j])) return false;
  for (const auto& G : src) {
    bool covered = false;
    for (const auto& r : reps)
      if (iso(G, r)) covered = true;
    if (!covered) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 7. Kleene-Brouwer order and the tree suite

bool kb_is_strict_total_order(const FinTree& T) {
  auto [A, names] = kb_order(T);
  for (int i = 0; i < A.size; ++i) {
    if (A.holds(0, {i, i})) return false;
    for (int j = 0; j < A.size; ++j) {
      if (i != j && A.holds(0, {i, j}) == A.holds(0, {j, i})) return false;
      for (int l = 0; l < A.size; ++l)
        if (A.holds(0, {i, j}) && A.holds(0, {j, l}) && !A.holds(0, {i, l}))
          return false;
    }
  }
  return true;
}

/// Strict uniform homogeneity: every node's children are exactly k of each
/// level-achieved rank below the node's own rank.  For such trees the
/// levelwise rank sets determine the tree, so profile comparison at k is a
/// faithful isomorphism test.
bool strict_uniform(const FinTree& T, int k) {
  std::map<std::vector<int>, int> rk;
  for (const auto& n : T.nodes) rk[n] = tree_rank(T, n);
  std::map<size_t, std::set<int>> achieved;
  for (const auto& n : T.nodes) achieved[n.size()].insert(rk.at(n));
  for (const auto& a : T.nodes) {
    std::map<int, int> want, got;
    auto it = achieved.find(a.size() + 1);
    if (it != achieved.end())
      for (int r : it->second)
        if (r < rk.at(a)) want[r] = k;
    for (const auto& c : T.children(a)) got[rk.at(c)]++;
    if (want != got) return false;
  }
  return true;
}

bool criterion7() {
  std::vector<FinTree> trees = all_trees_up_to(10);
  if (trees.size() != 1205) return false;
  for (const auto& T : trees)
    if (!kb_is_strict_total_order(T)) return false;

  // worked example: {root, (0), (1)} linearizes as (0) < (1) < root
  {
    FinTree T = FinTree::from_paths({{}, {0}, {1}});
    auto [A, names] = kb_order(T);
    int root = -1, zero = -1, one = -1;
    for (size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) root = (int)i;
      if (names[i] == std::vector<int>{0}) zero = (int)i;
      if (names[i] == std::vector<int>{1}) one = (int)i;
    }
    if (!A.holds(0, {zero, one}) || !A.holds(0, {one, root}) ||
        !A.holds(0, {zero, root}) || A.holds(0, {root, zero}))
      return false;
  }

  // profile comparison is a faithful iso test on strict uniform trees
  for (int k = 1; k <= 2; ++k) {
    std::vector<const FinTree*> qualifying;
    for (const auto& T : trees)
      if (strict_uniform(T, k)) qualifying.push_back(&T);
    if (qualifying.size() < 2) return false;
    for (const FinTree* a : qualifying)
      for (const FinTree* b : qualifying)
        if (iso_by_profile(*a, *b, k) != (tree_canon(*a) == tree_canon(*b)))
          return false;
  }

  // ordinal identities
  Ordinal w = Ordinal::omega_times(1), one = Ordinal::nat(1);
  if (!(ord_add(one, w) == w)) return false;
  if (!(w < ord_add(w, one))) return false;
  std::vector<Ordinal> samples = {Ordinal::nat(0), one, Ordinal::nat(3), w,
                                  ord_add(w, Ordinal::nat(2)),
                                  Ordinal::omega_times(2),
                                  Ordinal::make({{2, 1}})};
  for (const auto& a : samples)
    for (const auto& b : samples)
      for (const auto& c : samples)
        if (!(ord_mul(a, ord_add(b, c)) == ord_add(ord_mul(a, b), ord_mul(a, c))))
          return false;
  return true;
}

// ---------------------------------------------------------------------------
// 8. CLI determinism against golden output

std::string run_session(const std::string& root) {
  const std::string ws = root + "/tests/golden/ws.fcw";
  // the thin verb echoes its argument, so use a relative path for a
  // machine-independent transcript
  const std::string prof = "profile.txt";
  {
    std::ifstream src(root + "/tests/golden/profile.txt");
    std::ofstream dst(prof);
    dst << src.rdbuf();
  }
  std::vector<std::vector<std::string>> cmds = {
      {"-w", ws, "rank", "C"},
      {"-w", ws, "iso", "A", "B"},
      {"-w", ws, "iso", "A", "D"},
      {"-w", ws, "orbits", "D", "1"},
      {"-w", ws, "scott-sentence", "D"},
      {"-w", ws, "enumerate", "G", "1"},
      {"-w", ws, "embed", "flo-fvs", "C", "--budget", "2"},
      {"-w", ws, "embed", "graph-field", "H", "--budget", "3"},
      {"-w", ws, "embed", "graph-lo", "H", "--budget", "2"},
      {"-w", ws, "embed", "tree-graph", "T", "--budget", "5"},
      {"-w", ws, "edge-root", "H", "0", "1"},
      {"-w", ws, "edge-root", "H", "0", "2"},
      {"ulm", "p=2", "parts=2,1"},
      {"ulm-check", "p=2", "max-log=3"},
      {"-w", ws, "kb", "T"},
      {"-w", ws, "tree-rank", "T"},
      {"thin", prof},
      {"-w", ws, "homog", "T", "--k", "2"},
  };
  std::ostringstream log;
  for (const auto& cmd : cmds) {
    log << "$ fcw";
    for (const auto& a : cmd) {
      // keep the transcript path-independent
      std::string shown = a;
      if (shown == ws) shown = "ws.fcw";
      if (shown == prof) shown = "profile.txt";
      log << ' ' << shown;
    }
    log << '\n';
    std::vector<const char*> argv{"fcw"};
    for (const auto& a : cmd) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli((int)argv.size(), argv.data(), out, err);
    log << out.str() << err.str();
    log << "exit " << code << '\n';
  }
  return log.str();
}

bool criterion8() {
#ifndef FCW_SOURCE_DIR
  return false;
#else
  std::string root = FCW_SOURCE_DIR;
  std::string first = run_session(root);
  std::string second = run_session(root);
  if (first != second) return false;
  std::ifstream golden(root + "/tests/golden/session.txt");
  if (!golden) return false;
  std::stringstream buf;
  buf << golden.rdbuf();
  return first == buf.str();
#endif
}

}  // namespace

int main(int argc, char** argv) {
#ifdef FCW_SOURCE_DIR
  if (argc > 1 && std::string(argv[1]) == "--write-golden") {
    std::string root = FCW_SOURCE_DIR;
    std::ofstream(root + "/tests/golden/session.txt") << run_session(root);
    std::cout << "golden session written\n";
    return 0;
  }
#endif
  int failures = 0;
  auto go = [&](int num, bool (*fn)()) {
    auto start = Clock::now();
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      std::cout << "criterion " << num << ": exception: " << e.what() << '\n';
    }
    if (!report(num, ok, start)) ++failures;
  };
  go(1, criterion1);
  go(2, criterion2);
  go(3, criterion3);
  go(4, criterion4);
  go(5, criterion5);
  go(6, criterion6);
  go(7, criterion7);
  go(8, criterion8);
  return failures;
}
