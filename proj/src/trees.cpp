#include "fcw/trees.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fcw {

// ---------------------------------------------------------------------------
// Ordinals

Ordinal Ordinal::nat(long long n) {
  if (n < 0) throw error("negative natural");
  Ordinal o;
  if (n > 0) o.terms.push_back({0, n});
  return o;
}

Ordinal Ordinal::omega_times(long long n) {
  Ordinal o;
  if (n > 0) o.terms.push_back({1, n});
  return o;
}

Ordinal Ordinal::make(std::vector<std::pair<int, long long>> terms) {
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].second < 1) throw error("CNF coefficients must be positive");
    if (terms[i].first < 0) throw error("CNF exponents must be naturals");
    if (i > 0 && terms[i].first >= terms[i - 1].first)
      throw error("CNF exponents must be strictly decreasing");
  }
  Ordinal o;
  o.terms = std::move(terms);
  return o;
}

bool Ordinal::is_nat() const {
  return terms.empty() || (terms.size() == 1 && terms[0].first == 0);
}

long long Ordinal::as_nat() const {
  if (!is_nat()) throw error("ordinal is infinite");
  return terms.empty() ? 0 : terms[0].second;
}

int ord_cmp(const Ordinal& a, const Ordinal& b) {
  for (size_t i = 0; i < std::min(a.terms.size(), b.terms.size()); ++i) {
    if (a.terms[i].first != b.terms[i].first)
      return a.terms[i].first < b.terms[i].first ? -1 : 1;
    if (a.terms[i].second != b.terms[i].second)
      return a.terms[i].second < b.terms[i].second ? -1 : 1;
  }
  if (a.terms.size() != b.terms.size())
    return a.terms.size() < b.terms.size() ? -1 : 1;
  return 0;
}

bool Ordinal::operator<(const Ordinal& o) const { return ord_cmp(*this, o) < 0; }

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.terms.empty()) return a;
  int lead = b.terms[0].first;
  Ordinal r;
  for (const auto& t : a.terms)
    if (t.first > lead) r.terms.push_back(t);
  auto head = b.terms[0];
  for (const auto& t : a.terms)
    if (t.first == lead) head.second += t.second;
  r.terms.push_back(head);
  for (size_t i = 1; i < b.terms.size(); ++i) r.terms.push_back(b.terms[i]);
  return r;
}

Ordinal ord_mul(const Ordinal& a, const Ordinal& b) {
  if (a.terms.empty() || b.terms.empty()) return Ordinal{};
  Ordinal acc;
  for (const auto& [e, c] : b.terms) {
    Ordinal part;
    if (e > 0) {
      long long ex = (long long)a.terms[0].first + e;
      if (ex > 1000000) throw error("ordinal product exceeds representation");
      part.terms.push_back({(int)ex, c});
    } else {
      // right factor is a natural: multiply the leading coefficient
      part.terms = a.terms;
      part.terms[0].second *= c;
    }
    acc = ord_add(acc, part);
  }
  return acc;
}

std::string format_ordinal(const Ordinal& a) {
  if (a.terms.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < a.terms.size(); ++i) {
    auto [e, c] = a.terms[i];
    if (i) os << '+';
    if (e == 0) { os << c; continue; }
    os << 'w';
    if (e > 1) os << '^' << e;
    if (c > 1) os << '*' << c;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Trees

static bool is_prefix(const std::vector<int>& p, const std::vector<int>& t) {
  if (p.size() > t.size()) return false;
  return std::equal(p.begin(), p.end(), t.begin());
}

FinTree FinTree::from_paths(std::vector<std::vector<int>> paths) {
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  FinTree T;
  T.nodes = std::move(paths);
  for (const auto& n : T.nodes) {
    if (n.empty()) continue;
    std::vector<int> parent(n.begin(), n.end() - 1);
    if (!std::binary_search(T.nodes.begin(), T.nodes.end(), parent))
      throw error("tree not prefix-closed");
  }
  return T;
}

bool FinTree::contains(const std::vector<int>& path) const {
  return std::binary_search(nodes.begin(), nodes.end(), path);
}

std::vector<std::vector<int>> FinTree::children(const std::vector<int>& path) const {
  std::vector<std::vector<int>> out;
  for (const auto& n : nodes)
    if (n.size() == path.size() + 1 && is_prefix(path, n)) out.push_back(n);
  return out;
}

int tree_rank(const FinTree& T, const std::vector<int>& node) {
  if (!T.contains(node)) throw error("node not in tree");
  int mx = -1;
  for (const auto& c : T.children(node)) mx = std::max(mx, tree_rank(T, c));
  return mx + 1;
}

int tree_rank(const FinTree& T) {
  if (T.nodes.empty()) throw error("empty tree has no root");
  return tree_rank(T, {});
}

static bool kb_less(const std::vector<int>& s, const std::vector<int>& t) {
  if (s == t) return false;
  if (is_prefix(t, s)) return true;   // s properly extends t
  if (is_prefix(s, t)) return false;
  for (size_t i = 0; i < std::min(s.size(), t.size()); ++i)
    if (s[i] != t[i]) return s[i] < t[i];
  throw error("unreachable: prefix cases exhausted");
}

std::pair<FinStructure, std::vector<std::vector<int>>> kb_order(const FinTree& T) {
  if (T.nodes.empty()) throw error("empty tree");
  FinStructure A;
  A.sig = Signature::make({{"<", 2}});
  A.size = (int)T.nodes.size();
  A.tables.resize(1);
  for (int i = 0; i < A.size; ++i)
    for (int j = 0; j < A.size; ++j)
      if (i != j && kb_less(T.nodes[i], T.nodes[j])) A.tables[0].insert({i, j});
  return {A, T.nodes};
}

bool is_rank_homogeneous(const FinTree& T, int k) {
  if (k < 1) throw error("k must be >= 1");
  std::map<std::vector<int>, int> rk;
  for (const auto& n : T.nodes) rk[n] = tree_rank(T, n);
  size_t depth = 0;
  for (const auto& n : T.nodes) depth = std::max(depth, n.size());
  for (const auto& a : T.nodes) {
    size_t lvl = a.size();
    if (lvl == depth) continue;
    std::set<int> achieved;  // ranks at level lvl+1, anywhere in the tree
    for (const auto& b : T.nodes)
      if (b.size() == lvl + 1) achieved.insert(rk.at(b));
    for (int alpha : achieved) {
      if (alpha >= rk.at(a)) continue;
      int cnt = 0;
      for (const auto& c : T.children(a))
        if (rk.at(c) == alpha) ++cnt;
      if (cnt < k) return false;
    }
  }
  return true;
}

LevelRankProfile rank_profile(const FinTree& T) {
  LevelRankProfile P;
  std::map<size_t, std::map<int, long long>> counts;
  for (const auto& n : T.nodes) counts[n.size()][tree_rank(T, n)]++;
  if (T.nodes.empty()) return P;
  size_t depth = counts.rbegin()->first;
  P.levels.resize(depth + 1);
  for (const auto& [lvl, ranks] : counts)
    for (const auto& [r, c] : ranks)
      P.levels[lvl].push_back({Ordinal::nat(r), c, false});
  return P;
}

bool iso_by_profile(const FinTree& T, const FinTree& U, int k) {
  if (!is_rank_homogeneous(T, k) || !is_rank_homogeneous(U, k))
    throw error("trees are not rank-homogeneous at k");
  auto pt = rank_profile(T), pu = rank_profile(U);
  if (pt.levels.size() != pu.levels.size()) return false;
  for (size_t lvl = 0; lvl < pt.levels.size(); ++lvl) {
    auto truncate = [&](const std::vector<RankEntry>& es) {
      std::map<std::vector<std::pair<int, long long>>, long long> m;
      for (const auto& e : es) m[e.rank.terms] = std::min(e.count, (long long)k);
      return m;
    };
    if (truncate(pt.levels[lvl]) != truncate(pu.levels[lvl])) return false;
  }
  return true;
}

bool is_thin_profile(const LevelRankProfile& P) {
  for (size_t n = 0; n < P.levels.size(); ++n) {
    std::set<std::vector<std::pair<int, long long>>> distinct;
    Ordinal block_bound;  // join of `many` block ranks
    for (const auto& e : P.levels[n]) {
      if (e.count < 1) throw error("malformed profile: nonpositive multiplicity");
      distinct.insert(e.rank.terms);
      if (e.many && ord_cmp(block_bound, e.rank) < 0) block_bound = e.rank;
    }
    if (n == 0) {
      // single root: at most one rank, and no unbounded block
      if (distinct.size() > 1 || !block_bound.terms.empty()) return false;
      continue;
    }
    // finite rank sets have finite order type <= omega*n; an unbounded block
    // cofinal in rho has order type rho
    if (!block_bound.terms.empty() &&
        ord_cmp(block_bound, Ordinal::omega_times((long long)n)) > 0)
      return false;
  }
  return true;
}

FinTree build_rank_homogeneous(const LevelRankProfile& P, int k, int depth) {
  if (k < 1) throw error("k must be >= 1");
  if ((int)P.levels.size() != depth + 1)
    throw error("unrealizable profile: level count must be depth+1");

  std::vector<std::set<long long>> ranks(depth + 1);
  for (int lvl = 0; lvl <= depth; ++lvl) {
    if (P.levels[lvl].empty()) throw error("unrealizable profile: empty level");
    for (const auto& e : P.levels[lvl]) {
      if (!e.rank.is_nat())
        throw error("unrealizable profile: infinite rank in a finite tree");
      ranks[lvl].insert(e.rank.as_nat());
    }
  }
  if (ranks[0].size() != 1)
    throw error("unrealizable profile: level 0 must hold a single root rank");
  for (int lvl = 0; lvl < depth; ++lvl) {
    for (long long r : ranks[lvl]) {
      if (r == 0) continue;
      if (!ranks[lvl + 1].count(r - 1))
        throw error("unrealizable profile: rank " + std::to_string(r) +
                    " at level " + std::to_string(lvl) +
                    " needs rank " + std::to_string(r - 1) + " below");
    }
  }
  for (int lvl = 1; lvl <= depth; ++lvl) {
    long long above = *ranks[lvl - 1].rbegin();
    for (long long r : ranks[lvl])
      if (r >= above)
        throw error("unrealizable profile: child rank not below any parent rank");
  }
  for (long long r : ranks[depth])
    if (r != 0) throw error("unrealizable profile: nonzero rank at the last level");

  std::vector<std::vector<int>> paths;
  auto grow = [&](auto&& self, const std::vector<int>& path, int lvl,
                  long long target) -> void {
    paths.push_back(path);
    if (target == 0) return;
    int coord = 0;
    for (long long alpha : ranks[lvl + 1]) {
      if (alpha >= target) continue;
      for (int c = 0; c < k; ++c) {
        auto child = path;
        child.push_back(coord++);
        self(self, child, lvl + 1, alpha);
      }
    }
  };
  grow(grow, {}, 0, *ranks[0].begin());
  return FinTree::from_paths(std::move(paths));
}

static std::string canon_at(const FinTree& T, const std::vector<int>& node) {
  std::vector<std::string> cs;
  for (const auto& c : T.children(node)) cs.push_back(canon_at(T, c));
  std::sort(cs.begin(), cs.end());
  std::string out = "(";
  for (const auto& s : cs) out += s;
  out += ")";
  return out;
}

std::string tree_canon(const FinTree& T) {
  if (T.nodes.empty()) return "";
  return canon_at(T, {});
}

}  // namespace fcw
