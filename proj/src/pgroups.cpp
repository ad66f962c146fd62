#include "fcw/pgroups.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fcw {

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long long ilog(long long p, long long n) {
  long long k = 0;
  while (n > 1) { n /= p; ++k; }
  return k;
}

}  // namespace

Partition Partition::make(long long p, std::vector<int> parts) {
  if (!is_prime(p)) throw error("p must be prime");
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 1) throw error("partition parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1])
      throw error("partition parts must be non-increasing");
  }
  return Partition{p, std::move(parts)};
}

ExplicitPGroup ExplicitPGroup::from_partition(const Partition& g) {
  return ExplicitPGroup{g.p, g.parts};
}

long long ExplicitPGroup::order() const {
  long long n = 1;
  for (int e : exponents) n *= ipow(p, e);
  return n;
}

std::vector<std::vector<long long>> ExplicitPGroup::elements() const {
  std::vector<long long> mods;
  for (int e : exponents) mods.push_back(ipow(p, e));
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur(exponents.size(), 0);
  while (true) {
    out.push_back(cur);
    int i = (int)cur.size() - 1;
    while (i >= 0 && cur[i] == mods[i] - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

std::vector<long long> ExplicitPGroup::add(const std::vector<long long>& a,
                                           const std::vector<long long>& b) const {
  std::vector<long long> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % ipow(p, exponents[i]);
  return c;
}

std::vector<long long> ExplicitPGroup::scale(long long k,
                                             const std::vector<long long>& a) const {
  std::vector<long long> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    long long m = ipow(p, exponents[i]);
    c[i] = (a[i] % m) * (k % m) % m;
  }
  return c;
}

long long ExplicitPGroup::element_order(const std::vector<long long>& a) const {
  long long ord = 1;
  for (size_t i = 0; i < a.size(); ++i) {
    long long m = ipow(p, exponents[i]);
    long long x = a[i] % m, o = 1;
    while (x != 0) { x = x * p % m; o *= p; }
    ord = std::max(ord, o);
  }
  return ord;
}

UlmSequence ulm_from_partition(const Partition& g) {
  UlmSequence u;
  if (g.parts.empty()) return u;
  u.u.assign(g.parts[0], 0);
  for (int part : g.parts) ++u.u[part - 1];
  return u;
}

UlmSequence ulm_bruteforce(const ExplicitPGroup& g, long long max_order) {
  if (max_order < 0) max_order = ipow(g.p, 8);
  if (g.order() > max_order) throw error("group exceeds size bound");

  auto count_p_part = [&](const std::set<std::vector<long long>>& sub) {
    long long n = 0;
    for (const auto& e : sub)
      if (g.element_order(e) <= g.p) ++n;
    return n;
  };

  std::set<std::vector<long long>> cur;
  for (const auto& e : g.elements()) cur.insert(e);
  UlmSequence u;
  while (cur.size() > 1) {
    std::set<std::vector<long long>> nxt;
    for (const auto& e : cur) nxt.insert(g.scale(g.p, e));
    if (nxt.size() >= cur.size())
      throw error("chain failed to decrease (not a p-group?)");
    u.u.push_back(ilog(g.p, count_p_part(cur)) - ilog(g.p, count_p_part(nxt)));
    cur = std::move(nxt);
  }
  return u;
}

int group_length(const Partition& g) {
  return g.parts.empty() ? 0 : g.parts[0];
}

namespace {

// Incremental span search: try to pick generators in h matching the
// standard generators of g, pruning on the size of the partial span.
bool find_generators(const ExplicitPGroup& h,
                     const std::vector<std::vector<long long>>& elems,
                     const std::vector<int>& target_exp, size_t idx,
                     std::set<std::vector<long long>>& span) {
  if (idx == target_exp.size()) return span.size() == (size_t)h.order();
  long long want = ipow(h.p, target_exp[idx]);
  for (const auto& cand : elems) {
    if (h.element_order(cand) != want) continue;
    std::set<std::vector<long long>> grown = span;
    std::vector<long long> acc(cand.size(), 0);
    for (long long k = 1; k < want; ++k) {
      acc = h.add(acc, cand);
      for (const auto& s : span) grown.insert(h.add(s, acc));
    }
    if (grown.size() != span.size() * want) continue;  // not independent
    if (find_generators(h, elems, target_exp, idx + 1, grown)) return true;
  }
  return false;
}

}  // namespace

bool iso_groups(const ExplicitPGroup& g, const ExplicitPGroup& h) {
  if (g.p != h.p) throw error("different primes");
  if (g.order() != h.order()) return false;

  std::map<long long, long long> og, oh;
  for (const auto& e : g.elements()) ++og[g.element_order(e)];
  for (const auto& e : h.elements()) ++oh[h.element_order(e)];
  if (og != oh) return false;

  if (g.order() <= ipow(g.p, 5)) {
    std::vector<int> exps = g.exponents;
    std::sort(exps.begin(), exps.end(), std::greater<int>());
    auto elems = h.elements();
    std::set<std::vector<long long>> span;
    span.insert(std::vector<long long>(h.exponents.size(), 0));
    return find_generators(h, elems, exps, 0, span);
  }
  return true;
}

std::vector<Partition> partitions_up_to(long long p, int max_log) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
    out.push_back(Partition::make(p, cur));
    for (int part = std::min(remaining, maxpart); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, max_log, max_log);
  return out;
}

bool ulm_theorem_check(long long p, int max_log) {
  if (ipow(p, max_log) > ipow(p, 8)) throw error("bound exceeded");
  auto parts = partitions_up_to(p, max_log);
  std::vector<ExplicitPGroup> groups;
  std::vector<UlmSequence> ulms;
  for (const auto& q : parts) {
    groups.push_back(ExplicitPGroup::from_partition(q));
    ulms.push_back(ulm_from_partition(q));
  }
  for (size_t i = 0; i < groups.size(); ++i) {
    for (size_t j = 0; j < groups.size(); ++j) {
      bool same_ulm = ulms[i] == ulms[j];
      bool same_iso = iso_groups(groups[i], groups[j]);
      if (same_ulm != same_iso) return false;
    }
  }
  return true;
}

}  // namespace fcw
