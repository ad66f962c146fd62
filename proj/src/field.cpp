#include "fcw/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fcw {

namespace {

constexpr long long kUnpriced = 1000000000LL;  // beyond every budget

long long surcharge(int idx) { return idx > 3 ? idx - 3 : 0; }

}  // namespace

// ---------------------------------------------------------------------------
// Polynomials

Poly Poly::constant(const Rational& q) {
  Poly p;
  if (q != 0) p.coef[{}] = q;
  return p;
}

Poly Poly::variable(int v) {
  Poly p;
  p.coef[{{v, 1}}] = 1;
  return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, q] : b.coef) {
    auto it = r.coef.find(m);
    if (it == r.coef.end()) {
      r.coef[m] = q;
    } else {
      it->second += q;
      if (it->second == 0) r.coef.erase(it);
    }
  }
  return r;
}

Poly poly_neg(const Poly& a) {
  Poly r = a;
  for (auto& [m, q] : r.coef) q = -q;
  return r;
}

static XMonomial mono_mul(const XMonomial& a, const XMonomial& b) {
  std::map<int, int> d;
  for (auto [v, e] : a) d[v] += e;
  for (auto [v, e] : b) d[v] += e;
  return XMonomial(d.begin(), d.end());
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, qa] : a.coef) {
    for (const auto& [mb, qb] : b.coef) {
      auto m = mono_mul(ma, mb);
      auto& c = r.coef[m];
      c += qa * qb;
      if (c == 0) r.coef.erase(m);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Rational functions

bool RatFunc::is_poly() const { return den == Poly::constant(1); }

RatFunc rf_normalize(Poly num, Poly den) {
  if (den.is_zero()) throw error("zero denominator");
  if (num.is_zero()) return RatFunc::zero();
  // make the denominator monic in the canonical term order
  Rational lead = den.coef.rbegin()->second;
  for (auto& [m, q] : num.coef) q /= lead;
  for (auto& [m, q] : den.coef) q /= lead;
  return {std::move(num), std::move(den)};
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
  return rf_normalize(poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)),
                      poly_mul(a.den, b.den));
}

RatFunc rf_neg(const RatFunc& a) { return {poly_neg(a.num), a.den}; }

RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
  return rf_normalize(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
}

RatFunc rf_inv(const RatFunc& a) {
  if (a.is_zero()) throw error("division by zero");
  return rf_normalize(a.den, a.num);
}

bool rf_equal(const RatFunc& a, const RatFunc& b) {
  return poly_mul(a.num, b.den) == poly_mul(b.num, a.den);
}

// ---------------------------------------------------------------------------
// Field elements

FieldElement FieldElement::constant(const Rational& q) {
  FieldElement e;
  if (q != 0) e.terms[{}] = RatFunc::of(Poly::constant(q));
  return e;
}

FieldElement FieldElement::variable(int v) {
  FieldElement e;
  e.terms[{}] = RatFunc::of(Poly::variable(v));
  return e;
}

FieldElement FieldElement::root(int i, int j) {
  if (i == j) throw error("roots are indexed by edges (i != j)");
  if (i > j) std::swap(i, j);
  FieldElement e;
  e.terms[{{i, j}}] = RatFunc::of(Poly::constant(1));
  return e;
}

FieldElement fe_add(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  for (const auto& [m, c] : b.terms) {
    auto it = r.terms.find(m);
    if (it == r.terms.end()) {
      r.terms[m] = c;
    } else {
      it->second = rf_add(it->second, c);
      if (it->second.is_zero()) r.terms.erase(it);
    }
  }
  return r;
}

FieldElement fe_neg(const FieldElement& a) {
  FieldElement r = a;
  for (auto& [m, c] : r.terms) c = rf_neg(c);
  return r;
}

FieldElement fe_mul(const FieldElement& a, const FieldElement& b) {
  FieldElement r;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      // shared roots square out: r_ij^2 = x_i + x_j
      RootMonomial both, diff;
      std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(),
                            std::back_inserter(both));
      std::set_symmetric_difference(ma.begin(), ma.end(), mb.begin(), mb.end(),
                                    std::back_inserter(diff));
      RatFunc c = rf_mul(ca, cb);
      for (auto [i, j] : both)
        c = rf_mul(c, RatFunc::of(poly_add(Poly::variable(i), Poly::variable(j))));
      auto it = r.terms.find(diff);
      if (it == r.terms.end()) {
        if (!c.is_zero()) r.terms[diff] = c;
      } else {
        it->second = rf_add(it->second, c);
        if (it->second.is_zero()) r.terms.erase(it);
      }
    }
  }
  return r;
}

FieldElement fe_inv(const FieldElement& a) {
  if (a.is_zero()) throw error("division by zero");
  // find a root symbol still present
  const std::pair<int, int>* root = nullptr;
  for (const auto& [m, c] : a.terms)
    if (!m.empty()) { root = &m.front(); break; }
  if (!root) {
    FieldElement r;
    r.terms[{}] = rf_inv(a.terms.at({}));
    return r;
  }
  auto [i, j] = *root;
  FieldElement low, high;  // a = low + r_ij * high
  for (const auto& [m, c] : a.terms) {
    auto it = std::find(m.begin(), m.end(), std::make_pair(i, j));
    if (it == m.end()) {
      low.terms[m] = c;
    } else {
      RootMonomial rest(m.begin(), it);
      rest.insert(rest.end(), it + 1, m.end());
      high.terms[rest] = c;
    }
  }
  FieldElement conj = fe_add(low, fe_neg(fe_mul(high, FieldElement::root(i, j))));
  FieldElement norm = fe_mul(a, conj);  // free of r_ij
  return fe_mul(conj, fe_inv(norm));
}

bool fe_equal(const FieldElement& a, const FieldElement& b) {
  if (a.terms.size() != b.terms.size()) return false;
  auto ia = a.terms.begin();
  for (auto ib = b.terms.begin(); ib != b.terms.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!rf_equal(ia->second, ib->second)) return false;
  }
  return true;
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b,
                         FieldOpKind kind) {
  switch (kind) {
    case FieldOpKind::Add: return fe_add(a, b);
    case FieldOpKind::Mul: return fe_mul(a, b);
    case FieldOpKind::Inv: return fe_inv(a);
  }
  throw error("unreachable");
}

// ---------------------------------------------------------------------------
// Complexity measure and serialization

namespace {

long long rational_cost(const Rational& q) {
  Integer n = boost::multiprecision::abs(boost::multiprecision::numerator(q));
  Integer d = boost::multiprecision::denominator(q);
  Integer c = n + d - 2;
  if (c > kUnpriced) return kUnpriced;
  return (long long)c;
}

long long mono_cost(const XMonomial& m) {
  long long c = 0;
  for (auto [v, e] : m) c += (long long)e * (1 + surcharge(v));
  return c;
}

long long poly_cost(const Poly& p) {
  if (p.is_zero()) return 0;
  long long c = (long long)p.coef.size() - 1;
  for (const auto& [m, q] : p.coef) c += rational_cost(q) + mono_cost(m);
  return c;
}

long long rootmono_cost(const RootMonomial& m) {
  long long c = 0;
  for (auto [i, j] : m) c += 1 + surcharge(i) + surcharge(j);
  return c;
}

}  // namespace

long long fe_cost(const FieldElement& e) {
  if (e.is_zero()) return 0;
  long long c = (long long)e.terms.size() - 1;
  for (const auto& [m, rf] : e.terms) {
    if (!rf.is_poly()) return kUnpriced;
    c += poly_cost(rf.num) + rootmono_cost(m);
    if (c >= kUnpriced) return kUnpriced;
  }
  return c;
}

std::string fe_serialize(const FieldElement& e) {
  std::ostringstream os;
  bool ft = true;
  if (e.is_zero()) return "0";
  for (const auto& [m, rf] : e.terms) {
    if (!ft) os << " + ";
    ft = false;
    os << '(';
    bool f2 = true;
    for (const auto& [xm, q] : rf.num.coef) {
      if (!f2) os << '+';
      f2 = false;
      os << q;
      for (auto [v, d] : xm) {
        os << "*x" << v;
        if (d > 1) os << '^' << d;
      }
    }
    if (!rf.is_poly()) {
      os << ")/(";
      f2 = true;
      for (const auto& [xm, q] : rf.den.coef) {
        if (!f2) os << '+';
        f2 = false;
        os << q;
        for (auto [v, d] : xm) {
          os << "*x" << v;
          if (d > 1) os << '^' << d;
        }
      }
    }
    os << ')';
    for (auto [i, j] : m) os << "r" << i << '_' << j;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Bounded enumeration

namespace {

std::vector<Rational> rationals_up_to(long long c) {
  std::vector<Rational> out;
  for (long long w = 0; w <= c; ++w) {
    for (long long p = 1; p <= w + 1; ++p) {
      long long q = w + 2 - p;
      if (q < 1) continue;
      if (std::gcd(p, q) != 1) continue;
      out.push_back(Rational(p, q));
      out.push_back(Rational(-p, q));
    }
  }
  return out;
}

void monos_rec(const std::vector<int>& vars, size_t idx, long long rem,
               XMonomial& cur, std::vector<XMonomial>& out) {
  out.push_back(cur);
  for (size_t i = idx; i < vars.size(); ++i) {
    long long w = 1 + surcharge(vars[i]);
    if (w > rem) continue;
    cur.push_back({vars[i], 1});
    long long used = w;
    while (used <= rem) {
      monos_rec(vars, i + 1, rem - used, cur, out);
      ++cur.back().second;
      used += w;
    }
    cur.pop_back();
  }
}

std::vector<std::pair<XMonomial, long long>> monos_up_to(
    const std::vector<int>& vars, long long c) {
  XMonomial cur;
  std::vector<XMonomial> raw;
  monos_rec(vars, 0, c, cur, raw);
  std::vector<std::pair<XMonomial, long long>> out;
  for (auto& m : raw) out.push_back({m, mono_cost(m)});
  std::sort(out.begin(), out.end());
  return out;
}

void polys_rec(const std::vector<std::pair<XMonomial, long long>>& monos,
               const std::vector<Rational>& rats, size_t idx, long long rem,
               Poly& cur, std::vector<Poly>& out) {
  if (!cur.is_zero()) out.push_back(cur);
  for (size_t i = idx; i < monos.size(); ++i) {
    long long extra = cur.is_zero() ? 0 : 1;  // joining cost between terms
    long long base = monos[i].second + extra;
    if (base > rem) continue;
    for (const auto& q : rats) {
      long long tc = base + rational_cost(q);
      if (tc > rem) continue;
      cur.coef[monos[i].first] = q;
      polys_rec(monos, rats, i + 1, rem - tc, cur, out);
      cur.coef.erase(monos[i].first);
    }
  }
}

std::vector<Poly> polys_up_to(const std::vector<int>& vars, long long c) {
  auto monos = monos_up_to(vars, c);
  auto rats = rationals_up_to(c);
  Poly cur;
  std::vector<Poly> out;
  polys_rec(monos, rats, 0, c, cur, out);
  return out;
}

void rootmonos_rec(const std::vector<std::pair<int, int>>& edges, size_t idx,
                   long long rem, RootMonomial& cur,
                   std::vector<RootMonomial>& out) {
  out.push_back(cur);
  for (size_t i = idx; i < edges.size(); ++i) {
    long long w = 1 + surcharge(edges[i].first) + surcharge(edges[i].second);
    if (w > rem) continue;
    cur.push_back(edges[i]);
    rootmonos_rec(edges, i + 1, rem - w, cur, out);
    cur.pop_back();
  }
}

void elements_rec(const std::vector<std::pair<RootMonomial, long long>>& rms,
                  const std::vector<std::pair<Poly, long long>>& polys,
                  size_t idx, long long rem, FieldElement& cur,
                  std::vector<FieldElement>& out) {
  out.push_back(cur);
  for (size_t i = idx; i < rms.size(); ++i) {
    long long extra = cur.is_zero() ? 0 : 1;
    long long base = rms[i].second + extra;
    if (base > rem) continue;
    for (const auto& [p, pc] : polys) {
      if (base + pc > rem) continue;
      cur.terms[rms[i].first] = RatFunc::of(p);
      elements_rec(rms, polys, i + 1, rem - base - pc, cur, out);
      cur.terms.erase(rms[i].first);
    }
  }
}

}  // namespace

std::vector<FieldElement> enumerate_field_elements(
    long long budget, const std::vector<int>& vars,
    const std::vector<std::pair<int, int>>& edges) {
  if (budget < 0) return {};
  std::vector<std::pair<int, int>> es = edges;
  for (auto& [i, j] : es)
    if (i > j) std::swap(i, j);
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());

  RootMonomial cur;
  std::vector<RootMonomial> raw;
  rootmonos_rec(es, 0, budget, cur, raw);
  std::vector<std::pair<RootMonomial, long long>> rms;
  for (auto& m : raw) rms.push_back({m, rootmono_cost(m)});
  std::sort(rms.begin(), rms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::pair<Poly, long long>> polys;
  for (auto& p : polys_up_to(vars, budget)) {
    long long c = poly_cost(p);
    polys.push_back({std::move(p), c});
  }

  FieldElement e;
  std::vector<FieldElement> out;
  elements_rec(rms, polys, 0, budget, e, out);

  std::sort(out.begin(), out.end(), [](const FieldElement& a, const FieldElement& b) {
    long long ca = fe_cost(a), cb = fe_cost(b);
    if (ca != cb) return ca < cb;
    return fe_serialize(a) < fe_serialize(b);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Codec

void FieldCodec::extend_to_cost(long long c) {
  for (; next_cost_ <= c; ++next_cost_) {
    long long lvl = next_cost_;
    // any variable or root usable at this cost level
    std::vector<int> vars;
    for (int v = 0; 1 + surcharge(v) <= lvl || v <= 3; ++v) {
      if (1 + surcharge(v) <= lvl) vars.push_back(v);
      if (v > 3 + lvl) break;
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i <= 3 + lvl; ++i)
      for (int j = i + 1; j <= 3 + lvl; ++j)
        if (1 + surcharge(i) + surcharge(j) <= lvl) edges.push_back({i, j});

    std::vector<std::pair<std::string, FieldElement>> fresh;
    for (auto& e : enumerate_field_elements(lvl, vars, edges))
      if (fe_cost(e) == lvl) fresh.push_back({fe_serialize(e), std::move(e)});
    std::sort(fresh.begin(), fresh.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [s, e] : fresh) {
      rank_[s] = (long long)table_.size();
      table_.push_back(std::move(e));
    }
  }
}

long long FieldCodec::encode(const FieldElement& e) {
  long long c = fe_cost(e);
  if (c >= kUnpriced) throw error("element has no finite encoding complexity");
  extend_to_cost(c);
  auto it = rank_.find(fe_serialize(e));
  if (it == rank_.end()) throw error("element missing from canonical enumeration");
  return it->second;
}

FieldElement FieldCodec::decode(long long id) {
  if (id < 0) throw error("negative element id");
  while ((long long)table_.size() <= id) {
    if (next_cost_ > 24) throw error("element id out of decodable range");
    extend_to_cost(next_cost_);
  }
  return table_[id];
}

}  // namespace fcw
