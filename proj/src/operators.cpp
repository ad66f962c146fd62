#include "fcw/operators.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fcw {

namespace {

long long rational_cost(const Rational& q) {
  Integer n = boost::multiprecision::abs(boost::multiprecision::numerator(q));
  Integer d = boost::multiprecision::denominator(q);
  Integer c = n + d - 2;
  if (c > 1000000000) return 1000000000;
  return (long long)c;
}

std::vector<Rational> rats_up_to(long long c) {
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

std::set<long long> mentioned_ids(const FactSet& F) {
  std::set<long long> ids;
  for (const auto& f : F.facts)
    for (long long a : f.args) ids.insert(a);
  return ids;
}

void check_facts(const Signature& sig, const std::set<AtomicFact>& facts,
                 const char* who) {
  for (const auto& f : facts) {
    int r = sig.index_of(f.rel);
    if (r < 0) throw error(std::string(who) + ": unknown relation " + f.rel);
    if ((int)f.args.size() != sig.relations[r].arity)
      throw error(std::string(who) + ": arity mismatch for " + f.rel);
    for (long long a : f.args)
      if (a < 0) throw error(std::string(who) + ": negative element id");
    if (f.positive) {
      AtomicFact twin = f;
      twin.positive = false;
      if (facts.count(twin))
        throw error(std::string(who) + ": contradictory polarity for " + f.rel);
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Fragments

FactSet factset_of(const FinStructure& A) {
  FactSet F;
  F.sig = A.sig;
  for (const auto& f : diagram(A)) F.facts.insert(f);
  return F;
}

std::pair<FinStructure, std::vector<long long>> structure_of_fragment(
    const FactSet& F) {
  auto ids = mentioned_ids(F);
  std::vector<long long> back(ids.begin(), ids.end());
  std::map<long long, int> fwd;
  for (size_t i = 0; i < back.size(); ++i) fwd[back[i]] = (int)i;

  FinStructure A;
  A.sig = F.sig;
  A.size = (int)back.size();
  A.tables.resize(F.sig.relations.size());
  for (const auto& f : F.facts) {
    if (!f.positive) continue;
    std::vector<int> t;
    for (long long a : f.args) t.push_back(fwd.at(a));
    A.tables[F.sig.index_of(f.rel)].insert(t);
  }
  return {A, back};
}

FactSet apply_operator(const EnumOperator& op, const FactSet& F, Budget b) {
  if (b.level < 0) throw error("budget must be >= 0");
  if (!(F.sig == op.input_sig)) throw error("signature mismatch");
  check_facts(F.sig, F.facts, "input fragment");
  auto out = op.transform(F, b.level);
  check_facts(op.output_sig, out, "operator output");
  for (const auto& f : out) {
    if (!f.positive) continue;
    AtomicFact twin = f;
    twin.positive = false;
    if (out.count(twin)) throw error("operator emitted inconsistent polarity");
  }
  return FactSet{op.output_sig, std::move(out)};
}

bool check_monotone(const EnumOperator& op, const std::vector<FactSet>& chain,
                    Budget b) {
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!(chain[i].sig == chain[i + 1].sig) ||
        !std::includes(chain[i + 1].facts.begin(), chain[i + 1].facts.end(),
                       chain[i].facts.begin(), chain[i].facts.end()))
      throw error("chain not increasing");
  }
  FactSet prev;
  for (size_t i = 0; i < chain.size(); ++i) {
    FactSet img = apply_operator(op, chain[i], b);
    if (i > 0 && !std::includes(img.facts.begin(), img.facts.end(),
                                prev.facts.begin(), prev.facts.end()))
      return false;
    prev = std::move(img);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Vectors over Q

long long qvector_cost(const QVector& v) {
  long long c = 0;
  for (const auto& [k, q] : v.coords) c += (k + 1) + 3 * rational_cost(q);
  return c;
}

std::string qvector_serialize(const QVector& v) {
  if (v.coords.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, q] : v.coords) {
    if (!first) os << ' ';
    first = false;
    os << k << ':' << q;
  }
  return os.str();
}

namespace {

void vectors_rec(const std::vector<int>& support, size_t idx, long long rem,
                 const std::vector<Rational>& rats, QVector& cur,
                 std::vector<QVector>& out) {
  out.push_back(cur);
  for (size_t i = idx; i < support.size(); ++i) {
    long long w = support[i] + 1;
    if (w > rem) continue;
    for (const auto& q : rats) {
      long long tc = w + 3 * rational_cost(q);
      if (tc > rem) continue;
      cur.coords[support[i]] = q;
      vectors_rec(support, i + 1, rem - tc, rats, cur, out);
      cur.coords.erase(support[i]);
    }
  }
}

std::vector<QVector> vectors_up_to(const std::vector<int>& support, long long b) {
  QVector cur;
  std::vector<QVector> out;
  if (b < 0) return out;
  auto rats = rats_up_to(b / 3);
  vectors_rec(support, 0, b, rats, cur, out);
  return out;
}

class VectorCodec {
 public:
  long long encode(const QVector& v) {
    long long c = qvector_cost(v);
    extend(c);
    auto it = rank_.find(qvector_serialize(v));
    if (it == rank_.end()) throw error("vector missing from canonical enumeration");
    return it->second;
  }

  QVector decode(long long id) {
    if (id < 0) throw error("negative element id");
    while ((long long)table_.size() <= id) {
      if (next_cost_ > 64) throw error("element id out of decodable range");
      extend(next_cost_);
    }
    return table_[id];
  }

 private:
  void extend(long long c) {
    for (; next_cost_ <= c; ++next_cost_) {
      long long lvl = next_cost_;
      std::vector<int> support;
      for (int k = 0; k + 1 <= lvl; ++k) support.push_back(k);
      std::vector<std::pair<std::string, QVector>> fresh;
      for (auto& v : vectors_up_to(support, lvl))
        if (qvector_cost(v) == lvl) fresh.push_back({qvector_serialize(v), std::move(v)});
      std::sort(fresh.begin(), fresh.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [s, v] : fresh) {
        rank_[s] = (long long)table_.size();
        table_.push_back(std::move(v));
      }
    }
  }

  std::vector<QVector> table_;
  std::map<std::string, long long> rank_;
  long long next_cost_ = 0;
};

VectorCodec& vector_codec() {
  static VectorCodec c;
  return c;
}

QVector qvector_add(const QVector& a, const QVector& b) {
  QVector r = a;
  for (const auto& [k, q] : b.coords) {
    auto it = r.coords.find(k);
    if (it == r.coords.end()) {
      r.coords[k] = q;
    } else {
      it->second += q;
      if (it->second == 0) r.coords.erase(it);
    }
  }
  return r;
}

}  // namespace

long long encode_vector(const QVector& v) { return vector_codec().encode(v); }
QVector decode_vector(long long id) { return vector_codec().decode(id); }

// ---------------------------------------------------------------------------
// Linear orders -> Q-vector-space fragments

namespace {

// Rejects fragments that contradict the linear-order axioms on the
// elements they mention.
void check_order_fragment(const FactSet& F) {
  std::set<std::pair<long long, long long>> pos, neg;
  for (const auto& f : F.facts) {
    if (f.positive) {
      if (f.args[0] == f.args[1])
        throw error("input fragment is not a linear order (irreflexivity)");
      pos.insert({f.args[0], f.args[1]});
    } else {
      neg.insert({f.args[0], f.args[1]});
    }
  }
  for (const auto& [a, b] : pos) {
    if (pos.count({b, a}))
      throw error("input fragment is not a linear order (antisymmetry)");
  }
  for (const auto& [a, b] : neg) {
    if (a != b && neg.count({b, a}))
      throw error("input fragment is not a linear order (totality)");
  }
}

}  // namespace

EnumOperator flo_to_fvs() {
  EnumOperator op;
  op.name = "flo-fvs";
  op.input_sig = Signature::make({{"<", 2}});
  op.output_sig = Signature::make({{"Plus", 3}});
  op.transform = [](const FactSet& F, long long b) {
    check_order_fragment(F);
    std::vector<int> support;
    for (long long a : mentioned_ids(F))
      if (a + 1 <= b) support.push_back((int)a);

    auto avail = vectors_up_to(support, b);
    std::vector<long long> code(avail.size());
    for (size_t i = 0; i < avail.size(); ++i) code[i] = encode_vector(avail[i]);

    std::set<AtomicFact> out;
    for (size_t i = 0; i < avail.size(); ++i) {
      for (size_t j = 0; j < avail.size(); ++j) {
        QVector sum = qvector_add(avail[i], avail[j]);
        for (size_t w = 0; w < avail.size(); ++w)
          out.insert({"Plus", {code[i], code[j], code[w]}, avail[w] == sum});
      }
    }
    return out;
  };
  return op;
}

long long fvs_dimension(const FactSet& F, Budget b) {
  int r = F.sig.index_of("Plus");
  if (r < 0 || F.sig.relations[r].arity != 3) throw error("malformed fragment");
  std::vector<QVector> vecs;
  try {
    for (long long id : mentioned_ids(F)) {
      QVector v = decode_vector(id);
      if (qvector_cost(v) <= b.level) vecs.push_back(std::move(v));
    }
  } catch (const error& e) {
    throw error(std::string("malformed fragment: ") + e.what());
  }
  // Gaussian elimination over Q
  std::vector<std::map<int, Rational>> rows;
  long long rank = 0;
  for (auto& v : vecs) {
    std::map<int, Rational> row = v.coords;
    for (const auto& piv : rows) {
      if (row.empty()) break;
      int lead = piv.begin()->first;
      auto it = row.find(lead);
      if (it == row.end()) continue;
      Rational factor = it->second / piv.begin()->second;
      for (const auto& [k, q] : piv) {
        auto jt = row.find(k);
        if (jt == row.end()) {
          row[k] = -factor * q;
        } else {
          jt->second -= factor * q;
          if (jt->second == 0) row.erase(jt);
        }
      }
    }
    if (!row.empty()) {
      rows.push_back(std::move(row));
      std::sort(rows.begin(), rows.end(),
                [](const auto& a, const auto& b) {
                  return a.begin()->first < b.begin()->first;
                });
      ++rank;
    }
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Graphs -> field fragments

namespace {

FieldCodec& field_codec() {
  static FieldCodec c;
  return c;
}

void check_graph_fragment(const FactSet& F) {
  std::set<std::pair<long long, long long>> pos, neg;
  for (const auto& f : F.facts) {
    if (f.positive) {
      if (f.args[0] == f.args[1]) throw error("graph fragment has a loop");
      pos.insert({f.args[0], f.args[1]});
    } else {
      neg.insert({f.args[0], f.args[1]});
    }
  }
  for (const auto& [a, b] : pos)
    if (neg.count({b, a})) throw error("graph fragment is not symmetric");
}

std::vector<std::pair<int, int>> positive_edges(const FactSet& F) {
  std::set<std::pair<int, int>> es;
  for (const auto& f : F.facts)
    if (f.positive) {
      int i = (int)f.args[0], j = (int)f.args[1];
      es.insert({std::min(i, j), std::max(i, j)});
    }
  return {es.begin(), es.end()};
}

}  // namespace

long long encode_field(const FieldElement& e) { return field_codec().encode(e); }
FieldElement decode_field(long long id) { return field_codec().decode(id); }

EnumOperator graph_to_field() {
  EnumOperator op;
  op.name = "graph-field";
  op.input_sig = Signature::make({{"E", 2}});
  op.output_sig = Signature::make({{"Plus", 3}, {"Times", 3}});
  op.transform = [](const FactSet& F, long long b) {
    check_graph_fragment(F);
    std::vector<int> vars;
    for (long long a : mentioned_ids(F)) vars.push_back((int)a);
    auto edges = positive_edges(F);

    auto avail = enumerate_field_elements(b / 3, vars, edges);
    std::vector<long long> cost(avail.size());
    std::vector<long long> code(avail.size());
    std::vector<std::string> serial(avail.size());
    for (size_t i = 0; i < avail.size(); ++i) {
      cost[i] = fe_cost(avail[i]);
      code[i] = encode_field(avail[i]);
      serial[i] = fe_serialize(avail[i]);
    }

    std::set<AtomicFact> out;
    for (size_t i = 0; i < avail.size(); ++i) {
      for (size_t j = 0; j < avail.size(); ++j) {
        if (cost[i] + cost[j] > b) continue;
        FieldElement sum = fe_add(avail[i], avail[j]);
        FieldElement prod = fe_mul(avail[i], avail[j]);
        long long cs = fe_cost(sum), cp = fe_cost(prod);
        if (cs <= b) out.insert({"Plus", {code[i], code[j], encode_field(sum)}, true});
        if (cp <= b) out.insert({"Times", {code[i], code[j], encode_field(prod)}, true});
        auto sums = fe_serialize(sum);
        auto prods = fe_serialize(prod);
        for (size_t w = 0; w < avail.size(); ++w) {
          if (cost[i] + cost[j] + cost[w] > b) continue;
          if (serial[w] != sums) out.insert({"Plus", {code[i], code[j], code[w]}, false});
          if (serial[w] != prods) out.insert({"Times", {code[i], code[j], code[w]}, false});
        }
      }
    }
    return out;
  };
  return op;
}

bool field_has_edge_root(const FinStructure& G, int i, int j, Budget b) {
  if (i == j) throw error("edge roots need two distinct vertices");
  if (i < 0 || j < 0 || i >= G.size || j >= G.size)
    throw error("vertex out of range");
  int rel = G.sig.index_of("E");
  if (rel < 0) throw error("graph signature must carry E/2");

  std::vector<int> vars;
  for (int v = 0; v < G.size; ++v) vars.push_back(v);
  std::vector<std::pair<int, int>> edges;
  for (const auto& t : G.tables[rel]) {
    int a = std::min(t[0], t[1]), c = std::max(t[0], t[1]);
    if (a != c) edges.push_back({a, c});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  FieldElement target = fe_add(FieldElement::variable(i), FieldElement::variable(j));
  for (const auto& e : enumerate_field_elements(b.level, vars, edges))
    if (fe_equal(fe_mul(e, e), target)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Graphs -> lexicographic order fragments

std::vector<AtomicType> atomic_types_up_to(int max_n) {
  std::vector<AtomicType> out;
  for (int n = 1; n <= max_n; ++n) {
    // restricted-growth strings in lexicographic order
    std::vector<std::vector<int>> rgs;
    std::vector<int> cur(n, 0);
    auto rec = [&](auto&& self, int i, int mx) -> void {
      if (i == n) {
        rgs.push_back(cur);
        return;
      }
      for (int c = 0; c <= mx + 1; ++c) {
        cur[i] = c;
        self(self, i + 1, std::max(mx, c));
      }
    };
    rec(rec, 1, 0);
    for (const auto& eq : rgs) {
      int classes = *std::max_element(eq.begin(), eq.end()) + 1;
      std::vector<std::pair<int, int>> pairs;
      for (int u = 0; u < classes; ++u)
        for (int v = u + 1; v < classes; ++v) pairs.push_back({u, v});
      for (unsigned long long mask = 0; mask < (1ULL << pairs.size()); ++mask) {
        AtomicType t;
        t.n = n;
        t.eq = eq;
        for (size_t p = 0; p < pairs.size(); ++p)
          if (mask >> p & 1) t.edges.insert(pairs[p]);
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

long long atomic_type_index(const AtomicType& t) {
  auto all = atomic_types_up_to(t.n);
  for (size_t i = 0; i < all.size(); ++i)
    if (all[i] == t) return (long long)i;
  throw error("malformed atomic type");
}

Rational dyadic_of(int color, long long rank) {
  if (color < 0 || rank < 0) throw error("bad dyadic index");
  // prefix bits: binary of rank+1 without its leading 1
  std::vector<int> bits;
  {
    unsigned long long v = (unsigned long long)rank + 1;
    int len = 0;
    while (v >> len) ++len;
    for (int p = len - 2; p >= 0; --p) bits.push_back((int)(v >> p & 1));
  }
  bits.push_back(1);
  for (int z = 0; z < color; ++z) bits.push_back(0);
  bits.push_back(1);
  Integer num = 0;
  for (int bit : bits) num = num * 2 + bit;
  Integer den = 1;
  for (size_t p = 0; p < bits.size(); ++p) den *= 2;
  return Rational(num, den);
}

int dyadic_color(const Rational& q) {
  if (q <= 0 || q >= 1) return -1;
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  int t = 0;
  Integer d = den;
  while (d % 2 == 0) { d /= 2; ++t; }
  if (d != 1) return -1;  // not dyadic
  std::vector<int> bits(t);
  Integer n = num;
  for (int p = t - 1; p >= 0; --p) {
    bits[p] = (int)(n % 2);
    n /= 2;
  }
  // expansion must end 1 0^a 1
  if (bits.empty() || bits.back() != 1) return -1;
  int a = 0;
  int p = t - 2;
  while (p >= 0 && bits[p] == 0) { ++a; --p; }
  if (p < 0 || bits[p] != 1) return -1;
  return a;
}

namespace {

void gamma_emit(std::vector<int>& bits, long long x) {
  unsigned long long v = (unsigned long long)x + 1;
  int len = 0;
  while (v >> len) ++len;
  for (int z = 0; z < len - 1; ++z) bits.push_back(0);
  for (int p = len - 1; p >= 0; --p) bits.push_back((int)(v >> p & 1));
}

long long gamma_read(const std::vector<int>& bits, size_t& pos) {
  int zeros = 0;
  while (pos < bits.size() && bits[pos] == 0) { ++zeros; ++pos; }
  unsigned long long v = 0;
  for (int p = 0; p <= zeros; ++p) {
    if (pos >= bits.size()) throw error("truncated sequence code");
    v = v * 2 + (unsigned long long)bits[pos++];
  }
  return (long long)v - 1;
}

}  // namespace

long long seq_encode(const LOSeq& s) {
  int n = (int)s.colors.size();
  if (n < 1 || (int)s.ranks.size() != 2 * n + 1 || s.k < 0)
    throw error("malformed sequence");
  std::vector<int> bits;
  gamma_emit(bits, n - 1);
  for (int c : s.colors) gamma_emit(bits, c);
  for (long long r : s.ranks) gamma_emit(bits, r);
  gamma_emit(bits, s.k);
  if (bits.size() > 62) throw error("sequence too large to encode");
  unsigned long long id = 1;  // sentinel preserving leading zeros
  for (int bit : bits) id = id * 2 + (unsigned long long)bit;
  return (long long)id;
}

LOSeq seq_decode(long long id) {
  if (id < 1) throw error("bad sequence id");
  unsigned long long v = (unsigned long long)id;
  int len = 0;
  while (v >> len) ++len;
  std::vector<int> bits;
  for (int p = len - 2; p >= 0; --p) bits.push_back((int)(v >> p & 1));
  size_t pos = 0;
  LOSeq s;
  int n = (int)gamma_read(bits, pos) + 1;
  for (int i = 0; i < n; ++i) s.colors.push_back((int)gamma_read(bits, pos));
  for (int i = 0; i < 2 * n + 1; ++i) s.ranks.push_back(gamma_read(bits, pos));
  s.k = gamma_read(bits, pos);
  if (pos != bits.size()) throw error("trailing bits in sequence code");
  return s;
}

std::vector<Rational> seq_values(const LOSeq& s) {
  int n = (int)s.colors.size();
  std::vector<Rational> vals;
  for (int i = 0; i <= 2 * n; ++i) {
    int color;
    if (i % 2 == 1)
      color = s.colors[i / 2];  // q_{i/2+1}
    else
      color = (i == 2 * n) ? n : 0;  // interior r in Q_0, final in Q_n
    vals.push_back(dyadic_of(color, s.ranks[i]));
  }
  vals.push_back(Rational(s.k));
  return vals;
}

EnumOperator graph_to_lo() {
  EnumOperator op;
  op.name = "graph-lo";
  op.input_sig = Signature::make({{"E", 2}});
  op.output_sig = Signature::make({{"<", 2}});
  op.transform = [](const FactSet& F, long long b) {
    check_graph_fragment(F);
    std::set<std::pair<long long, long long>> pos, neg;
    for (const auto& f : F.facts) {
      auto e = std::make_pair(std::min(f.args[0], f.args[1]),
                              std::max(f.args[0], f.args[1]));
      (f.positive ? pos : neg).insert(e);
    }
    auto vert_set = mentioned_ids(F);
    std::vector<long long> verts(vert_set.begin(), vert_set.end());

    std::vector<std::pair<LOSeq, std::vector<Rational>>> admitted;
    std::vector<long long> tuple;
    auto tuples = [&](auto&& self, int n) -> void {
      if ((int)tuple.size() == n) {
        // atomic type of the tuple, when the fragment decides it
        std::vector<int> eq(n);
        std::vector<long long> reps;
        for (int i = 0; i < n; ++i) {
          int cls = -1;
          for (size_t r = 0; r < reps.size(); ++r)
            if (reps[r] == tuple[i]) cls = (int)r;
          if (cls < 0) {
            cls = (int)reps.size();
            reps.push_back(tuple[i]);
          }
          eq[i] = cls;
        }
        AtomicType t;
        t.n = n;
        t.eq = eq;
        for (size_t u = 0; u < reps.size(); ++u) {
          for (size_t v = u + 1; v < reps.size(); ++v) {
            auto e = std::make_pair(std::min(reps[u], reps[v]),
                                    std::max(reps[u], reps[v]));
            if (pos.count(e))
              t.edges.insert({(int)u, (int)v});
            else if (!neg.count(e))
              return;  // adjacency undecided: tuple not yet typed
          }
        }
        long long m = atomic_type_index(t);
        // enumerate coordinate ranks and tag within the remaining budget
        long long rem = b - n;
        std::vector<long long> ranks(2 * n + 1, 0);
        auto spend = [&](auto&& sp, int slot, long long left) -> void {
          if (slot == 2 * n + 1) {
            for (long long k = 0; k <= std::min(m, left); ++k) {
              LOSeq s;
              for (long long v : tuple) s.colors.push_back((int)v);
              s.ranks = ranks;
              s.k = k;
              admitted.push_back({s, seq_values(s)});
            }
            return;
          }
          for (long long r = 0; r <= left; ++r) {
            ranks[slot] = r;
            sp(sp, slot + 1, left - r);
          }
          ranks[slot] = 0;
        };
        if (rem >= 0) spend(spend, 0, rem);
        return;
      }
      for (long long v : verts) {
        tuple.push_back(v);
        self(self, n);
        tuple.pop_back();
      }
    };
    for (int n = 1; n <= b; ++n) tuples(tuples, n);

    std::vector<long long> code(admitted.size());
    for (size_t i = 0; i < admitted.size(); ++i) code[i] = seq_encode(admitted[i].first);
    // position of each sequence in the lexicographic order of its rational
    // coordinates; distinct sequences always have distinct coordinates
    std::vector<size_t> by_value(admitted.size()), by_code(admitted.size());
    for (size_t i = 0; i < admitted.size(); ++i) by_value[i] = by_code[i] = i;
    std::sort(by_value.begin(), by_value.end(), [&](size_t a, size_t c) {
      return admitted[a].second < admitted[c].second;
    });
    std::vector<size_t> lexpos(admitted.size());
    for (size_t r = 0; r < by_value.size(); ++r) lexpos[by_value[r]] = r;
    std::sort(by_code.begin(), by_code.end(),
              [&](size_t a, size_t c) { return code[a] < code[c]; });

    // emit pairs in increasing (code, code) order so the set builds in O(1)
    // amortized per fact
    std::set<AtomicFact> out;
    for (size_t a : by_code)
      for (size_t c : by_code)
        out.insert(out.end(), AtomicFact{"<", {code[a], code[c]},
                                         a != c && lexpos[a] < lexpos[c]});
    return out;
  };
  return op;
}

// ---------------------------------------------------------------------------
// Trees -> graphs

long long cantor_pair(long long a, long long b) {
  return (a + b) * (a + b + 1) / 2 + b;
}

EnumOperator tree_to_graph() {
  EnumOperator op;
  op.name = "tree-graph";
  op.input_sig = Signature::make({{"child", 2}});
  op.output_sig = Signature::make({{"E", 2}});
  op.transform = [](const FactSet& F, long long b) {
    std::map<long long, long long> parent;
    std::set<std::pair<long long, long long>> neg;
    for (const auto& f : F.facts) {
      if (!f.positive) {
        neg.insert({f.args[0], f.args[1]});
        continue;
      }
      if (f.args[0] >= f.args[1])
        throw error("tree must be presented with parent indices below children");
      auto it = parent.find(f.args[1]);
      if (it != parent.end() && it->second != f.args[0])
        throw error("node has multiple parents");
      parent[f.args[1]] = f.args[0];
    }

    // depth of every node whose ancestor path is positively present
    std::map<long long, long long> depth;
    for (long long v : mentioned_ids(F)) {
      std::vector<long long> path;
      long long cur = v;
      while (cur != 0) {
        auto it = parent.find(cur);
        if (it == parent.end()) break;
        path.push_back(cur);
        cur = it->second;
      }
      if (cur == 0) depth[v] = (long long)path.size();
    }

    struct Gadget {
      long long hub;
      std::vector<long long> cycle;
    };
    std::map<long long, Gadget> gadgets;
    std::vector<long long> verts;
    std::set<std::pair<long long, long long>> adj;
    auto join = [&](long long x, long long y) {
      adj.insert({x, y});
      adj.insert({y, x});
    };
    for (const auto& [v, d] : depth) {
      if (v > b) continue;
      Gadget g;
      g.hub = cantor_pair(v, 0);
      for (long long i = 1; i <= d + 3; ++i) g.cycle.push_back(cantor_pair(v, i));
      join(g.hub, g.cycle[0]);
      for (size_t i = 0; i + 1 < g.cycle.size(); ++i) join(g.cycle[i], g.cycle[i + 1]);
      join(g.cycle.back(), g.cycle[0]);
      verts.push_back(g.hub);
      for (long long c : g.cycle) verts.push_back(c);
      gadgets[v] = std::move(g);
    }
    for (const auto& [v, p] : parent)
      if (gadgets.count(v) && gadgets.count(p))
        join(gadgets[p].hub, gadgets[v].hub);

    std::sort(verts.begin(), verts.end());
    std::set<AtomicFact> out;
    for (const auto& [x, y] : adj) out.insert({"E", {x, y}, true});
    for (long long x : verts) {
      for (long long y : verts) {
        if (adj.count({x, y})) continue;
        if (x == y) {
          out.insert({"E", {x, x}, false});
          continue;
        }
        // hub-hub adjacency may still arrive with more facts; withhold the
        // negative until the fragment denies the child relation
        long long vx = -1, vy = -1;
        for (const auto& [v, g] : gadgets) {
          if (g.hub == x) vx = v;
          if (g.hub == y) vy = v;
        }
        if (vx >= 0 && vy >= 0) {
          long long lo = std::min(vx, vy), hi = std::max(vx, vy);
          if (!neg.count({lo, hi})) continue;
        }
        out.insert({"E", {x, y}, false});
      }
    }
    return out;
  };
  return op;
}

FinStructure tree_structure(const FinTree& T) {
  FinStructure A;
  A.sig = Signature::make({{"child", 2}});
  A.size = (int)T.nodes.size();
  A.tables.resize(1);
  std::map<std::vector<int>, int> idx;
  for (int i = 0; i < A.size; ++i) idx[T.nodes[i]] = i;
  for (int i = 0; i < A.size; ++i) {
    if (T.nodes[i].empty()) continue;
    std::vector<int> par(T.nodes[i].begin(), T.nodes[i].end() - 1);
    A.tables[0].insert({idx.at(par), i});
  }
  return A;
}

}  // namespace fcw
