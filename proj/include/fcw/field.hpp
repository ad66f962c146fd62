#pragma once

// Exact arithmetic in K_G = Q(x_v : v in V)(r_ij : (i,j) in E) with the
// defining relation r_ij^2 = x_i + x_j, together with the bounded
// normal-form enumeration used by the graph-to-field embedding.

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fcw/logic.hpp"

namespace fcw {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Monomial in the x variables: sorted (variable, exponent>0) pairs.
using XMonomial = std::vector<std::pair<int, int>>;

/// Multivariate polynomial over Q, canonical: no zero coefficients.
struct Poly {
  std::map<XMonomial, Rational> coef;

  static Poly zero() { return {}; }
  static Poly constant(const Rational& q);
  static Poly variable(int v);
  bool is_zero() const { return coef.empty(); }
  bool operator==(const Poly& o) const { return coef == o.coef; }
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_mul(const Poly& a, const Poly& b);

/// Quotient of polynomials, denominator monic in the canonical term order.
/// Not reduced by polynomial gcd; equality is by cross-multiplication.
struct RatFunc {
  Poly num;
  Poly den;  // never zero

  static RatFunc zero() { return {Poly::zero(), Poly::constant(1)}; }
  static RatFunc of(Poly p) { return {std::move(p), Poly::constant(1)}; }
  bool is_zero() const { return num.is_zero(); }
  bool is_poly() const;
};

RatFunc rf_normalize(Poly num, Poly den);
RatFunc rf_add(const RatFunc& a, const RatFunc& b);
RatFunc rf_neg(const RatFunc& a);
RatFunc rf_mul(const RatFunc& a, const RatFunc& b);
RatFunc rf_inv(const RatFunc& a);
bool rf_equal(const RatFunc& a, const RatFunc& b);

/// Square-free product of adjoined roots: sorted list of edges (i<j).
using RootMonomial = std::vector<std::pair<int, int>>;

/// Normal form: map from root monomials to nonzero coefficients in Q(x).
struct FieldElement {
  std::map<RootMonomial, RatFunc> terms;

  static FieldElement zero() { return {}; }
  static FieldElement constant(const Rational& q);
  static FieldElement variable(int v);
  static FieldElement root(int i, int j);  // r_ij
  bool is_zero() const { return terms.empty(); }
};

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_neg(const FieldElement& a);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b);
/// Inverse by iterated conjugation over the root symbols present.
FieldElement fe_inv(const FieldElement& a);
bool fe_equal(const FieldElement& a, const FieldElement& b);

enum class FieldOpKind { Add, Mul, Inv };
FieldElement field_arith(const FieldElement& a, const FieldElement& b,
                         FieldOpKind kind);

/// Documented complexity measure for fragment enumeration.  Coefficient
/// denominators are priced out of every budget (enumerated normal forms
/// carry polynomial coefficients only).
long long fe_cost(const FieldElement& e);

std::string fe_serialize(const FieldElement& e);

/// All normal forms of cost <= budget whose variables lie in `vars` and
/// whose roots lie in `edges`, in the canonical (cost, serialization) order.
std::vector<FieldElement> enumerate_field_elements(
    long long budget, const std::vector<int>& vars,
    const std::vector<std::pair<int, int>>& edges);

/// Stable input-independent numbering: rank in the global (cost,
/// serialization) enumeration over all variable and root indices.
class FieldCodec {
 public:
  long long encode(const FieldElement& e);
  FieldElement decode(long long id);

 private:
  void extend_to_cost(long long c);
  std::vector<FieldElement> table_;
  std::map<std::string, long long> rank_;
  long long next_cost_ = 0;
};

}  // namespace fcw
