#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fcw/logic.hpp"

using namespace fcw;

namespace {

FinStructure chain(int n) {
  FinStructure A;
  A.sig = Signature::make({{"<", 2}});
  A.size = n;
  A.tables.resize(1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) A.tables[0].insert({i, j});
  return A;
}

}  // namespace

TEST_CASE("signature validation") {
  CHECK_NOTHROW(Signature::make({}));
  CHECK_NOTHROW(Signature::make({{"E", 2}, {"R", 1}}));
  CHECK_THROWS_AS(Signature::make({{"E", 2}, {"E", 1}}), error);
  CHECK_THROWS_AS(Signature::make({{"E", 0}}), error);
  Signature s = Signature::make({{"E", 2}, {"R", 1}});
  CHECK(s.index_of("R") == 1);
  CHECK(s.index_of("Q") == -1);
}

TEST_CASE("validate_structure basics and errors") {
  Signature g = Signature::make({{"E", 2}});
  FinStructure A = validate_structure(g, 2, {{"E", {0, 1}, true}});
  CHECK(A.size == 2);
  CHECK(A.holds(0, {0, 1}));
  CHECK(!A.holds(0, {1, 0}));  // closed world

  CHECK_THROWS_AS(validate_structure(g, 2, {{"E", {0, 5}, true}}), error);
  CHECK_THROWS_AS(validate_structure(Signature::make({{"R", 3}}), 1,
                                     {{"R", {0, 0}, true}}),
                  error);
  CHECK_THROWS_AS(validate_structure(g, 2, {{"Q", {0, 1}, true}}), error);
  CHECK_THROWS_AS(validate_structure(g, 2,
                                     {{"E", {0, 1}, true}, {"E", {0, 1}, false}}),
                  error);
  // negative facts are accepted and redundant under the closed world
  FinStructure B = validate_structure(g, 2, {{"E", {0, 1}, false}});
  CHECK(B.tables[0].empty());
}

TEST_CASE("diagram: canonical order and counts") {
  Signature empty = Signature::make({});
  CHECK(diagram(validate_structure(empty, 3, {})).empty());

  Signature g = Signature::make({{"E", 2}});
  auto d1 = diagram(validate_structure(g, 1, {}));
  REQUIRE(d1.size() == 1);
  CHECK(d1[0] == AtomicFact{"E", {0, 0}, false});

  auto d2 = diagram(validate_structure(g, 2, {{"E", {0, 1}, true}}));
  REQUIRE(d2.size() == 4);
  int positives = 0;
  for (const auto& f : d2) positives += f.positive;
  CHECK(positives == 1);
  // lexicographic tuple order
  CHECK(d2[0].args == std::vector<long long>{0, 0});
  CHECK(d2[1].args == std::vector<long long>{0, 1});
  CHECK(d2[3].args == std::vector<long long>{1, 1});

  Signature two = Signature::make({{"E", 2}, {"R", 1}});
  auto d3 = diagram(validate_structure(two, 3, {}));
  CHECK(d3.size() == 9 + 3);  // sum of size^arity
}

TEST_CASE("satisfies: Tarskian truth") {
  // exists x forall y (x=y or x<y)
  FormulaPtr least = f_exists(
      0, f_forall(1, f_or({f_eq(Term::var(0), Term::var(1)),
                           f_atom("<", {Term::var(0), Term::var(1)})})));
  CHECK(satisfies(chain(2), *least));

  FinStructure antichain;
  antichain.sig = Signature::make({{"<", 2}});
  antichain.size = 2;
  antichain.tables.resize(1);
  CHECK(!satisfies(antichain, *least));

  CHECK(satisfies(antichain, *f_and({})));
  CHECK(!satisfies(antichain, *f_or({})));

  // unbound free variable
  CHECK_THROWS_AS(satisfies(antichain, *f_atom("<", {Term::var(0), Term::var(1)})),
                  error);
  std::map<int, int> env{{0, 0}, {1, 1}};
  CHECK(!satisfies(antichain, *f_atom("<", {Term::var(0), Term::var(1)}), env));
  CHECK(satisfies(chain(2), *f_atom("<", {Term::var(0), Term::var(1)}), env));

  // constants
  CHECK(satisfies(chain(2), *f_atom("<", {Term::cons(0), Term::cons(1)})));
  CHECK(!satisfies(chain(2), *f_eq(Term::cons(0), Term::cons(1))));
}

TEST_CASE("free_vars") {
  FormulaPtr f = f_exists(0, f_atom("<", {Term::var(0), Term::var(1)}));
  auto fv = free_vars(*f);
  CHECK(fv == std::set<int>{1});
  CHECK(free_vars(*f_eq(Term::cons(0), Term::cons(1))).empty());
}

TEST_CASE("substructure") {
  FinStructure C = chain(3);
  auto [full, idf] = substructure(C, {0, 1, 2});
  CHECK(full.tables == C.tables);
  CHECK(idf == std::vector<int>{0, 1, 2});

  auto [sub, m] = substructure(C, {0, 2});
  CHECK(sub.size == 2);
  CHECK(sub.tables[0] == std::set<std::vector<int>>{{0, 1}});
  CHECK(m == std::vector<int>{0, 2});

  auto [empty, me] = substructure(C, {});
  CHECK(empty.size == 0);
  CHECK(me.empty());

  CHECK_THROWS_AS(substructure(C, {0, 7}), error);

  // idempotence through the full set
  auto [again, m2] = substructure(sub, {0, 1});
  CHECK(again.tables == sub.tables);
}

TEST_CASE("structure stream: counts and distinctness") {
  Signature g = Signature::make({{"E", 2}});
  CHECK(all_structures(g, 1).size() == 2);
  CHECK(all_structures(g, 2).size() == 16);
  CHECK(all_structures(Signature::make({}), 3).size() == 1);

  std::set<std::vector<AtomicFact>> seen;
  for (const auto& A : all_structures(g, 2)) seen.insert(diagram(A));
  CHECK(seen.size() == 16);

  Signature two = Signature::make({{"E", 2}, {"R", 1}});
  StructureStream st(two, 2);
  CHECK(st.total() == 1ULL << (4 + 2));
}

TEST_CASE("format_formula is stable") {
  FormulaPtr f = f_not(f_atom("E", {Term::var(0), Term::cons(1)}));
  CHECK(format_formula(*f) == format_formula(*f));
  CHECK(!format_formula(*f).empty());
}
