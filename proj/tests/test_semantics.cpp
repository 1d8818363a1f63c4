#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "nam/errors.hpp"
#include "nam/parse.hpp"
#include "nam/search.hpp"
#include "nam/semantics.hpp"
#include "nam/structure.hpp"

using namespace nam;

namespace {

Structure make(int n, std::vector<ElemSet> exts, ElemSet normal) {
  Structure s;
  s.n = n;
  for (int e = 0; e < n; ++e) s.ext[static_cast<size_t>(e)] = exts[static_cast<size_t>(e)];
  s.normalMask = normal;
  return s;
}

// Chain c0 ∋ c1 ∋ ... of bounded length; collects every element some chain reaches.
void reachable_by_chains(const Structure& s, int from, int steps, ElemSet& seen) {
  seen |= ElemSet{1} << from;
  if (steps == 0) return;
  for (int m = 0; m < s.n; ++m)
    if (s.member(m, from)) reachable_by_chains(s, m, steps - 1, seen);
}

// True iff a descending membership chain of the given length starts at e.
bool has_descending_chain(const Structure& s, int from, int length) {
  if (length == 0) return true;
  for (int m = 0; m < s.n; ++m)
    if (s.member(m, from) && has_descending_chain(s, m, length - 1)) return true;
  return false;
}

bool surjection_by_enumeration(const Structure&, ElemSet a, ElemSet b) {
  std::vector<int> dom, cod;
  for (int i = 0; i < kMaxN; ++i) {
    if ((a >> i) & 1) dom.push_back(i);
    if ((b >> i) & 1) cod.push_back(i);
  }
  size_t maps = 1;
  for (size_t i = 0; i < dom.size(); ++i) maps *= cod.size();
  if (dom.empty()) return cod.empty();  // only the empty function
  for (size_t code = 0; code < maps; ++code) {
    size_t c = code;
    ElemSet image = 0;
    for (size_t i = 0; i < dom.size(); ++i) {
      image |= ElemSet{1} << cod[c % cod.size()];
      c /= cod.size();
    }
    if (image == b) return true;
  }
  return false;
}

void for_all_relations(int n, const std::function<void(const Structure&)>& fn) {
  Structure s;
  s.n = n;
  for (ElemSet rel = 0; rel < (ElemSet{1} << (n * n)); ++rel) {
    for (int c = 0; c < n; ++c) {
      ElemSet col = 0;
      for (int r = 0; r < n; ++r)
        if ((rel >> (r * n + c)) & 1) col |= ElemSet{1} << r;
      s.ext[static_cast<size_t>(c)] = col;
    }
    fn(s);
  }
}

}  // namespace

TEST_CASE("extensions read columns of the membership relation") {
  auto s = make(3, {0, 0b111, 0b010}, 0);
  CHECK(ext(s, 0) == 0);
  CHECK(ext(s, 1) == s.universe());
  CHECK(ext(s, 2) == 0b010);
  CHECK(s.member(1, 2));
  CHECK_FALSE(s.member(0, 2));

  auto quine = make(1, {0b1}, 0b1);
  CHECK(ext(quine, 0) == 0b1);
}

TEST_CASE("eval covers the propositional base and quantifiers") {
  auto s = make(2, {0b10, 0b11}, 0b01);
  Assignment env;
  CHECK(eval(s, Philosophy::A, env, *parse_formula("T")));
  CHECK_FALSE(eval(s, Philosophy::A, env, *parse_formula("F")));
  CHECK(eval(s, Philosophy::A, env, *parse_formula("A y. (y in y -> y in y)")));
  CHECK(eval(s, Philosophy::A, env, *parse_formula("E y. A z. (z in y)")));
  CHECK_FALSE(eval(s, Philosophy::A, env, *parse_formula("A y. (y in y)")));
  CHECK(eval(s, Philosophy::A, {{"q", 1}}, *parse_formula("q in q")));
}

TEST_CASE("equality is identity under A and DefEq under B") {
  // Elements 0 and 1 share an extension; only 0 is Normal.
  auto s = make(2, {0b01, 0b01}, 0b01);
  Assignment ab = {{"a", 0}, {"b", 1}};
  auto defex = parse_formula("A z. (z in a <-> z in b)");
  CHECK(eval(s, Philosophy::A, ab, *defex));
  CHECK_FALSE(eval(s, Philosophy::A, ab, *parse_formula("a = b")));
  CHECK_FALSE(eval(s, Philosophy::B, ab, *parse_formula("a = b")));  // flags differ

  auto t = make(2, {0b01, 0b01}, 0b11);
  CHECK(eval(t, Philosophy::B, ab, *parse_formula("a = b")));
  CHECK_FALSE(eval(t, Philosophy::A, ab, *parse_formula("a = b")));
}

TEST_CASE("under philosophy A equality matches extensional equivalence on extensional structures") {
  auto defex = parse_formula("A z. (z in a <-> z in b)");
  auto eq = parse_formula("a = b");
  for (int n = 2; n <= 3; ++n) {
    for_each_structure(n, {.extensionalOnly = true}, [&](const Structure& s) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          Assignment env = {{"a", a}, {"b", b}};
          REQUIRE(eval(s, Philosophy::A, env, *eq) == eval(s, Philosophy::A, env, *defex));
        }
      return true;
    });
  }
}

TEST_CASE("denote resolves designations, tables, and assignments") {
  auto s = make(4, {0, 0, 0, 0b1111}, 0);
  s.designations[static_cast<size_t>(ConstTag::US)] = 3;
  s.denotations["{x | F}"] = 0;
  CHECK(denote(s, *parse_term("US"), {}) == 3);
  CHECK(denote(s, *parse_term("{x | F}"), {}) == 0);
  CHECK(denote(s, *mk_var("v"), {{"v", 2}}) == 2);

  try {
    denote(s, *parse_term("OM"), {});
    CHECK(false);
  } catch (const SemanticsError& e) {
    CHECK(e.code == SemErrorCode::UndesignatedConstant);
    CHECK(e.term == "OM");
  }
  try {
    denote(s, *parse_term("{x | T}"), {});
    CHECK(false);
  } catch (const SemanticsError& e) {
    CHECK(e.code == SemErrorCode::UnknownDenotation);
  }
  try {
    denote(s, *parse_term("{x | x in y}"), {});
    CHECK(false);
  } catch (const SemanticsError& e) {
    CHECK(e.code == SemErrorCode::ParametricBuilder);
  }
  CHECK_THROWS_AS(denote(s, *mk_var("loose"), {}), SemanticsError);
}

TEST_CASE("truth sets collect the satisfying elements") {
  auto s = make(3, {0b010, 0b001, 0b100}, 0b011);
  CHECK(truth_set(s, Philosophy::A, "y", *parse_formula("y in x"), {{"x", 0}}) == 0b010);
  CHECK(truth_set(s, Philosophy::A, "y", *parse_formula("~(y in y)"), {}) == 0b011);
  CHECK(truth_set(s, Philosophy::A, "y", *parse_formula("N(y)"), {}) == 0b011);
  auto quine = make(1, {0b1}, 0);
  CHECK(truth_set(quine, Philosophy::A, "y", *parse_formula("~(y in y)"), {}) == 0);
}

TEST_CASE("complement extensions") {
  auto s = make(4, {0b1111, 0, 0b0101, 0}, 0);
  CHECK(complement_ext(s, 0) == 0);
  CHECK(complement_ext(s, 1) == 0b1111);
  CHECK(complement_ext(s, 2) == 0b1010);  // {0,2} -> {1,3}
}

TEST_CASE("find_by_ext honors the optional flag filter") {
  auto s = make(3, {0b111, 0b010, 0}, 0b010);
  auto full = find_by_ext(s, s.universe());
  REQUIRE(full.has_value());
  CHECK(*full == 0);
  CHECK_FALSE(find_by_ext(s, 0b101).has_value());
  CHECK_FALSE(find_by_ext(s, s.universe(), true).has_value());
  auto normal = find_by_ext(s, 0b010, true);
  REQUIRE(normal.has_value());
  CHECK(*normal == 1);
}

TEST_CASE("hull descends through membership") {
  auto empty = make(3, {0, 0b001, 0}, 0);
  CHECK(hull(empty, 0) == 0b001);
  auto quine = make(1, {0b1}, 0);
  CHECK(hull(quine, 0) == 0b1);
  auto chain = make(3, {0, 0b001, 0b010}, 0);  // 0 in 1, 1 in 2
  CHECK(hull(chain, 2) == 0b111);
  CHECK(hull(chain, 1) == 0b011);
  CHECK(hull_plus(chain, 2) == 0b011);
  CHECK(hull_plus(quine, 0) == 0b1);  // reachable from its own member

  // Literal mode closes upward from the members instead.
  CHECK(hull(chain, 2, HullMode::Literal) == 0b110);
  CHECK(hull_plus(chain, 2, HullMode::Literal) == 0b010);
  CHECK(hull(chain, 0, HullMode::Literal) == 0);
}

TEST_CASE("hull equals bounded chain reachability and is a closure") {
  for (int n = 1; n <= 3; ++n) {
    for_all_relations(n, [&](const Structure& s) {
      for (int e = 0; e < n; ++e) {
        ElemSet oracle = 0;
        reachable_by_chains(s, e, 2 * n, oracle);
        ElemSet h = hull(s, e);
        REQUIRE(h == oracle);
        CHECK(((h >> e) & 1) != 0);
        for (int y = 0; y < n; ++y)
          if ((h >> y) & 1) CHECK((hull(s, y) & ~h) == 0);
      }
    });
  }
}

TEST_CASE("union and powerset extensions match their double-loop definitions") {
  auto chain = make(3, {0, 0b001, 0b010}, 0b111);
  CHECK(union_ext(chain, 2) == 0b001);  // only member is 1, ext(1) = {0}
  CHECK(union_ext(chain, 0) == 0);
  auto full = make(2, {0b11, 0b01}, 0b01);
  CHECK(powerset_ext(full, 0) == 0b11);

  for (int n = 1; n <= 3; ++n) {
    for_all_relations(n, [&](const Structure& s) {
      for (int e = 0; e < n; ++e) {
        ElemSet un = 0, pw = 0;
        for (int y = 0; y < n; ++y) {
          for (int z = 0; z < n; ++z)
            if (s.member(y, z) && s.member(z, e)) un |= ElemSet{1} << y;
          if ((ext(s, y) & ~ext(s, e)) == 0) pw |= ElemSet{1} << y;
        }
        REQUIRE(union_ext(s, e) == un);
        REQUIRE(powerset_ext(s, e) == pw);
      }
    });
  }

  // The restricted reading keeps only Normal subsets.
  auto s = make(2, {0b11, 0}, 0b10);
  CHECK(powerset_ext(s, 0) == 0b11);
  CHECK(powerset_ext(s, 0, true) == 0b10);
}

TEST_CASE("surjection and equipollence follow the cardinality rules") {
  CHECK(surjection_exists(0, 0));
  CHECK_FALSE(surjection_exists(0b1, 0));
  CHECK_FALSE(surjection_exists(0, 0b1));
  CHECK_FALSE(surjection_exists(0b11, 0b111));
  CHECK(surjection_exists(0b111, 0b11));
  CHECK(equipollent(0b101, 0b011));
  CHECK_FALSE(equipollent(0b1, 0b11));

  Structure dummy;
  for (ElemSet a = 0; a < 16; ++a)
    for (ElemSet b = 0; b < 16; ++b)
      REQUIRE(surjection_exists(a, b) == surjection_by_enumeration(dummy, a, b));
}

TEST_CASE("structural predicates on the pinned shapes") {
  auto quine = make(1, {0b1}, 0);
  CHECK_FALSE(structural_predicate(quine, StructPred::Mirimanoff, 0));
  CHECK_FALSE(structural_predicate(quine, StructPred::Founded, 0));

  auto s3 = make(3, {0, 0b001, 0b010}, 0);
  CHECK(structural_predicate(s3, StructPred::Slim, 0));       // 0 < 3
  CHECK(structural_predicate(s3, StructPred::Mirimanoff, 2)); // plain chain
  CHECK(structural_predicate(s3, StructPred::Founded, 2));    // member 1 disjoint from {1}
  CHECK(structural_predicate(s3, StructPred::HeriFounded, 2));

  SemOptions strict;
  strict.strictFounded = true;
  CHECK(structural_predicate(s3, StructPred::Founded, 0));
  CHECK_FALSE(structural_predicate(s3, StructPred::Founded, 0, strict));
}

TEST_CASE("mirimanoff equals the absence of length n+1 descending chains") {
  for (int n = 1; n <= 3; ++n) {
    for_all_relations(n, [&](const Structure& s) {
      for (int e = 0; e < n; ++e)
        REQUIRE(structural_predicate(s, StructPred::Mirimanoff, e) ==
                !has_descending_chain(s, e, n + 1));
    });
  }
}

TEST_CASE("cantorian is always false at full extension") {
  for (int n = 1; n <= 3; ++n) {
    for_all_relations(n, [&](const Structure& s) {
      for (int e = 0; e < n; ++e)
        if (ext(s, e) == s.universe())
          REQUIRE_FALSE(structural_predicate(s, StructPred::Cantorian, e));
    });
  }
}

TEST_CASE("serialization is bit-exact and reversible") {
  auto s = make(2, {0b11, 0}, 0b01);
  s.designations[static_cast<size_t>(ConstTag::US)] = 0;
  s.denotations["{x | T}"] = 0;
  CHECK(serialize(s) == "n=2;E=1010;N=10;des=US:0,OM:-,AT:-;den={x | T}:0");

  auto back = deserialize(serialize(s));
  CHECK(back.n == s.n);
  CHECK(back.ext == s.ext);
  CHECK(back.normalMask == s.normalMask);
  CHECK(back.designations == s.designations);
  CHECK(back.denotations == s.denotations);
  CHECK(serialize(back) == serialize(s));

  auto bare = make(1, {0}, 0);
  CHECK(serialize(bare) == "n=1;E=0;N=0;des=US:-,OM:-,AT:-;den=");
  CHECK(serialize(deserialize(serialize(bare))) == serialize(bare));
}

TEST_CASE("deserialize rejects malformed lines") {
  CHECK_THROWS_AS(deserialize(""), FormatError);
  CHECK_THROWS_AS(deserialize("n=2;E=10;N=10;des=US:-,OM:-,AT:-;den="), FormatError);
  CHECK_THROWS_AS(deserialize("n=2;E=1012;N=10;des=US:-,OM:-,AT:-;den="), FormatError);
  CHECK_THROWS_AS(deserialize("n=2;E=1010;N=1;des=US:-,OM:-,AT:-;den="), FormatError);
  CHECK_THROWS_AS(deserialize("n=2;E=1010;N=10;des=US:7,OM:-,AT:-;den="), FormatError);
  CHECK_THROWS_AS(deserialize("n=0;E=;N=;des=US:-,OM:-,AT:-;den="), FormatError);
  CHECK_THROWS_AS(deserialize("n=6;E=0;N=0;des=US:-,OM:-,AT:-;den="), FormatError);
  CHECK_THROWS_AS(deserialize("n=1;E=0;N=0;des=US:-,OM:-;den="), FormatError);
  CHECK_THROWS_AS(deserialize("n=1;E=0;N=0;des=US:-,OM:-,AT:-;den={x | T}:9"), FormatError);
}
