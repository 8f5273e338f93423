#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "igl/algebra.hpp"
#include "igl/enumerate.hpp"
#include "igl/io.hpp"

using namespace igl;

TEST_CASE("builtin tables") {
  REQUIRE(builtin("two_z").table == std::vector<int>{0, 0, 0, 0});
  REQUIRE(builtin("two_s").table == std::vector<int>{0, 1, 1, 1});
  REQUIRE(builtin("two_b").table == std::vector<int>{1, 1, 0, 1});
  REQUIRE(builtin("fig1").table == std::vector<int>{0, 0, 0, 0, 0, 0, 0, 0, 1});
  REQUIRE(builtin("fig3").table == std::vector<int>{0, 1, 2, 1, 1, 2, 2, 1, 2});
  REQUIRE(builtin("kleene3").table == std::vector<int>{2, 2, 2, 1, 1, 2, 0, 1, 2});
  REQUIRE(builtin("dm4").table ==
          std::vector<int>{3, 3, 3, 3, 1, 1, 3, 3, 2, 3, 2, 3, 0, 1, 2, 3});
  REQUIRE_THROWS_AS(builtin("nope"), std::invalid_argument);
}

TEST_CASE("evaluation") {
  FiniteGroupoid b = builtin("two_b");
  REQUIRE(evaluate(parse_term("x -> x"), b, {{"x", 0}}) == 1);

  FiniteGroupoid z = builtin("two_z");
  for (const char* s : {"x -> y", "x'", "(x \\/ y) -> x''"})
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        REQUIRE(evaluate(parse_term(s), z, {{"x", x}, {"y", y}}) == 0);

  FiniteGroupoid f1 = builtin("fig1");
  REQUIRE(evaluate(parse_term("x -> y"), f1, {{"x", 2}, {"y", 2}}) == 1);

  REQUIRE_THROWS_AS(evaluate(parse_term("x -> y"), b, {{"x", 0}}), eval_error);
}

TEST_CASE("axiom validation") {
  REQUIRE(validate_axioms(builtin("two_b")).ok);
  REQUIRE(validate_axioms(builtin("fig1")).ok);
  for (const auto& n : builtin_names()) REQUIRE(validate_axioms(builtin(n)).ok);

  AxiomCheck bad = validate_axioms(make_groupoid({{1, 1}, {1, 1}}));
  REQUIRE_FALSE(bad.ok);
  REQUIRE(bad.axiom == "I0");  // 0'' = 1
}

TEST_CASE("expansion matches direct table computation") {
  // evaluate(Meet(a,b)) against (a -> (b -> 0)) -> 0, and likewise for
  // join/prime, on every builtin algebra and assignment
  TermPtr meet_s = parse_term("x /\\ y");
  TermPtr meet_m = parse_term("(x -> (y -> 0)) -> 0");
  TermPtr join_s = parse_term("x \\/ y");
  TermPtr prime_s = parse_term("x'");
  for (const auto& name : builtin_names()) {
    FiniteGroupoid A = builtin(name);
    for (int x = 0; x < A.size; ++x)
      for (int y = 0; y < A.size; ++y) {
        Assignment s{{"x", x}, {"y", y}};
        REQUIRE(evaluate(meet_s, A, s) == evaluate(meet_m, A, s));
        REQUIRE(evaluate(prime_s, A, s) == A.prime(x));
        int xp = A.prime(x), yp = A.prime(y);
        int mj = A.prime(A.at(xp, A.prime(yp)));  // x' /\ y'
        REQUIRE(evaluate(join_s, A, s) == A.prime(mj));
      }
  }
}

TEST_CASE("prime image") {
  REQUIRE(prime_image(builtin("two_b")).elements == std::vector<int>{0, 1});
  REQUIRE(prime_image(builtin("two_z")).elements == std::vector<int>{0});
  REQUIRE(prime_image(builtin("fig1")).elements == std::vector<int>{0});
}

TEST_CASE("double prime subalgebra") {
  FiniteGroupoid t = double_prime_subalgebra(builtin("two_z"));
  REQUIRE(t.size == 1);
  REQUIRE(t.table == std::vector<int>{0});

  FiniteGroupoid b = double_prime_subalgebra(builtin("two_b"));
  REQUIRE(b.table == builtin("two_b").table);

  // every model of size <= 3 lands in I20: x'' = x on the image
  Identity dpp = parse_identity("x'' = x");
  for (int n = 1; n <= 3; ++n)
    for (const auto& m : enumerate_models(n).models) {
      FiniteGroupoid s = double_prime_subalgebra(m);
      REQUIRE(validate_axioms(s).ok);
      for (int a = 0; a < s.size; ++a) REQUIRE(s.prime(s.prime(a)) == a);
    }
}

TEST_CASE("prime image is closed under ->") {
  for (int n = 1; n <= 3; ++n)
    for (const auto& m : enumerate_models(n).models) {
      PrimeImage img = prime_image(m);
      for (int a : img.elements)
        for (int b : img.elements) {
          int v = m.at(a, b);
          REQUIRE(std::find(img.elements.begin(), img.elements.end(), v) !=
                  img.elements.end());
        }
    }
}

TEST_CASE("triple prime collapses in front of ->") {
  // a''' -> b  =  a' -> b  on every valid model
  for (int n = 1; n <= 3; ++n)
    for (const auto& m : enumerate_models(n).models)
      for (int a = 0; a < n; ++a) {
        int ap = m.prime(a), appp = m.prime(m.prime(ap));
        for (int b = 0; b < n; ++b) REQUIRE(m.at(appp, b) == m.at(ap, b));
      }
}

TEST_CASE("mj reduct") {
  BiGroupoid z = mj_reduct(builtin("two_z"));
  REQUIRE(z.meet_table == std::vector<int>{0, 0, 0, 0});
  REQUIRE(z.join_table == std::vector<int>{0, 0, 0, 0});

  BiGroupoid f3 = mj_reduct(builtin("fig3"));
  REQUIRE(f3.meet_table == std::vector<int>{0, 1, 2, 1, 1, 2, 2, 1, 2});

  BiGroupoid b = mj_reduct(builtin("two_b"));
  REQUIRE(b.meet_table == std::vector<int>{0, 0, 0, 1});
  REQUIRE(b.join_table == std::vector<int>{0, 1, 1, 1});

  // meet is idempotent on the double-prime image (it lives in I20)
  for (int n = 1; n <= 3; ++n)
    for (const auto& m : enumerate_models(n).models) {
      BiGroupoid mj = mj_reduct(double_prime_subalgebra(m));
      for (int x = 0; x < mj.size; ++x) REQUIRE(mj.meet(x, x) == x);
    }
}

TEST_CASE("canonical form") {
  REQUIRE(canonical_form(builtin("two_s")).table == builtin("two_s").table);

  // fig3 with 1,2 swapped canonicalizes back to fig3's representative
  FiniteGroupoid swapped = permute(builtin("fig3"), {0, 2, 1});
  REQUIRE(canonical_form(swapped).table == canonical_form(builtin("fig3")).table);
  REQUIRE(canonical_form(builtin("fig3")).table == builtin("fig3").table);

  std::mt19937 rng(7);
  std::vector<FiniteGroupoid> pool;
  for (int n = 1; n <= 3; ++n)
    for (const auto& m : enumerate_models(n).models) pool.push_back(m);
  REQUIRE(pool.size() == 21);

  for (int i = 0; i < 100; ++i) {
    const FiniteGroupoid& base = pool[rng() % pool.size()];
    std::vector<int> p(base.size);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin() + 1, p.end(), rng);
    FiniteGroupoid scrambled = permute(base, p);
    REQUIRE(validate_axioms(scrambled).ok);  // axioms are iso-invariant
    FiniteGroupoid c1 = canonical_form(scrambled);
    REQUIRE(c1.table == canonical_form(c1).table);       // idempotent
    REQUIRE(c1.table == canonical_form(base).table);     // perm-invariant
  }
}

TEST_CASE("model json round trip") {
  for (const auto& name : builtin_names()) {
    FiniteGroupoid A = builtin(name);
    FiniteGroupoid B = model_from_json(model_to_json(A));
    REQUIRE(A == B);
    REQUIRE(B.name == name);
  }
  REQUIRE_THROWS(model_from_json(json::parse(R"({"size":2,"table":[[0,0]]})")));
}

TEST_CASE("table rendering shows rows as left arguments") {
  std::string s = render_table(builtin("fig1"));
  REQUIRE(s.find("2 |  0  0  1") != std::string::npos);
}
