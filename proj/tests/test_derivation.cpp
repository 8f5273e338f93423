#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "igl/derivation.hpp"
#include "igl/enumerate.hpp"

using namespace igl;

namespace {

const std::vector<FiniteGroupoid>& small_models() {
  static const std::vector<FiniteGroupoid> ms = [] {
    std::vector<FiniteGroupoid> out;
    for (int n = 1; n <= 3; ++n)
      for (auto& m : enumerate_models(n).models) out.push_back(std::move(m));
    return out;
  }();
  return ms;
}

std::string drv_path(const std::string& name) {
  return std::string(IGL_DATA_DIR) + "/derivations/" + name;
}

}  // namespace

TEST_CASE("parsing the shipped chain for item (1)") {
  const Registry& reg = Registry::builtin();
  Derivation d = parse_derivation_file(drv_path("L2_7_item1.drv"), reg);
  REQUIRE(d.name == "L2_7_item1");
  REQUIRE(d.ambient == std::vector<std::string>{"I20"});
  REQUIRE(d.transitions() == 4);
  REQUIRE(equal(d.steps.front().term, d.goal.lhs));
  REQUIRE(equal(d.steps.back().term, d.goal.rhs));
  REQUIRE(d.steps[1].justification == "I");
  REQUIRE(d.steps[2].justification == "L2_4.a");
}

TEST_CASE("derivation parse errors") {
  const Registry& reg = Registry::builtin();

  std::istringstream endpoint(
      "derivation: broken\n"
      "ambient: I20\n"
      "goal: x' ≈ x''\n"
      "step: x'\n"
      "step: x''' by L2_4.b\n");
  REQUIRE_THROWS_AS(parse_derivation(endpoint, reg), derivation_error);

  std::istringstream unresolved(
      "derivation: broken\n"
      "ambient: I20\n"
      "goal: x' ≈ x'\n"
      "step: x'\n"
      "step: x' by L9_99\n");
  REQUIRE_THROWS_AS(parse_derivation(unresolved, reg), derivation_error);

  std::istringstream nogoal("derivation: broken\nstep: x\nstep: x\n");
  REQUIRE_THROWS_AS(parse_derivation(nogoal, reg), derivation_error);
}

TEST_CASE("shipped derivations pass semantic mode on all small models") {
  const Registry& reg = Registry::builtin();
  for (const char* f : {"L2_7_item1.drv", "L2_7_item2.drv", "L2_7_item14.drv",
                        "L2_7_item15.drv"}) {
    Derivation d = parse_derivation_file(drv_path(f), reg);
    DerivationReport rep =
        check_derivation(d, small_models(), DerivationMode::Both, reg);
    CAPTURE(f);
    REQUIRE(rep.semantic_ok);
    REQUIRE(rep.goal_ok);
    // syntactic validity implies semantic validity, step by step
    for (const auto& s : rep.steps)
      if (s.syntactic_ok) REQUIRE(s.semantic_ok);
  }
}

TEST_CASE("items 1, 2 and 15 are pure single-rewrite chains") {
  const Registry& reg = Registry::builtin();
  for (const char* f : {"L2_7_item1.drv", "L2_7_item2.drv", "L2_7_item15.drv"}) {
    Derivation d = parse_derivation_file(drv_path(f), reg);
    DerivationReport rep =
        check_derivation(d, small_models(), DerivationMode::Syntactic, reg);
    CAPTURE(f);
    REQUIRE(rep.syntactic_ok);
  }
}

TEST_CASE("item 14 contains the documented compressed step") {
  const Registry& reg = Registry::builtin();
  Derivation d = parse_derivation_file(drv_path("L2_7_item14.drv"), reg);
  DerivationReport rep =
      check_derivation(d, small_models(), DerivationMode::Both, reg);
  REQUIRE(rep.semantic_ok);
  REQUIRE_FALSE(rep.syntactic_ok);  // one transition compresses two rewrites
}

TEST_CASE("semantic step checking") {
  const Registry& reg = Registry::builtin();

  StepVerdict ok = check_step_semantic(parse_term("(x -> 0') -> y"),
                                       parse_term("((y' -> x) -> (0' -> y)')'"),
                                       {"I20"}, small_models(), reg);
  REQUIRE(ok.holds);

  // reflexive steps hold
  TermPtr t = parse_term("(x -> y')'");
  REQUIRE(check_step_semantic(t, t, {"I20"}, small_models(), reg).holds);

  // a mutated step is violated with a witness
  StepVerdict bad = check_step_semantic(parse_term("(x -> 0') -> y"),
                                        parse_term("(y -> x)'"), {"I20"},
                                        small_models(), reg);
  REQUIRE_FALSE(bad.holds);
  REQUIRE_FALSE(bad.witness.empty());
}

TEST_CASE("syntactic step checking") {
  const Registry& reg = Registry::builtin();
  const Identity& i20 = reg.label("I20");

  // x'' -> x at the root
  REQUIRE(check_step_syntactic(parse_term("x''"), parse_term("x"), i20));
  // and in context
  REQUIRE(check_step_syntactic(parse_term("(x'' -> y) -> z"),
                               parse_term("(x -> y) -> z"), i20));

  // the appendix's first move is a single (I) instance with x->x, y->0', z->y
  REQUIRE(check_step_syntactic(parse_term("(x -> 0') -> y"),
                               parse_term("((y' -> x) -> (0' -> y)')'"),
                               reg.label("I")));

  // two simultaneous rewrites are rejected even though semantically fine
  REQUIRE_FALSE(check_step_syntactic(parse_term("x'' -> x''"),
                                     parse_term("x -> x"), i20));

  // wrong rule
  REQUIRE_FALSE(check_step_syntactic(parse_term("x''"), parse_term("x"),
                                     reg.label("L2_4.a")));

  // reflexive
  REQUIRE(check_step_syntactic(parse_term("x'"), parse_term("x'"), i20));
}

TEST_CASE("fault-injected chains identify the first bad step") {
  const Registry& reg = Registry::builtin();
  std::istringstream in(
      "derivation: doctored\n"
      "ambient: I20\n"
      "goal: (x -> 0') -> y ≈ (x -> y') -> y\n"
      "step: (x -> 0') -> y\n"
      "step: ((y' -> x) -> (0' -> y)')'   by I\n"
      "step: (y -> x)'                    by L2_4.a\n"
      "step: (x -> y') -> y               by I\n");
  Derivation d = parse_derivation(in, reg);
  DerivationReport rep =
      check_derivation(d, small_models(), DerivationMode::Semantic, reg);
  REQUIRE_FALSE(rep.semantic_ok);
  REQUIRE(rep.first_bad == 1);
  REQUIRE(rep.steps[0].semantic_ok);
  REQUIRE_FALSE(rep.steps[1].semantic_ok);
  REQUIRE(rep.steps[1].detail.find("fails on") != std::string::npos);
}

TEST_CASE("empty or out-of-variety model sets are an error") {
  const Registry& reg = Registry::builtin();
  Derivation d = parse_derivation_file(drv_path("L2_7_item1.drv"), reg);
  REQUIRE_THROWS_AS(check_derivation(d, {}, DerivationMode::Semantic, reg),
                    std::invalid_argument);
  // fig1 is not in I20, so an I20 chain has nothing to check against
  REQUIRE_THROWS_AS(check_derivation(d, {builtin("fig1")},
                                     DerivationMode::Semantic, reg),
                    std::invalid_argument);
}

TEST_CASE("transitivity: stepwise validity carries to the goal") {
  const Registry& reg = Registry::builtin();
  for (const char* f : {"L2_7_item1.drv", "L2_7_item2.drv", "L2_7_item15.drv"}) {
    Derivation d = parse_derivation_file(drv_path(f), reg);
    DerivationReport rep =
        check_derivation(d, small_models(), DerivationMode::Semantic, reg);
    REQUIRE(rep.semantic_ok);
    for (const auto& m : small_models()) {
      if (!membership(m, d.ambient, reg).belongs) continue;
      REQUIRE(satisfies(m, d.goal).holds);
    }
  }
}
