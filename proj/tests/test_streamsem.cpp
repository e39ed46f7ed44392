#include "bna/axioms.hpp"
#include "bna/core.hpp"
#include "bna/error.hpp"
#include "bna/parse.hpp"
#include "bna/rng.hpp"
#include "bna/streamsem.hpp"
#include "bna/term.hpp"
#include "doctest.h"

using namespace bna;

namespace {

CellEnv abc_env() {
  CellEnv env;
  env.domain.symbols = {"a", "b", "c"};
  return env;
}

CellEnv succ4_env() {
  return parse_env(R"({"domain": ["0","1","2","3"], "cells": {"succ4": {
    "arity": [1,1], "init": ["0"],
    "table": {"0": ["1"], "1": ["2"], "2": ["3"], "3": ["0"]}}}})");
}

}  // namespace

TEST_CASE("eqt on values") {
  CHECK(eqt(1, 1) == 1);
  CHECK(eqt(1, 2) == kTick);
  CHECK(eqt(kTick, kTick) == kTick);
  CHECK(eqt(1, kTick) == kTick);
}

TEST_CASE("identity flow") {
  CellEnv env = abc_env();
  std::vector<Stream> out = eval_prefix(id(1), env, {{0, 1, kTick, 2}}, 4);
  CHECK(out == std::vector<Stream>{{0, 1, kTick, 2}});
}

TEST_CASE("equality test is pointwise eqt") {
  CellEnv env = abc_env();
  std::vector<Stream> out =
      eval_prefix(eq_test(1), env, {{0, 1, 0}, {0, 2, kTick}}, 3);
  CHECK(out == std::vector<Stream>{{0, kTick, kTick}});
}

TEST_CASE("fed-back copy is the dummy source") {
  CellEnv env = abc_env();
  std::vector<Stream> out = eval_prefix(feed(copy(1), 1), env, {}, 5);
  CHECK(out == std::vector<Stream>{{kTick, kTick, kTick, kTick, kTick}});
}

TEST_CASE("mod-4 counter golden run") {
  CellEnv env = succ4_env();
  TermPtr counter = parse_term("(succ4 ; cp(1)) ^ 1");
  std::vector<Stream> out = eval_prefix(counter, env, {}, 5);
  CHECK(out == std::vector<Stream>{{0, 1, 2, 3, 0}});
}

TEST_CASE("lone cell timing") {
  CellEnv env = succ4_env();
  std::vector<Stream> out =
      eval_prefix(cell_ref("succ4"), env, {{0, kTick, kTick}}, 3);
  CHECK(out == std::vector<Stream>{{0, 1, kTick}});
  // datum arriving later starts the next period later
  out = eval_prefix(cell_ref("succ4"), env, {{kTick, 2, kTick, kTick}}, 4);
  CHECK(out == std::vector<Stream>{{0, kTick, 3, kTick}});
}

TEST_CASE("direct connections") {
  CellEnv env = default_env(2);
  using P = std::pair<int, int>;
  CHECK(direct_connections(copy(1)) == std::vector<P>{{0, 0}, {0, 1}});
  CHECK(direct_connections(eq_test(1)).empty());
  CHECK(direct_connections(cell_ref("inc"), &env).empty());
  CHECK(direct_connections(seq(id(2), transp(1, 1))) == std::vector<P>{{0, 1}, {1, 0}});
  CHECK(direct_connections(feed(transp(1, 1), 1)) == std::vector<P>{{0, 0}});
  CHECK(direct_connections(parse_term("cp(1) ; (sink(1) ++ I(1))")) ==
        std::vector<P>{{0, 0}});
  // a fed-back wire cycle drops out; the through path survives
  CHECK(direct_connections(parse_term("(X(1,1) ; X(1,1)) ^ 1")) == std::vector<P>{{0, 0}});
  CHECK(direct_connections(parse_term("I(2) ^ 1")) == std::vector<P>{{0, 0}});
}

TEST_CASE("dc soundness by sampling") {
  CellEnv env = default_env(2);
  Rng rng(52);
  for (int i = 0; i < 150; ++i) {
    TermPtr t;
    try {
      t = random_term({static_cast<int>(rng.below(3)), static_cast<int>(rng.below(3))}, 7, env,
                      rng);
    } catch (const Error&) {
      continue;
    }
    auto dc = direct_connections(t, &env);
    if (dc.empty()) continue;
    Sort s = sort_of(t, &env);
    std::vector<Stream> inputs(s.inputs);
    for (Stream& in : inputs) {
      in.assign(10, kTick);
      for (Value& v : in)
        if (rng.chance(0.6)) v = rng.below(2);
    }
    std::vector<Stream> out = eval_prefix(t, env, inputs, 10);
    for (auto [in_port, out_port] : dc) REQUIRE(out[out_port] == inputs[in_port]);
  }
}

TEST_CASE("properness sampler") {
  CellEnv env = succ4_env();
  CHECK(is_proper(cell_ref("succ4"), env, 50, 12, 3).proper);
  CHECK_FALSE(is_proper(id(1), env, 50, 12, 3).proper);
  CHECK(is_proper(seq(cell_ref("succ4"), id(1)), env, 50, 12, 3).proper);
}

TEST_CASE("prefix monotonicity and causality") {
  CellEnv env = default_env(2);
  Rng rng(88);
  for (int i = 0; i < 100; ++i) {
    TermPtr t;
    try {
      t = random_term({static_cast<int>(rng.below(3)), static_cast<int>(rng.below(3))}, 7, env,
                      rng);
    } catch (const Error&) {
      continue;
    }
    Sort s = sort_of(t, &env);
    std::vector<Stream> inputs(s.inputs);
    for (Stream& in : inputs) {
      in.assign(12, kTick);
      for (Value& v : in)
        if (rng.chance(0.6)) v = rng.below(2);
    }
    std::vector<Stream> full, cut;
    try {
      full = eval_prefix(t, env, inputs, 12);
      cut = eval_prefix(t, env, inputs, 7);
    } catch (const Error& e) {
      REQUIRE(e.code == Err::SlotCollision);
      continue;
    }
    for (int p = 0; p < s.outputs; ++p)
      for (int k = 0; k < 7; ++k) REQUIRE(cut[p][k] == full[p][k]);

    // causality: changing inputs beyond tick 6 leaves outputs through 6 alone
    int k0 = 7;
    std::vector<Stream> bent = inputs;
    for (Stream& in : bent)
      for (int k = k0; k < 12; ++k) in[k] = rng.chance(0.5) ? kTick : rng.below(2);
    std::vector<Stream> bout;
    try {
      bout = eval_prefix(t, env, bent, 12);
    } catch (const Error&) {
      continue;
    }
    for (int p = 0; p < s.outputs; ++p)
      for (int k = 0; k < k0; ++k) REQUIRE(bout[p][k] == full[p][k]);
  }
}

TEST_CASE("machine reuse is deterministic") {
  CellEnv env = succ4_env();
  Machine m(parse_term("(succ4 ; cp(1)) ^ 1"), env);
  std::vector<Stream> a = m.run({}, 6);
  std::vector<Stream> b = m.run({}, 6);
  CHECK(a == b);
  CHECK(m.dc().empty());
  CHECK(m.sort() == Sort{0, 1});
}

TEST_CASE("slot collision carries the tick") {
  CellEnv env = default_env(2);
  // add consumes one datum per port; port 1 is starved while port 0 fires twice
  TermPtr t = cell_ref("add");
  std::vector<Stream> inputs = {{0, 0}, {kTick, kTick}};
  try {
    eval_prefix(t, env, inputs, 2);
    FAIL("expected SlotCollision");
  } catch (const Error& e) {
    CHECK(e.code == Err::SlotCollision);
    CHECK(e.where == 1);
  }
}
