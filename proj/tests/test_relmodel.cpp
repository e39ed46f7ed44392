#include <algorithm>

#include "bna/axioms.hpp"
#include "bna/core.hpp"
#include "bna/error.hpp"
#include "bna/parse.hpp"
#include "bna/relmodel.hpp"
#include "bna/rng.hpp"
#include "doctest.h"

using namespace bna;

namespace {

RelEnv empty_env;

FinRel ev(const char* text, int carrier) { return eval_rel(parse_term(text), empty_env, carrier); }

}  // namespace

TEST_CASE("feedback of a swap is the identity relation") {
  FinRel got = ev("X(1,1) ^ 1", 2);
  CHECK(got == rel_id(1, 2));
  CHECK(got.pairs == std::vector<std::uint64_t>{0, 3});  // (0,0) and (1,1)
}

TEST_CASE("feedback of the identity is the 0 -> 0 unit") {
  FinRel got = ev("I(1) ^ 1", 2);
  CHECK(got.sort == Sort{0, 0});
  CHECK(got.pairs == std::vector<std::uint64_t>{0});  // the empty tuple pair
}

TEST_CASE("empty relation crashes the whole composite") {
  FinRel empty{{1, 1}, 2, {}};
  RelEnv env{{"dead", empty}};
  FinRel got = eval_rel(parse_term("dead ; I(1)"), env, 2);
  CHECK(got.pairs.empty());
  got = eval_rel(parse_term("I(1) ; dead"), env, 2);
  CHECK(got.pairs.empty());
}

TEST_CASE("branching constants have no relational reading") {
  for (const char* t : {"cp(1)", "sink(1)", "eq(1)", "src(1)"}) {
    CHECK_THROWS_AS(ev(t, 2), Error);
    try {
      ev(t, 2);
    } catch (const Error& e) {
      CHECK(e.code == Err::UnsupportedConstant);
    }
  }
}

TEST_CASE("random_rel contracts") {
  CHECK(random_rel({2, 1}, 2, 0.0, 9).pairs.empty());
  FinRel full = random_rel({2, 1}, 2, 1.0, 9);
  CHECK(full.pairs.size() == 8);  // 2^2 * 2^1
  CHECK(random_rel({2, 2}, 3, 0.4, 1234).pairs == random_rel({2, 2}, 3, 0.4, 1234).pairs);
  CHECK(random_rel({2, 2}, 3, 0.4, 1234).pairs != random_rel({2, 2}, 3, 0.4, 4321).pairs);
}

TEST_CASE("feedback matches the exists-z clause by brute force") {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    int m = rng.below(3), n = rng.below(3), p = 1 + rng.below(2), carrier = 2 + rng.below(2);
    FinRel body = random_rel({m + p, n + p}, carrier, 0.3 + 0.4 * rng.unit(), rng.next());
    RelEnv env{{"f", body}};
    TermPtr t = feed(cell_ref("f"), p);
    FinRel got = eval_rel(t, env, carrier);

    long in_sp = 1, out_sp = 1, loop_sp = 1;
    for (int i = 0; i < m; ++i) in_sp *= carrier;
    for (int i = 0; i < n; ++i) out_sp *= carrier;
    for (int i = 0; i < p; ++i) loop_sp *= carrier;
    std::vector<std::uint64_t> want;
    for (long x = 0; x < in_sp; ++x)
      for (long y = 0; y < out_sp; ++y) {
        bool hit = false;
        for (long z = 0; z < loop_sp && !hit; ++z) {
          std::uint64_t code = static_cast<std::uint64_t>(x * loop_sp + z) *
                                   (out_sp * loop_sp) +
                               static_cast<std::uint64_t>(y * loop_sp + z);
          hit = std::binary_search(body.pairs.begin(), body.pairs.end(), code);
        }
        if (hit) want.push_back(static_cast<std::uint64_t>(x) * out_sp + y);
      }
    REQUIRE(got.pairs == want);
  }
}

TEST_CASE("monotone in each cell relation") {
  Rng rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    FinRel small = random_rel({2, 2}, 2, 0.3, rng.next());
    FinRel big = small;
    FinRel extra = random_rel({2, 2}, 2, 0.3, rng.next());
    big.pairs.insert(big.pairs.end(), extra.pairs.begin(), extra.pairs.end());
    std::sort(big.pairs.begin(), big.pairs.end());
    big.pairs.erase(std::unique(big.pairs.begin(), big.pairs.end()), big.pairs.end());

    TermPtr t = parse_term("(f ; (f ++ I(0))) ^ 1");
    RelEnv env_small{{"f", small}}, env_big{{"f", big}};
    FinRel lo = eval_rel(t, env_small, 2), hi = eval_rel(t, env_big, 2);
    CHECK(std::includes(hi.pairs.begin(), hi.pairs.end(), lo.pairs.begin(), lo.pairs.end()));
  }
}

TEST_CASE("cells evaluate through the environment") {
  FinRel wire = rel_id(1, 2);
  RelEnv env{{"w", wire}};
  CHECK(eval_rel(parse_term("w ; w"), env, 2) == wire);
  CHECK_THROWS_AS(eval_rel(parse_term("ghost"), env, 2), Error);
}
