#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "bna/axioms.hpp"
#include "bna/core.hpp"
#include "bna/error.hpp"
#include "bna/parse.hpp"
#include "bna/rng.hpp"
#include "bna/term.hpp"
#include "doctest.h"

using namespace bna;

namespace {

const Axiom* find_axiom(const std::string& name) {
  for (const Axiom& ax : axiom_catalog())
    if (ax.name == name) return &ax;
  return nullptr;
}

}  // namespace

TEST_CASE("catalog inventory") {
  const auto& cat = axiom_catalog();
  CHECK(cat.size() == 42);
  std::map<int, int> by_table;
  std::set<std::string> names;
  for (const Axiom& ax : cat) {
    ++by_table[ax.table];
    CHECK(names.insert(ax.name).second);
    CHECK(ax.holds == (ax.table != 2));
  }
  CHECK(by_table[1] == 18);
  CHECK(by_table[2] == 2);
  CHECK(by_table[3] == 22);
  for (const char* want : {"B1", "B10", "R1", "R6", "F1", "F2", "A1", "A3o", "A19", "F3", "F5o",
                           "A3", "F5"})
    CHECK(names.count(want) == 1);
}

TEST_CASE("every schema is sort-consistent across its sides") {
  Rng rng(17);
  for (const Axiom& ax : axiom_catalog()) {
    for (int round = 0; round < 30; ++round) {
      std::vector<int> ws(ax.width_count);
      for (int& w : ws)
        w = round == 0 ? 0 : round == 1 ? 2 : static_cast<int>(rng.below(3));
      std::vector<TermPtr> metas;
      for (const Sort& s : ax.meta_sorts(ws))
        metas.push_back(par(sink(s.inputs), dummy_source(s.outputs)));
      std::vector<TermPtr> sides = ax.sides(ws, metas);
      REQUIRE(sides.size() >= 2);
      Sort first = sort_of(sides[0], nullptr);
      for (size_t i = 1; i < sides.size(); ++i)
        REQUIRE_MESSAGE(sort_of(sides[i], nullptr) == first, ax.name, " widths diverge");
    }
  }
}

TEST_CASE("spot instantiations match the written equations") {
  const Axiom* b7 = find_axiom("B7");
  REQUIRE(b7 != nullptr);
  std::vector<TermPtr> sides = b7->sides({1, 2}, {});
  REQUIRE(sides.size() == 2);
  CHECK(term_equal(sides[0], seq(transp(1, 2), transp(2, 1))));
  CHECK(term_equal(sides[1], id(3)));

  const Axiom* a3o = find_axiom("A3o");
  REQUIRE(a3o != nullptr);
  std::vector<TermPtr> s3 = a3o->sides({2}, {});
  CHECK(term_equal(s3[0], seq(par(dummy_source(2), id(2)), eq_test(2))));
  CHECK(term_equal(s3[1], seq(sink(2), dummy_source(2))));
  CHECK(print_term(s3[0]) == "(src(2) ++ I(2)) ; eq(2)");

  // the flowchart original keeps the lhs and claims the identity instead
  const Axiom* f5 = find_axiom("F5");
  const Axiom* f5o = find_axiom("F5o");
  REQUIRE(f5 != nullptr);
  REQUIRE(f5o != nullptr);
  CHECK(term_equal(f5->sides({1}, {})[0], f5o->sides({1}, {})[0]));
  CHECK(term_equal(f5->sides({1}, {})[1], id(1)));
  CHECK(!f5->holds);
  CHECK(f5o->holds);
}

TEST_CASE("report line format") {
  AxiomReport rep;
  rep.axiom = "B1";
  rep.model = Model::Rel;
  rep.pass = true;
  rep.trials = 42;
  rep.seed = 7;
  CHECK(rep.line() == "B1\trel\tPASS\t42\t7");
  rep.pass = false;
  rep.counterexample = "cp(1)";
  CHECK(rep.line() == "B1\trel\tFAIL\t42\t7\tcp(1)");
}

TEST_CASE("default environment") {
  CellEnv env = default_env(2);
  CHECK(env.domain.size() == 2);
  CHECK(env.cells.size() == 5);
  for (const char* name : {"inc", "lag", "add", "dup", "swp"}) CHECK(env.cells.count(name) == 1);
  Sort add_sort{2, 1};
  CHECK(env.cells.at("add").sort == add_sort);
  CHECK(env.cells.at("lag").init == std::vector<Value>{1});
  CHECK(default_env(3).domain.size() == 3);
  CHECK_THROWS_AS(default_env(0), Error);
}

TEST_CASE("random cells are total") {
  Rng rng(9);
  CellDef def = random_cell({2, 1}, 3, rng);
  Sort want{2, 1};
  CHECK(def.sort == want);
  CHECK(def.init.size() == 1);
  CHECK(def.table.size() == 9);
  for (const std::vector<Value>& row : def.table) {
    REQUIRE(row.size() == 1);
    CHECK(row[0] >= 0);
    CHECK(row[0] < 3);
  }
}

TEST_CASE("random terms are deterministic, well sorted and within budget") {
  CellEnv env = default_env(2);
  Rng pick(3), r1(4), r2(4);
  int built = 0;
  for (int i = 0; i < 400; ++i) {
    Sort want{static_cast<int>(pick.below(4)), static_cast<int>(pick.below(4))};
    TermPtr t1;
    try {
      t1 = random_term(want, 6, env, r1);
    } catch (const Error& e) {
      CHECK(e.code == Err::Unsatisfiable);
      CHECK_THROWS(random_term(want, 6, env, r2));
      continue;
    }
    TermPtr t2 = random_term(want, 6, env, r2);
    REQUIRE(term_equal(t1, t2));
    CHECK(sort_of(t1, &env) == want);
    CHECK(term_size(t1) <= 6);
    ++built;
  }
  CHECK(built > 350);
}

TEST_CASE("planted falsehoods are detected") {
  Axiom bogus;
  bogus.name = "bogus";
  bogus.table = 3;
  bogus.holds = true;
  bogus.width_count = 0;
  bogus.meta_sorts = [](const std::vector<int>&) { return std::vector<Sort>{}; };
  bogus.sides = [](const std::vector<int>&, const std::vector<TermPtr>&) {
    return std::vector<TermPtr>{cell_ref("inc"), cell_ref("lag")};
  };
  CheckParams p;
  p.trials = 20;
  p.ticks = 6;
  for (Model model : {Model::Stream, Model::Proc}) {
    AxiomReport rep = check_axiom(bogus, model, p);
    CHECK(!rep.pass);
    CHECK(rep.counterexample == "inc");
  }

  Axiom rel_bogus;
  rel_bogus.name = "rel-bogus";
  rel_bogus.table = 1;
  rel_bogus.holds = true;
  rel_bogus.width_count = 2;
  rel_bogus.meta_sorts = [](const std::vector<int>&) { return std::vector<Sort>{}; };
  rel_bogus.sides = [](const std::vector<int>& w, const std::vector<TermPtr>&) {
    return std::vector<TermPtr>{transp(w[0], w[1]), id(w[0] + w[1])};
  };
  AxiomReport rep = check_axiom(rel_bogus, Model::Rel, p);
  CHECK(!rep.pass);
  CHECK(!rep.counterexample.empty());

  // an expected failure that never fails is itself a FAIL
  Axiom nofail;
  nofail.name = "nofail";
  nofail.table = 2;
  nofail.holds = false;
  nofail.width_count = 1;
  nofail.meta_sorts = [](const std::vector<int>&) { return std::vector<Sort>{}; };
  nofail.sides = [](const std::vector<int>& w, const std::vector<TermPtr>&) {
    return std::vector<TermPtr>{id(w[0]), id(w[0])};
  };
  rep = check_axiom(nofail, Model::Stream, p);
  CHECK(!rep.pass);
  CHECK(rep.counterexample.empty());
}

TEST_CASE("flowchart originals yield counterexamples quickly") {
  for (const Axiom& ax : axiom_catalog()) {
    if (ax.table != 2) continue;
    for (Model model : {Model::Stream, Model::Proc}) {
      CheckParams p;
      p.trials = 10;
      p.ticks = 8;
      AxiomReport rep = check_axiom(ax, model, p);
      CHECK_MESSAGE(rep.pass, ax.name, " found no counterexample in 10 trials");
      CHECK(!rep.counterexample.empty());
      CHECK_NOTHROW(parse_term(rep.counterexample));
    }
  }
}

TEST_CASE("relational model rejects branching tables") {
  CheckParams p;
  p.trials = 5;
  const Axiom* a1 = find_axiom("A1");
  REQUIRE(a1 != nullptr);
  try {
    check_axiom(*a1, Model::Rel, p);
    FAIL("table 3 has no relational reading");
  } catch (const Error& e) {
    CHECK(e.code == Err::UnsupportedConstant);
  }
  try {
    run_axiom_suite(Model::Rel, 3, p);
    FAIL("table 3 has no relational reading");
  } catch (const Error& e) {
    CHECK(e.code == Err::UnsupportedConstant);
  }
  try {
    run_axiom_suite(Model::Stream, 7, p);
    FAIL("table must be 0..3");
  } catch (const Error& e) {
    CHECK(e.code == Err::BadArity);
  }
}

TEST_CASE("suite reports") {
  CheckParams p;
  p.trials = 25;
  p.seed = 3;
  SuiteResult rel = run_axiom_suite(Model::Rel, 1, p);
  CHECK(rel.failures == 0);
  CHECK(rel.report.rfind("# axioms model=rel table=1 trials=25 seed=3 domain=2", 0) == 0);
  CHECK(std::count(rel.report.begin(), rel.report.end(), '\n') == 19);
  CHECK(rel.report.find("\tFAIL\t") == std::string::npos);
  CHECK(rel.report.find("B7\trel\tPASS\t25\t3") != std::string::npos);

  p.trials = 10;
  p.ticks = 8;
  SuiteResult all = run_axiom_suite(Model::Stream, 0, p);
  CHECK(all.failures == 0);
  CHECK(std::count(all.report.begin(), all.report.end(), '\n') == 43);
  CHECK(all.report.find("# axioms model=stream table=all") == 0);
  bool saw_a3 = false;
  std::istringstream lines(all.report);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("A3\t", 0) != 0) continue;
    saw_a3 = true;
    // PASS by counterexample, which rides along as a sixth column
    CHECK(line.find("\tPASS\t") != std::string::npos);
    CHECK(std::count(line.begin(), line.end(), '\t') == 5);
  }
  CHECK(saw_a3);

  // rel over table 0 narrows to table 1
  SuiteResult rel_all = run_axiom_suite(Model::Rel, 0, p);
  CHECK(std::count(rel_all.report.begin(), rel_all.report.end(), '\n') == 19);
}

TEST_CASE("differential suite stays clean") {
  DifferentialReport rep = differential_suite(25, 5, 8, 11);
  CHECK(rep.count == 25);
  CHECK(rep.divergences == 0);
  CHECK(rep.details.empty());
  CHECK(rep.format() == "nets=25 divergences=0");
}
