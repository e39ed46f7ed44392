// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "bna/axioms.hpp"
#include "bna/core.hpp"
#include "bna/env.hpp"
#include "bna/error.hpp"
#include "bna/normal.hpp"
#include "bna/parse.hpp"
#include "bna/procsim.hpp"
#include "bna/rng.hpp"
#include "bna/streamsem.hpp"
#include "bna/term.hpp"

using namespace bna;

namespace {

int g_failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// streams, or the error that stopped evaluation
struct Outcome {
  bool error = false;
  Err code = Err::SlotCollision;
  long where = -1;
  std::vector<Stream> streams;

  bool operator==(const Outcome&) const = default;
};

Outcome stream_outcome(const TermPtr& t, const CellEnv& env, const std::vector<Stream>& inputs,
                       int horizon) {
  Outcome o;
  try {
    o.streams = eval_prefix(t, env, inputs, horizon);
  } catch (const Error& e) {
    o.error = true;
    o.code = e.code;
    o.where = e.where;
  }
  return o;
}

// 1. relation-model soundness: table 1, carriers 2 and 3, 200 trials each
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  int failures = 0;
  for (int carrier : {2, 3}) {
    CheckParams p;
    p.trials = 200;
    p.seed = 0;
    p.domain_size = carrier;
    p.max_width = 3;
    failures += run_axiom_suite(Model::Rel, 1, p).failures;
  }
  double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "rel model, 18 axioms x {|S|=2,|S|=3} x 200 trials, %d failures, %.1fs", failures,
                secs);
  report(1, failures == 0 && secs < 60.0, buf);
}

// 2. synchronous soundness: tables 1 and 3 in both sync models, 100 trials
void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  int failures = 0;
  for (Model model : {Model::Stream, Model::Proc})
    for (int table : {1, 3}) {
      CheckParams p;
      p.trials = 100;
      p.seed = 0;
      p.domain_size = 2;
      p.ticks = 16;
      p.max_width = 2;
      failures += run_axiom_suite(model, table, p).failures;
    }
  double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "40 entries x {stream,proc} x 100 trials at horizon 16, %d failures, %.1fs",
                failures, secs);
  report(2, failures == 0 && secs < 300.0, buf);
}

// 3. the flowchart originals A3 and F5 fail, with witnesses, within 10 trials
void criterion3() {
  CellEnv env = default_env(2);
  bool ok = true;
  std::string witness;
  for (const Axiom& ax : axiom_catalog()) {
    if (ax.table != 2) continue;
    CheckParams p;
    p.trials = 10;
    p.seed = 0;
    p.ticks = 16;
    AxiomReport rep = check_axiom(ax, Model::Stream, p);
    ok = ok && rep.pass && !rep.counterexample.empty();
    if (ax.name == "A3") witness = rep.counterexample;
  }
  // the documented shape of the failure: data in, all ticks out
  std::vector<Stream> out =
      eval_prefix(parse_term("(src(1) ++ I(1)) ; eq(1)"), env, {{0}}, 8);
  for (Value v : out.at(0)) ok = ok && v == kTick;
  report(3, ok, "A3 witness \"" + witness + "\"; lhs on (0,~,...) is all ticks");
}

// 4. stream machine and process simulator agree on 100 random nets
void criterion4() {
  DifferentialReport rep = differential_suite(100, 6, 16, 2026);
  report(4, rep.count == 100 && rep.divergences == 0, rep.format());
}

// 5. normal form: idempotent, denotation-preserving, closed under table 1
void criterion5() {
  CellEnv env = default_env(2);
  Rng rng(77);
  int terms = 0;
  bool idempotent = true, sound = true;
  while (terms < 100) {
    TermPtr t;
    try {
      t = random_term({rng.below(4), rng.below(4)}, 7, env, rng);
    } catch (const Error&) {
      continue;
    }
    ++terms;
    NormalForm nf = to_normal_form(t, &env);
    TermPtr back = nf_to_term(nf);
    idempotent = idempotent && iso_equal(nf, to_normal_form(back, &env));

    Sort s = sort_of(t, &env);
    std::vector<Stream> inputs(s.inputs);
    for (Stream& x : inputs) {
      x.assign(16, kTick);
      for (Value& v : x)
        if (rng.chance(0.55)) v = rng.below(2);
    }
    sound = sound && stream_outcome(t, env, inputs, 16) == stream_outcome(back, env, inputs, 16);
  }

  bool closed = true;
  int instantiations = 0;
  for (const Axiom& ax : axiom_catalog()) {
    if (ax.table != 1) continue;
    int done = 0;
    for (int trial = 0; done < 20 && trial < 200; ++trial) {
      std::vector<int> ws(ax.width_count);
      for (int& w : ws) w = rng.below(3);
      std::vector<TermPtr> metas;
      bool built = true;
      for (const Sort& ms : ax.meta_sorts(ws)) {
        try {
          metas.push_back(random_term(ms, 6, env, rng));
        } catch (const Error&) {
          built = false;
          break;
        }
      }
      if (!built) continue;
      ++done;
      ++instantiations;
      std::vector<TermPtr> sides = ax.sides(ws, metas);
      NormalForm first = to_normal_form(sides[0], &env);
      for (size_t i = 1; i < sides.size(); ++i)
        closed = closed && iso_equal(first, to_normal_form(sides[i], &env));
    }
    closed = closed && done == 20;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "100 terms idempotent=%s sound=%s; table-1 closure over %d instantiations=%s",
                idempotent ? "yes" : "no", sound ? "yes" : "no", instantiations,
                closed ? "yes" : "no");
  report(5, idempotent && sound && closed, buf);
}

// 6. wire identity for every constant and 20 random cells
void criterion6() {
  CellEnv env = default_env(2);
  Rng rng(55);
  bool ok = true;
  std::string first_bad;
  for (const char* text : {"I(1)", "I(2)", "X(1,1)", "X(2,1)", "cp(1)", "cp(2)", "sink(1)",
                           "sink(2)", "eq(1)", "eq(2)", "src(1)", "src(2)"}) {
    WireIdentityReport rep = check_wire_identity(parse_term(text), env, 10, 16, 1);
    if (!rep.ok && first_bad.empty()) first_bad = std::string(text) + ": " + rep.detail;
    ok = ok && rep.ok;
  }
  for (int i = 0; i < 20; ++i) {
    Sort s{static_cast<int>(rng.below(3)), static_cast<int>(rng.below(3))};
    if (s.inputs == 0 && s.outputs == 0) s.outputs = 1;
    std::string name = "w" + std::to_string(i);
    env.cells[name] = random_cell(s, 2, rng);
    WireIdentityReport rep = check_wire_identity(cell_ref(name), env, 10, 16, i);
    if (!rep.ok && first_bad.empty()) first_bad = name + ": " + rep.detail;
    ok = ok && rep.ok;
  }
  report(6, ok,
         ok ? "all constants and 20 random cells give identity flows" : first_bad);
}

// 7. the 3 -> 4 regular network: sort and cell count of its normal form
void criterion7() {
  CellEnv env = default_env(2);
  TermPtr grid = build_regular(3, 4, "swp", &env);
  Sort s = sort_of(grid, &env);
  NormalForm nf = to_normal_form(grid, &env);
  bool ok = s == Sort{3, 4} && nf.named_cell_count() == 12;
  char buf[120];
  std::snprintf(buf, sizeof buf, "regular 3 4 has sort %s with %d cells in normal form",
                to_string(s).c_str(), nf.named_cell_count());
  report(7, ok, buf);
}

// 8. mod-4 counter golden prefix in both models
void criterion8() {
  CellEnv env = parse_env(R"({"domain": ["0","1","2","3"], "cells": {"succ4": {
    "arity": [1,1], "init": ["0"],
    "table": {"0": ["1"], "1": ["2"], "2": ["3"], "3": ["0"]}}}})");
  TermPtr counter = parse_term("(succ4 ; cp(1)) ^ 1");
  std::vector<Stream> want = {{0, 1, 2, 3, 0, 1, 2, 3}};
  bool ok = eval_prefix(counter, env, {}, 8) == want && run_process(counter, env, {}, 8) == want;
  report(8, ok, "counter prefix 0 1 2 3 0 1 2 3 at horizon 8 in both models");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (g_failures > 0) std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
