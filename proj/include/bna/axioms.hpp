#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bna/env.hpp"
#include "bna/rng.hpp"
#include "bna/term.hpp"

namespace bna {

enum class Model { Rel, Stream, Proc };
std::string to_string(Model m);

// One equational axiom schema. `widths` names the natural parameters; given a
// width assignment, `meta_sorts` lists the sorts of the term metavariables
// and `sides` builds the terms that must all be equal.
struct Axiom {
  std::string name;
  int table;             // 1 network algebra, 2 flowchart originals, 3 synchronous
  bool holds;            // false: expected to fail synchronously
  int width_count;       // number of sampled width parameters
  std::function<std::vector<Sort>(const std::vector<int>&)> meta_sorts;
  std::function<std::vector<TermPtr>(const std::vector<int>&, const std::vector<TermPtr>&)> sides;
};

// 18 table-1 axioms, 22 table-3 entries (A1..A19 with the degree-marked A3,
// plus F3, F4 and the degree-marked F5), and the two flowchart originals A3,
// F5 that fail in the synchronous models.
const std::vector<Axiom>& axiom_catalog();

struct CheckParams {
  int trials = 100;
  std::uint64_t seed = 0;
  int domain_size = 2;   // carrier size for Rel, |D| for the sync models
  int ticks = 16;
  int max_width = 2;     // cap on sampled width parameters
  int term_budget = 6;   // node budget for metavariable instantiation
  const CellEnv* env = nullptr;  // sync models; default_env(domain_size) when null
};

struct AxiomReport {
  std::string axiom;
  Model model;
  bool pass = true;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string counterexample;  // instantiated lhs when a discrepancy decided the verdict

  std::string line() const;  // AXIOM<TAB>model<TAB>PASS|FAIL<TAB>trials<TAB>seed[<TAB>term]
};

// Checks one axiom in one model over `trials` random instantiations. For
// holds-axioms a single discrepancy is a FAIL; for expected-failures the
// check PASSes exactly when a counterexample is found, and the report carries
// it. Rel only supports table 1 (branching constants have no relational
// reading).
AxiomReport check_axiom(const Axiom& ax, Model model, const CheckParams& params);

struct SuiteResult {
  std::string report;  // parameter header plus one line per axiom
  int failures = 0;
};

// Runs the catalog through check_axiom. `table` filters (1, 2 or 3); 0 means
// every table the model supports, which for Rel is table 1 only.
SuiteResult run_axiom_suite(Model model, int table, const CheckParams& params);

// Environment used by the harness and the CLI when none is supplied: domain
// {"0"..} and a fixed stable of small cells (inc, lag, add, dup, swp), all
// widths <= 2.
CellEnv default_env(int domain_size);

// Random cell definition: total table and init over a fresh generator.
CellDef random_cell(Sort sort, int domain_size, Rng& rng);

// Random well-sorted term of the requested sort using at most `budget` nodes,
// drawing atoms from the constants and the environment's cells. Throws
// Unsatisfiable when no term of that sort fits the budget.
TermPtr random_term(Sort sort, int budget, const CellEnv& env, Rng& rng);

struct DifferentialReport {
  int count = 0;
  int divergences = 0;
  std::vector<std::string> details;

  std::string format() const;
};

// Runs `count` random closed networks through the stream machine and the
// process simulator on random inputs and compares outcomes (streams, or the
// same error at the same slice). Also checks that normalization round-trips
// denotationally: nf_to_term(to_normal_form(t)) evaluates like t.
DifferentialReport differential_suite(int count, int term_budget, int horizon,
                                      std::uint64_t seed);

}  // namespace bna
