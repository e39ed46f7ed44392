#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bna/env.hpp"
#include "bna/term.hpp"

namespace bna {

// Direct connections of a term: input/output port pairs (0-based) joined by a
// data-free wire path, computed structurally. Cells and the equality test
// break every path; Copy fans one input to both copies.
std::vector<std::pair<int, int>> direct_connections(const TermPtr& t, const CellEnv* env = nullptr);

// A compiled synchronous network: cells and unary constant nodes joined by
// wires. Evaluation runs one global tick at a time; within a tick, values
// propagate to a fixpoint and ports still undetermined by any datum resolve
// to tick (only feedback cycles free of cells can stay undetermined, and they
// carry no data).
class Machine {
 public:
  Machine(const TermPtr& t, const CellEnv& env);

  const Sort& sort() const { return sort_; }
  const std::vector<std::pair<int, int>>& dc() const { return dc_; }

  // Runs `horizon` ticks from the initial state (state is reset on entry; a
  // Machine is not meant to be shared across concurrent evaluations). Inputs
  // shorter than the horizon are tick-padded. Throws SlotCollision (with the
  // tick in Error::where) when a second datum reaches an occupied cell slot.
  std::vector<Stream> run(const std::vector<Stream>& inputs, int horizon);

 private:
  struct Node {
    enum Kind { CellNode, CopyNode, SinkNode, EqNode, SourceNode } kind;
    std::string name;         // cell name, for diagnostics
    const CellDef* def = nullptr;
    int first_in = 0, first_out = 0;  // port bases in consumer/producer space
    int ins = 0, outs = 0;
  };

  struct Build;  // composition scaffolding

  const CellEnv& env_;
  Sort sort_;
  std::vector<Node> nodes_;
  // consumer index -> producer index feeding it; consumers are n external
  // outputs then node inputs, producers are m external inputs then node
  // outputs. Consumers on dropped wire loops do not exist by construction.
  std::vector<int> source_of_;
  std::vector<std::pair<int, int>> dc_;

  // run state
  std::vector<std::vector<Value>> slots_;   // per cell, kTick = empty
  std::vector<std::vector<Value>> output_;  // per cell, tuple emitted this tick
  std::vector<char> emitting_;
};

Machine compile(const TermPtr& t, const CellEnv& env);

// Output prefixes of length `horizon` for the given input prefixes.
std::vector<Stream> eval_prefix(const TermPtr& t, const CellEnv& env,
                                const std::vector<Stream>& inputs, int horizon);

struct ProperReport {
  bool proper = true;
  std::string witness;  // first violation found, empty when proper
};

// Samples input pairs agreeing on the first k ticks and checks outputs agree
// on the first k+1 ("the present output is determined by the strict past").
ProperReport is_proper(const TermPtr& t, const CellEnv& env, int trials, int horizon,
                       std::uint64_t seed);

}  // namespace bna
