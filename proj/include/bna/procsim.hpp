#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bna/env.hpp"
#include "bna/term.hpp"

namespace bna {

enum class EventKind { Send, Read, Commit };

// One simulator event. `channel` is the id of the channel the datum moved on;
// Commit events use the owning cell's commit id (allocated after all channel
// ids) and carry the first component of the committed output tuple, or kTick
// when the cell has no outputs.
struct Event {
  int slice;
  EventKind kind;
  int channel;
  Value datum;
};

// serialization: one event per line, `slice<TAB>kind<TAB>channel<TAB>datum`,
// kind in {send, read, commit}, datum a domain symbol or "-" for none.
std::string format_events(const std::vector<Event>& events, const Domain& domain);

enum class Scheduler { Fifo, Lifo, Seeded };

// An asynchronous process network in the style of the ACP construction:
// nodes are minimal stream delayers (one per identity wire and per feedback
// loop edge), one process per constant occurrence, and one per cell; channels
// mirror sequential/parallel/feedback composition.
class ProcessNet {
 public:
  ProcessNet(const TermPtr& t, const CellEnv& env);
  ProcessNet(ProcessNet&&) noexcept;
  ~ProcessNet();

  const Sort& sort() const { return sort_; }
  int node_count() const;
  int msd_count() const;
  int channel_count() const;

  struct RunResult {
    std::vector<Stream> outputs;
    std::vector<Event> events;
  };

  // Runs `horizon` slices from the initial state. Within a slice, deliverable
  // channels are drained to quiescence in an order picked by the scheduler;
  // outputs are confluent across schedulers. A datum left undeliverable at
  // the end of a slice means a second datum reached an occupied cell slot:
  // SlotCollision, with the slice in Error::where.
  RunResult run(const std::vector<Stream>& inputs, int horizon,
                Scheduler sched = Scheduler::Fifo, std::uint64_t sched_seed = 0);

 private:
  struct Node;
  struct Channel;
  struct Build;

  const CellEnv& env_;
  Sort sort_;
  std::vector<Node> nodes_;
  std::vector<Channel> channels_;
  std::vector<int> input_channel_;   // external input i -> channel
  std::vector<int> output_channel_;  // external output j -> channel
};

ProcessNet instantiate(const TermPtr& t, const CellEnv& env);

std::vector<Stream> run_process(const TermPtr& t, const CellEnv& env,
                                const std::vector<Stream>& inputs, int horizon);

struct WireIdentityReport {
  bool ok = true;
  std::string detail;  // first divergence, empty when ok
};

// Checks I_m ; f, f, and f ; I_n produce identical streams on sampled inputs.
WireIdentityReport check_wire_identity(const TermPtr& t, const CellEnv& env, int trials,
                                       int horizon, std::uint64_t seed);

}  // namespace bna
