#include "bna/procsim.hpp"

#include <algorithm>
#include <deque>

#include "bna/core.hpp"
#include "bna/error.hpp"
#include "bna/rng.hpp"

namespace bna {

std::string format_events(const std::vector<Event>& events, const Domain& domain) {
  std::string out;
  for (const Event& e : events) {
    out += std::to_string(e.slice);
    out += '\t';
    out += e.kind == EventKind::Send ? "send" : e.kind == EventKind::Read ? "read" : "commit";
    out += '\t';
    out += std::to_string(e.channel);
    out += '\t';
    out += e.datum == kTick ? "-" : domain.symbols[e.datum];
    out += '\n';
  }
  return out;
}

struct ProcessNet::Node {
  enum Kind { Msd, Cell, Copy, Sink, Eq, Source } kind;
  std::string name;  // cell name, for diagnostics
  const CellDef* def = nullptr;
  std::vector<int> out_channels;  // per output port
  std::vector<int> in_channels;   // per input port
};

struct ProcessNet::Channel {
  int writer_node = -1, writer_port = 0;  // -1: the environment
  int reader_node = -1, reader_port = 0;  // -1: the environment (output index in reader_port)
};

// Recursive construction. A fragment exposes its open ports as (node, port)
// endpoints; sequential composition and the environment boundary turn a
// producer/consumer pair into a channel, feedback interposes one msd per loop
// edge, and each Id(1) wire is itself an msd.
struct ProcessNet::Build {
  std::vector<Node> nodes;
  std::vector<Channel> channels;

  using End = std::pair<int, int>;  // node, port

  struct Frag {
    std::vector<End> ins, outs;
  };

  int add_node(Node::Kind kind, int ins, int outs, std::string name = {},
               const CellDef* def = nullptr) {
    Node n;
    n.kind = kind;
    n.name = std::move(name);
    n.def = def;
    n.in_channels.assign(ins, -1);
    n.out_channels.assign(outs, -1);
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  int connect(End from, End to) {
    Channel ch;
    ch.writer_node = from.first;
    ch.writer_port = from.second;
    ch.reader_node = to.first;
    ch.reader_port = to.second;
    if (from.first >= 0) nodes[from.first].out_channels[from.second] = static_cast<int>(channels.size());
    if (to.first >= 0) nodes[to.first].in_channels[to.second] = static_cast<int>(channels.size());
    channels.push_back(ch);
    return static_cast<int>(channels.size()) - 1;
  }

  Frag row(Node::Kind kind, int count, int ins_per, int outs_per) {
    Frag f;
    f.ins.resize(count * ins_per);
    f.outs.resize(count * outs_per);
    for (int i = 0; i < count; ++i) {
      int node = add_node(kind, ins_per, outs_per);
      for (int j = 0; j < ins_per; ++j) f.ins[j * count + i] = {node, j};
      for (int j = 0; j < outs_per; ++j) f.outs[j * count + i] = {node, j};
    }
    return f;
  }

  Frag go(const TermPtr& t, const CellEnv& env) {
    switch (t->kind) {
      case TermKind::Id:
        return row(Node::Msd, t->a, 1, 1);
      case TermKind::Transp: {
        Frag wires = row(Node::Msd, t->a + t->b, 1, 1);
        Frag f;
        f.ins = wires.ins;
        f.outs.resize(t->a + t->b);
        for (int i = 0; i < t->a; ++i) f.outs[t->b + i] = wires.outs[i];
        for (int j = 0; j < t->b; ++j) f.outs[j] = wires.outs[t->a + j];
        return f;
      }
      case TermKind::Copy:
        return row(Node::Copy, t->a, 1, 2);
      case TermKind::Sink:
        return row(Node::Sink, t->a, 1, 0);
      case TermKind::EqTest:
        return row(Node::Eq, t->a, 2, 1);
      case TermKind::DummySource:
        return row(Node::Source, t->a, 0, 1);
      case TermKind::Cell: {
        const CellDef* def = env.find(t->cell);
        if (!def) fail(Err::UnboundCell, "cell '" + t->cell + "' is not in the environment");
        int node = add_node(Node::Cell, def->sort.inputs, def->sort.outputs, t->cell, def);
        Frag f;
        for (int i = 0; i < def->sort.inputs; ++i) f.ins.push_back({node, i});
        for (int j = 0; j < def->sort.outputs; ++j) f.outs.push_back({node, j});
        return f;
      }
      case TermKind::Par: {
        Frag a = go(t->left, env), b = go(t->right, env);
        a.ins.insert(a.ins.end(), b.ins.begin(), b.ins.end());
        a.outs.insert(a.outs.end(), b.outs.begin(), b.outs.end());
        return a;
      }
      case TermKind::Seq: {
        Frag a = go(t->left, env), b = go(t->right, env);
        for (size_t i = 0; i < a.outs.size(); ++i) connect(a.outs[i], b.ins[i]);
        return {a.ins, b.outs};
      }
      case TermKind::Feed: {
        Frag a = go(t->left, env);
        int m = static_cast<int>(a.ins.size()) - t->a;
        int n = static_cast<int>(a.outs.size()) - t->a;
        for (int j = 0; j < t->a; ++j) {
          int w = add_node(Node::Msd, 1, 1);
          connect(a.outs[n + j], {w, 0});
          connect({w, 0}, a.ins[m + j]);
        }
        a.ins.resize(m);
        a.outs.resize(n);
        return a;
      }
    }
    fail(Err::BadShape, "malformed term");
  }
};

ProcessNet::ProcessNet(const TermPtr& t, const CellEnv& env) : env_(env) {
  sort_ = sort_of(t, &env);
  Build build;
  Build::Frag frag = build.go(t, env);
  for (int i = 0; i < sort_.inputs; ++i)
    input_channel_.push_back(build.connect({-1, i}, frag.ins[i]));
  for (int j = 0; j < sort_.outputs; ++j)
    output_channel_.push_back(build.connect(frag.outs[j], {-1, j}));
  nodes_ = std::move(build.nodes);
  channels_ = std::move(build.channels);
}

ProcessNet::ProcessNet(ProcessNet&&) noexcept = default;
ProcessNet::~ProcessNet() = default;

int ProcessNet::node_count() const { return static_cast<int>(nodes_.size()); }

int ProcessNet::channel_count() const { return static_cast<int>(channels_.size()); }

int ProcessNet::msd_count() const {
  int n = 0;
  for (const Node& node : nodes_)
    if (node.kind == Node::Msd) ++n;
  return n;
}

ProcessNet instantiate(const TermPtr& t, const CellEnv& env) { return ProcessNet(t, env); }

namespace {

// per-slice eq phases
enum { kEqFresh = 0, kEqHave0 = 1, kEqHave1 = 2, kEqDone = 3 };

}  // namespace

ProcessNet::RunResult ProcessNet::run(const std::vector<Stream>& inputs, int horizon,
                                      Scheduler sched, std::uint64_t sched_seed) {
  if (static_cast<int>(inputs.size()) != sort_.inputs)
    fail(Err::BadShape, "expected " + std::to_string(sort_.inputs) + " input streams, got " +
                            std::to_string(inputs.size()));
  RunResult result;
  result.outputs.assign(sort_.outputs, Stream(horizon, kTick));
  Rng rng(sched_seed);

  // persistent cell state
  std::vector<std::vector<Value>> slots(nodes_.size()), out_tuple(nodes_.size());
  std::vector<char> emitting(nodes_.size(), 1);
  for (size_t i = 0; i < nodes_.size(); ++i) {
    slots[i].assign(nodes_[i].in_channels.size(), kTick);
    if (nodes_[i].kind == Node::Cell) out_tuple[i] = nodes_[i].def->init;
  }

  // per-slice state
  std::vector<Value> pending(channels_.size(), kTick);
  std::vector<char> consumed(nodes_.size(), 0);
  std::vector<int> eq_phase(nodes_.size(), kEqFresh);
  std::vector<Value> eq_held(nodes_.size(), kTick);

  for (int slice = 0; slice < horizon; ++slice) {
    std::fill(pending.begin(), pending.end(), kTick);
    std::fill(consumed.begin(), consumed.end(), 0);
    std::fill(eq_phase.begin(), eq_phase.end(), kEqFresh);
    std::deque<int> queue;

    auto post = [&](int ch, Value d) {
      result.events.push_back({slice, EventKind::Send, ch, d});
      pending[ch] = d;
      queue.push_back(ch);
    };

    for (int i = 0; i < sort_.inputs; ++i) {
      Value v = stream_at(inputs[i], slice);
      if (v != kTick) post(input_channel_[i], v);
    }
    for (size_t ni = 0; ni < nodes_.size(); ++ni)
      if (nodes_[ni].kind == Node::Cell && emitting[ni])
        for (size_t r = 0; r < nodes_[ni].out_channels.size(); ++r)
          post(nodes_[ni].out_channels[r], out_tuple[ni][r]);

    std::vector<int> stuck;
    while (!queue.empty()) {
      int ch;
      switch (sched) {
        case Scheduler::Fifo:
          ch = queue.front();
          queue.pop_front();
          break;
        case Scheduler::Lifo:
          ch = queue.back();
          queue.pop_back();
          break;
        default: {
          int at = rng.below(static_cast<int>(queue.size()));
          ch = queue[at];
          queue.erase(queue.begin() + at);
        }
      }
      Value d = pending[ch];
      int node = channels_[ch].reader_node;
      int port = channels_[ch].reader_port;
      auto read = [&]() {
        result.events.push_back({slice, EventKind::Read, ch, d});
        pending[ch] = kTick;
      };
      if (node < 0) {  // environment output
        read();
        result.outputs[port][slice] = d;
        continue;
      }
      Node& n = nodes_[node];
      switch (n.kind) {
        case Node::Msd:
          if (consumed[node]) {
            stuck.push_back(ch);
            break;
          }
          consumed[node] = 1;
          read();
          post(n.out_channels[0], d);
          break;
        case Node::Copy:
          if (consumed[node]) {
            stuck.push_back(ch);
            break;
          }
          consumed[node] = 1;
          read();
          post(n.out_channels[0], d);
          post(n.out_channels[1], d);
          break;
        case Node::Sink:
          if (consumed[node]) {
            stuck.push_back(ch);
            break;
          }
          consumed[node] = 1;
          read();
          break;
        case Node::Eq:
          if (eq_phase[node] == kEqFresh) {
            read();
            eq_held[node] = d;
            eq_phase[node] = port == 0 ? kEqHave0 : kEqHave1;
          } else if ((eq_phase[node] == kEqHave0 && port == 1) ||
                     (eq_phase[node] == kEqHave1 && port == 0)) {
            read();
            Value out = eqt(eq_held[node], d);
            eq_phase[node] = kEqDone;
            if (out != kTick) post(n.out_channels[0], out);
          } else {
            stuck.push_back(ch);
          }
          break;
        case Node::Source:
          stuck.push_back(ch);  // sources have no inputs; unreachable
          break;
        case Node::Cell:
          if (slots[node][port] != kTick) {
            stuck.push_back(ch);
            break;
          }
          read();
          slots[node][port] = d;
          break;
      }
    }

    if (!stuck.empty()) {
      int ch = stuck.front();
      int node = channels_[ch].reader_node;
      std::string who = node >= 0 && nodes_[node].kind == Node::Cell
                            ? "cell '" + nodes_[node].name + "' input " +
                                  std::to_string(channels_[ch].reader_port + 1)
                            : "channel " + std::to_string(ch);
      fail(Err::SlotCollision,
           who + " received a second datum at slice " + std::to_string(slice), slice);
    }

    for (size_t ni = 0; ni < nodes_.size(); ++ni) {
      Node& n = nodes_[ni];
      if (n.kind != Node::Cell) continue;
      bool full = true;
      for (Value v : slots[ni]) full &= v != kTick;
      if (full) {
        out_tuple[ni] = n.def->apply(slots[ni], env_.domain.size());
        std::fill(slots[ni].begin(), slots[ni].end(), kTick);
        emitting[ni] = 1;
        result.events.push_back({slice, EventKind::Commit,
                                 static_cast<int>(channels_.size() + ni),
                                 out_tuple[ni].empty() ? kTick : out_tuple[ni][0]});
      } else {
        emitting[ni] = 0;
      }
    }
  }
  return result;
}

std::vector<Stream> run_process(const TermPtr& t, const CellEnv& env,
                                const std::vector<Stream>& inputs, int horizon) {
  return ProcessNet(t, env).run(inputs, horizon).outputs;
}

namespace {

std::string show_streams_brief(const std::vector<Stream>& streams) {
  std::string s = "[";
  for (size_t i = 0; i < streams.size(); ++i) {
    if (i) s += "; ";
    for (size_t k = 0; k < streams[i].size(); ++k) {
      if (k) s += ' ';
      s += streams[i][k] == kTick ? std::string("~") : std::to_string(streams[i][k]);
    }
  }
  return s + "]";
}

}  // namespace

WireIdentityReport check_wire_identity(const TermPtr& t, const CellEnv& env, int trials,
                                       int horizon, std::uint64_t seed) {
  Sort s = sort_of(t, &env);
  TermPtr pre = seq(id(s.inputs), t);
  TermPtr post = seq(t, id(s.outputs));
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Stream> inputs(s.inputs);
    for (Stream& x : inputs) {
      x.assign(horizon, kTick);
      for (Value& v : x)
        if (rng.chance(0.5)) v = rng.below(env.domain.size());
    }
    std::vector<std::vector<Stream>> outs;
    std::vector<std::string> errors;
    for (const TermPtr& candidate : {pre, t, post}) {
      try {
        outs.push_back(run_process(candidate, env, inputs, horizon));
        errors.emplace_back();
      } catch (const Error& e) {
        outs.emplace_back();
        errors.emplace_back(std::string(err_name(e.code)) + "@" + std::to_string(e.where));
      }
    }
    if (outs[0] != outs[1] || outs[1] != outs[2] || errors[0] != errors[1] ||
        errors[1] != errors[2]) {
      WireIdentityReport rep;
      rep.ok = false;
      rep.detail = "trial " + std::to_string(trial) + ": I;f " +
                   (errors[0].empty() ? show_streams_brief(outs[0]) : errors[0]) + ", f " +
                   (errors[1].empty() ? show_streams_brief(outs[1]) : errors[1]) + ", f;I " +
                   (errors[2].empty() ? show_streams_brief(outs[2]) : errors[2]);
      return rep;
    }
  }
  return {};
}

}  // namespace bna
