#include "bna/streamsem.hpp"

#include <algorithm>

#include "bna/core.hpp"
#include "bna/error.hpp"
#include "bna/rng.hpp"

namespace bna {

namespace {

using Pairs = std::vector<std::pair<int, int>>;

Pairs dc_of(const TermPtr& t, const CellEnv* env) {
  switch (t->kind) {
    case TermKind::Id: {
      Pairs r;
      for (int i = 0; i < t->a; ++i) r.emplace_back(i, i);
      return r;
    }
    case TermKind::Transp: {
      Pairs r;
      for (int i = 0; i < t->a; ++i) r.emplace_back(i, t->b + i);
      for (int j = 0; j < t->b; ++j) r.emplace_back(t->a + j, j);
      return r;
    }
    case TermKind::Copy: {
      Pairs r;
      for (int i = 0; i < t->a; ++i) {
        r.emplace_back(i, i);
        r.emplace_back(i, t->a + i);
      }
      return r;
    }
    case TermKind::Sink:
    case TermKind::EqTest:
    case TermKind::DummySource:
    case TermKind::Cell:
      return {};
    case TermKind::Par: {
      Sort l = sort_of(t->left, env);
      Pairs r = dc_of(t->left, env);
      for (auto [i, j] : dc_of(t->right, env)) r.emplace_back(l.inputs + i, l.outputs + j);
      return r;
    }
    case TermKind::Seq: {
      Pairs a = dc_of(t->left, env), b = dc_of(t->right, env), r;
      for (auto [i, j] : a)
        for (auto [j2, k] : b)
          if (j == j2) r.emplace_back(i, k);
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      return r;
    }
    case TermKind::Feed: {
      Sort body = sort_of(t->left, env);
      int m = body.inputs - t->a, n = body.outputs - t->a;
      Pairs inner = dc_of(t->left, env), r;
      for (int i = 0; i < m; ++i) {
        std::vector<char> visited(t->a, 0);
        std::vector<int> stack{i};
        while (!stack.empty()) {
          int u = stack.back();
          stack.pop_back();
          for (auto [u2, v] : inner) {
            if (u2 != u) continue;
            if (v < n) {
              r.emplace_back(i, v);
            } else if (!visited[v - n]) {
              visited[v - n] = 1;
              stack.push_back(m + (v - n));
            }
          }
        }
      }
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      return r;
    }
  }
  fail(Err::BadShape, "malformed term");
}

}  // namespace

std::vector<std::pair<int, int>> direct_connections(const TermPtr& t, const CellEnv* env) {
  sort_of(t, env);
  Pairs r = dc_of(t, env);
  std::sort(r.begin(), r.end());
  return r;
}

// Composition scaffolding: every connection point gets a net; pure wires let
// ports share nets and splicing unions them. A finished net carries exactly
// one driver and one reader, or neither (a feedback loop through wires only,
// which has no observable behavior and is dropped).
struct Machine::Build {
  std::vector<int> uf;

  struct BNode {
    Node::Kind kind;
    std::string name;
    const CellDef* def;
    std::vector<int> in_nets, out_nets;
  };
  std::vector<BNode> nodes;

  struct Frag {
    std::vector<int> ins, outs;  // net ids
  };

  int fresh() {
    uf.push_back(static_cast<int>(uf.size()));
    return uf.back();
  }

  int find(int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  }

  void unite(int a, int b) { uf[find(a)] = find(b); }

  std::vector<int> fresh_nets(int n) {
    std::vector<int> nets(n);
    for (int& x : nets) x = fresh();
    return nets;
  }

  // Block extension of a unary constant: input block j holds port j of every
  // node in the row, and dually for outputs.
  Frag unary_row(Node::Kind kind, int count, int ins_per, int outs_per) {
    Frag f;
    f.ins.resize(count * ins_per);
    f.outs.resize(count * outs_per);
    for (int i = 0; i < count; ++i) {
      BNode node{kind, {}, nullptr, fresh_nets(ins_per), fresh_nets(outs_per)};
      for (int j = 0; j < ins_per; ++j) f.ins[j * count + i] = node.in_nets[j];
      for (int j = 0; j < outs_per; ++j) f.outs[j * count + i] = node.out_nets[j];
      nodes.push_back(std::move(node));
    }
    return f;
  }

  Frag go(const TermPtr& t, const CellEnv& env) {
    switch (t->kind) {
      case TermKind::Id: {
        Frag f;
        f.ins = fresh_nets(t->a);
        f.outs = f.ins;
        return f;
      }
      case TermKind::Transp: {
        Frag f;
        f.ins = fresh_nets(t->a + t->b);
        f.outs.resize(t->a + t->b);
        for (int i = 0; i < t->a; ++i) f.outs[t->b + i] = f.ins[i];
        for (int j = 0; j < t->b; ++j) f.outs[j] = f.ins[t->a + j];
        return f;
      }
      case TermKind::Copy:
        return unary_row(Node::CopyNode, t->a, 1, 2);
      case TermKind::Sink:
        return unary_row(Node::SinkNode, t->a, 1, 0);
      case TermKind::EqTest:
        return unary_row(Node::EqNode, t->a, 2, 1);
      case TermKind::DummySource:
        return unary_row(Node::SourceNode, t->a, 0, 1);
      case TermKind::Cell: {
        const CellDef* def = env.find(t->cell);
        if (!def) fail(Err::UnboundCell, "cell '" + t->cell + "' is not in the environment");
        BNode node{Node::CellNode, t->cell, def, fresh_nets(def->sort.inputs),
                   fresh_nets(def->sort.outputs)};
        Frag f{node.in_nets, node.out_nets};
        nodes.push_back(std::move(node));
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
        for (size_t i = 0; i < a.outs.size(); ++i) unite(a.outs[i], b.ins[i]);
        return {a.ins, b.outs};
      }
      case TermKind::Feed: {
        Frag a = go(t->left, env);
        int m = static_cast<int>(a.ins.size()) - t->a;
        int n = static_cast<int>(a.outs.size()) - t->a;
        for (int j = 0; j < t->a; ++j) unite(a.outs[n + j], a.ins[m + j]);
        a.ins.resize(m);
        a.outs.resize(n);
        return a;
      }
    }
    fail(Err::BadShape, "malformed term");
  }
};

Machine::Machine(const TermPtr& t, const CellEnv& env) : env_(env) {
  sort_ = sort_of(t, &env);
  dc_ = direct_connections(t, &env);

  Build build;
  Build::Frag frag = build.go(t, env);

  // Compact net ids; nets touched by no port (wire-only loops) never get one.
  std::vector<int> net_id(build.uf.size(), -1);
  int nets = 0;
  auto net_of = [&](int x) {
    int root = build.find(x);
    if (net_id[root] < 0) net_id[root] = nets++;
    return net_id[root];
  };

  std::vector<int> net_driver(build.uf.size(), -1), net_reader(build.uf.size(), -1);
  auto set_driver = [&](int x, int index) {
    int net = net_of(x);
    if (net_driver[net] != -1) fail(Err::BadShape, "net with two drivers");
    net_driver[net] = index;
  };
  auto set_reader = [&](int x, int index) {
    int net = net_of(x);
    if (net_reader[net] != -1) fail(Err::BadShape, "net with two readers");
    net_reader[net] = index;
  };

  // producer index: m external inputs, then node outputs in node order;
  // consumer index: n external outputs, then node inputs in node order
  int p = 0, c = 0;
  for (int i = 0; i < sort_.inputs; ++i) set_driver(frag.ins[i], p++);
  for (int j = 0; j < sort_.outputs; ++j) set_reader(frag.outs[j], c++);
  nodes_.reserve(build.nodes.size());
  for (const Build::BNode& bn : build.nodes) {
    Node node;
    node.kind = bn.kind;
    node.name = bn.name;
    node.def = bn.def;
    node.first_in = c;
    node.first_out = p;
    node.ins = static_cast<int>(bn.in_nets.size());
    node.outs = static_cast<int>(bn.out_nets.size());
    for (int x : bn.in_nets) set_reader(x, c++);
    for (int x : bn.out_nets) set_driver(x, p++);
    nodes_.push_back(std::move(node));
  }

  source_of_.assign(c, -1);
  for (int net = 0; net < nets; ++net) {
    int d = net_driver[net], r = net_reader[net];
    if (d == -1 || r == -1) fail(Err::BadShape, "dangling net");
    source_of_[r] = d;
  }
}

namespace {
constexpr Value kUnknown = -2;
}

std::vector<Stream> Machine::run(const std::vector<Stream>& inputs, int horizon) {
  if (static_cast<int>(inputs.size()) != sort_.inputs)
    fail(Err::BadShape, "expected " + std::to_string(sort_.inputs) + " input streams, got " +
                            std::to_string(inputs.size()));
  // reset state
  slots_.clear();
  output_.clear();
  emitting_.clear();
  for (const Node& n : nodes_) {
    slots_.push_back(std::vector<Value>(n.ins, kTick));
    output_.push_back(n.kind == Node::CellNode ? n.def->init : std::vector<Value>());
    emitting_.push_back(1);
  }

  int producers = sort_.inputs, consumers = sort_.outputs;
  for (const Node& n : nodes_) {
    producers += n.outs;
    consumers += n.ins;
  }

  std::vector<Stream> out(sort_.outputs);
  std::vector<Value> value(producers);
  for (int tick = 0; tick < horizon; ++tick) {
    // phase 1: known producers
    for (int i = 0; i < sort_.inputs; ++i) value[i] = stream_at(inputs[i], tick);
    for (size_t ni = 0; ni < nodes_.size(); ++ni) {
      const Node& n = nodes_[ni];
      for (int r = 0; r < n.outs; ++r) {
        switch (n.kind) {
          case Node::CellNode:
            value[n.first_out + r] = emitting_[ni] ? output_[ni][r] : kTick;
            break;
          case Node::SourceNode:
            value[n.first_out + r] = kTick;
            break;
          default:
            value[n.first_out + r] = kUnknown;
        }
      }
    }

    auto at = [&](int consumer) {
      int d = source_of_[consumer];
      return d < 0 ? kTick : value[d];
    };

    // phase 2: propagate through the pass-through constants to a fixpoint
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t ni = 0; ni < nodes_.size(); ++ni) {
        const Node& n = nodes_[ni];
        if (n.kind == Node::CopyNode && value[n.first_out] == kUnknown) {
          Value v = at(n.first_in);
          if (v != kUnknown) {
            value[n.first_out] = v;
            value[n.first_out + 1] = v;
            changed = true;
          }
        } else if (n.kind == Node::EqNode && value[n.first_out] == kUnknown) {
          Value a = at(n.first_in), b = at(n.first_in + 1);
          if (a != kUnknown && b != kUnknown) {
            value[n.first_out] = eqt(a, b);
            changed = true;
          }
        }
      }
    }
    // phase 3: anything still undetermined sits on a cell-free cycle: tick
    for (Value& v : value)
      if (v == kUnknown) v = kTick;

    // phase 4: external outputs
    for (int j = 0; j < sort_.outputs; ++j) out[j].push_back(at(j));

    // phase 5: cells consume and possibly restart
    for (size_t ni = 0; ni < nodes_.size(); ++ni) {
      const Node& n = nodes_[ni];
      if (n.kind != Node::CellNode) continue;
      for (int r = 0; r < n.ins; ++r) {
        Value v = at(n.first_in + r);
        if (v == kTick) continue;
        if (slots_[ni][r] != kTick)
          fail(Err::SlotCollision,
               "cell '" + n.name + "' input " + std::to_string(r + 1) +
                   " received a second datum at tick " + std::to_string(tick),
               tick);
        slots_[ni][r] = v;
      }
      bool full = true;
      for (int r = 0; r < n.ins; ++r) full &= slots_[ni][r] != kTick;
      if (full) {
        output_[ni] = n.def->apply(slots_[ni], env_.domain.size());
        std::fill(slots_[ni].begin(), slots_[ni].end(), kTick);
        emitting_[ni] = 1;
      } else {
        emitting_[ni] = 0;
      }
    }
  }
  return out;
}

Machine compile(const TermPtr& t, const CellEnv& env) { return Machine(t, env); }

std::vector<Stream> eval_prefix(const TermPtr& t, const CellEnv& env,
                                const std::vector<Stream>& inputs, int horizon) {
  return Machine(t, env).run(inputs, horizon);
}

ProperReport is_proper(const TermPtr& t, const CellEnv& env, int trials, int horizon,
                       std::uint64_t seed) {
  Sort s = sort_of(t, &env);
  Machine machine(t, env);
  Rng rng(seed);
  auto random_streams = [&](int from) {
    std::vector<Stream> xs(s.inputs);
    for (Stream& x : xs) {
      x.assign(horizon, kTick);
      for (int k = from; k < horizon; ++k)
        if (rng.chance(0.6)) x[k] = rng.below(env.domain.size());
    }
    return xs;
  };

  for (int trial = 0; trial < trials; ++trial) {
    int k = horizon > 0 ? rng.below(horizon) : 0;
    std::vector<Stream> x = random_streams(0);
    std::vector<Stream> x2 = random_streams(0);
    for (int i = 0; i < s.inputs; ++i)
      for (int pos = 0; pos < k; ++pos) x2[i][pos] = x[i][pos];
    std::vector<Stream> y, y2;
    try {
      y = machine.run(x, horizon);
      y2 = machine.run(x2, horizon);
    } catch (const Error&) {
      continue;  // collisions say nothing about properness
    }
    for (int j = 0; j < s.outputs; ++j)
      for (int pos = 0; pos <= k && pos < horizon; ++pos)
        if (stream_at(y[j], pos) != stream_at(y2[j], pos)) {
          ProperReport rep;
          rep.proper = false;
          rep.witness = "inputs agreeing on the first " + std::to_string(k) +
                        " ticks give different outputs at port " + std::to_string(j + 1) +
                        ", tick " + std::to_string(pos);
          return rep;
        }
  }
  return {};
}

}  // namespace bna
