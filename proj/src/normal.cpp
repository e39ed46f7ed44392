#include "bna/normal.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "bna/core.hpp"
#include "bna/error.hpp"

namespace bna {

int NormalForm::feed_width() const {
  int w = 0;
  for (const NfCell& c : cells) w += c.sort.inputs;
  return w;
}

int NormalForm::port_count() const { return static_cast<int>(wiring.size()); }

int NormalForm::named_cell_count() const {
  int n = 0;
  for (const NfCell& c : cells)
    if (!c.name.empty() && c.name[0] != '#') ++n;
  return n;
}

namespace {

int producer_count(const NormalForm& nf) {
  int p = nf.external.inputs;
  for (const NfCell& c : nf.cells) p += c.sort.outputs;
  return p;
}

int consumer_count(const NormalForm& nf) {
  int p = nf.external.outputs;
  for (const NfCell& c : nf.cells) p += c.sort.inputs;
  return p;
}

NormalForm nf_wires(int n, const std::vector<int>& to) {
  NormalForm nf;
  nf.external = {n, n};
  nf.wiring = to;
  return nf;
}

NormalForm nf_atom(std::string name, Sort sort) {
  NormalForm nf;
  nf.external = sort;
  nf.cells.push_back({std::move(name), sort});
  nf.wiring.resize(sort.inputs + sort.outputs);
  // external input i -> cell input i; cell output r -> external output r
  for (int i = 0; i < sort.inputs; ++i) nf.wiring[i] = sort.outputs + i;
  for (int r = 0; r < sort.outputs; ++r) nf.wiring[sort.inputs + r] = r;
  return nf;
}

NormalForm nf_par(const NormalForm& a, const NormalForm& b) {
  NormalForm nf;
  nf.external = {a.external.inputs + b.external.inputs,
                 a.external.outputs + b.external.outputs};
  nf.cells = a.cells;
  nf.cells.insert(nf.cells.end(), b.cells.begin(), b.cells.end());

  int a_prod_cells = producer_count(a) - a.external.inputs;
  int a_cons_cells = consumer_count(a) - a.external.outputs;

  auto map_prod_a = [&](int p) {
    return p < a.external.inputs ? p : b.external.inputs + p;
  };
  auto map_prod_b = [&](int p) {
    return p < b.external.inputs ? a.external.inputs + p
                                 : a.external.inputs + a_prod_cells + p;
  };
  auto map_cons_a = [&](int c) {
    return c < a.external.outputs ? c : b.external.outputs + c;
  };
  auto map_cons_b = [&](int c) {
    return c < b.external.outputs ? a.external.outputs + c
                                  : a.external.outputs + a_cons_cells + c;
  };

  nf.wiring.assign(producer_count(nf), -1);
  for (int p = 0; p < producer_count(a); ++p) nf.wiring[map_prod_a(p)] = map_cons_a(a.wiring[p]);
  for (int p = 0; p < producer_count(b); ++p) nf.wiring[map_prod_b(p)] = map_cons_b(b.wiring[p]);
  return nf;
}

NormalForm nf_seq(const NormalForm& a, const NormalForm& b) {
  NormalForm nf;
  int mid = a.external.outputs;
  nf.external = {a.external.inputs, b.external.outputs};
  nf.cells = a.cells;
  nf.cells.insert(nf.cells.end(), b.cells.begin(), b.cells.end());

  int a_cons_cells = consumer_count(a) - a.external.outputs;

  // result consumer space: b's externals, then a's cell inputs, then b's
  auto map_cons_a = [&](int c) { return c - a.external.outputs + b.external.outputs; };
  auto map_cons_b = [&](int c) {
    return c < b.external.outputs ? c : a_cons_cells + c;
  };
  // follow one step: a-side target; through the interface into b when it
  // lands on one of a's external outputs
  auto chase_a = [&](int target) {
    return target < mid ? map_cons_b(b.wiring[target]) : map_cons_a(target);
  };

  nf.wiring.assign(producer_count(nf), -1);
  int p_out = 0;
  for (int p = 0; p < producer_count(a); ++p, ++p_out) nf.wiring[p_out] = chase_a(a.wiring[p]);
  for (int p = b.external.inputs; p < producer_count(b); ++p, ++p_out)
    nf.wiring[p_out] = map_cons_b(b.wiring[p]);
  return nf;
}

NormalForm nf_feed(const NormalForm& a, int width) {
  NormalForm nf;
  int m = a.external.inputs - width, n = a.external.outputs - width;
  nf.external = {m, n};
  nf.cells = a.cells;

  auto map_cons = [&](int c) { return c < n ? c : c - width; };

  nf.wiring.assign(producer_count(a) - width, -1);
  int p_out = 0;
  for (int p = 0; p < producer_count(a); ++p) {
    if (p >= m && p < a.external.inputs) continue;  // looped external input
    int target = a.wiring[p];
    // walk through the loop: output n+j continues from input m+j
    while (target >= n && target < a.external.outputs) target = a.wiring[m + (target - n)];
    nf.wiring[p_out++] = map_cons(target);
  }
  return nf;
}

NormalForm build(const TermPtr& t, const CellEnv* env) {
  switch (t->kind) {
    case TermKind::Id: {
      std::vector<int> to(t->a);
      std::iota(to.begin(), to.end(), 0);
      return nf_wires(t->a, to);
    }
    case TermKind::Transp: {
      // only reachable as X(1,1) after expansion, but handle any block
      std::vector<int> to(t->a + t->b);
      for (int i = 0; i < t->a; ++i) to[i] = t->b + i;
      for (int j = 0; j < t->b; ++j) to[t->a + j] = j;
      return nf_wires(t->a + t->b, to);
    }
    case TermKind::Copy:
      return nf_atom(kCopyAtom, {1, 2});
    case TermKind::Sink:
      return nf_atom(kSinkAtom, {1, 0});
    case TermKind::EqTest:
      return nf_atom(kEqAtom, {2, 1});
    case TermKind::DummySource:
      return nf_atom(kSourceAtom, {0, 1});
    case TermKind::Cell:
      return nf_atom(t->cell, sort_of(t, env));
    case TermKind::Par:
      return nf_par(build(t->left, env), build(t->right, env));
    case TermKind::Seq:
      return nf_seq(build(t->left, env), build(t->right, env));
    case TermKind::Feed:
      return nf_feed(build(t->left, env), t->a);
  }
  fail(Err::BadShape, "malformed term");
}

}  // namespace

NormalForm to_normal_form(const TermPtr& t, const CellEnv* env) {
  sort_of(t, env);
  NormalForm nf = build(expand_blocks(t), env);
  if (static_cast<int>(nf.wiring.size()) != producer_count(nf) ||
      producer_count(nf) != consumer_count(nf))
    fail(Err::BadShape, "normal form lost ports");
  return nf;
}

namespace {

// Cells interchangeable under isomorphism share (name, sort).
std::map<std::pair<std::string, int>, std::vector<int>> group_cells(const NormalForm& nf) {
  std::map<std::pair<std::string, int>, std::vector<int>> groups;
  for (size_t i = 0; i < nf.cells.size(); ++i) {
    const NfCell& c = nf.cells[i];
    groups[{c.name, c.sort.inputs * 10000 + c.sort.outputs}].push_back(static_cast<int>(i));
  }
  return groups;
}

struct IsoSearch {
  const NormalForm& a;
  const NormalForm& b;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
  std::vector<int> a_prod_base, a_cons_base;  // per cell, port bases
  std::vector<int> b_prod_base, b_cons_base;
  std::vector<int> a_inv;     // a consumer -> a producer
  std::vector<int> cell_map;  // a cell index -> b cell index (-1 unset)

  IsoSearch(const NormalForm& a, const NormalForm& b) : a(a), b(b) {
    cell_map.assign(a.cells.size(), -1);
    int p = a.external.inputs, c = a.external.outputs;
    for (const NfCell& cell : a.cells) {
      a_prod_base.push_back(p);
      a_cons_base.push_back(c);
      p += cell.sort.outputs;
      c += cell.sort.inputs;
    }
    p = b.external.inputs;
    c = b.external.outputs;
    for (const NfCell& cell : b.cells) {
      b_prod_base.push_back(p);
      b_cons_base.push_back(c);
      p += cell.sort.outputs;
      c += cell.sort.inputs;
    }
    a_inv.assign(a.wiring.size(), -1);
    for (size_t i = 0; i < a.wiring.size(); ++i) a_inv[a.wiring[i]] = static_cast<int>(i);
  }

  // -2 when the owner cell is not mapped yet
  int map_producer(int p) const {
    if (p < a.external.inputs) return p;
    for (int i = static_cast<int>(a.cells.size()) - 1; i >= 0; --i)
      if (p >= a_prod_base[i]) {
        if (cell_map[i] < 0) return -2;
        return b_prod_base[cell_map[i]] + (p - a_prod_base[i]);
      }
    return -2;
  }

  int map_consumer(int c) const {
    if (c < a.external.outputs) return c;
    for (int i = static_cast<int>(a.cells.size()) - 1; i >= 0; --i)
      if (c >= a_cons_base[i]) {
        if (cell_map[i] < 0) return -2;
        return b_cons_base[cell_map[i]] + (c - a_cons_base[i]);
      }
    return -2;
  }

  bool consistent() const {
    for (int p = 0; p < static_cast<int>(a.wiring.size()); ++p) {
      int bp = map_producer(p);
      if (bp == -2) continue;
      int bc = map_consumer(a.wiring[p]);
      if (bc == -2) continue;
      if (b.wiring[bp] != bc) return false;
    }
    return true;
  }

  // check only the wires touching the newly mapped cell
  bool partial_ok(int cell) const {
    const Sort& s = a.cells[cell].sort;
    for (int r = 0; r < s.outputs; ++r) {
      int p = a_prod_base[cell] + r;
      int bp = map_producer(p);
      int bc = map_consumer(a.wiring[p]);
      if (bc != -2 && b.wiring[bp] != bc) return false;
    }
    for (int r = 0; r < s.inputs; ++r) {
      int c = a_cons_base[cell] + r;
      int bc = map_consumer(c);
      int bp = map_producer(a_inv[c]);
      if (bp != -2 && b.wiring[bp] != bc) return false;
    }
    return true;
  }

  bool run(size_t g) {
    if (g == groups.size()) return consistent();
    std::vector<char> used(groups[g].second.size(), 0);
    return step(g, 0, used);
  }

  bool step(size_t g, size_t k, std::vector<char>& used) {
    auto& [as, bs] = groups[g];
    if (k == as.size()) return run(g + 1);
    for (size_t j = 0; j < bs.size(); ++j) {
      if (used[j]) continue;
      cell_map[as[k]] = bs[j];
      used[j] = 1;
      if (partial_ok(as[k]) && step(g, k + 1, used)) return true;
      used[j] = 0;
      cell_map[as[k]] = -1;
    }
    return false;
  }
};

}  // namespace

bool iso_equal(const NormalForm& a, const NormalForm& b) {
  if (!(a.external == b.external)) return false;
  auto ga = group_cells(a), gb = group_cells(b);
  if (ga.size() != gb.size()) return false;
  IsoSearch search(a, b);
  for (auto& [key, as] : ga) {
    auto it = gb.find(key);
    if (it == gb.end() || it->second.size() != as.size()) return false;
    search.groups.emplace_back(as, it->second);
  }
  if (search.groups.empty()) return a.wiring == b.wiring;
  return search.run(0);
}

namespace {

// Realize a position permutation as a wiring term: identity and block
// transpositions directly, otherwise layers of adjacent swaps.
TermPtr perm_to_term(const std::vector<int>& target) {
  int n = static_cast<int>(target.size());
  bool identity = true;
  for (int i = 0; i < n; ++i) identity &= target[i] == i;
  if (identity) return id(n);
  for (int p = 1; p < n; ++p) {
    int q = n - p;
    bool block = true;
    for (int i = 0; i < p && block; ++i) block &= target[i] == q + i;
    for (int j = 0; j < q && block; ++j) block &= target[p + j] == j;
    if (block) return transp(p, q);
  }
  // arrangement[pos] = wire currently at pos; sort until wire i sits at target[i]
  std::vector<int> arrangement(n), want(n);
  std::iota(arrangement.begin(), arrangement.end(), 0);
  for (int i = 0; i < n; ++i) want[target[i]] = i;
  TermPtr out;
  for (int pos = 0; pos < n; ++pos) {
    int cur = pos;
    while (arrangement[cur] != want[pos]) ++cur;
    for (; cur > pos; --cur) {
      std::swap(arrangement[cur], arrangement[cur - 1]);
      TermPtr layer = par(par(id(cur - 1), transp(1, 1)), id(n - cur - 1));
      out = out ? seq(out, layer) : layer;
    }
  }
  return out ? out : id(n);
}

TermPtr atom_to_term(const NfCell& c) {
  if (c.name == kCopyAtom) return copy(1);
  if (c.name == kSinkAtom) return sink(1);
  if (c.name == kEqAtom) return eq_test(1);
  if (c.name == kSourceAtom) return dummy_source(1);
  return cell_ref(c.name);
}

}  // namespace

TermPtr nf_to_term(const NormalForm& nf) {
  TermPtr front = id(nf.external.inputs);
  for (const NfCell& c : nf.cells) front = par(front, atom_to_term(c));
  return feed(seq(front, perm_to_term(nf.wiring)), nf.feed_width());
}

}  // namespace bna
