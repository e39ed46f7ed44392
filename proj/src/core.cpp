#include "bna/core.hpp"

#include <vector>

namespace bna {

Sort sort_of(const TermPtr& t, const CellEnv* env) {
  switch (t->kind) {
    case TermKind::Id:
      return {t->a, t->a};
    case TermKind::Transp:
      return {t->a + t->b, t->a + t->b};
    case TermKind::Copy:
      return {t->a, 2 * t->a};
    case TermKind::Sink:
      return {t->a, 0};
    case TermKind::EqTest:
      return {2 * t->a, t->a};
    case TermKind::DummySource:
      return {0, t->a};
    case TermKind::Cell: {
      const CellDef* def = env ? env->find(t->cell) : nullptr;
      if (!def) fail(Err::UnboundCell, "cell '" + t->cell + "' is not in the environment");
      return def->sort;
    }
    case TermKind::Par: {
      Sort l = sort_of(t->left, env), r = sort_of(t->right, env);
      return {l.inputs + r.inputs, l.outputs + r.outputs};
    }
    case TermKind::Seq: {
      Sort l = sort_of(t->left, env), r = sort_of(t->right, env);
      if (l.outputs != r.inputs)
        fail(Err::Sort, "seq mismatch: left is " + to_string(l) + ", right is " + to_string(r));
      return {l.inputs, r.outputs};
    }
    case TermKind::Feed: {
      Sort b = sort_of(t->left, env);
      if (t->a > b.inputs || t->a > b.outputs)
        fail(Err::Sort, "feedback width " + std::to_string(t->a) + " exceeds body sort " +
                            to_string(b));
      return {b.inputs - t->a, b.outputs - t->a};
    }
  }
  fail(Err::BadShape, "malformed term");
}

namespace {

// X(m,1) for m >= 2 via the first-argument split; X(m,n) for n >= 2 via the
// second-argument split. Terminates at X(1,1) and identities.
TermPtr expand_transp(int m, int n);

TermPtr expand_id(int n) {
  if (n <= 1) return id(n);
  return par(expand_id(n - 1), id(1));
}

TermPtr expand_transp(int m, int n) {
  if (m == 0) return expand_id(n);
  if (n == 0) return expand_id(m);
  if (m == 1 && n == 1) return transp(1, 1);
  if (n >= 2)
    return seq(par(expand_transp(m, n - 1), id(1)), par(expand_id(n - 1), expand_transp(m, 1)));
  return seq(par(id(1), expand_transp(m - 1, 1)), par(transp(1, 1), expand_id(m - 1)));
}

TermPtr expand_copy(int m) {
  if (m == 0) return id(0);
  if (m == 1) return copy(1);
  return seq(par(expand_copy(m - 1), copy(1)),
             par(par(expand_id(m - 1), expand_transp(m - 1, 1)), id(1)));
}

TermPtr expand_eq(int m) {
  if (m == 0) return id(0);
  if (m == 1) return eq_test(1);
  return seq(par(par(expand_id(m - 1), expand_transp(1, m - 1)), id(1)),
             par(expand_eq(m - 1), eq_test(1)));
}

TermPtr expand_row(TermKind kind, int m) {
  if (m == 0) return id(0);
  TermPtr unit = kind == TermKind::Sink ? sink(1) : dummy_source(1);
  TermPtr t = unit;
  for (int i = 1; i < m; ++i) t = par(t, unit);
  return t;
}

}  // namespace

TermPtr expand_blocks(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Id:
      return expand_id(t->a);
    case TermKind::Transp:
      return expand_transp(t->a, t->b);
    case TermKind::Copy:
      return expand_copy(t->a);
    case TermKind::EqTest:
      return expand_eq(t->a);
    case TermKind::Sink:
    case TermKind::DummySource:
      return expand_row(t->kind, t->a);
    case TermKind::Cell:
      return t;
    case TermKind::Par: {
      TermPtr l = expand_blocks(t->left), r = expand_blocks(t->right);
      return l == t->left && r == t->right ? t : par(l, r);
    }
    case TermKind::Seq: {
      TermPtr l = expand_blocks(t->left), r = expand_blocks(t->right);
      return l == t->left && r == t->right ? t : seq(l, r);
    }
    case TermKind::Feed: {
      TermPtr body = expand_blocks(t->left);
      if (t->a == 0) return body;
      TermPtr out = body;
      for (int i = 0; i < t->a; ++i) out = feed(out, 1);
      return out;
    }
  }
  fail(Err::BadShape, "malformed term");
}

namespace {

TermPtr cells_row(const std::string& cell, int count) {
  TermPtr row = cell_ref(cell);
  for (int i = 1; i < count; ++i) row = par(row, cell_ref(cell));
  return row;
}

// I(left) ++ cell-row(count) ++ I(right)
TermPtr grid_layer(const std::string& cell, int left, int count, int right) {
  return par(par(id(left), cells_row(cell, count)), id(right));
}

}  // namespace

TermPtr build_regular(int k, int l, const std::string& cell, const CellEnv* env) {
  if (!(0 < k && k < l))
    fail(Err::BadShape, "regular grid needs 0 < k < l, got k=" + std::to_string(k) +
                            " l=" + std::to_string(l));
  if (env) {
    Sort s = sort_of(cell_ref(cell), env);
    if (!(s == Sort{2, 2}))
      fail(Err::BadShape, "regular grid cell must have sort 2 -> 2, '" + cell + "' has " +
                              to_string(s));
  }
  std::vector<TermPtr> layers;
  for (int i = 1; i <= k - 1; ++i) layers.push_back(grid_layer(cell, k - i, i, l - i));
  for (int i = 0; i <= l - k; ++i) layers.push_back(grid_layer(cell, i, k, l - k - i));
  for (int i = k - 1; i >= 1; --i) layers.push_back(grid_layer(cell, l - i, i, k - i));
  layers.push_back(transp(l, k));
  TermPtr body = layers.front();
  for (size_t i = 1; i < layers.size(); ++i) body = seq(body, layers[i]);
  return par(feed(body, l), dummy_source(l - k));
}

TermPtr left_feed(const TermPtr& t, int p, const CellEnv* env) {
  Sort s = sort_of(t, env);
  if (p < 0 || p > s.inputs || p > s.outputs)
    fail(Err::Sort,
         "left feedback width " + std::to_string(p) + " exceeds body sort " + to_string(s));
  int m = s.inputs - p, n = s.outputs - p;
  return feed(seq(seq(transp(m, p), t), transp(p, n)), p);
}

TermPtr star(const TermPtr& t, const CellEnv* env) {
  Sort s = sort_of(t, env);
  if (!(s == Sort{1, 1})) fail(Err::Sort, "star needs sort 1 -> 1, got " + to_string(s));
  return seq(seq(copy(1), par(id(1), feed(seq(seq(eq_test(1), t), copy(1)), 1))), eq_test(1));
}

TermPtr dagger(const TermPtr& t, const CellEnv* env) {
  Sort s = sort_of(t, env);
  if (s.outputs < s.inputs)
    fail(Err::Sort, "dagger needs sort m -> n+m, got " + to_string(s));
  return feed(seq(eq_test(s.inputs), t), s.inputs);
}

TermPtr mu(const TermPtr& t, const CellEnv* env) {
  Sort s = sort_of(t, env);
  if (s.inputs < s.outputs)
    fail(Err::Sort, "mu needs sort n+m -> m, got " + to_string(s));
  return feed(seq(t, copy(s.outputs)), s.outputs);
}

TermPtr binary_star(const TermPtr& f, const TermPtr& g, const CellEnv* env) {
  Sort sf = sort_of(f, env), sg = sort_of(g, env);
  if (!(sf == Sort{1, 1}) || !(sg == Sort{1, 1}))
    fail(Err::Sort, "binary star needs two 1 -> 1 terms, got " + to_string(sf) + " and " +
                        to_string(sg));
  TermPtr loop = left_feed(seq(seq(eq_test(1), f), copy(1)), 1, env);
  return seq(seq(seq(copy(1), par(id(1), loop)), eq_test(1)), g);
}

TermPtr ramify(int k) {
  if (k < 0) fail(Err::BadShape, "ramify needs a natural fan-out");
  if (k == 0) return sink(1);
  if (k == 2) return copy(1);
  return seq(copy(1), par(ramify(k - 1), id(1)));
}

TermPtr identify(int k) {
  if (k < 0) fail(Err::BadShape, "identify needs a natural fan-in");
  if (k == 0) return dummy_source(1);
  if (k == 2) return eq_test(1);
  return seq(par(identify(k - 1), id(1)), eq_test(1));
}

}  // namespace bna
