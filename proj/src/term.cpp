#include "bna/term.hpp"

#include <utility>

namespace bna {

std::string to_string(const Sort& s) {
  return std::to_string(s.inputs) + " -> " + std::to_string(s.outputs);
}

namespace {

TermPtr make(TermKind kind, TermPtr l, TermPtr r, int a, int b, std::string cell) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->left = std::move(l);
  t->right = std::move(r);
  t->a = a;
  t->b = b;
  t->cell = std::move(cell);
  return t;
}

void need_nat(int n, const char* what) {
  if (n < 0) fail(Err::BadShape, std::string(what) + " requires a natural width");
}

}  // namespace

TermPtr par(TermPtr l, TermPtr r) {
  if (!l || !r) fail(Err::BadShape, "par of a null term");
  return make(TermKind::Par, std::move(l), std::move(r), 0, 0, {});
}

TermPtr seq(TermPtr l, TermPtr r) {
  if (!l || !r) fail(Err::BadShape, "seq of a null term");
  return make(TermKind::Seq, std::move(l), std::move(r), 0, 0, {});
}

TermPtr feed(TermPtr body, int width) {
  if (!body) fail(Err::BadShape, "feed of a null term");
  need_nat(width, "feed");
  return make(TermKind::Feed, std::move(body), nullptr, width, 0, {});
}

TermPtr id(int n) {
  need_nat(n, "I");
  return make(TermKind::Id, nullptr, nullptr, n, 0, {});
}

TermPtr transp(int m, int n) {
  need_nat(m, "X");
  need_nat(n, "X");
  return make(TermKind::Transp, nullptr, nullptr, m, n, {});
}

TermPtr copy(int m) {
  need_nat(m, "cp");
  return make(TermKind::Copy, nullptr, nullptr, m, 0, {});
}

TermPtr sink(int m) {
  need_nat(m, "sink");
  return make(TermKind::Sink, nullptr, nullptr, m, 0, {});
}

TermPtr eq_test(int m) {
  need_nat(m, "eq");
  return make(TermKind::EqTest, nullptr, nullptr, m, 0, {});
}

TermPtr dummy_source(int m) {
  need_nat(m, "src");
  return make(TermKind::DummySource, nullptr, nullptr, m, 0, {});
}

TermPtr cell_ref(std::string name) {
  if (name.empty()) fail(Err::BadShape, "cell with an empty name");
  return make(TermKind::Cell, nullptr, nullptr, 0, 0, std::move(name));
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->a != b->a || a->b != b->b || a->cell != b->cell) return false;
  switch (a->kind) {
    case TermKind::Par:
    case TermKind::Seq:
      return term_equal(a->left, b->left) && term_equal(a->right, b->right);
    case TermKind::Feed:
      return term_equal(a->left, b->left);
    default:
      return true;
  }
}

int term_size(const TermPtr& t) {
  if (!t) return 0;
  return 1 + term_size(t->left) + term_size(t->right);
}

int cell_occurrences(const TermPtr& t, const std::string& name) {
  if (!t) return 0;
  int here = t->kind == TermKind::Cell && (name.empty() || t->cell == name) ? 1 : 0;
  return here + cell_occurrences(t->left, name) + cell_occurrences(t->right, name);
}

}  // namespace bna
