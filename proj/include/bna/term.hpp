#pragma once

#include <memory>
#include <string>

#include "bna/error.hpp"

namespace bna {

// Sorts are pairs of naturals: a network maps `inputs` ports to `outputs` ports.
struct Sort {
  int inputs = 0;
  int outputs = 0;

  bool operator==(const Sort&) const = default;
};

std::string to_string(const Sort& s);

enum class TermKind : unsigned char {
  Par,          // f ++ g
  Seq,          // f ; g
  Feed,         // f ^ p  (feedback on the last p ports)
  Id,           // I(n)
  Transp,       // X(m,n)
  Copy,         // cp(m)
  Sink,         // sink(m)
  EqTest,       // eq(m)
  DummySource,  // src(m)
  Cell,         // named cell from the environment
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable syntax tree. Numeric payload: Id(a), Transp(a,b), Copy(a), Sink(a),
// EqTest(a), DummySource(a); Feed stores its width in `a` and its body in `left`.
class Term {
 public:
  TermKind kind;
  TermPtr left;
  TermPtr right;
  int a = 0;
  int b = 0;
  std::string cell;
};

TermPtr par(TermPtr l, TermPtr r);
TermPtr seq(TermPtr l, TermPtr r);
TermPtr feed(TermPtr body, int width);
TermPtr id(int n);
TermPtr transp(int m, int n);
TermPtr copy(int m);
TermPtr sink(int m);
TermPtr eq_test(int m);
TermPtr dummy_source(int m);
TermPtr cell_ref(std::string name);

bool term_equal(const TermPtr& a, const TermPtr& b);

// Number of nodes in the tree.
int term_size(const TermPtr& t);

// Occurrences of Cell leaves; with a name, only those naming that cell.
int cell_occurrences(const TermPtr& t, const std::string& name = "");

}  // namespace bna
