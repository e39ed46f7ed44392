#pragma once

#include "bna/env.hpp"
#include "bna/term.hpp"

namespace bna {

// Sort of a term. Cells are looked up in `env`; passing nullptr makes any Cell
// leaf an UnboundCell error. Throws Err::Sort on composition mismatches and on
// Feed widths exceeding min(inputs, outputs) of the body.
Sort sort_of(const TermPtr& t, const CellEnv* env = nullptr);

// Rewrites every block constant to width <= 1 and every feedback to width 1
// using the defining block equations. The result contains only Id(0), Id(1),
// Transp(1,1), Copy(1), Sink(1), EqTest(1), DummySource(1), cells, Par, Seq
// and Feed(_, 1). Idempotent and sort-preserving.
TermPtr expand_blocks(const TermPtr& t);

// The regular-grid network over a 2->2 cell: the feedback of the three seq
// chains of staggered cell rows followed by X(l,k), padded on the right with
// DummySource(l-k) so the result has sort k -> l. Requires 0 < k < l; when an
// environment is supplied the cell must have sort 2->2. Cell occurrences:
// k*(k-1) + (l-k+1)*k; for k=3, l=4 that is 12.
TermPtr build_regular(int k, int l, const std::string& cell, const CellEnv* env = nullptr);

// Derived combinators.
// left_feed: feedback on the FIRST p ports: body must have sort p+m -> p+n.
TermPtr left_feed(const TermPtr& t, int p, const CellEnv* env = nullptr);
// star: f* for f : 1 -> 1.
TermPtr star(const TermPtr& t, const CellEnv* env = nullptr);
// dagger: identification-fronted feedback for f : m -> n+m (m = inputs of f).
TermPtr dagger(const TermPtr& t, const CellEnv* env = nullptr);
// mu: ramification-backed feedback for f : n+m -> m (m = outputs of f).
TermPtr mu(const TermPtr& t, const CellEnv* env = nullptr);
// binary star: f*g for f, g : 1 -> 1.
TermPtr binary_star(const TermPtr& f, const TermPtr& g, const CellEnv* env = nullptr);

// Ramification 1 -> k and identification k -> 1, built from the recursions
// rmf(k+1) = cp(1);(rmf(k) ++ I(1)) and idf(k+1) = (idf(k) ++ I(1));eq(1)
// with bases rmf(0) = sink(1), idf(0) = src(1), rmf(2) = cp(1), idf(2) = eq(1).
TermPtr ramify(int k);
TermPtr identify(int k);

}  // namespace bna
