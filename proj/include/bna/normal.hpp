#pragma once

#include <string>
#include <vector>

#include "bna/env.hpp"
#include "bna/term.hpp"

namespace bna {

// Reserved atom names for the branching constants after atomization.
inline constexpr const char* kCopyAtom = "#cp1";
inline constexpr const char* kSinkAtom = "#sink1";
inline constexpr const char* kEqAtom = "#eq1";
inline constexpr const char* kSourceAtom = "#src1";

struct NfCell {
  std::string name;  // cell name, or one of the reserved atom names
  Sort sort;

  bool operator==(const NfCell&) const = default;
};

// A term in normal form: ((I_m ++ x_1 ++ ... ++ x_k) ; F) ^ w where F is a
// bijective connection and w = sum of the cells' input widths.
//
// `wiring` encodes F as producer -> consumer:
//   producers: 0..m-1 external inputs, then each cell's outputs in order;
//   consumers: 0..n-1 external outputs, then each cell's inputs in order.
// Both index spaces have size m + sum(outputs) = n + sum(inputs).
struct NormalForm {
  Sort external;
  std::vector<NfCell> cells;
  std::vector<int> wiring;

  int feed_width() const;      // sum of cell input widths
  int port_count() const;      // size of the wiring bijection
  int named_cell_count() const;  // cells whose name is not reserved ('#')
};

// Expands blocks, atomizes branching constants into the reserved cells above,
// and splices the wiring compositionally. Feedback through pure wires closes
// cycles that touch no cell; those loops vanish (they have no observable
// behavior). Deterministic: cells appear in left-to-right term order.
NormalForm to_normal_form(const TermPtr& t, const CellEnv* env = nullptr);

// Isomorphism of normal forms: equal external sorts and a bijection between
// the cell lists that preserves name, sort, and all wiring. Cells with equal
// name and sort are interchangeable; the search backtracks within those
// groups only.
bool iso_equal(const NormalForm& a, const NormalForm& b);

// Rebuilds a term ((I_m ++ x_1 ++ ... ++ x_k) ; F) ^ w. The connection F is
// realized as I(N) when it is an identity, X(p,q) when it is a block
// transposition, and a seq of adjacent transposition layers otherwise.
TermPtr nf_to_term(const NormalForm& nf);

}  // namespace bna
