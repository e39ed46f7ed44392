#pragma once

#include <map>
#include <string>
#include <vector>

#include "bna/stream.hpp"
#include "bna/term.hpp"

namespace bna {

struct Domain {
  std::vector<std::string> symbols;

  int size() const { return static_cast<int>(symbols.size()); }

  // -1 when the symbol is not in the domain.
  int index_of(const std::string& sym) const;
};

// Encode a tuple over {0..size-1} as a radix-`size` number, first component
// most significant. The empty tuple encodes to 0.
long encode_tuple(const std::vector<Value>& tuple, int size);
std::vector<Value> decode_tuple(long code, int size, int length);

// Power size^exp as a long; callers keep exponents at desk scale.
long ipow(int size, int exp);

// A synchronous cell: consumes one datum per input port per period, then emits
// one output tuple at the start of the next period. `table` is total: indexed
// by the encoded input tuple, size |D|^inputs.
struct CellDef {
  Sort sort;
  std::vector<Value> init;                // emitted at tick 0; length = outputs
  std::vector<std::vector<Value>> table;  // each entry length = outputs

  const std::vector<Value>& apply(const std::vector<Value>& args, int domain_size) const {
    return table[encode_tuple(args, domain_size)];
  }
};

struct CellEnv {
  Domain domain;
  std::map<std::string, CellDef> cells;

  const CellDef* find(const std::string& name) const;
};

}  // namespace bna
