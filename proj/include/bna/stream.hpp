#pragma once

#include <string>
#include <vector>

namespace bna {

// A stream value is an index into Domain::symbols, or kTick for the clock tick.
using Value = int;
inline constexpr Value kTick = -1;

// Finite prefix of a synchronous stream; positions past the end are ticks.
using Stream = std::vector<Value>;

// Pointwise equality test: the datum when both sides agree, tick otherwise.
// Tick is the bottom of the flat order, so this is the meet; it is associative,
// commutative and idempotent.
inline Value eqt(Value a, Value b) { return a == b ? a : kTick; }

inline Value stream_at(const Stream& s, int k) {
  return k >= 0 && k < static_cast<int>(s.size()) ? s[k] : kTick;
}

}  // namespace bna
