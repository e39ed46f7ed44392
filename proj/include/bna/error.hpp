#pragma once

#include <stdexcept>
#include <string>

namespace bna {

enum class Err {
  Syntax,
  NatOverflow,
  Sort,
  UnboundCell,
  BadShape,
  BadArity,
  MissingTableRow,
  ValueOutsideDomain,
  InvalidDomain,
  UnknownSymbol,
  DuplicatePort,
  PortOutOfRange,
  UnsupportedConstant,
  SlotCollision,
  Unsatisfiable,
};

const char* err_name(Err e);

// `where` carries the byte offset for Syntax errors and the tick/slice index
// for SlotCollision; -1 when not applicable.
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg, long where = -1)
      : std::runtime_error(msg), code(code), where(where) {}

  Err code;
  long where;
};

[[noreturn]] inline void fail(Err code, const std::string& msg, long where = -1) {
  throw Error(code, msg, where);
}

}  // namespace bna
