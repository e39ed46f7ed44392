#include "bna/env.hpp"

#include "bna/error.hpp"

namespace bna {

const char* err_name(Err e) {
  switch (e) {
    case Err::Syntax: return "Syntax";
    case Err::NatOverflow: return "NatOverflow";
    case Err::Sort: return "Sort";
    case Err::UnboundCell: return "UnboundCell";
    case Err::BadShape: return "BadShape";
    case Err::BadArity: return "BadArity";
    case Err::MissingTableRow: return "MissingTableRow";
    case Err::ValueOutsideDomain: return "ValueOutsideDomain";
    case Err::InvalidDomain: return "InvalidDomain";
    case Err::UnknownSymbol: return "UnknownSymbol";
    case Err::DuplicatePort: return "DuplicatePort";
    case Err::PortOutOfRange: return "PortOutOfRange";
    case Err::UnsupportedConstant: return "UnsupportedConstant";
    case Err::SlotCollision: return "SlotCollision";
    case Err::Unsatisfiable: return "Unsatisfiable";
  }
  return "Error";
}

int Domain::index_of(const std::string& sym) const {
  for (int i = 0; i < size(); ++i)
    if (symbols[i] == sym) return i;
  return -1;
}

long ipow(int size, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= size;
  return r;
}

long encode_tuple(const std::vector<Value>& tuple, int size) {
  long code = 0;
  for (Value v : tuple) code = code * size + v;
  return code;
}

std::vector<Value> decode_tuple(long code, int size, int length) {
  std::vector<Value> tuple(length);
  for (int i = length - 1; i >= 0; --i) {
    tuple[i] = static_cast<Value>(code % size);
    code /= size;
  }
  return tuple;
}

const CellDef* CellEnv::find(const std::string& name) const {
  auto it = cells.find(name);
  return it == cells.end() ? nullptr : &it->second;
}

}  // namespace bna
