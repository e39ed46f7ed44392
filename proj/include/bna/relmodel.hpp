#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bna/term.hpp"

namespace bna {

// A finite relation between tuples over a carrier {0..carrier-1}. Pairs are
// stored as sorted unique codes in_code * carrier^outputs + out_code, where a
// tuple's code is its radix-`carrier` value (first component most
// significant).
struct FinRel {
  Sort sort;
  int carrier = 1;
  std::vector<std::uint64_t> pairs;

  std::uint64_t in_space() const;   // carrier^inputs
  std::uint64_t out_space() const;  // carrier^outputs

  bool operator==(const FinRel&) const = default;
};

FinRel rel_id(int n, int carrier);
FinRel rel_transp(int m, int n, int carrier);
FinRel rel_par(const FinRel& f, const FinRel& g);
FinRel rel_seq(const FinRel& f, const FinRel& g);
FinRel rel_feed(const FinRel& f, int width);

using RelEnv = std::map<std::string, FinRel>;

// The relational interpretation: Par is product pairing, Seq composes through
// an existential middle tuple, Feed equates the trailing input and output
// blocks. Cells come from `env`; branching constants (Copy, Sink, EqTest,
// DummySource) have no relational reading here and raise UnsupportedConstant.
FinRel eval_rel(const TermPtr& t, const RelEnv& env, int carrier);

// Each pair is included independently with probability `density`, driven by a
// deterministic generator seeded with `seed`.
FinRel random_rel(Sort sort, int carrier, double density, std::uint64_t seed);

}  // namespace bna
