#include "bna/relmodel.hpp"

#include <algorithm>

#include "bna/env.hpp"
#include "bna/error.hpp"

namespace bna {

namespace {

std::uint64_t upow(int base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::uint64_t>(base);
  return r;
}

void normalize_pairs(std::vector<std::uint64_t>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

}  // namespace

std::uint64_t FinRel::in_space() const { return upow(carrier, sort.inputs); }
std::uint64_t FinRel::out_space() const { return upow(carrier, sort.outputs); }

FinRel rel_id(int n, int carrier) {
  FinRel r{{n, n}, carrier, {}};
  std::uint64_t space = r.in_space();
  r.pairs.reserve(space);
  for (std::uint64_t x = 0; x < space; ++x) r.pairs.push_back(x * space + x);
  return r;
}

FinRel rel_transp(int m, int n, int carrier) {
  FinRel r{{m + n, n + m}, carrier, {}};
  std::uint64_t ms = upow(carrier, m), ns = upow(carrier, n);
  r.pairs.reserve(ms * ns);
  for (std::uint64_t x = 0; x < ms; ++x)
    for (std::uint64_t y = 0; y < ns; ++y)
      r.pairs.push_back((x * ns + y) * (ms * ns) + (y * ms + x));
  normalize_pairs(r.pairs);
  return r;
}

FinRel rel_par(const FinRel& f, const FinRel& g) {
  if (f.carrier != g.carrier) fail(Err::BadShape, "par of relations over different carriers");
  FinRel r{{f.sort.inputs + g.sort.inputs, f.sort.outputs + g.sort.outputs}, f.carrier, {}};
  std::uint64_t g_in = g.in_space(), g_out = g.out_space(), r_out = r.out_space();
  r.pairs.reserve(f.pairs.size() * g.pairs.size());
  for (std::uint64_t fp : f.pairs) {
    std::uint64_t fx = fp / f.out_space(), fy = fp % f.out_space();
    for (std::uint64_t gp : g.pairs) {
      std::uint64_t gx = gp / g_out, gy = gp % g_out;
      r.pairs.push_back((fx * g_in + gx) * r_out + (fy * g_out + gy));
    }
  }
  normalize_pairs(r.pairs);
  return r;
}

FinRel rel_seq(const FinRel& f, const FinRel& g) {
  if (f.carrier != g.carrier) fail(Err::BadShape, "seq of relations over different carriers");
  if (f.sort.outputs != g.sort.inputs)
    fail(Err::Sort, "seq mismatch: left is " + to_string(f.sort) + ", right is " +
                        to_string(g.sort));
  FinRel r{{f.sort.inputs, g.sort.outputs}, f.carrier, {}};
  // bucket g by input tuple
  std::vector<std::vector<std::uint64_t>> by_in(g.in_space());
  for (std::uint64_t gp : g.pairs) by_in[gp / g.out_space()].push_back(gp % g.out_space());
  for (std::uint64_t fp : f.pairs) {
    std::uint64_t fx = fp / f.out_space(), fy = fp % f.out_space();
    for (std::uint64_t gy : by_in[fy]) r.pairs.push_back(fx * r.out_space() + gy);
  }
  normalize_pairs(r.pairs);
  return r;
}

FinRel rel_feed(const FinRel& f, int width) {
  if (width < 0 || width > f.sort.inputs || width > f.sort.outputs)
    fail(Err::Sort, "feedback width " + std::to_string(width) + " exceeds relation sort " +
                        to_string(f.sort));
  FinRel r{{f.sort.inputs - width, f.sort.outputs - width}, f.carrier, {}};
  std::uint64_t w = upow(f.carrier, width);
  for (std::uint64_t fp : f.pairs) {
    std::uint64_t in = fp / f.out_space(), out = fp % f.out_space();
    if (in % w != out % w) continue;
    r.pairs.push_back((in / w) * r.out_space() + out / w);
  }
  normalize_pairs(r.pairs);
  return r;
}

FinRel eval_rel(const TermPtr& t, const RelEnv& env, int carrier) {
  switch (t->kind) {
    case TermKind::Id:
      return rel_id(t->a, carrier);
    case TermKind::Transp:
      return rel_transp(t->a, t->b, carrier);
    case TermKind::Copy:
    case TermKind::Sink:
    case TermKind::EqTest:
    case TermKind::DummySource:
      fail(Err::UnsupportedConstant,
           "branching constants have no relational interpretation here");
    case TermKind::Cell: {
      auto it = env.find(t->cell);
      if (it == env.end())
        fail(Err::UnboundCell, "cell '" + t->cell + "' is not in the relational environment");
      if (it->second.carrier != carrier)
        fail(Err::BadShape, "cell '" + t->cell + "' is over a different carrier");
      return it->second;
    }
    case TermKind::Par:
      return rel_par(eval_rel(t->left, env, carrier), eval_rel(t->right, env, carrier));
    case TermKind::Seq:
      return rel_seq(eval_rel(t->left, env, carrier), eval_rel(t->right, env, carrier));
    case TermKind::Feed:
      return rel_feed(eval_rel(t->left, env, carrier), t->a);
  }
  fail(Err::BadShape, "malformed term");
}

FinRel random_rel(Sort sort, int carrier, double density, std::uint64_t seed) {
  FinRel r{sort, carrier, {}};
  std::uint64_t space = r.in_space() * r.out_space();
  std::uint64_t state = seed ^ 0x9e3779b97f4a7c15ull;
  if (state == 0) state = 0x9e3779b97f4a7c15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  const double scale = 1.0 / 18446744073709551616.0;
  for (std::uint64_t code = 0; code < space; ++code)
    if (static_cast<double>(next()) * scale < density) r.pairs.push_back(code);
  return r;
}

}  // namespace bna
