#include "bna/bna_c.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "bna/axioms.hpp"
#include "bna/core.hpp"
#include "bna/env.hpp"
#include "bna/error.hpp"
#include "bna/normal.hpp"
#include "bna/parse.hpp"
#include "bna/procsim.hpp"
#include "bna/streamsem.hpp"
#include "bna/term.hpp"

struct bna_env {
  bna::CellEnv env;
};

struct bna_term {
  bna::TermPtr term;
};

namespace {

thread_local std::string g_last_error;

int status_of(bna::Err code) {
  switch (code) {
    case bna::Err::Syntax:
    case bna::Err::NatOverflow:
    case bna::Err::DuplicatePort:
    case bna::Err::PortOutOfRange:
    case bna::Err::UnknownSymbol:
      return BNA_ERR_SYNTAX;
    case bna::Err::Sort:
      return BNA_ERR_SORT;
    case bna::Err::UnboundCell:
      return BNA_ERR_UNBOUND;
    case bna::Err::InvalidDomain:
    case bna::Err::MissingTableRow:
    case bna::Err::ValueOutsideDomain:
    case bna::Err::BadArity:
      return BNA_ERR_ENV;
    case bna::Err::BadShape:
      return BNA_ERR_BADSHAPE;
    case bna::Err::UnsupportedConstant:
      return BNA_ERR_UNSUPPORTED;
    case bna::Err::SlotCollision:
    case bna::Err::Unsatisfiable:
      return BNA_ERR_RUNTIME;
  }
  return BNA_ERR_RUNTIME;
}

template <typename F>
int guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return BNA_OK;
  } catch (const bna::Error& e) {
    g_last_error = e.what();
    return status_of(e.code);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BNA_ERR_RUNTIME;
  }
}

int invalid(const char* msg) {
  g_last_error = msg;
  return BNA_ERR_INVAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const bna::CellEnv* cxx_env(const bna_env* env) { return env ? &env->env : nullptr; }

std::vector<bna::Stream> inputs_for(const bna::TermPtr& t, const bna::CellEnv& env,
                                    const char* streams_text, unsigned ticks) {
  bna::Sort sort = bna::sort_of(t, &env);
  if (!streams_text) return std::vector<bna::Stream>(sort.inputs);
  return bna::parse_streams(streams_text, sort.inputs, static_cast<int>(ticks), env.domain);
}

}  // namespace

extern "C" {

const char* bna_last_error(void) { return g_last_error.c_str(); }

void bna_string_free(char* s) { std::free(s); }

int bna_env_parse(const char* json_text, bna_env** out) {
  if (!json_text || !out) return invalid("null argument");
  *out = nullptr;
  int rc = guard([&] { *out = new bna_env{bna::parse_env(json_text)}; });
  return rc == BNA_OK ? BNA_OK : BNA_ERR_ENV;
}

int bna_env_default(unsigned domain_size, bna_env** out) {
  if (!out) return invalid("null argument");
  *out = nullptr;
  return guard([&] { *out = new bna_env{bna::default_env(static_cast<int>(domain_size))}; });
}

void bna_env_free(bna_env* env) { delete env; }

int bna_term_parse(const char* text, bna_term** out) {
  if (!text || !out) return invalid("null argument");
  *out = nullptr;
  return guard([&] { *out = new bna_term{bna::parse_term(text)}; });
}

void bna_term_free(bna_term* t) { delete t; }

int bna_term_print(const bna_term* t, char** out_text) {
  if (!t || !out_text) return invalid("null argument");
  *out_text = nullptr;
  return guard([&] { *out_text = dup_string(bna::print_term(t->term)); });
}

int bna_term_sort(const bna_term* t, const bna_env* env, unsigned* inputs, unsigned* outputs) {
  if (!t) return invalid("null argument");
  return guard([&] {
    bna::Sort sort = bna::sort_of(t->term, cxx_env(env));
    if (inputs) *inputs = static_cast<unsigned>(sort.inputs);
    if (outputs) *outputs = static_cast<unsigned>(sort.outputs);
  });
}

int bna_term_regular(unsigned k, unsigned l, const char* cell, bna_term** out) {
  if (!cell || !out) return invalid("null argument");
  *out = nullptr;
  return guard([&] {
    *out = new bna_term{
        bna::build_regular(static_cast<int>(k), static_cast<int>(l), cell, nullptr)};
  });
}

int bna_normalize(const bna_term* t, const bna_env* env, char** out_text,
                  unsigned* total_cells, unsigned* named_cells) {
  if (!t) return invalid("null argument");
  if (out_text) *out_text = nullptr;
  return guard([&] {
    bna::NormalForm nf = bna::to_normal_form(t->term, cxx_env(env));
    if (out_text) *out_text = dup_string(bna::print_term(bna::nf_to_term(nf)));
    if (total_cells) *total_cells = static_cast<unsigned>(nf.cells.size());
    if (named_cells) *named_cells = static_cast<unsigned>(nf.named_cell_count());
  });
}

int bna_iso(const bna_term* a, const bna_term* b, const bna_env* env, int* iso_out) {
  if (!a || !b || !iso_out) return invalid("null argument");
  return guard([&] {
    bna::NormalForm na = bna::to_normal_form(a->term, cxx_env(env));
    bna::NormalForm nb = bna::to_normal_form(b->term, cxx_env(env));
    *iso_out = bna::iso_equal(na, nb) ? 1 : 0;
  });
}

int bna_eval(const bna_term* t, const bna_env* env, const char* streams_text,
             unsigned ticks, int model, char** out_streams) {
  if (!t || !out_streams) return invalid("null argument");
  if (model != BNA_MODEL_STREAM && model != BNA_MODEL_PROC)
    return invalid("model must be stream or proc");
  *out_streams = nullptr;
  return guard([&] {
    bna::CellEnv fallback;
    const bna::CellEnv& e = env ? env->env : (fallback = bna::default_env(2));
    std::vector<bna::Stream> inputs = inputs_for(t->term, e, streams_text, ticks);
    std::vector<bna::Stream> outputs =
        model == BNA_MODEL_STREAM
            ? bna::eval_prefix(t->term, e, inputs, static_cast<int>(ticks))
            : bna::run_process(t->term, e, inputs, static_cast<int>(ticks));
    *out_streams = dup_string(bna::print_streams(outputs, e.domain));
  });
}

int bna_simulate(const bna_term* t, const bna_env* env, const char* streams_text,
                 unsigned ticks, char** out_streams, char** out_events) {
  if (!t) return invalid("null argument");
  if (out_streams) *out_streams = nullptr;
  if (out_events) *out_events = nullptr;
  return guard([&] {
    bna::CellEnv fallback;
    const bna::CellEnv& e = env ? env->env : (fallback = bna::default_env(2));
    std::vector<bna::Stream> inputs = inputs_for(t->term, e, streams_text, ticks);
    bna::ProcessNet net(t->term, e);
    bna::ProcessNet::RunResult result = net.run(inputs, static_cast<int>(ticks));
    if (out_streams) *out_streams = dup_string(bna::print_streams(result.outputs, e.domain));
    if (out_events) *out_events = dup_string(bna::format_events(result.events, e.domain));
  });
}

int bna_axioms(const bna_env* env, int model, int table, unsigned trials,
               unsigned long long seed, unsigned domain_size, unsigned ticks,
               char** out_report, int* failures) {
  if (!out_report) return invalid("null argument");
  if (model < BNA_MODEL_REL || model > BNA_MODEL_PROC) return invalid("bad model");
  if (table < 0 || table > 3) return invalid("table must be 0, 1, 2 or 3");
  *out_report = nullptr;
  return guard([&] {
    bna::CheckParams params;
    params.trials = static_cast<int>(trials);
    params.seed = seed;
    params.domain_size = static_cast<int>(domain_size);
    params.ticks = static_cast<int>(ticks);
    params.env = cxx_env(env);
    bna::SuiteResult suite =
        bna::run_axiom_suite(static_cast<bna::Model>(model), table, params);
    *out_report = dup_string(suite.report);
    if (failures) *failures = suite.failures;
  });
}

}  // extern "C"
