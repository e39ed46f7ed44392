// command-line front end; talks to the kernel through the C API only
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bna/bna_c.h"

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { bna_string_free(p); }
};

struct Env {
  bna_env* p = nullptr;
  ~Env() { bna_env_free(p); }
};

struct Term {
  bna_term* p = nullptr;
  ~Term() { bna_term_free(p); }
};

// 2 for input-shaped problems (bad text, bad files), 1 for semantic failures
int exit_code(int rc) {
  switch (rc) {
    case BNA_OK:
      return 0;
    case BNA_ERR_SYNTAX:
    case BNA_ERR_ENV:
    case BNA_ERR_INVAL:
      return 2;
    default:
      return 1;
  }
}

int complain(int rc) {
  std::fprintf(stderr, "bna: %s\n", bna_last_error());
  return exit_code(rc);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// empty path leaves env.p null (terms without cells need no environment)
int load_env(const std::string& path, Env& env) {
  if (path.empty()) return BNA_OK;
  std::string text;
  if (!read_file(path, text)) {
    std::fprintf(stderr, "bna: cannot read %s\n", path.c_str());
    return 2;
  }
  int rc = bna_env_parse(text.c_str(), &env.p);
  return rc == BNA_OK ? 0 : complain(rc);
}

int load_inputs(const std::string& path, std::string& text, bool& have) {
  have = !path.empty();
  if (!have) return 0;
  if (!read_file(path, text)) {
    std::fprintf(stderr, "bna: cannot read %s\n", path.c_str());
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebra of synchronous dataflow networks"};
  app.require_subcommand(1);

  std::string term_text, term_text2, env_path, inputs_path;
  std::string model = "stream", cell = "f";
  unsigned ticks = 16, trials = 100, domain_size = 2, k = 0, l = 0;
  unsigned long long seed = 0;
  int table = 0;
  bool events = false;

  auto add_env = [&](CLI::App* cmd) {
    cmd->add_option("--env", env_path, "cell environment file (JSON)");
  };

  auto* cmd_parse = app.add_subcommand("parse", "parse a term and print its canonical form");
  cmd_parse->add_option("term", term_text, "term text")->required();

  auto* cmd_type = app.add_subcommand("typecheck", "print the sort of a term as `m -> n`");
  cmd_type->add_option("term", term_text, "term text")->required();
  add_env(cmd_type);

  auto* cmd_norm = app.add_subcommand("normalize", "print the normal form of a term");
  cmd_norm->add_option("term", term_text, "term text")->required();
  add_env(cmd_norm);

  auto* cmd_iso = app.add_subcommand("iso", "compare two terms up to graph isomorphism");
  cmd_iso->add_option("term1", term_text, "first term")->required();
  cmd_iso->add_option("term2", term_text2, "second term")->required();
  add_env(cmd_iso);

  auto* cmd_eval = app.add_subcommand("eval", "run a network on input streams");
  cmd_eval->add_option("term", term_text, "term text")->required();
  add_env(cmd_eval);
  cmd_eval->add_option("--inputs", inputs_path, "input stream file (default: all ticks)");
  cmd_eval->add_option("--ticks", ticks, "number of time slices")->capture_default_str();
  cmd_eval->add_option("--model", model, "stream | proc")
      ->check(CLI::IsMember({"stream", "proc"}))
      ->capture_default_str();

  auto* cmd_sim = app.add_subcommand("simulate", "run the process simulator");
  cmd_sim->add_option("term", term_text, "term text")->required();
  add_env(cmd_sim);
  cmd_sim->add_option("--inputs", inputs_path, "input stream file (default: all ticks)");
  cmd_sim->add_option("--ticks", ticks, "number of time slices")->capture_default_str();
  cmd_sim->add_flag("--events", events, "also print the message event log");

  auto* cmd_ax = app.add_subcommand("axioms", "check the axiom catalog on random instances");
  cmd_ax->add_option("--model", model, "rel | stream | proc")
      ->check(CLI::IsMember({"rel", "stream", "proc"}))
      ->capture_default_str();
  cmd_ax->add_option("--table", table, "restrict to one table (0 = all)")
      ->check(CLI::Range(0, 3))
      ->capture_default_str();
  cmd_ax->add_option("--trials", trials, "instantiations per axiom")->capture_default_str();
  cmd_ax->add_option("--seed", seed, "random seed")->capture_default_str();
  cmd_ax->add_option("--domain-size", domain_size, "carrier / datum domain size")
      ->capture_default_str();
  cmd_ax->add_option("--ticks", ticks, "horizon for the synchronous models")
      ->capture_default_str();
  add_env(cmd_ax);

  auto* cmd_demo = app.add_subcommand("demo", "built-in example networks");
  cmd_demo->require_subcommand(1);
  auto* cmd_reg = cmd_demo->add_subcommand("regular", "rectangular grid of unary cells");
  cmd_reg->add_option("--k", k, "input width")->required();
  cmd_reg->add_option("--l", l, "output width")->required();
  cmd_reg->add_option("--cell", cell, "cell name")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Env env;
  Term t;

  if (cmd_parse->parsed()) {
    int rc = bna_term_parse(term_text.c_str(), &t.p);
    if (rc != BNA_OK) return complain(rc);
    Str text;
    rc = bna_term_print(t.p, &text.p);
    if (rc != BNA_OK) return complain(rc);
    std::printf("%s\n", text.p);
    return 0;
  }

  if (cmd_type->parsed()) {
    if (int rc = load_env(env_path, env)) return rc;
    int rc = bna_term_parse(term_text.c_str(), &t.p);
    if (rc != BNA_OK) return complain(rc);
    unsigned m = 0, n = 0;
    rc = bna_term_sort(t.p, env.p, &m, &n);
    if (rc != BNA_OK) return complain(rc);
    std::printf("%u -> %u\n", m, n);
    return 0;
  }

  if (cmd_norm->parsed()) {
    if (int rc = load_env(env_path, env)) return rc;
    int rc = bna_term_parse(term_text.c_str(), &t.p);
    if (rc != BNA_OK) return complain(rc);
    Str text;
    rc = bna_normalize(t.p, env.p, &text.p, nullptr, nullptr);
    if (rc != BNA_OK) return complain(rc);
    std::printf("%s\n", text.p);
    return 0;
  }

  if (cmd_iso->parsed()) {
    if (int rc = load_env(env_path, env)) return rc;
    Term t2;
    int rc = bna_term_parse(term_text.c_str(), &t.p);
    if (rc == BNA_OK) rc = bna_term_parse(term_text2.c_str(), &t2.p);
    if (rc != BNA_OK) return complain(rc);
    int iso = 0;
    rc = bna_iso(t.p, t2.p, env.p, &iso);
    if (rc != BNA_OK) return complain(rc);
    std::printf("%s\n", iso ? "ISO" : "NOT-ISO");
    return iso ? 0 : 1;
  }

  if (cmd_eval->parsed()) {
    if (int rc = load_env(env_path, env)) return rc;
    std::string inputs;
    bool have_inputs = false;
    if (int rc = load_inputs(inputs_path, inputs, have_inputs)) return rc;
    int rc = bna_term_parse(term_text.c_str(), &t.p);
    if (rc != BNA_OK) return complain(rc);
    Str streams;
    rc = bna_eval(t.p, env.p, have_inputs ? inputs.c_str() : nullptr, ticks,
                  model == "proc" ? BNA_MODEL_PROC : BNA_MODEL_STREAM, &streams.p);
    if (rc != BNA_OK) return complain(rc);
    std::fputs(streams.p, stdout);
    return 0;
  }

  if (cmd_sim->parsed()) {
    if (int rc = load_env(env_path, env)) return rc;
    std::string inputs;
    bool have_inputs = false;
    if (int rc = load_inputs(inputs_path, inputs, have_inputs)) return rc;
    int rc = bna_term_parse(term_text.c_str(), &t.p);
    if (rc != BNA_OK) return complain(rc);
    Str streams, log;
    rc = bna_simulate(t.p, env.p, have_inputs ? inputs.c_str() : nullptr, ticks, &streams.p,
                      events ? &log.p : nullptr);
    if (rc != BNA_OK) return complain(rc);
    std::fputs(streams.p, stdout);
    if (events) {
      std::printf("# events\n");
      std::fputs(log.p, stdout);
    }
    return 0;
  }

  if (cmd_ax->parsed()) {
    if (int rc = load_env(env_path, env)) return rc;
    int m = model == "rel" ? BNA_MODEL_REL : model == "proc" ? BNA_MODEL_PROC : BNA_MODEL_STREAM;
    Str report;
    int failures = 0;
    int rc = bna_axioms(env.p, m, table, trials, seed, domain_size, ticks, &report.p,
                        &failures);
    if (rc != BNA_OK) return complain(rc);
    std::fputs(report.p, stdout);
    return failures > 0 ? 1 : 0;
  }

  if (cmd_reg->parsed()) {
    int rc = bna_term_regular(k, l, cell.c_str(), &t.p);
    if (rc != BNA_OK) return complain(rc);
    Str text;
    rc = bna_term_print(t.p, &text.p);
    if (rc != BNA_OK) return complain(rc);
    std::printf("%s\n", text.p);
    return 0;
  }

  return 2;
}
