#pragma once

#include <string>
#include <vector>

#include "bna/env.hpp"
#include "bna/term.hpp"

namespace bna {

// Term grammar (whitespace insignificant):
//   par  := seq   ("++" seq)*            left associative, loosest
//   seq  := post  (";"  post)*           left associative
//   post := atom  ("^" nat)*             feedback, tightest
//   atom := "I" "(" nat ")" | "X" "(" nat "," nat ")"
//         | "cp" "(" nat ")" | "sink" "(" nat ")" | "eq" "(" nat ")"
//         | "src" "(" nat ")" | ident | "(" par ")"
// The six constant heads are reserved; a bare reserved head without "(" is a
// syntax error, and cells may not use those names. Syntax errors carry the
// byte offset of the offending token; naturals that do not fit in int raise
// NatOverflow.
TermPtr parse_term(const std::string& text);

// Canonical printing: minimal parentheses under the grammar above, single
// spaces around binary operators and "^". parse_term(print_term(t)) == t.
std::string print_term(const TermPtr& t);

// Environment files are JSON:
//   { "domain": ["0","1"],
//     "cells": { "name": { "arity": [m,n], "init": [..n..],
//                          "table": { "a,b": [..n..], ... } } } }
// Table keys are input tuples joined by ","; the table must be total over
// domain^m (the key for m=0 is ""). Domain symbols are nonempty, unique,
// and contain neither "," nor whitespace nor the tick mark "~".
CellEnv parse_env(const std::string& json_text);

// Stream files: one line per input port, `port ':' token*`, ports 1-based.
// Tokens are domain symbols or "~" for tick. Missing ports are all-tick;
// prefixes are truncated or tick-padded to `horizon`.
std::vector<Stream> parse_streams(const std::string& text, int ports, int horizon,
                                  const Domain& domain);

// One line per port: `i: tok tok ...` (1-based, `~` for tick). A port with an
// empty prefix prints as `i:`.
std::string print_streams(const std::vector<Stream>& streams, const Domain& domain);

}  // namespace bna
