#include "bna/parse.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bna/error.hpp"

namespace bna {

namespace {

enum class Tok { Ident, Nat, Semi, ParPar, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  long nat = 0;
  size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_.offset = pos_;
    tok_.text.clear();
    tok_.nat = 0;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long v = 0;
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + (text_[pos_] - '0');
        if (v > std::numeric_limits<int>::max())
          fail(Err::NatOverflow, "number too large at offset " + std::to_string(start),
               static_cast<long>(start));
        ++pos_;
      }
      tok_.kind = Tok::Nat;
      tok_.nat = v;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_'))
        ++pos_;
      tok_.kind = Tok::Ident;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    switch (c) {
      case ';': tok_.kind = Tok::Semi; ++pos_; return;
      case '^': tok_.kind = Tok::Caret; ++pos_; return;
      case '(': tok_.kind = Tok::LParen; ++pos_; return;
      case ')': tok_.kind = Tok::RParen; ++pos_; return;
      case ',': tok_.kind = Tok::Comma; ++pos_; return;
      case '+':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '+') {
          tok_.kind = Tok::ParPar;
          pos_ += 2;
          return;
        }
        fail(Err::Syntax, "lone '+' at offset " + std::to_string(pos_), static_cast<long>(pos_));
    }
    fail(Err::Syntax, std::string("unexpected character '") + c + "' at offset " +
                          std::to_string(pos_),
         static_cast<long>(pos_));
  }

  const std::string& text_;
  size_t pos_ = 0;
  Token tok_;
};

bool reserved_head(const std::string& name) {
  return name == "I" || name == "X" || name == "cp" || name == "sink" || name == "eq" ||
         name == "src";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  TermPtr parse() {
    TermPtr t = parse_par();
    const Token& tok = lex_.peek();
    if (tok.kind != Tok::End)
      fail(Err::Syntax, "trailing input at offset " + std::to_string(tok.offset),
           static_cast<long>(tok.offset));
    return t;
  }

 private:
  [[noreturn]] void expected(const char* what) {
    const Token& tok = lex_.peek();
    std::string got = tok.kind == Tok::End ? "end of input" : "'" + tok.text + "'";
    if (got == "''") got = "input";
    fail(Err::Syntax,
         std::string("expected ") + what + " at offset " + std::to_string(tok.offset),
         static_cast<long>(tok.offset));
  }

  void eat(Tok kind, const char* what) {
    if (lex_.peek().kind != kind) expected(what);
    lex_.take();
  }

  int nat() {
    if (lex_.peek().kind != Tok::Nat) expected("a number");
    return static_cast<int>(lex_.take().nat);
  }

  TermPtr parse_par() {
    TermPtr t = parse_seq();
    while (lex_.peek().kind == Tok::ParPar) {
      lex_.take();
      t = par(t, parse_seq());
    }
    return t;
  }

  TermPtr parse_seq() {
    TermPtr t = parse_post();
    while (lex_.peek().kind == Tok::Semi) {
      lex_.take();
      t = seq(t, parse_post());
    }
    return t;
  }

  TermPtr parse_post() {
    TermPtr t = parse_atom();
    while (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      t = feed(t, nat());
    }
    return t;
  }

  TermPtr parse_atom() {
    const Token& tok = lex_.peek();
    if (tok.kind == Tok::LParen) {
      lex_.take();
      TermPtr t = parse_par();
      eat(Tok::RParen, "')'");
      return t;
    }
    if (tok.kind != Tok::Ident) expected("a term");
    Token head = lex_.take();
    if (!reserved_head(head.text)) return cell_ref(head.text);
    eat(Tok::LParen, "'(' after constant");
    if (head.text == "X") {
      int m = nat();
      eat(Tok::Comma, "','");
      int n = nat();
      eat(Tok::RParen, "')'");
      return transp(m, n);
    }
    int m = nat();
    eat(Tok::RParen, "')'");
    if (head.text == "I") return id(m);
    if (head.text == "cp") return copy(m);
    if (head.text == "sink") return sink(m);
    if (head.text == "eq") return eq_test(m);
    return dummy_source(m);
  }

  Lexer lex_;
};

enum Prec { kPar = 0, kSeq = 1, kPost = 2, kAtom = 3 };

int prec_of(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Par: return kPar;
    case TermKind::Seq: return kSeq;
    case TermKind::Feed: return kPost;
    default: return kAtom;
  }
}

void print_into(const TermPtr& t, int min_prec, std::string& out) {
  bool wrap = prec_of(t) < min_prec;
  if (wrap) out += '(';
  switch (t->kind) {
    case TermKind::Par:
      print_into(t->left, kPar, out);
      out += " ++ ";
      print_into(t->right, kPar + 1, out);
      break;
    case TermKind::Seq:
      print_into(t->left, kSeq, out);
      out += " ; ";
      print_into(t->right, kSeq + 1, out);
      break;
    case TermKind::Feed:
      print_into(t->left, kPost, out);
      out += " ^ ";
      out += std::to_string(t->a);
      break;
    case TermKind::Id:
      out += "I(" + std::to_string(t->a) + ")";
      break;
    case TermKind::Transp:
      out += "X(" + std::to_string(t->a) + "," + std::to_string(t->b) + ")";
      break;
    case TermKind::Copy:
      out += "cp(" + std::to_string(t->a) + ")";
      break;
    case TermKind::Sink:
      out += "sink(" + std::to_string(t->a) + ")";
      break;
    case TermKind::EqTest:
      out += "eq(" + std::to_string(t->a) + ")";
      break;
    case TermKind::DummySource:
      out += "src(" + std::to_string(t->a) + ")";
      break;
    case TermKind::Cell:
      out += t->cell;
      break;
  }
  if (wrap) out += ')';
}

}  // namespace

TermPtr parse_term(const std::string& text) { return Parser(text).parse(); }

std::string print_term(const TermPtr& t) {
  std::string out;
  print_into(t, kPar, out);
  return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void env_fail(Err code, const std::string& msg) { fail(code, "environment: " + msg); }

void check_symbol(const std::string& sym) {
  if (sym.empty()) env_fail(Err::InvalidDomain, "empty domain symbol");
  if (sym == "~") env_fail(Err::InvalidDomain, "'~' is the tick mark, not a domain symbol");
  for (char c : sym)
    if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
      env_fail(Err::InvalidDomain, "domain symbol '" + sym + "' contains ',' or whitespace");
}

std::vector<Value> parse_tuple_key(const std::string& key, const Domain& domain,
                                   const std::string& cell) {
  std::vector<Value> tuple;
  if (key.empty()) return tuple;
  size_t start = 0;
  while (true) {
    size_t comma = key.find(',', start);
    std::string sym = key.substr(start, comma == std::string::npos ? comma : comma - start);
    int v = domain.index_of(sym);
    if (v < 0)
      env_fail(Err::ValueOutsideDomain,
               "cell '" + cell + "' table key '" + key + "' uses unknown symbol '" + sym + "'");
    tuple.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return tuple;
}

std::vector<Value> parse_value_tuple(const json& arr, const Domain& domain,
                                     const std::string& cell, const char* what, int want) {
  if (!arr.is_array())
    env_fail(Err::BadArity, "cell '" + cell + "' " + what + " must be an array");
  if (static_cast<int>(arr.size()) != want)
    env_fail(Err::BadArity, "cell '" + cell + "' " + what + " has length " +
                                std::to_string(arr.size()) + ", expected " + std::to_string(want));
  std::vector<Value> tuple;
  for (const json& item : arr) {
    if (!item.is_string())
      env_fail(Err::ValueOutsideDomain, "cell '" + cell + "' " + what + " holds a non-string");
    int v = domain.index_of(item.get<std::string>());
    if (v < 0)
      env_fail(Err::ValueOutsideDomain, "cell '" + cell + "' " + what + " uses unknown symbol '" +
                                            item.get<std::string>() + "'");
    tuple.push_back(v);
  }
  return tuple;
}

std::string tuple_to_key(const std::vector<Value>& tuple, const Domain& domain) {
  std::string key;
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (i) key += ',';
    key += domain.symbols[tuple[i]];
  }
  return key;
}

}  // namespace

CellEnv parse_env(const std::string& json_text) {
  json root = json::parse(json_text, nullptr, false);
  if (root.is_discarded()) env_fail(Err::Syntax, "not valid JSON");
  if (!root.is_object()) env_fail(Err::Syntax, "top level must be an object");

  CellEnv env;
  if (!root.contains("domain") || !root["domain"].is_array() || root["domain"].empty())
    env_fail(Err::InvalidDomain, "\"domain\" must be a nonempty array of symbols");
  for (const json& item : root["domain"]) {
    if (!item.is_string()) env_fail(Err::InvalidDomain, "domain symbols must be strings");
    std::string sym = item.get<std::string>();
    check_symbol(sym);
    if (env.domain.index_of(sym) >= 0)
      env_fail(Err::InvalidDomain, "duplicate domain symbol '" + sym + "'");
    env.domain.symbols.push_back(sym);
  }

  if (!root.contains("cells")) return env;
  if (!root["cells"].is_object()) env_fail(Err::Syntax, "\"cells\" must be an object");
  for (auto it = root["cells"].begin(); it != root["cells"].end(); ++it) {
    const std::string& name = it.key();
    if (name.empty() || reserved_head(name) ||
        !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
      env_fail(Err::InvalidDomain, "'" + name + "' is not a usable cell name");
    const json& spec = it.value();
    if (!spec.is_object() || !spec.contains("arity") || !spec["arity"].is_array() ||
        spec["arity"].size() != 2 || !spec["arity"][0].is_number_unsigned() ||
        !spec["arity"][1].is_number_unsigned())
      env_fail(Err::BadArity, "cell '" + name + "' needs \"arity\": [m,n]");
    CellDef def;
    def.sort = {spec["arity"][0].get<int>(), spec["arity"][1].get<int>()};

    if (!spec.contains("init"))
      env_fail(Err::BadArity, "cell '" + name + "' is missing \"init\"");
    def.init = parse_value_tuple(spec["init"], env.domain, name, "init", def.sort.outputs);

    long rows = ipow(env.domain.size(), def.sort.inputs);
    def.table.assign(rows, {});
    std::vector<char> seen(rows, 0);
    if (!spec.contains("table") || !spec["table"].is_object())
      env_fail(Err::MissingTableRow, "cell '" + name + "' needs a \"table\" object");
    for (auto row = spec["table"].begin(); row != spec["table"].end(); ++row) {
      std::vector<Value> in = parse_tuple_key(row.key(), env.domain, name);
      if (static_cast<int>(in.size()) != def.sort.inputs)
        env_fail(Err::BadArity, "cell '" + name + "' table key '" + row.key() + "' has arity " +
                                    std::to_string(in.size()) + ", expected " +
                                    std::to_string(def.sort.inputs));
      long code = encode_tuple(in, env.domain.size());
      if (seen[code])
        env_fail(Err::DuplicatePort, "cell '" + name + "' table repeats key '" + row.key() + "'");
      seen[code] = 1;
      def.table[code] = parse_value_tuple(row.value(), env.domain, name, "table row",
                                          def.sort.outputs);
    }
    for (long code = 0; code < rows; ++code)
      if (!seen[code])
        env_fail(Err::MissingTableRow,
                 "cell '" + name + "' table is missing row '" +
                     tuple_to_key(decode_tuple(code, env.domain.size(), def.sort.inputs),
                                  env.domain) +
                     "'");
    env.cells.emplace(name, std::move(def));
  }
  return env;
}

std::vector<Stream> parse_streams(const std::string& text, int ports, int horizon,
                                  const Domain& domain) {
  std::vector<Stream> streams(ports);
  std::vector<char> seen(ports, 0);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string trimmed = line;
    size_t first = trimmed.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    size_t colon = trimmed.find(':');
    if (colon == std::string::npos)
      fail(Err::Syntax, "stream line without ':': " + line);
    std::istringstream head(trimmed.substr(0, colon));
    long port = 0;
    if (!(head >> port) || !(head >> std::ws).eof())
      fail(Err::Syntax, "stream line needs a port number before ':': " + line);
    if (port < 1 || port > ports)
      fail(Err::PortOutOfRange, "port " + std::to_string(port) + " out of range 1.." +
                                    std::to_string(ports));
    if (seen[port - 1]) fail(Err::DuplicatePort, "port " + std::to_string(port) + " repeated");
    seen[port - 1] = 1;
    Stream s;
    std::istringstream rest(trimmed.substr(colon + 1));
    std::string tok;
    while (rest >> tok) {
      if (static_cast<int>(s.size()) == horizon) break;
      if (tok == "~") {
        s.push_back(kTick);
        continue;
      }
      int v = domain.index_of(tok);
      if (v < 0) fail(Err::UnknownSymbol, "token '" + tok + "' is not in the domain");
      s.push_back(v);
    }
    streams[port - 1] = std::move(s);
  }
  for (Stream& s : streams) s.resize(horizon, kTick);
  return streams;
}

std::string print_streams(const std::vector<Stream>& streams, const Domain& domain) {
  std::string out;
  for (size_t i = 0; i < streams.size(); ++i) {
    out += std::to_string(i + 1) + ":";
    for (Value v : streams[i]) {
      out += ' ';
      out += v == kTick ? "~" : domain.symbols[v];
    }
    out += '\n';
  }
  return out;
}

}  // namespace bna
