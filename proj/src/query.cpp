// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/query.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "treeltqp/errors.hpp"
#include "treeltqp/turtle.hpp"
#include "treeltqp/value.hpp"
#include "treeltqp/vocab.hpp"

namespace ltqp {

namespace {

const std::set<std::string>& unsupported_keywords() {
  static const std::set<std::string> kWords = {
      "OPTIONAL", "UNION",  "MINUS",   "GRAPH",  "SERVICE", "BIND",     "VALUES",
      "ORDER",    "GROUP",  "HAVING",  "LIMIT",  "OFFSET",  "DISTINCT", "REDUCED",
      "CONSTRUCT", "ASK",   "DESCRIBE", "EXISTS", "NOT"};
  return kWords;
}

enum class TokType {
  Keyword,   // SELECT, WHERE, FILTER, PREFIX, a
  Var,       // ?name
  Iri,
  PName,
  String,
  Integer,
  Decimal,
  Star,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Dot,
  HatHat,
  AndAnd,
  OrOr,
  Bang,
  CmpOp,     // = != < <= > >=
  Eof
};

struct QTok {
  TokType type = TokType::Eof;
  std::string text;
  int line = 1;
  int col = 1;
};

class QueryLexer {
 public:
  explicit QueryLexer(std::string_view text) : text_(text) {}

  QTok next() {
    skip_space();
    QTok tok;
    tok.line = line_;
    tok.col = col_;
    if (pos_ >= text_.size()) return tok;
    const char c = text_[pos_];
    if (c == '?' || c == '$') {
      advance();
      tok.type = TokType::Var;
      tok.text = read_name();
      if (tok.text.empty()) fail("expected variable name after '?'", tok);
      return tok;
    }
    if (c == '<') {
      // Either an IRI or a comparison operator; IRIs never start with '=',
      // a space, or a digit-free '<' followed by '='.
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
        advance(); advance();
        tok.type = TokType::CmpOp;
        tok.text = "<=";
        return tok;
      }
      if (looks_like_iri()) return lex_iri(tok);
      advance();
      tok.type = TokType::CmpOp;
      tok.text = "<";
      return tok;
    }
    if (c == '>') {
      advance();
      tok.type = TokType::CmpOp;
      if (pos_ < text_.size() && text_[pos_] == '=') {
        advance();
        tok.text = ">=";
      } else {
        tok.text = ">";
      }
      return tok;
    }
    if (c == '=') {
      advance();
      tok.type = TokType::CmpOp;
      tok.text = "=";
      return tok;
    }
    if (c == '!') {
      advance();
      if (pos_ < text_.size() && text_[pos_] == '=') {
        advance();
        tok.type = TokType::CmpOp;
        tok.text = "!=";
      } else {
        tok.type = TokType::Bang;
      }
      return tok;
    }
    if (c == '&') {
      advance();
      if (pos_ >= text_.size() || text_[pos_] != '&') fail("expected '&&'", tok);
      advance();
      tok.type = TokType::AndAnd;
      return tok;
    }
    if (c == '|') {
      advance();
      if (pos_ >= text_.size() || text_[pos_] != '|') fail("expected '||'", tok);
      advance();
      tok.type = TokType::OrOr;
      return tok;
    }
    switch (c) {
      case '*': advance(); tok.type = TokType::Star; return tok;
      case '{': advance(); tok.type = TokType::LBrace; return tok;
      case '}': advance(); tok.type = TokType::RBrace; return tok;
      case '(': advance(); tok.type = TokType::LParen; return tok;
      case ')': advance(); tok.type = TokType::RParen; return tok;
      case '.':
        if (pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
          return lex_number(tok);
        advance();
        tok.type = TokType::Dot;
        return tok;
      case '"': return lex_string(tok);
      case '^':
        advance();
        if (pos_ >= text_.size() || text_[pos_] != '^') fail("expected '^^'", tok);
        advance();
        tok.type = TokType::HatHat;
        return tok;
      default: break;
    }
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
      return lex_number(tok);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':')
      return lex_word(tok);
    fail(std::string("unexpected character '") + c + "'", tok);
    return tok;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const QTok& at) {
    throw ParseError(msg, at.line, at.col);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool looks_like_iri() const {
    for (std::size_t i = pos_ + 1; i < text_.size(); ++i) {
      const char c = text_[i];
      if (c == '>') return true;
      if (std::isspace(static_cast<unsigned char>(c)) || c == '"') return false;
    }
    return false;
  }

  std::string read_name() {
    std::string out;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      out += text_[pos_];
      advance();
    }
    return out;
  }

  QTok lex_iri(QTok tok) {
    advance();  // '<'
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '>') {
      out += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size()) fail("unterminated IRI", tok);
    advance();
    tok.type = TokType::Iri;
    tok.text = std::move(out);
    return tok;
  }

  QTok lex_string(QTok tok) {
    advance();  // '"'
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_];
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) fail("unterminated escape", tok);
        switch (text_[pos_]) {
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail("unsupported escape sequence", tok);
        }
        advance();
        continue;
      }
      out += c;
      advance();
    }
    if (pos_ >= text_.size()) fail("unterminated string literal", tok);
    advance();
    tok.type = TokType::String;
    tok.text = std::move(out);
    return tok;
  }

  QTok lex_number(QTok tok) {
    std::string out;
    bool saw_dot = false;
    if (text_[pos_] == '+' || text_[pos_] == '-') {
      out += text_[pos_];
      advance();
    }
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            (text_[pos_] == '.' && !saw_dot))) {
      if (text_[pos_] == '.') saw_dot = true;
      out += text_[pos_];
      advance();
    }
    if (out.empty() || out == "+" || out == "-" || out.back() == '.')
      fail("malformed number", tok);
    tok.type = saw_dot ? TokType::Decimal : TokType::Integer;
    tok.text = std::move(out);
    return tok;
  }

  QTok lex_word(QTok tok) {
    std::string out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
        // A '.' ends a word unless it sits inside a prefixed local name.
        if (c == '.' && (pos_ + 1 >= text_.size() ||
                         !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1]))))
          break;
        out += c;
        advance();
      } else if (c == ':') {
        out += c;
        advance();
      } else {
        break;
      }
    }
    if (out.find(':') != std::string::npos) {
      tok.type = TokType::PName;
    } else {
      tok.type = TokType::Keyword;
    }
    tok.text = std::move(out);
    return tok;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : lexer_(text) { consume(); }

  Query parse() {
    parse_prologue();
    parse_select();
    parse_where();
    while (is_keyword("FILTER")) parse_filter();
    if (cur_.type != TokType::Eof) fail("unexpected trailing input");
    finish();
    return std::move(query_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur_.line, cur_.col); }

  void consume() {
    cur_ = lexer_.next();
    if (cur_.type == TokType::Keyword) {
      const std::string up = upper(cur_.text);
      if (unsupported_keywords().count(up))
        throw UnsupportedFeatureError("unsupported query feature: " + cur_.text, cur_.line,
                                      cur_.col);
    }
  }

  bool is_keyword(const std::string& word) const {
    return cur_.type == TokType::Keyword && upper(cur_.text) == word;
  }

  void parse_prologue() {
    while (is_keyword("PREFIX")) {
      consume();
      if (cur_.type != TokType::PName || cur_.text.back() != ':')
        fail("expected prefix name in PREFIX declaration");
      const std::string prefix = cur_.text.substr(0, cur_.text.size() - 1);
      consume();
      if (cur_.type != TokType::Iri) fail("expected IRI in PREFIX declaration");
      prefixes_[prefix] = cur_.text;
      consume();
    }
  }

  void parse_select() {
    if (!is_keyword("SELECT")) fail("expected SELECT");
    consume();
    if (cur_.type == TokType::Star) {
      select_star_ = true;
      consume();
      return;
    }
    while (cur_.type == TokType::Var) {
      query_.projected.push_back(cur_.text);
      consume();
    }
    if (query_.projected.empty()) fail("expected projection variables or *");
  }

  void parse_where() {
    if (!is_keyword("WHERE")) fail("expected WHERE");
    consume();
    if (cur_.type != TokType::LBrace) fail("expected '{' after WHERE");
    consume();
    while (cur_.type != TokType::RBrace) {
      if (cur_.type == TokType::Eof) fail("unterminated WHERE block");
      if (is_keyword("FILTER")) {
        parse_filter();
        continue;
      }
      parse_pattern();
      if (cur_.type == TokType::Dot) consume();
    }
    consume();  // '}'
    if (query_.bgp.empty()) fail("WHERE block contains no triple patterns");
  }

  void parse_pattern() {
    TriplePattern tp;
    tp.subject = parse_node(/*predicate_position=*/false);
    tp.predicate = parse_node(/*predicate_position=*/true);
    tp.object = parse_node(/*predicate_position=*/false);
    query_.bgp.push_back(std::move(tp));
  }

  PatternNode parse_node(bool predicate_position) {
    switch (cur_.type) {
      case TokType::Var: {
        PatternNode n = PatternNode::variable(cur_.text);
        consume();
        return n;
      }
      case TokType::Iri: {
        PatternNode n = PatternNode::constant(Term::iri(cur_.text));
        consume();
        return n;
      }
      case TokType::PName: {
        PatternNode n = PatternNode::constant(Term::iri(expand_pname(cur_.text)));
        consume();
        return n;
      }
      case TokType::Keyword:
        if (cur_.text == "a" && predicate_position) {
          consume();
          return PatternNode::constant(Term::iri(vocab::kRdfType));
        }
        fail("unexpected token '" + cur_.text + "' in triple pattern");
      case TokType::String:
      case TokType::Integer:
      case TokType::Decimal:
        if (predicate_position) fail("literal in predicate position");
        return PatternNode::constant(parse_literal());
      default:
        fail("expected term or variable in triple pattern");
    }
  }

  Term parse_literal() {
    if (cur_.type == TokType::Integer) {
      Term t = Term::literal(cur_.text, vocab::kXsdInteger);
      consume();
      return t;
    }
    if (cur_.type == TokType::Decimal) {
      Term t = Term::literal(cur_.text, vocab::kXsdDecimal);
      consume();
      return t;
    }
    std::string lex = cur_.text;
    consume();
    if (cur_.type == TokType::HatHat) {
      consume();
      std::string dt;
      if (cur_.type == TokType::Iri) {
        dt = cur_.text;
      } else if (cur_.type == TokType::PName) {
        dt = expand_pname(cur_.text);
      } else {
        fail("expected datatype IRI after '^^'");
      }
      consume();
      return Term::literal(std::move(lex), std::move(dt));
    }
    return Term::literal(std::move(lex));
  }

  std::string expand_pname(const std::string& pname) {
    const auto colon = pname.find(':');
    const std::string prefix = pname.substr(0, colon);
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + ":'");
    return it->second + pname.substr(colon + 1);
  }

  void parse_filter() {
    consume();  // FILTER
    if (cur_.type != TokType::LParen) fail("expected '(' after FILTER");
    consume();
    ConstraintExpr expr = parse_or();
    if (cur_.type != TokType::RParen) fail("expected ')' closing FILTER");
    consume();
    filters_.push_back(std::move(expr));
  }

  ConstraintExpr parse_or() {
    ConstraintExpr left = parse_and();
    while (cur_.type == TokType::OrOr) {
      consume();
      left = ConstraintExpr::disjunction(std::move(left), parse_and());
    }
    return left;
  }

  ConstraintExpr parse_and() {
    ConstraintExpr left = parse_unary();
    while (cur_.type == TokType::AndAnd) {
      consume();
      left = ConstraintExpr::conjunction(std::move(left), parse_unary());
    }
    return left;
  }

  ConstraintExpr parse_unary() {
    if (cur_.type == TokType::Bang) {
      consume();
      return ConstraintExpr::negation(parse_unary());
    }
    if (cur_.type == TokType::LParen) {
      consume();
      ConstraintExpr inner = parse_or();
      if (cur_.type != TokType::RParen) fail("expected ')'");
      consume();
      return inner;
    }
    return parse_comparison();
  }

  ConstraintExpr parse_comparison() {
    const bool left_is_var = cur_.type == TokType::Var;
    std::string var;
    TypedValue constant;
    if (left_is_var) {
      var = cur_.text;
      consume();
    } else {
      constant = parse_filter_constant();
    }
    if (cur_.type != TokType::CmpOp) fail("expected comparison operator");
    const std::string op = cur_.text;
    consume();
    if (left_is_var) {
      constant = parse_filter_constant();
    } else {
      if (cur_.type != TokType::Var) fail("comparisons must involve a variable and a constant");
      var = cur_.text;
      consume();
    }
    Cmp cmp;
    if (op == "<") cmp = Cmp::Lt;
    else if (op == "<=") cmp = Cmp::Le;
    else if (op == ">") cmp = Cmp::Gt;
    else if (op == ">=") cmp = Cmp::Ge;
    else if (op == "=") cmp = Cmp::Eq;
    else cmp = Cmp::Ne;
    if (!left_is_var) {
      // const OP ?v  ==  &v flipped-OP const
      switch (cmp) {
        case Cmp::Lt: cmp = Cmp::Gt; break;
        case Cmp::Le: cmp = Cmp::Ge; break;
        case Cmp::Gt: cmp = Cmp::Lt; break;
        case Cmp::Ge: cmp = Cmp::Le; break;
        default: break;
      }
    }
    filter_vars_.insert(var);
    return ConstraintExpr::atom(std::move(var), cmp, constant);
  }

  TypedValue parse_filter_constant() {
    if (cur_.type == TokType::Var) fail("comparisons must involve a variable and a constant");
    const QTok at = cur_;
    Term lit = parse_literal();
    auto value = typed_value_of(lit);
    if (!value)
      throw UnsupportedFeatureError(
          "filter constants must be xsd:dateTime or numeric, got " + to_string(lit), at.line,
          at.col);
    return *value;
  }

  void finish() {
    std::vector<std::string> bgp_vars;
    auto note = [&bgp_vars](const PatternNode& n) {
      if (n.is_var() && std::find(bgp_vars.begin(), bgp_vars.end(), *n.var) == bgp_vars.end())
        bgp_vars.push_back(*n.var);
    };
    for (const TriplePattern& tp : query_.bgp) {
      note(tp.subject);
      note(tp.predicate);
      note(tp.object);
    }
    if (select_star_) {
      query_.projected = bgp_vars;
    } else {
      for (const std::string& v : query_.projected) {
        if (std::find(bgp_vars.begin(), bgp_vars.end(), v) == bgp_vars.end())
          throw ParseError("projected variable ?" + v + " does not occur in the bgp", 0, 0);
      }
    }
    for (const std::string& v : filter_vars_) {
      if (std::find(bgp_vars.begin(), bgp_vars.end(), v) == bgp_vars.end())
        throw ParseError("filter variable ?" + v + " does not occur in the bgp", 0, 0);
    }
    for (ConstraintExpr& f : filters_) {
      if (!query_.filter) {
        query_.filter = std::move(f);
      } else {
        query_.filter = ConstraintExpr::conjunction(std::move(*query_.filter), std::move(f));
      }
    }
  }

  QueryLexer lexer_;
  QTok cur_;
  Query query_;
  bool select_star_ = false;
  std::unordered_map<std::string, std::string> prefixes_;
  std::vector<ConstraintExpr> filters_;
  std::set<std::string> filter_vars_;
};

ConstraintExpr weaken_outside(const ConstraintExpr& nnf, const std::set<std::string>& keep) {
  switch (nnf.kind()) {
    case ConstraintExpr::Kind::True:
    case ConstraintExpr::Kind::False:
      return nnf;
    case ConstraintExpr::Kind::Atom:
      return keep.count(nnf.var()) ? nnf : ConstraintExpr::constant(true);
    case ConstraintExpr::Kind::Not:
      // NNF keeps negations only above constants; weakening leaves them be.
      return ConstraintExpr::negation(weaken_outside(nnf.children()[0], keep));
    case ConstraintExpr::Kind::And:
      return ConstraintExpr::conjunction(weaken_outside(nnf.children()[0], keep),
                                         weaken_outside(nnf.children()[1], keep));
    case ConstraintExpr::Kind::Or:
      return ConstraintExpr::disjunction(weaken_outside(nnf.children()[0], keep),
                                         weaken_outside(nnf.children()[1], keep));
  }
  return nnf;
}

}  // namespace

Query parse_query(std::string_view text) { return QueryParser(text).parse(); }

ConstraintExpr relevant_filter(const Query& q, const std::string& path) {
  if (!q.filter) return ConstraintExpr::constant(true);
  std::set<std::string> on_path;
  for (const TriplePattern& tp : q.bgp) {
    if (!tp.predicate.is_var() && tp.predicate.term == Term::iri(path) && tp.object.is_var())
      on_path.insert(*tp.object.var);
  }
  if (on_path.empty()) return ConstraintExpr::constant(true);
  return weaken_outside(q.filter->to_nnf(), on_path);
}

namespace {

using VarMap = std::unordered_map<std::string, Term>;

PatternSlot slot_for(const PatternNode& n, const VarMap& bound) {
  if (!n.is_var()) return n.term;
  auto it = bound.find(*n.var);
  if (it != bound.end()) return it->second;
  return std::nullopt;
}

void join_patterns(const Query& q, const TripleStore& store, std::size_t index, VarMap& bound,
                   std::vector<VarMap>& out, EvalStats& stats) {
  if (index == q.bgp.size()) {
    out.push_back(bound);
    return;
  }
  const TriplePattern& tp = q.bgp[index];
  const auto matches =
      store.match(slot_for(tp.subject, bound), slot_for(tp.predicate, bound),
                  slot_for(tp.object, bound));
  ++stats.match_calls;
  stats.rows_scanned += matches.size();
  for (const Triple& t : matches) {
    VarMap extended = bound;
    bool ok = true;
    auto bind = [&](const PatternNode& n, const Term& value) {
      if (!n.is_var()) return;
      auto [it, fresh] = extended.try_emplace(*n.var, value);
      if (!fresh && it->second != value) ok = false;
    };
    bind(tp.subject, t.subject);
    if (ok) bind(tp.predicate, t.predicate);
    if (ok) bind(tp.object, t.object);
    if (!ok) continue;
    join_patterns(q, store, index + 1, extended, out, stats);
  }
}

}  // namespace

std::vector<Binding> evaluate(const Query& q, const TripleStore& store, EvalStats* stats) {
  std::vector<VarMap> rows;
  VarMap empty;
  EvalStats local;
  join_patterns(q, store, 0, empty, rows, stats ? *stats : local);

  std::vector<Binding> out;
  for (const VarMap& row : rows) {
    if (q.filter) {
      auto verdict = q.filter->evaluate([&row](const std::string& var) {
        auto it = row.find(var);
        if (it == row.end()) return std::optional<TypedValue>{};
        return typed_value_of(it->second);
      });
      if (!verdict || !*verdict) continue;
    }
    Binding b;
    b.values.reserve(q.projected.size());
    for (const std::string& var : q.projected) {
      auto it = row.find(var);
      b.values.emplace_back(var, it == row.end() ? Term() : it->second);
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::string format_bindings(const Query& q, const std::vector<Binding>& bindings) {
  std::ostringstream out;
  for (std::size_t i = 0; i < q.projected.size(); ++i) {
    if (i) out << '\t';
    out << '?' << q.projected[i];
  }
  out << '\n';
  for (const Binding& b : bindings) {
    for (std::size_t i = 0; i < b.values.size(); ++i) {
      if (i) out << '\t';
      out << to_string(b.values[i].second);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ltqp
