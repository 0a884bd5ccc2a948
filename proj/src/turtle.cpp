// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/turtle.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "treeltqp/errors.hpp"
#include "treeltqp/vocab.hpp"

namespace ltqp {

namespace {

bool has_scheme(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const char c = s[i];
    if (c == ':') return true;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
      return false;
  }
  return false;
}

// Position right after "scheme://authority" in an absolute IRI, or npos.
std::size_t path_start(const std::string& iri) {
  auto scheme_end = iri.find("://");
  if (scheme_end == std::string::npos) {
    auto colon = iri.find(':');
    return colon == std::string::npos ? std::string::npos : colon + 1;
  }
  auto slash = iri.find('/', scheme_end + 3);
  return slash == std::string::npos ? iri.size() : slash;
}

std::string remove_dot_segments(const std::string& path) {
  std::vector<std::string> segs;
  std::size_t i = 0;
  while (i <= path.size()) {
    auto next = path.find('/', i);
    std::string seg = next == std::string::npos ? path.substr(i) : path.substr(i, next - i);
    if (seg == "..") {
      if (!segs.empty() && !segs.back().empty()) segs.pop_back();
    } else if (seg != ".") {
      segs.push_back(seg);
    }
    if (next == std::string::npos) break;
    i = next + 1;
  }
  std::string out;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (k) out += '/';
    out += segs[k];
  }
  if (!path.empty() && path.back() == '/' && (out.empty() || out.back() != '/')) out += '/';
  return out;
}

}  // namespace

std::string resolve_iri(const std::string& base, const std::string& ref) {
  if (ref.empty()) return base;
  if (has_scheme(ref)) return ref;
  if (ref[0] == '#') {
    auto frag = base.find('#');
    return (frag == std::string::npos ? base : base.substr(0, frag)) + ref;
  }
  const auto ps = path_start(base);
  if (ref.rfind("//", 0) == 0) {
    auto scheme_end = base.find(':');
    return base.substr(0, scheme_end + 1) + ref;
  }
  if (ref[0] == '/') {
    if (ps == std::string::npos) return ref;
    return base.substr(0, ps) + remove_dot_segments(ref.substr(1)).insert(0, "/");
  }
  // Merge with the base path minus its last segment.
  std::string base_path = ps == std::string::npos ? "" : base.substr(ps);
  auto frag = base_path.find('#');
  if (frag != std::string::npos) base_path.resize(frag);
  auto last = base_path.rfind('/');
  std::string dir = last == std::string::npos ? "/" : base_path.substr(0, last + 1);
  std::string prefix = ps == std::string::npos ? base : base.substr(0, ps);
  return prefix + remove_dot_segments(dir + ref).insert(0, dir[0] == '/' ? "" : "/");
}

std::string relativize_iri(const std::string& iri, const std::string& base) {
  if (iri == base) return "";
  auto last = base.rfind('/');
  if (last != std::string::npos) {
    const std::string dir = base.substr(0, last + 1);
    if (iri.size() > dir.size() && iri.rfind(dir, 0) == 0) {
      const std::string tail = iri.substr(dir.size());
      if (tail.find('/') == std::string::npos && tail.find('#') == std::string::npos) return tail;
    }
  }
  return iri;
}

namespace {

enum class TokenType {
  Iri,
  PName,
  BlankLabel,
  String,
  Integer,
  Decimal,
  Double,
  LangTag,
  HatHat,
  Dot,
  Semicolon,
  Comma,
  LBracket,
  RBracket,
  LParen,
  RParen,
  A,
  PrefixDirective,
  BaseDirective,
  Eof
};

struct Token {
  TokenType type = TokenType::Eof;
  std::string text;
  int line = 1;
  int col = 1;
};

bool pname_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.col = col_;
    if (pos_ >= text_.size()) {
      tok.type = TokenType::Eof;
      return tok;
    }
    const char c = text_[pos_];
    switch (c) {
      case '<': return lex_iri(tok);
      case '"': return lex_string(tok);
      case '@': return lex_at(tok);
      case '^':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '^') {
          advance(); advance();
          tok.type = TokenType::HatHat;
          return tok;
        }
        fail("unexpected '^'", tok);
      case '.':
        // A dot can start a decimal (".5"); as a separator it is followed
        // by whitespace or a structural character.
        if (pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
          return lex_number(tok);
        advance();
        tok.type = TokenType::Dot;
        return tok;
      case ';': advance(); tok.type = TokenType::Semicolon; return tok;
      case ',': advance(); tok.type = TokenType::Comma; return tok;
      case '[': advance(); tok.type = TokenType::LBracket; return tok;
      case ']': advance(); tok.type = TokenType::RBracket; return tok;
      case '(': advance(); tok.type = TokenType::LParen; return tok;
      case ')': advance(); tok.type = TokenType::RParen; return tok;
      case '{':
      case '}':
        throw UnsupportedFeatureError("named graphs are not supported", tok.line, tok.col);
      case '_':
        return lex_blank(tok);
      default:
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
          return lex_number(tok);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == ':') return lex_pname(tok);
        fail(std::string("unexpected character '") + c + "'", tok);
    }
    return tok;  // unreachable
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& at) {
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
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  Token lex_iri(Token tok) {
    advance();  // '<'
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '>') {
      if (text_[pos_] == '\n') fail("unterminated IRI", tok);
      out += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size()) fail("unterminated IRI", tok);
    advance();  // '>'
    tok.type = TokenType::Iri;
    tok.text = std::move(out);
    return tok;
  }

  Token lex_string(Token tok) {
    advance();  // '"'
    if (pos_ + 1 < text_.size() && text_[pos_] == '"' && text_[pos_ + 1] == '"')
      throw UnsupportedFeatureError("long string literals are not supported", tok.line, tok.col);
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_];
      if (c == '\n') fail("unterminated string literal", tok);
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
    advance();  // closing '"'
    tok.type = TokenType::String;
    tok.text = std::move(out);
    return tok;
  }

  Token lex_at(Token tok) {
    advance();  // '@'
    std::string word;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
      word += text_[pos_];
      advance();
    }
    if (word == "prefix") {
      tok.type = TokenType::PrefixDirective;
    } else if (word == "base") {
      tok.type = TokenType::BaseDirective;
    } else if (!word.empty()) {
      tok.type = TokenType::LangTag;
      tok.text = std::move(word);
    } else {
      fail("dangling '@'", tok);
    }
    return tok;
  }

  Token lex_blank(Token tok) {
    advance();  // '_'
    if (pos_ >= text_.size() || text_[pos_] != ':') fail("expected ':' after '_'", tok);
    advance();
    std::string label;
    while (pos_ < text_.size() && pname_char(text_[pos_])) {
      label += text_[pos_];
      advance();
    }
    if (label.empty() || label.back() == '.') fail("invalid blank node label", tok);
    tok.type = TokenType::BlankLabel;
    tok.text = std::move(label);
    return tok;
  }

  Token lex_number(Token tok) {
    std::string out;
    bool saw_dot = false, saw_exp = false;
    if (text_[pos_] == '+' || text_[pos_] == '-') {
      out += text_[pos_];
      advance();
    }
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        out += c;
        advance();
      } else if (c == '.' && !saw_dot && !saw_exp && pos_ + 1 < text_.size() &&
                 std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        saw_dot = true;
        out += c;
        advance();
      } else if ((c == 'e' || c == 'E') && !saw_exp) {
        saw_exp = true;
        out += c;
        advance();
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
          out += text_[pos_];
          advance();
        }
      } else {
        break;
      }
    }
    if (out.empty() || out == "+" || out == "-") fail("malformed number", tok);
    tok.type = saw_exp ? TokenType::Double : (saw_dot ? TokenType::Decimal : TokenType::Integer);
    tok.text = std::move(out);
    return tok;
  }

  Token lex_pname(Token tok) {
    std::string out;
    while (pos_ < text_.size() && pname_char(text_[pos_])) {
      out += text_[pos_];
      advance();
    }
    if (pos_ < text_.size() && text_[pos_] == ':') {
      out += ':';
      advance();
      while (pos_ < text_.size() && pname_char(text_[pos_])) {
        out += text_[pos_];
        advance();
      }
      tok.type = TokenType::PName;
      tok.text = std::move(out);
      return tok;
    }
    if (out == "a") {
      tok.type = TokenType::A;
      return tok;
    }
    fail("unexpected token '" + out + "'", tok);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class TurtleParser {
 public:
  TurtleParser(std::string_view text, std::string base) : lexer_(text), base_(std::move(base)) {
    consume();
  }

  std::vector<Triple> parse() {
    while (cur_.type != TokenType::Eof) {
      if (cur_.type == TokenType::PrefixDirective) {
        parse_prefix();
      } else if (cur_.type == TokenType::BaseDirective) {
        parse_base();
      } else {
        parse_triples();
        expect(TokenType::Dot, "expected '.' after triples");
      }
    }
    return std::move(out_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, cur_.line, cur_.col); }

  void consume() { cur_ = lexer_.next(); }

  Token expect(TokenType t, const std::string& msg) {
    if (cur_.type != t) fail(msg);
    Token tok = cur_;
    consume();
    return tok;
  }

  void parse_prefix() {
    consume();
    Token name = expect(TokenType::PName, "expected prefix name");
    if (name.text.back() != ':' || name.text.find(':') != name.text.size() - 1)
      throw ParseError("malformed prefix declaration", name.line, name.col);
    Token iri = expect(TokenType::Iri, "expected IRI in prefix declaration");
    expect(TokenType::Dot, "expected '.' after prefix declaration");
    prefixes_[name.text.substr(0, name.text.size() - 1)] = resolve_iri(base_, iri.text);
  }

  void parse_base() {
    consume();
    Token iri = expect(TokenType::Iri, "expected IRI in base declaration");
    expect(TokenType::Dot, "expected '.' after base declaration");
    base_ = resolve_iri(base_, iri.text);
  }

  std::string expand_pname(const Token& tok) {
    auto colon = tok.text.find(':');
    const std::string prefix = tok.text.substr(0, colon);
    const std::string local = tok.text.substr(colon + 1);
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end())
      throw ParseError("undeclared prefix '" + prefix + ":'", tok.line, tok.col);
    return it->second + local;
  }

  Term parse_subject() {
    switch (cur_.type) {
      case TokenType::Iri: {
        Term t = Term::iri(resolve_iri(base_, cur_.text));
        consume();
        return t;
      }
      case TokenType::PName: {
        Term t = Term::iri(expand_pname(cur_));
        consume();
        return t;
      }
      case TokenType::BlankLabel: {
        Term t = Term::blank(cur_.text);
        consume();
        return t;
      }
      case TokenType::LBracket:
        return parse_anon();
      case TokenType::LParen:
        throw UnsupportedFeatureError("collections are not supported", cur_.line, cur_.col);
      default:
        fail("expected subject");
    }
  }

  Term parse_predicate() {
    switch (cur_.type) {
      case TokenType::A: {
        consume();
        return Term::iri(vocab::kRdfType);
      }
      case TokenType::Iri: {
        Term t = Term::iri(resolve_iri(base_, cur_.text));
        consume();
        return t;
      }
      case TokenType::PName: {
        Term t = Term::iri(expand_pname(cur_));
        consume();
        return t;
      }
      default:
        fail("expected predicate");
    }
  }

  // Emits (subject, predicate, object); for an anonymous blank object the
  // containing triple is emitted before the blank node's own properties.
  void parse_object_into(const Term& subject, const Term& predicate) {
    if (cur_.type == TokenType::LBracket) {
      consume();
      Term node = Term::blank("~b" + std::to_string(blank_counter_++));
      out_.push_back({subject, predicate, node});
      if (cur_.type != TokenType::RBracket) parse_predicate_object_list(node);
      expect(TokenType::RBracket, "expected ']'");
      return;
    }
    out_.push_back({subject, predicate, parse_object()});
  }

  Term parse_object() {
    switch (cur_.type) {
      case TokenType::Iri:
      case TokenType::PName:
      case TokenType::BlankLabel:
      case TokenType::LBracket:
      case TokenType::LParen:
        return parse_subject();
      case TokenType::String: {
        std::string lex = cur_.text;
        consume();
        if (cur_.type == TokenType::HatHat) {
          consume();
          std::string dt;
          if (cur_.type == TokenType::Iri) {
            dt = resolve_iri(base_, cur_.text);
          } else if (cur_.type == TokenType::PName) {
            dt = expand_pname(cur_);
          } else {
            fail("expected datatype IRI after '^^'");
          }
          consume();
          return Term::literal(std::move(lex), std::move(dt));
        }
        if (cur_.type == TokenType::LangTag) {
          std::string lang = cur_.text;
          consume();
          return Term::lang_literal(std::move(lex), std::move(lang));
        }
        return Term::literal(std::move(lex));
      }
      case TokenType::Integer: {
        Term t = Term::literal(cur_.text, vocab::kXsdInteger);
        consume();
        return t;
      }
      case TokenType::Decimal: {
        Term t = Term::literal(cur_.text, vocab::kXsdDecimal);
        consume();
        return t;
      }
      case TokenType::Double: {
        Term t = Term::literal(cur_.text, vocab::kXsdDouble);
        consume();
        return t;
      }
      default:
        fail("expected object");
    }
  }

  Term parse_anon() {
    consume();  // '['
    Term node = Term::blank("~b" + std::to_string(blank_counter_++));
    if (cur_.type != TokenType::RBracket) parse_predicate_object_list(node);
    expect(TokenType::RBracket, "expected ']'");
    return node;
  }

  void parse_predicate_object_list(const Term& subject) {
    while (true) {
      Term predicate = parse_predicate();
      while (true) {
        parse_object_into(subject, predicate);
        if (cur_.type != TokenType::Comma) break;
        consume();
      }
      if (cur_.type != TokenType::Semicolon) break;
      // Swallow repeated / trailing semicolons.
      while (cur_.type == TokenType::Semicolon) consume();
      if (cur_.type == TokenType::Dot || cur_.type == TokenType::RBracket ||
          cur_.type == TokenType::Eof)
        break;
    }
  }

  void parse_triples() {
    Term subject = parse_subject();
    // "[...] ." with no further predicates is legal for an anon subject.
    if (subject.is_blank() && cur_.type == TokenType::Dot) return;
    parse_predicate_object_list(subject);
  }

  Lexer lexer_;
  Token cur_;
  std::string base_;
  std::unordered_map<std::string, std::string> prefixes_;
  std::vector<Triple> out_;
  int blank_counter_ = 0;
};

}  // namespace

std::vector<Triple> parse_turtle(std::string_view text, const std::string& base) {
  return TurtleParser(text, base).parse();
}

namespace {

const std::vector<std::pair<std::string, std::string>>& writer_prefixes() {
  static const std::vector<std::pair<std::string, std::string>> kPrefixes = {
      {"rdf", vocab::kRdfNs},   {"xsd", vocab::kXsdNs}, {"tree", vocab::kTreeNs},
      {"saref", vocab::kSarefNs}, {"ex", vocab::kExNs},
  };
  return kPrefixes;
}

bool valid_local_name(const std::string& s) {
  if (s.empty() || s.front() == '.' || s.back() == '.') return false;
  for (char c : s) {
    if (!pname_char(c)) return false;
  }
  return true;
}

std::string escape_string(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

class TurtleWriter {
 public:
  TurtleWriter(const std::vector<Triple>& triples, std::string base)
      : base_(std::move(base)) {
    for (const Triple& t : triples) {
      auto [it, fresh] = by_subject_.try_emplace(t.subject);
      if (fresh) subject_order_.push_back(t.subject);
      it->second.push_back({t.predicate, t.object});
      if (t.object.is_blank()) ++object_refs_[t.object];
    }
  }

  std::string write() {
    for (const auto& [name, ns] : writer_prefixes())
      out_ << "@prefix " << name << ": <" << ns << "> .\n";
    out_ << "\n";
    // Blank subjects referenced exactly once are deferred so their unique
    // referencer can inline them; a second pass catches any left dangling
    // (e.g. blank-only cycles).
    for (const Term& subject : subject_order_) {
      if (written_.count(subject) || consumed_.count(subject)) continue;
      if (inlinable(subject)) continue;
      write_subject(subject);
    }
    for (const Term& subject : subject_order_) {
      if (written_.count(subject) || consumed_.count(subject)) continue;
      write_subject(subject);
    }
    return out_.str();
  }

 private:
  bool inlinable(const Term& t) const {
    if (!t.is_blank()) return false;
    auto refs = object_refs_.find(t);
    return refs != object_refs_.end() && refs->second == 1 && by_subject_.count(t) &&
           !in_progress_.count(t);
  }

  void write_subject(const Term& subject) {
    written_.insert(subject);
    in_progress_.insert(subject);
    out_ << subject_text(subject) << " ";
    write_predicate_objects(by_subject_.at(subject));
    out_ << " .\n";
    in_progress_.erase(subject);
  }

  void write_predicate_objects(const std::vector<std::pair<Term, Term>>& pos) {
    // Consecutive same-predicate entries fold into an object list.
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (i) out_ << " ;\n    ";
      out_ << predicate_text(pos[i].first) << " " << object_text(pos[i].second);
      while (i + 1 < pos.size() && pos[i + 1].first == pos[i].first) {
        ++i;
        out_ << " , " << object_text(pos[i].second);
      }
    }
  }

  std::string subject_text(const Term& t) {
    if (t.is_blank()) return "_:" + blank_label(t);
    return term_text(t);
  }

  std::string predicate_text(const Term& t) {
    if (t.value == vocab::kRdfType) return "a";
    return term_text(t);
  }

  std::string object_text(const Term& t) {
    if (t.is_blank()) {
      if (inlinable(t) && !written_.count(t)) {
        in_progress_.insert(t);
        consumed_.insert(t);
        written_.insert(t);
        std::ostringstream saved;
        saved.swap(out_);
        out_ << "[ ";
        write_predicate_objects(by_subject_.at(t));
        out_ << " ]";
        std::string text = out_.str();
        saved.swap(out_);
        in_progress_.erase(t);
        return text;
      }
      return "_:" + blank_label(t);
    }
    return term_text(t);
  }

  std::string term_text(const Term& t) {
    switch (t.kind) {
      case TermKind::Iri: {
        for (const auto& [name, ns] : writer_prefixes()) {
          if (t.value.size() > ns.size() && t.value.rfind(ns, 0) == 0) {
            std::string local = t.value.substr(ns.size());
            if (valid_local_name(local)) return name + ":" + local;
          }
        }
        return "<" + relativize_iri(t.value, base_) + ">";
      }
      case TermKind::Literal: {
        std::string text = "\"" + escape_string(t.value) + "\"";
        if (!t.datatype.empty()) {
          text += "^^" + term_text(Term::iri(t.datatype));
        } else if (!t.language.empty()) {
          text += "@" + t.language;
        }
        return text;
      }
      case TermKind::Blank:
        return "_:" + blank_label(t);
    }
    return "";
  }

  std::string blank_label(const Term& t) {
    auto [it, fresh] = blank_names_.try_emplace(t);
    if (fresh) it->second = "g" + std::to_string(blank_names_.size() - 1);
    return it->second;
  }

  std::string base_;
  std::unordered_map<Term, std::vector<std::pair<Term, Term>>, TermHash> by_subject_;
  std::vector<Term> subject_order_;
  std::unordered_map<Term, int, TermHash> object_refs_;
  std::unordered_set<Term, TermHash> consumed_;
  std::unordered_set<Term, TermHash> written_;
  std::unordered_set<Term, TermHash> in_progress_;
  std::unordered_map<Term, std::string, TermHash> blank_names_;
  std::ostringstream out_;
};

}  // namespace

std::string serialize_turtle(const std::vector<Triple>& triples, const std::string& base) {
  return TurtleWriter(triples, base).write();
}

}  // namespace ltqp
