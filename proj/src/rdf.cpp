// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#include "treeltqp/rdf.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace ltqp {

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::string escape_literal(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
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

}  // namespace

std::string to_string(const Term& t) {
  switch (t.kind) {
    case TermKind::Iri:
      return "<" + t.value + ">";
    case TermKind::Blank:
      return "_:" + t.value;
    case TermKind::Literal:
      if (!t.datatype.empty()) return "\"" + escape_literal(t.value) + "\"^^<" + t.datatype + ">";
      if (!t.language.empty()) return "\"" + escape_literal(t.value) + "\"@" + t.language;
      return "\"" + escape_literal(t.value) + "\"";
  }
  return "";
}

std::string to_string(const Triple& t) {
  return to_string(t.subject) + " " + to_string(t.predicate) + " " + to_string(t.object) + " .";
}

std::size_t TermHash::operator()(const Term& t) const {
  std::hash<std::string> h;
  std::size_t seed = static_cast<std::size_t>(t.kind);
  seed = combine(seed, h(t.value));
  seed = combine(seed, h(t.datatype));
  seed = combine(seed, h(t.language));
  return seed;
}

std::size_t TripleHash::operator()(const Triple& t) const {
  TermHash h;
  std::size_t seed = h(t.subject);
  seed = combine(seed, h(t.predicate));
  seed = combine(seed, h(t.object));
  return seed;
}

std::size_t TermPairHash::operator()(const std::pair<Term, Term>& p) const {
  TermHash h;
  return combine(h(p.first), h(p.second));
}

bool TripleStore::insert(const Triple& t) {
  std::unique_lock lock(mutex_);
  return insert_unlocked(t);
}

bool TripleStore::insert_unlocked(const Triple& t) {
  if (!present_.insert(t).second) return false;
  const auto idx = static_cast<std::uint32_t>(triples_.size());
  triples_.push_back(t);
  by_subject_[t.subject].push_back(idx);
  by_predicate_[t.predicate].push_back(idx);
  by_subject_predicate_[{t.subject, t.predicate}].push_back(idx);
  return true;
}

std::size_t TripleStore::insert_document(const std::string& doc_iri,
                                         const std::vector<Triple>& doc) {
  auto skolemize = [&doc_iri](const Term& t) {
    if (!t.is_blank()) return t;
    return Term::blank(doc_iri + "|" + t.value);
  };
  std::unique_lock lock(mutex_);
  std::size_t fresh = 0;
  for (const Triple& t : doc) {
    if (insert_unlocked({skolemize(t.subject), t.predicate, skolemize(t.object)})) ++fresh;
  }
  return fresh;
}

std::size_t TripleStore::size() const {
  std::shared_lock lock(mutex_);
  return triples_.size();
}

std::vector<Triple> TripleStore::match(const PatternSlot& s, const PatternSlot& p,
                                       const PatternSlot& o) const {
  std::shared_lock lock(mutex_);
  auto agrees = [&](const Triple& t) {
    return (!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o);
  };
  std::vector<Triple> out;
  const std::vector<std::uint32_t>* candidates = nullptr;
  if (s && p) {
    auto it = by_subject_predicate_.find({*s, *p});
    if (it == by_subject_predicate_.end()) return out;
    candidates = &it->second;
  } else if (s) {
    auto it = by_subject_.find(*s);
    if (it == by_subject_.end()) return out;
    candidates = &it->second;
  } else if (p) {
    auto it = by_predicate_.find(*p);
    if (it == by_predicate_.end()) return out;
    candidates = &it->second;
  }
  if (candidates) {
    for (std::uint32_t idx : *candidates) {
      if (agrees(triples_[idx])) out.push_back(triples_[idx]);
    }
  } else {
    for (const Triple& t : triples_) {
      if (agrees(t)) out.push_back(t);
    }
  }
  return out;
}

std::vector<Triple> TripleStore::triples() const {
  std::shared_lock lock(mutex_);
  return triples_;
}

}  // namespace ltqp
