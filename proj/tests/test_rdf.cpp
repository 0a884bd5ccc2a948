// Copyright 2026 The treeltqp authors
// Licensed under the Apache License, Version 2.0.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>

#include "oracles.hpp"
#include "treeltqp/errors.hpp"
#include "treeltqp/rdf.hpp"
#include "treeltqp/turtle.hpp"
#include "treeltqp/vocab.hpp"

using namespace ltqp;

namespace {

const std::string kBase = "http://example.org/current";

const char* kRelationDoc = R"ttl(
@prefix tree: <https://w3id.org/tree#> .
@prefix saref: <https://saref.etsi.org/core/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
@prefix ex: <http://example.org/> .

<> tree:relation [
  a tree:GreaterThanOrEqualToRelation ;
  tree:path saref:hasTimestamp ;
  tree:value "2022-01-03T09:47:59.000000"^^xsd:dateTime ;
  tree:node ex:nextNode
] .
)ttl";

}  // namespace

TEST_CASE("relation document parses to one relation triple plus four blank node triples") {
  const auto triples = parse_turtle(kRelationDoc, kBase);
  REQUIRE(triples.size() == 5);

  const Triple& rel = triples[0];
  CHECK(rel.subject == Term::iri(kBase));
  CHECK(rel.predicate == Term::iri(vocab::kTreeRelation));
  REQUIRE(rel.object.is_blank());

  const Term blank = rel.object;
  auto find_object = [&](const std::string& pred) -> Term {
    for (const Triple& t : triples) {
      if (t.subject == blank && t.predicate == Term::iri(pred)) return t.object;
    }
    return {};
  };
  CHECK(find_object(vocab::kRdfType) == Term::iri(vocab::kTreeGreaterThanOrEqualTo));
  CHECK(find_object(vocab::kTreePath) == Term::iri(vocab::kSarefHasTimestamp));
  CHECK(find_object(vocab::kTreeValue) ==
        Term::literal("2022-01-03T09:47:59.000000", vocab::kXsdDateTime));
  CHECK(find_object(vocab::kTreeNode) == Term::iri("http://example.org/nextNode"));
}

TEST_CASE("empty document parses to no triples") {
  CHECK(parse_turtle("", kBase).empty());
  CHECK(parse_turtle("# only a comment\n", kBase).empty());
}

TEST_CASE("object lists expand to one triple per object") {
  const auto triples = parse_turtle(
      "@prefix ex: <http://example.org/> .\n"
      "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
      "ex:s ex:p \"5\"^^xsd:integer , \"6\"^^xsd:integer .\n",
      kBase);
  REQUIRE(triples.size() == 2);
  CHECK(triples[0].subject == triples[1].subject);
  CHECK(triples[0].predicate == triples[1].predicate);
  CHECK(triples[0].object == Term::literal("5", vocab::kXsdInteger));
  CHECK(triples[1].object == Term::literal("6", vocab::kXsdInteger));
}

TEST_CASE("predicate lists share the subject") {
  const auto triples = parse_turtle(
      "@prefix ex: <http://example.org/> .\n"
      "ex:s ex:p ex:o ; ex:q ex:r .\n",
      kBase);
  REQUIRE(triples.size() == 2);
  CHECK(triples[0].subject == Term::iri("http://example.org/s"));
  CHECK(triples[1].subject == triples[0].subject);
  CHECK(triples[1].predicate == Term::iri("http://example.org/q"));
}

TEST_CASE("numeric shorthand and language tags") {
  const auto triples = parse_turtle(
      "@prefix ex: <http://example.org/> .\n"
      "ex:s ex:p 5 , 5.5 , \"hi\"@en .\n",
      kBase);
  REQUIRE(triples.size() == 3);
  CHECK(triples[0].object == Term::literal("5", vocab::kXsdInteger));
  CHECK(triples[1].object == Term::literal("5.5", vocab::kXsdDecimal));
  CHECK(triples[2].object == Term::lang_literal("hi", "en"));
}

TEST_CASE("relative IRIs resolve against the base") {
  const auto triples = parse_turtle("<leaf-0001.ttl> <p> <../other/doc.ttl> .\n",
                                    "http://example.org/data/root.ttl");
  REQUIRE(triples.size() == 1);
  CHECK(triples[0].subject == Term::iri("http://example.org/data/leaf-0001.ttl"));
  CHECK(triples[0].predicate == Term::iri("http://example.org/data/p"));
  CHECK(triples[0].object == Term::iri("http://example.org/other/doc.ttl"));
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_turtle("<s> <p> .\n", kBase);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.col() == 9);
  }
}

TEST_CASE("named graphs and collections are unsupported features") {
  CHECK_THROWS_AS(parse_turtle("<g> { <s> <p> <o> . }", kBase), UnsupportedFeatureError);
  CHECK_THROWS_AS(parse_turtle("<s> <p> ( <a> <b> ) .", kBase), UnsupportedFeatureError);
}

TEST_CASE("undeclared prefix is a parse error") {
  CHECK_THROWS_AS(parse_turtle("nope:s <p> <o> .", kBase), ParseError);
}

TEST_CASE("serializing no triples yields only prefix declarations") {
  const std::string text = serialize_turtle({}, kBase);
  CHECK(text.find("@prefix") != std::string::npos);
  CHECK(parse_turtle(text, kBase).empty());
}

TEST_CASE("single ground triple round-trips exactly") {
  const Triple t{Term::iri("http://example.org/s"), Term::iri("http://example.org/p"),
                 Term::literal("2022-01-03T09:47:59.000000", vocab::kXsdDateTime)};
  const auto parsed = parse_turtle(serialize_turtle({t}, kBase), kBase);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0] == t);
}

TEST_CASE("relation bundle round-trips up to blank relabeling") {
  const auto original = parse_turtle(kRelationDoc, kBase);
  const std::string text = serialize_turtle(original, kBase);
  const auto reparsed = parse_turtle(text, kBase);
  CHECK(oracles::canonical_graph(reparsed) == oracles::canonical_graph(original));
}

TEST_CASE("escaped characters survive a round-trip") {
  const Triple t{Term::iri("http://example.org/s"), Term::iri("http://example.org/p"),
                 Term::literal("line\nbreak \"and\" tab\\t\t")};
  const auto parsed = parse_turtle(serialize_turtle({t}, kBase), kBase);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0] == t);
}

TEST_CASE("store deduplicates on insert") {
  TripleStore store;
  const Triple t{Term::iri("http://example.org/s"), Term::iri("http://example.org/p"),
                 Term::iri("http://example.org/o")};
  CHECK(store.insert(t));
  CHECK(store.size() == 1);
  CHECK_FALSE(store.insert(t));
  CHECK(store.size() == 1);
}

TEST_CASE("document insertion skolemizes blank labels per document") {
  TripleStore store;
  const std::vector<Triple> doc = {{Term::blank("b0"), Term::iri("http://example.org/p"),
                                    Term::iri("http://example.org/o")}};
  store.insert_document("http://example.org/d1", doc);
  store.insert_document("http://example.org/d2", doc);
  CHECK(store.size() == 2);
  // Re-inserting the same document is a no-op.
  store.insert_document("http://example.org/d1", doc);
  CHECK(store.size() == 2);
}

TEST_CASE("match on an empty store is empty") {
  TripleStore store;
  CHECK(store.match(std::nullopt, std::nullopt, std::nullopt).empty());
}

TEST_CASE("match finds the link target in a relation document") {
  TripleStore store;
  store.insert_document(kBase, parse_turtle(kRelationDoc, kBase));
  const auto hits = store.match(std::nullopt, Term::iri(vocab::kTreeNode), std::nullopt);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].object == Term::iri("http://example.org/nextNode"));
}

TEST_CASE("subject match returns exactly the subject's triples") {
  TripleStore store;
  const Term x = Term::iri("http://example.org/x");
  const Term y = Term::iri("http://example.org/y");
  for (int i = 0; i < 3; ++i)
    store.insert({x, Term::iri("http://example.org/p" + std::to_string(i)), y});
  for (int i = 0; i < 2; ++i)
    store.insert({y, Term::iri("http://example.org/p" + std::to_string(i)), x});
  const auto hits = store.match(x, std::nullopt, std::nullopt);
  CHECK(hits.size() == 3);
  for (const Triple& t : hits) CHECK(t.subject == x);
}

TEST_CASE("indexed match equals a linear scan on random patterns") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> subject_pick(0, 199);
  std::uniform_int_distribution<int> predicate_pick(0, 9);
  std::uniform_int_distribution<int> object_pick(0, 49);

  TripleStore store;
  std::vector<Triple> shadow;
  for (int i = 0; i < 10000; ++i) {
    Triple t{Term::iri("http://example.org/s" + std::to_string(subject_pick(rng))),
             Term::iri("http://example.org/p" + std::to_string(predicate_pick(rng))),
             Term::iri("http://example.org/o" + std::to_string(object_pick(rng)))};
    if (store.insert(t)) shadow.push_back(t);
  }
  CHECK(store.size() == shadow.size());

  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 1000; ++i) {
    PatternSlot s = coin(rng) ? PatternSlot{Term::iri("http://example.org/s" +
                                                      std::to_string(subject_pick(rng)))}
                              : std::nullopt;
    PatternSlot p = coin(rng) ? PatternSlot{Term::iri("http://example.org/p" +
                                                      std::to_string(predicate_pick(rng)))}
                              : std::nullopt;
    PatternSlot o = coin(rng) ? PatternSlot{Term::iri("http://example.org/o" +
                                                      std::to_string(object_pick(rng)))}
                              : std::nullopt;
    auto indexed = store.match(s, p, o);
    auto scanned = oracles::scan_match(shadow, s, p, o);
    std::sort(indexed.begin(), indexed.end());
    std::sort(scanned.begin(), scanned.end());
    CHECK(indexed == scanned);
  }
}

TEST_CASE("concurrent readers see consistent matches while a writer inserts") {
  TripleStore store;
  const Term p = Term::iri("http://example.org/p");
  std::thread writer([&store, &p]() {
    for (int i = 0; i < 2000; ++i)
      store.insert({Term::iri("http://example.org/s" + std::to_string(i)), p,
                    Term::iri("http://example.org/o")});
  });
  std::size_t last = 0;
  for (int i = 0; i < 200; ++i) {
    const auto hits = store.match(std::nullopt, p, std::nullopt);
    CHECK(hits.size() >= last);  // the store only grows
    last = hits.size();
  }
  writer.join();
  CHECK(store.size() == 2000);
}

TEST_CASE("iri resolution handles the common reference forms") {
  CHECK(resolve_iri("http://example.org/data/root.ttl", "") ==
        "http://example.org/data/root.ttl");
  CHECK(resolve_iri("http://example.org/data/root.ttl", "leaf.ttl") ==
        "http://example.org/data/leaf.ttl");
  CHECK(resolve_iri("http://example.org/data/root.ttl", "/top.ttl") ==
        "http://example.org/top.ttl");
  CHECK(resolve_iri("http://example.org/data/root.ttl", "#frag") ==
        "http://example.org/data/root.ttl#frag");
  CHECK(resolve_iri("http://example.org/data/root.ttl", "http://other.org/x") ==
        "http://other.org/x");
  CHECK(resolve_iri("file:///tmp/frag/root.ttl", "leaf-0001.ttl") ==
        "file:///tmp/frag/leaf-0001.ttl");
}
