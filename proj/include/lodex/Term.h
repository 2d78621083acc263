#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace lodex {

enum class TermKind : std::uint8_t { Iri = 0, BlankNode = 1, Literal = 2 };

// One RDF term. Terms compare structurally over all fields; the defaulted
// ordering (kind, lexical, datatype, language) is the canonical term order
// used for term-set keys.
struct RdfTerm {
  TermKind kind = TermKind::Iri;
  std::string lexical;
  std::optional<std::string> datatypeIri;
  std::optional<std::string> languageTag;

  static RdfTerm iri(std::string value);
  static RdfTerm blank(std::string label);
  static RdfTerm literal(std::string value);
  static RdfTerm typedLiteral(std::string value, std::string datatype);
  static RdfTerm langLiteral(std::string value, std::string language);

  bool isResource() const { return kind != TermKind::Literal; }

  auto operator<=>(const RdfTerm&) const = default;
  bool operator==(const RdfTerm&) const = default;
};

struct Triple {
  RdfTerm s, p, o;
  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

struct Quad {
  RdfTerm s, p, o, c;
  Triple triple() const { return {s, p, o}; }
  auto operator<=>(const Quad&) const = default;
  bool operator==(const Quad&) const = default;
};

namespace vocab {
inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfsClass =
    "http://www.w3.org/2000/01/rdf-schema#Class";
// Context assigned to statements written without a graph label.
inline constexpr std::string_view kDefaultGraph = "urn:lodex:default-graph";
}  // namespace vocab

bool isRdfType(const RdfTerm& t);

// N-Triples style serialization: `<iri>`, `_:label`, `"lex"`, `"lex"@lang`,
// `"lex"^^<dt>`. Characters that the grammar does not allow verbatim are
// escaped, so the output parses back to an equal term.
std::string toNTriples(const RdfTerm& t);
std::string toNQuads(const Quad& q);
std::string toNTriples(const Triple& t);

// Checks the structural invariants of a term (absolute IRI, label without
// whitespace, datatype/language only on literals and never both).
bool isWellFormed(const RdfTerm& t);

}  // namespace lodex
