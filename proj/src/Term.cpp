#include "lodex/Term.h"

#include <cstdio>

namespace lodex {

RdfTerm RdfTerm::iri(std::string value) {
  return {TermKind::Iri, std::move(value), std::nullopt, std::nullopt};
}

RdfTerm RdfTerm::blank(std::string label) {
  return {TermKind::BlankNode, std::move(label), std::nullopt, std::nullopt};
}

RdfTerm RdfTerm::literal(std::string value) {
  return {TermKind::Literal, std::move(value), std::nullopt, std::nullopt};
}

RdfTerm RdfTerm::typedLiteral(std::string value, std::string datatype) {
  return {TermKind::Literal, std::move(value), std::move(datatype),
          std::nullopt};
}

RdfTerm RdfTerm::langLiteral(std::string value, std::string language) {
  return {TermKind::Literal, std::move(value), std::nullopt,
          std::move(language)};
}

bool isRdfType(const RdfTerm& t) {
  return t.kind == TermKind::Iri && t.lexical == vocab::kRdfType;
}

namespace {

void appendUchar(std::string& out, unsigned char c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(c));
  out += buf;
}

void appendIri(std::string& out, std::string_view iri) {
  out += '<';
  for (char ch : iri) {
    auto c = static_cast<unsigned char>(ch);
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        appendUchar(out, c);
        break;
      default:
        if (c <= 0x20) {
          appendUchar(out, c);
        } else {
          out += ch;
        }
    }
  }
  out += '>';
}

void appendQuoted(std::string& out, std::string_view lex) {
  out += '"';
  for (char ch : lex) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          appendUchar(out, static_cast<unsigned char>(ch));
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

}  // namespace

std::string toNTriples(const RdfTerm& t) {
  std::string out;
  out.reserve(t.lexical.size() + 4);
  switch (t.kind) {
    case TermKind::Iri:
      appendIri(out, t.lexical);
      break;
    case TermKind::BlankNode:
      out += "_:";
      out += t.lexical;
      break;
    case TermKind::Literal:
      appendQuoted(out, t.lexical);
      if (t.languageTag) {
        out += '@';
        out += *t.languageTag;
      } else if (t.datatypeIri) {
        out += "^^";
        appendIri(out, *t.datatypeIri);
      }
      break;
  }
  return out;
}

std::string toNTriples(const Triple& t) {
  return toNTriples(t.s) + ' ' + toNTriples(t.p) + ' ' + toNTriples(t.o);
}

std::string toNQuads(const Quad& q) {
  return toNTriples(q.s) + ' ' + toNTriples(q.p) + ' ' + toNTriples(q.o) +
         ' ' + toNTriples(q.c) + " .";
}

bool isWellFormed(const RdfTerm& t) {
  switch (t.kind) {
    case TermKind::Iri:
      return !t.lexical.empty() &&
             t.lexical.find(':') != std::string::npos && !t.datatypeIri &&
             !t.languageTag;
    case TermKind::BlankNode:
      if (t.lexical.empty() || t.datatypeIri || t.languageTag) return false;
      for (char c : t.lexical) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
      }
      return true;
    case TermKind::Literal:
      return !(t.datatypeIri && t.languageTag);
  }
  return false;
}

}  // namespace lodex
