#include "lodex/NQuads.h"

#include <sstream>

namespace lodex {

namespace {

// Thrown internally to abort the current line; converted to ParseError.
struct LineError {
  std::string reason;
};

bool isHex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
         (c >= 'A' && c <= 'F');
}

bool isAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool isDigit(char c) { return c >= '0' && c <= '9'; }

void appendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class LineParser {
 public:
  explicit LineParser(std::string_view line) : s_(line) {}

  std::optional<Quad> statement() {
    skipWs();
    if (atEnd() || peek() == '#') return std::nullopt;

    Quad q;
    q.s = subject();
    requireWsOrTermStart();
    q.p = predicate();
    requireWsOrTermStart();
    q.o = object();
    skipWs();
    if (atEnd()) throw LineError{"missing final '.'"};
    if (peek() == '.') {
      q.c = RdfTerm::iri(std::string(vocab::kDefaultGraph));
    } else {
      q.c = graphLabel();
      skipWs();
    }
    if (atEnd() || peek() != '.') throw LineError{"missing final '.'"};
    ++pos_;
    skipWs();
    if (!atEnd() && peek() != '#') {
      throw LineError{"unexpected content after '.'"};
    }
    return q;
  }

 private:
  bool atEnd() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  void skipWs() {
    while (!atEnd() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void requireWsOrTermStart() {
    std::size_t before = pos_;
    skipWs();
    if (atEnd()) throw LineError{"missing final '.'"};
    // Terms may abut only when the previous one ended with a delimiter.
    if (before == pos_ && s_[before - 1] != '>' && s_[before - 1] != '"') {
      throw LineError{"expected whitespace between terms"};
    }
  }

  RdfTerm subject() {
    switch (peek()) {
      case '<': return iri();
      case '_': return blankNode();
      case '"': throw LineError{"literal in subject position"};
      default: throw LineError{"unexpected character in subject position"};
    }
  }

  RdfTerm predicate() {
    switch (peek()) {
      case '<': return iri();
      case '_': throw LineError{"blank node in predicate position"};
      case '"': throw LineError{"literal in predicate position"};
      default: throw LineError{"unexpected character in predicate position"};
    }
  }

  RdfTerm object() {
    switch (peek()) {
      case '<': return iri();
      case '_': return blankNode();
      case '"': return literal();
      default: throw LineError{"unexpected character in object position"};
    }
  }

  RdfTerm graphLabel() {
    switch (peek()) {
      case '<': return iri();
      case '_': return blankNode();
      case '"': throw LineError{"literal in graph position"};
      default: throw LineError{"missing final '.'"};
    }
  }

  char32_t uchar() {
    // Positioned just after the backslash.
    if (atEnd()) throw LineError{"bad escape"};
    char kind = peek();
    std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) throw LineError{"bad escape"};
    ++pos_;
    if (pos_ + digits > s_.size()) throw LineError{"bad escape"};
    char32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char c = s_[pos_ + i];
      if (!isHex(c)) throw LineError{"bad escape"};
      cp = cp * 16 + static_cast<char32_t>(
                         isDigit(c) ? c - '0' : (c | 0x20) - 'a' + 10);
    }
    pos_ += digits;
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw LineError{"bad escape"};
    }
    return cp;
  }

  std::string iriBody() {
    ++pos_;  // '<'
    std::string out;
    while (true) {
      if (atEnd()) throw LineError{"unterminated IRI"};
      char c = peek();
      auto u = static_cast<unsigned char>(c);
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        ++pos_;
        appendUtf8(out, uchar());
        continue;
      }
      if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        throw LineError{"invalid character in IRI"};
      }
      out += c;
      ++pos_;
    }
    if (out.find(':') == std::string::npos) throw LineError{"relative IRI"};
    return out;
  }

  RdfTerm iri() { return RdfTerm::iri(iriBody()); }

  static bool labelChar(char c) {
    return isAlpha(c) || isDigit(c) || c == '_' || c == '-' || c == '.' ||
           static_cast<unsigned char>(c) >= 0x80;
  }

  RdfTerm blankNode() {
    if (pos_ + 1 >= s_.size() || s_[pos_ + 1] != ':') {
      throw LineError{"malformed blank node"};
    }
    pos_ += 2;
    std::size_t start = pos_;
    if (atEnd() || peek() == '.' || peek() == '-' || !labelChar(peek())) {
      throw LineError{"empty blank node label"};
    }
    while (!atEnd() && labelChar(peek())) ++pos_;
    // A label may not end with '.'; trailing dots belong to the statement.
    while (s_[pos_ - 1] == '.') --pos_;
    return RdfTerm::blank(std::string(s_.substr(start, pos_ - start)));
  }

  RdfTerm literal() {
    ++pos_;  // '"'
    std::string lex;
    while (true) {
      if (atEnd()) throw LineError{"unterminated literal"};
      char c = peek();
      if (c == '"') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        ++pos_;
        if (atEnd()) throw LineError{"bad escape"};
        switch (peek()) {
          case 't': lex += '\t'; ++pos_; break;
          case 'b': lex += '\b'; ++pos_; break;
          case 'n': lex += '\n'; ++pos_; break;
          case 'r': lex += '\r'; ++pos_; break;
          case 'f': lex += '\f'; ++pos_; break;
          case '"': lex += '"'; ++pos_; break;
          case '\'': lex += '\''; ++pos_; break;
          case '\\': lex += '\\'; ++pos_; break;
          default: appendUtf8(lex, uchar());
        }
        continue;
      }
      lex += c;
      ++pos_;
    }
    if (!atEnd() && peek() == '@') {
      ++pos_;
      std::size_t start = pos_;
      if (atEnd() || !isAlpha(peek())) throw LineError{"invalid language tag"};
      while (!atEnd() && isAlpha(peek())) ++pos_;
      while (!atEnd() && peek() == '-') {
        ++pos_;
        if (atEnd() || !(isAlpha(peek()) || isDigit(peek()))) {
          throw LineError{"invalid language tag"};
        }
        while (!atEnd() && (isAlpha(peek()) || isDigit(peek()))) ++pos_;
      }
      return RdfTerm::langLiteral(std::move(lex),
                                  std::string(s_.substr(start, pos_ - start)));
    }
    if (!atEnd() && peek() == '^') {
      if (pos_ + 1 >= s_.size() || s_[pos_ + 1] != '^') {
        throw LineError{"malformed datatype"};
      }
      pos_ += 2;
      if (atEnd() || peek() != '<') throw LineError{"malformed datatype"};
      return RdfTerm::typedLiteral(std::move(lex), iriBody());
    }
    return RdfTerm::literal(std::move(lex));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<ParseResult> parseNQuadsLine(std::string_view line,
                                           std::size_t lineNumber) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  try {
    auto quad = LineParser(line).statement();
    if (!quad) return std::nullopt;
    return ParseResult{std::move(*quad)};
  } catch (const LineError& e) {
    return ParseResult{ParseError{lineNumber, e.reason}};
  }
}

std::optional<ParseResult> NQuadsReader::next() {
  while (!stopped_ && std::getline(in_, buffer_)) {
    ++lineNumber_;
    auto result = parseNQuadsLine(buffer_, lineNumber_);
    if (!result) continue;
    if (mode_ == ParseMode::Strict &&
        std::holds_alternative<ParseError>(*result)) {
      stopped_ = true;
    }
    return result;
  }
  return std::nullopt;
}

std::vector<ParseResult> parseNQuads(std::string_view text, ParseMode mode) {
  std::istringstream in{std::string(text)};
  NQuadsReader reader(in, mode);
  std::vector<ParseResult> out;
  while (auto r = reader.next()) out.push_back(std::move(*r));
  return out;
}

}  // namespace lodex
