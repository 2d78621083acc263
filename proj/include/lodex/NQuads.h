#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lodex/Term.h"

namespace lodex {

enum class ParseMode { Strict, Lenient };

struct ParseError {
  std::size_t line = 0;
  std::string reason;
  bool operator==(const ParseError&) const = default;
};

using ParseResult = std::variant<Quad, ParseError>;

// Parses a single statement line. Returns nullopt for blank and comment-only
// lines. Statements without a graph label get the reserved default-graph
// context.
std::optional<ParseResult> parseNQuadsLine(std::string_view line,
                                           std::size_t lineNumber);

// Pull-based reader over a byte stream. In strict mode the stream ends after
// the first error has been yielded.
class NQuadsReader {
 public:
  NQuadsReader(std::istream& in, ParseMode mode) : in_(in), mode_(mode) {}

  std::optional<ParseResult> next();

  std::size_t linesRead() const { return lineNumber_; }

 private:
  std::istream& in_;
  ParseMode mode_;
  std::size_t lineNumber_ = 0;
  bool stopped_ = false;
  std::string buffer_;
};

std::vector<ParseResult> parseNQuads(std::string_view text, ParseMode mode);

}  // namespace lodex
