#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lodex/NQuads.h"
#include "lodex/Term.h"

namespace lodex {

// An immutable, deduplicated snapshot of quads. `quads` is sorted in
// (s, p, o, c) order, so statements of one subject are contiguous.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::string snapshotId, std::vector<Quad> quads);

  const std::string& snapshotId() const { return snapshotId_; }
  const std::vector<Quad>& quads() const { return quads_; }
  std::size_t quadCount() const { return quads_.size(); }
  std::size_t tripleCount() const { return tripleCount_; }
  bool empty() const { return quads_.empty(); }

  // Errors encountered while loading, in file order.
  const std::vector<ParseError>& parseErrors() const { return parseErrors_; }
  void setParseErrors(std::vector<ParseError> errors) {
    parseErrors_ = std::move(errors);
  }

 private:
  std::string snapshotId_;
  std::vector<Quad> quads_;
  std::size_t tripleCount_ = 0;
  std::vector<ParseError> parseErrors_;
};

struct LoadOptions {
  ParseMode mode = ParseMode::Lenient;
  // Receives one `ERR <line-no> <reason>` line per malformed statement.
  std::ostream* diagnostics = nullptr;
};

// Reads a file fully, inflating it when it starts with the gzip magic bytes.
std::string readMaybeGzipped(const std::filesystem::path& file);

// Loads an .nq/.nq.gz file or every such file of a directory (sorted by
// name). Throws IoError for unreadable locators and EmptySnapshot when no
// quad was parsed. In strict mode the first malformed line raises FormatError.
Dataset loadSnapshot(const std::filesystem::path& locator,
                     std::string snapshotId, const LoadOptions& opts = {});

// Builds a dataset from in-memory N-Quads text (lenient parsing).
Dataset datasetFromString(std::string_view text, std::string snapshotId);

std::vector<Triple> tripleProjection(const Dataset& d);

}  // namespace lodex
