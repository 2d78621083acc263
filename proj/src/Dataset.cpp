#include "lodex/Dataset.h"

#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lodex/Error.h"

namespace fs = std::filesystem;

namespace lodex {

Dataset::Dataset(std::string snapshotId, std::vector<Quad> quads)
    : snapshotId_(std::move(snapshotId)), quads_(std::move(quads)) {
  std::sort(quads_.begin(), quads_.end());
  quads_.erase(std::unique(quads_.begin(), quads_.end()), quads_.end());
  // Sorted by (s,p,o,c): equal triples are adjacent.
  for (std::size_t i = 0; i < quads_.size(); ++i) {
    const Quad& q = quads_[i];
    if (i == 0) {
      ++tripleCount_;
      continue;
    }
    const Quad& prev = quads_[i - 1];
    if (!(q.s == prev.s && q.p == prev.p && q.o == prev.o)) ++tripleCount_;
  }
}

namespace {

std::string inflate(const std::string& compressed, const fs::path& file) {
  z_stream zs{};
  // 16 + MAX_WBITS selects the gzip wrapper.
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) {
    throw IoError("cannot initialise gzip decoder for " + file.string());
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  zs.avail_in = static_cast<uInt>(compressed.size());
  std::string out;
  char buf[1 << 16];
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buf);
    zs.avail_out = sizeof buf;
    rc = ::inflate(&zs, Z_NO_FLUSH);
    if (rc == Z_STREAM_END && zs.avail_in > 0) {
      // Concatenated gzip members.
      out.append(buf, sizeof buf - zs.avail_out);
      inflateReset(&zs);
      rc = Z_OK;
      continue;
    }
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw IoError("corrupt gzip data in " + file.string());
    }
    out.append(buf, sizeof buf - zs.avail_out);
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw IoError("truncated gzip data in " + file.string());
    }
  }
  inflateEnd(&zs);
  return out;
}

bool isSnapshotFile(const fs::path& p) {
  auto name = p.filename().string();
  auto endsWith = [&](std::string_view suffix) {
    return name.size() >= suffix.size() &&
           name.compare(name.size() - suffix.size(), suffix.size(), suffix) ==
               0;
  };
  return endsWith(".nq") || endsWith(".nq.gz");
}

void parseInto(std::string_view text, const LoadOptions& opts,
               std::vector<Quad>& quads, std::vector<ParseError>& errors) {
  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    ++lineNo;
    auto result = parseNQuadsLine(text.substr(pos, eol - pos), lineNo);
    pos = eol + 1;
    if (!result) continue;
    if (auto* q = std::get_if<Quad>(&*result)) {
      quads.push_back(std::move(*q));
      continue;
    }
    auto& err = std::get<ParseError>(*result);
    if (opts.diagnostics) {
      *opts.diagnostics << "ERR " << err.line << ' ' << err.reason << '\n';
    }
    errors.push_back(std::move(err));
    if (opts.mode == ParseMode::Strict) return;
  }
}

}  // namespace

std::string readMaybeGzipped(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + file.string());
  std::string raw = std::move(buf).str();
  if (raw.size() >= 2 && static_cast<unsigned char>(raw[0]) == 0x1f &&
      static_cast<unsigned char>(raw[1]) == 0x8b) {
    return inflate(raw, file);
  }
  return raw;
}

Dataset loadSnapshot(const fs::path& locator, std::string snapshotId,
                     const LoadOptions& opts) {
  std::error_code ec;
  auto status = fs::status(locator, ec);
  if (ec || !fs::exists(status)) {
    throw IoError("no such file or directory: " + locator.string());
  }
  std::vector<fs::path> files;
  if (fs::is_directory(status)) {
    for (const auto& entry : fs::directory_iterator(locator, ec)) {
      if (entry.is_regular_file() && isSnapshotFile(entry.path())) {
        files.push_back(entry.path());
      }
    }
    if (ec) throw IoError("cannot list " + locator.string());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(locator);
  }

  std::vector<Quad> quads;
  std::vector<ParseError> errors;
  for (const auto& file : files) {
    parseInto(readMaybeGzipped(file), opts, quads, errors);
    if (opts.mode == ParseMode::Strict && !errors.empty()) {
      throw FormatError(file.string() + ":" + std::to_string(errors[0].line) +
                        ": " + errors[0].reason);
    }
  }
  if (quads.empty()) {
    throw EmptySnapshot("no quads parsed from " + locator.string());
  }
  Dataset d(std::move(snapshotId), std::move(quads));
  d.setParseErrors(std::move(errors));
  return d;
}

Dataset datasetFromString(std::string_view text, std::string snapshotId) {
  std::vector<Quad> quads;
  std::vector<ParseError> errors;
  parseInto(text, LoadOptions{}, quads, errors);
  Dataset d(std::move(snapshotId), std::move(quads));
  d.setParseErrors(std::move(errors));
  return d;
}

std::vector<Triple> tripleProjection(const Dataset& d) {
  std::vector<Triple> out;
  out.reserve(d.tripleCount());
  for (const Quad& q : d.quads()) {
    if (out.empty() || !(out.back().s == q.s && out.back().p == q.p &&
                         out.back().o == q.o)) {
      out.push_back(q.triple());
    }
  }
  return out;
}

}  // namespace lodex
