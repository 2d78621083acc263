#include "lodex/Evolution.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace lodex {

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

SnapshotSeries::SnapshotSeries(std::vector<SnapshotEntry> entries)
    : entries_(std::move(entries)) {
  if (entries_.size() < 2) {
    throw InvalidSeries("a snapshot series needs at least two snapshots");
  }
  std::set<std::string> seen;
  for (const auto& e : entries_) {
    if (!seen.insert(e.snapshotId).second) {
      throw InvalidSeries("duplicate snapshot id '" + e.snapshotId + "'");
    }
  }
}

namespace {

std::string stemOf(const fs::path& p) {
  std::string name = p.filename().string();
  for (std::string_view suffix : {".nq.gz", ".nq"}) {
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) ==
            0) {
      return name.substr(0, name.size() - suffix.size());
    }
  }
  return name.empty() ? p.string() : name;
}

}  // namespace

SnapshotSeries SnapshotSeries::fromPaths(const std::vector<fs::path>& paths) {
  std::vector<SnapshotEntry> entries;
  std::map<std::string, int> occurrences;
  for (const auto& p : paths) {
    std::string id = stemOf(p);
    int n = ++occurrences[id];
    if (n > 1) id += "#" + std::to_string(n);
    entries.push_back({std::move(id), p});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SnapshotEntry& a, const SnapshotEntry& b) {
                     return a.snapshotId < b.snapshotId;
                   });
  return SnapshotSeries(std::move(entries));
}

SnapshotSeries SnapshotSeries::fromManifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open manifest " + manifest.string());
  std::vector<SnapshotEntry> entries;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw FormatError(manifest.string() + ":" + std::to_string(lineNo) +
                        ": expected 'snapshotId<TAB>path'");
    }
    fs::path locator = line.substr(tab + 1);
    if (locator.is_relative()) locator = manifest.parent_path() / locator;
    entries.push_back({line.substr(0, tab), std::move(locator)});
  }
  return SnapshotSeries(std::move(entries));
}

std::vector<double> ObservationTable::series(Measure m) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.report[m]);
  return out;
}

// ---------------------------------------------------------------------------
// Experiment
// ---------------------------------------------------------------------------

namespace {

template <typename F>
auto attributed(const std::string& snapshotId, F&& f) {
  try {
    return f();
  } catch (const SnapshotFailure&) {
    throw;
  } catch (const Error& e) {
    throw SnapshotFailure(snapshotId, e.what());
  }
}

}  // namespace

std::vector<ObservationTable> runEvolution(const SnapshotSeries& series,
                                           const std::vector<IndexKind>& kinds,
                                           const EvolutionOptions& opts) {
  const auto& entries = series.entries();
  const SnapshotEntry& first = entries.front();

  Dataset staleData = attributed(first.snapshotId, [&] {
    return loadSnapshot(first.locator, first.snapshotId, opts.load);
  });
  std::vector<Index> staleIndices;
  std::vector<ObservationTable> tables;
  for (IndexKind kind : kinds) {
    staleIndices.push_back(attributed(
        first.snapshotId, [&] { return buildIndex(staleData, kind, opts.build); }));
    tables.push_back({kind, {}});
  }

  for (std::size_t t = 1; t < entries.size(); ++t) {
    const SnapshotEntry& entry = entries[t];
    attributed(entry.snapshotId, [&] {
      Dataset goldData =
          loadSnapshot(entry.locator, entry.snapshotId, opts.load);
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        Index gold = buildIndex(goldData, kinds[k], opts.build);
        tables[k].rows.push_back(
            {entry.snapshotId, measureAll(goldData, staleData, gold,
                                          staleIndices[k], opts.measures)});
      }
      return 0;
    });
  }
  return tables;
}

// ---------------------------------------------------------------------------
// Rank correlation
// ---------------------------------------------------------------------------

std::vector<double> averageRanks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    // Positions i..j (0-based) share rank mean((i+1)..(j+1)).
    double rank = static_cast<double>(i + j + 2) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman(const std::vector<double>& x,
                               const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw LengthMismatch("spearman needs two series of equal length >= 2");
  }
  auto rx = averageRanks(x);
  auto ry = averageRanks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1) / 2;  // mean of any fractional ranking
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    double dx = rx[i] - mean;
    double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  double rho = sxy / std::sqrt(sxx * syy);
  return std::clamp(rho, -1.0, 1.0);
}

CorrelationMatrix correlationMatrix(const ObservationTable& table) {
  if (table.rows.size() < 2) {
    throw TooFewRows("correlation needs at least two observations");
  }
  CorrelationMatrix m;
  m.indexKind = table.indexKind;
  std::array<std::vector<double>, kMeasureCount> series;
  for (std::size_t a = 0; a < kMeasureCount; ++a) {
    series[a] = table.series(static_cast<Measure>(a));
  }
  for (std::size_t a = 0; a < kMeasureCount; ++a) {
    for (std::size_t b = a; b < kMeasureCount; ++b) {
      auto rho = spearman(series[a], series[b]);
      m.rho[a][b] = rho;
      m.rho[b][a] = rho;
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

namespace {

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> splitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

void writeFile(const fs::path& path, const std::string& content,
               std::vector<fs::path>& written) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
  written.push_back(path);
}

}  // namespace

std::string observationsCsv(const ObservationTable& table) {
  std::string out = "gold_snapshot_id";
  for (auto name : kMeasureNames) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (const auto& row : table.rows) {
    out += csvField(row.goldSnapshotId);
    for (double v : row.report.values) out += ',' + formatValue(v);
    out += '\n';
  }
  return out;
}

std::string observationsJson(const ObservationTable& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    rows.push_back(nlohmann::ordered_json::parse(reportToJson(row.report)));
  }
  nlohmann::ordered_json j;
  j["index_kind"] = std::string(toString(table.indexKind));
  j["rows"] = std::move(rows);
  return j.dump(2) + '\n';
}

std::string correlationCsv(const CorrelationMatrix& m) {
  std::string out = "measure";
  for (auto name : kMeasureNames) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (std::size_t a = 0; a < kMeasureCount; ++a) {
    out += kMeasureNames[a];
    for (std::size_t b = 0; b < kMeasureCount; ++b) {
      out += ',';
      if (m.rho[a][b]) out += formatValue(*m.rho[a][b]);
    }
    out += '\n';
  }
  return out;
}

std::string correlationJson(const CorrelationMatrix& m) {
  nlohmann::ordered_json j;
  j["index_kind"] = std::string(toString(m.indexKind));
  j["measures"] = nlohmann::ordered_json::array();
  for (auto name : kMeasureNames) j["measures"].push_back(std::string(name));
  auto rho = nlohmann::ordered_json::array();
  for (const auto& row : m.rho) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& v : row) {
      if (v) {
        r.push_back(*v);
      } else {
        r.push_back(nullptr);
      }
    }
    rho.push_back(std::move(r));
  }
  j["rho"] = std::move(rho);
  return j.dump(2) + '\n';
}

std::vector<fs::path> emitReports(const std::vector<ObservationTable>& tables,
                                  const std::vector<CorrelationMatrix>& matrices,
                                  const fs::path& outDir,
                                  OutputFormats formats) {
  std::error_code ec;
  fs::create_directories(outDir, ec);
  if (ec) throw IoError("cannot create " + outDir.string());
  std::vector<fs::path> written;
  for (const auto& t : tables) {
    std::string base = "observations_" + std::string(toString(t.indexKind));
    if (formats.csv) writeFile(outDir / (base + ".csv"), observationsCsv(t), written);
    if (formats.json) writeFile(outDir / (base + ".json"), observationsJson(t), written);
  }
  for (const auto& m : matrices) {
    std::string base = "correlation_" + std::string(toString(m.indexKind));
    if (formats.csv) writeFile(outDir / (base + ".csv"), correlationCsv(m), written);
    if (formats.json) writeFile(outDir / (base + ".json"), correlationJson(m), written);
  }
  return written;
}

ObservationTable readObservationsCsv(const fs::path& file) {
  std::string name = file.filename().string();
  const std::string prefix = "observations_";
  const std::string suffix = ".csv";
  std::optional<IndexKind> kind;
  if (name.size() > prefix.size() + suffix.size() &&
      name.starts_with(prefix) && name.ends_with(suffix)) {
    kind = parseIndexKind(std::string_view(name).substr(
        prefix.size(), name.size() - prefix.size() - suffix.size()));
  }
  if (!kind) {
    throw FormatError(file.string() +
                      ": expected a file named observations_<kind>.csv");
  }
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());

  ObservationTable table;
  table.indexKind = *kind;
  std::string line;
  std::size_t lineNo = 0;
  std::array<std::size_t, kMeasureCount> column{};
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = splitCsvLine(line);
    auto where = file.string() + ":" + std::to_string(lineNo) + ": ";
    if (lineNo == 1) {
      if (fields.empty() || fields[0] != "gold_snapshot_id") {
        throw FormatError(where + "missing gold_snapshot_id header");
      }
      for (std::size_t m = 0; m < kMeasureCount; ++m) {
        auto it = std::find(fields.begin(), fields.end(), kMeasureNames[m]);
        if (it == fields.end()) {
          throw FormatError(where + "missing column " +
                            std::string(kMeasureNames[m]));
        }
        column[m] = static_cast<std::size_t>(it - fields.begin());
      }
      continue;
    }
    Observation obs;
    obs.goldSnapshotId = fields[0];
    obs.report.metadata.goldSnapshotId = fields[0];
    obs.report.metadata.indexKind = *kind;
    for (std::size_t m = 0; m < kMeasureCount; ++m) {
      if (column[m] >= fields.size()) throw FormatError(where + "short row");
      const std::string& cell = fields[column[m]];
      char* end = nullptr;
      double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) {
        throw FormatError(where + "bad number '" + cell + "'");
      }
      obs.report.values[m] = v;
    }
    table.rows.push_back(std::move(obs));
  }
  if (lineNo == 0) throw FormatError(file.string() + ": empty file");
  return table;
}

}  // namespace lodex
