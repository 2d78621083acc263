#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lodex/Dataset.h"
#include "lodex/Error.h"
#include "lodex/Index.h"
#include "lodex/Measures.h"

namespace lodex {

struct SnapshotEntry {
  std::string snapshotId;
  std::filesystem::path locator;
};

// Ordered snapshots; the first entry is the one the stale index is built on.
class SnapshotSeries {
 public:
  // Throws InvalidSeries unless there are >= 2 entries with unique ids.
  explicit SnapshotSeries(std::vector<SnapshotEntry> entries);

  // Ids are file names without the .nq/.nq.gz suffix; a repeated id gets a
  // `#<n>` suffix for its n-th occurrence. Entries are ordered by id.
  static SnapshotSeries fromPaths(const std::vector<std::filesystem::path>& paths);
  // `snapshotId<TAB>path` per line; order is taken verbatim. Relative paths
  // resolve against the manifest's directory. Blank lines and lines starting
  // with '#' are ignored.
  static SnapshotSeries fromManifest(const std::filesystem::path& manifest);

  const std::vector<SnapshotEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<SnapshotEntry> entries_;
};

struct Observation {
  std::string goldSnapshotId;
  MeasureReport report;
};

struct ObservationTable {
  IndexKind indexKind = IndexKind::Subject;
  std::vector<Observation> rows;

  std::vector<double> series(Measure m) const;
};

// Coefficients in [-1, 1]; nullopt marks pairs involving a constant series.
struct CorrelationMatrix {
  IndexKind indexKind = IndexKind::Subject;
  std::array<std::array<std::optional<double>, kMeasureCount>, kMeasureCount>
      rho{};

  const std::optional<double>& at(Measure a, Measure b) const {
    return rho[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
};

// Raised when loading or indexing one snapshot of a series fails.
class SnapshotFailure : public Error {
 public:
  SnapshotFailure(std::string snapshotId, const std::string& what)
      : Error("snapshot '" + snapshotId + "': " + what),
        snapshotId_(std::move(snapshotId)) {}
  const std::string& snapshotId() const { return snapshotId_; }

 private:
  std::string snapshotId_;
};

struct EvolutionOptions {
  MeasureConfig measures;
  BuildOptions build;
  LoadOptions load;
};

// Builds the stale index of every kind over the first snapshot and compares
// it against the gold index of each later snapshot. Returns one table per
// kind, in the order of `kinds`.
std::vector<ObservationTable> runEvolution(const SnapshotSeries& series,
                                           const std::vector<IndexKind>& kinds,
                                           const EvolutionOptions& opts = {});

// Fractional ranks: tied values share the mean of the positions they occupy.
std::vector<double> averageRanks(const std::vector<double>& values);

// Pearson correlation of the fractional ranks; nullopt if either series is
// constant. Throws LengthMismatch for series of different or < 2 length.
std::optional<double> spearman(const std::vector<double>& x,
                               const std::vector<double>& y);

// Throws TooFewRows for tables with fewer than two rows.
CorrelationMatrix correlationMatrix(const ObservationTable& table);

struct OutputFormats {
  bool csv = true;
  bool json = true;
  bool operator==(const OutputFormats&) const = default;
};

std::string observationsCsv(const ObservationTable& table);
std::string observationsJson(const ObservationTable& table);
std::string correlationCsv(const CorrelationMatrix& m);
std::string correlationJson(const CorrelationMatrix& m);

// Writes observations_<kind>.{csv,json} for every table and
// correlation_<kind>.{csv,json} for every matrix. Returns the written paths.
std::vector<std::filesystem::path> emitReports(
    const std::vector<ObservationTable>& tables,
    const std::vector<CorrelationMatrix>& matrices,
    const std::filesystem::path& outDir, OutputFormats formats = {});

// Reads a table written by observationsCsv; the index kind is taken from the
// `observations_<kind>.csv` file name. Throws FormatError on malformed input.
ObservationTable readObservationsCsv(const std::filesystem::path& file);

}  // namespace lodex
