#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lodex/Dataset.h"
#include "lodex/Index.h"

namespace lodex {

struct MeasureConfig {
  double lambda = 0.5;      // Lidstone constant, must be > 0
  bool quadLevelJaccard = false;
};

enum class Orientation { Similarity, Divergence };

enum class Measure : std::size_t {
  JaccardTriples,
  JaccardKeys,
  KeyRecall,
  CrossEntropy,
  KlDivergence,
  Perplexity,
  NormalizedPerplexity,
  MacroPrecision,
  MacroRecall,
  MicroPrecision,
  MicroRecall,
};

inline constexpr std::size_t kMeasureCount = 11;

// Report and file column order.
inline constexpr std::array<std::string_view, kMeasureCount> kMeasureNames = {
    "jaccard_triples", "jaccard_keys",          "key_recall",
    "cross_entropy",   "kl_divergence",         "perplexity",
    "normalized_perplexity", "macro_precision", "macro_recall",
    "micro_precision", "micro_recall"};

Orientation orientationOf(Measure m);
std::optional<Measure> parseMeasureName(std::string_view name);

// ---------------------------------------------------------------------------
// Set overlap
// ---------------------------------------------------------------------------

// |A ∩ B| / |A ∪ B|, defined as 1 when both sets are empty. Triple sets must
// be sorted and duplicate-free.
double jaccardTriples(const std::vector<Triple>& gold,
                      const std::vector<Triple>& other);
// Same measure over the triple projections of two datasets, without
// materializing them.
double jaccardTriples(const Dataset& gold, const Dataset& other);
double jaccardQuads(const Dataset& gold, const Dataset& other);
double jaccardKeys(const Index& gold, const Index& other);
// Throws EmptyGold when the gold index has no keys.
double keyRecall(const Index& gold, const Index& other);

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

// Lidstone-smoothed key distribution over an explicit universe. Probabilities
// are stored in universe order.
struct SmoothedDistribution {
  std::shared_ptr<const std::vector<Key>> universe;
  std::vector<double> prob;

  double probabilityOf(const Key& k) const;
};

// The sorted union of the key sets of two indices.
std::shared_ptr<const std::vector<Key>> sharedUniverse(const Index& a,
                                                      const Index& b);

// Throws EmptyUniverse for an empty universe and std::invalid_argument for a
// non-positive lambda.
SmoothedDistribution smoothedDistribution(
    const Index& index, std::shared_ptr<const std::vector<Key>> universe,
    double lambda);

double entropy(const SmoothedDistribution& p);
// Each throws UniverseMismatch unless both distributions share a universe.
double crossEntropy(const SmoothedDistribution& gold,
                    const SmoothedDistribution& p);
double klDivergence(const SmoothedDistribution& gold,
                    const SmoothedDistribution& p);
double perplexity(const SmoothedDistribution& gold,
                  const SmoothedDistribution& p);
// Throws ZeroGoldKeys when goldKeyCount is 0.
double normalizedPerplexity(const SmoothedDistribution& gold,
                            const SmoothedDistribution& p,
                            std::size_t goldKeyCount);

// ---------------------------------------------------------------------------
// Retrieval
// ---------------------------------------------------------------------------

struct RetrievalScores {
  double macroPrecision = 0;
  double macroRecall = 0;
  double microPrecision = 0;
  double microRecall = 0;
};

// All-keys retrieval evaluation. Keys empty in both indices are skipped; an
// empty result set scores precision 0, an empty gold set scores recall 0.
RetrievalScores retrievalScores(const Index& gold, const Index& other);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct ReportMetadata {
  std::string goldSnapshotId;
  std::string staleSnapshotId;
  IndexKind indexKind = IndexKind::Subject;
  std::size_t keyCount = 0;        // |K|
  std::size_t goldKeyCount = 0;    // |K_GS|
  std::size_t sharedKeyCount = 0;  // |K ∩ K_GS|
};

struct MeasureReport {
  std::array<double, kMeasureCount> values{};
  ReportMetadata metadata;

  double operator[](Measure m) const {
    return values[static_cast<std::size_t>(m)];
  }
  double& operator[](Measure m) { return values[static_cast<std::size_t>(m)]; }
};

MeasureReport measureAll(const Dataset& goldData, const Dataset& staleData,
                         const Index& gold, const Index& stale,
                         const MeasureConfig& cfg = {});

// Values are written with 12 significant digits.
std::string formatValue(double v);
std::string reportToJson(const MeasureReport& r);
std::string reportCsvHeader();
std::string reportToCsvRow(const MeasureReport& r);

}  // namespace lodex
