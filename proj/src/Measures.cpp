#include "lodex/Measures.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "lodex/Error.h"

namespace lodex {

Orientation orientationOf(Measure m) {
  switch (m) {
    case Measure::CrossEntropy:
    case Measure::KlDivergence:
    case Measure::Perplexity:
    case Measure::NormalizedPerplexity:
      return Orientation::Divergence;
    default:
      return Orientation::Similarity;
  }
}

std::optional<Measure> parseMeasureName(std::string_view name) {
  for (std::size_t i = 0; i < kMeasureCount; ++i) {
    if (kMeasureNames[i] == name) return static_cast<Measure>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Set overlap
// ---------------------------------------------------------------------------

namespace {

double ratioOrOne(std::size_t shared, std::size_t unionSize) {
  if (unionSize == 0) return 1.0;
  return static_cast<double>(shared) / static_cast<double>(unionSize);
}

// Walks the distinct triples of a sorted quad vector.
class TripleCursor {
 public:
  explicit TripleCursor(const std::vector<Quad>& quads) : quads_(quads) {}

  bool done() const { return pos_ >= quads_.size(); }
  const Quad& current() const { return quads_[pos_]; }
  void advance() {
    const Quad& q = quads_[pos_];
    do {
      ++pos_;
    } while (pos_ < quads_.size() && sameTriple(quads_[pos_], q));
  }

  static bool sameTriple(const Quad& a, const Quad& b) {
    return a.s == b.s && a.p == b.p && a.o == b.o;
  }

  static std::weak_ordering compare(const Quad& a, const Quad& b) {
    if (auto c = a.s <=> b.s; c != 0) return c;
    if (auto c = a.p <=> b.p; c != 0) return c;
    return a.o <=> b.o;
  }

 private:
  const std::vector<Quad>& quads_;
  std::size_t pos_ = 0;
};

}  // namespace

double jaccardTriples(const std::vector<Triple>& gold,
                      const std::vector<Triple>& other) {
  std::size_t shared = 0;
  auto a = gold.begin();
  auto b = other.begin();
  while (a != gold.end() && b != other.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++shared;
      ++a;
      ++b;
    }
  }
  return ratioOrOne(shared, gold.size() + other.size() - shared);
}

double jaccardTriples(const Dataset& gold, const Dataset& other) {
  std::size_t shared = 0;
  TripleCursor a(gold.quads());
  TripleCursor b(other.quads());
  while (!a.done() && !b.done()) {
    auto c = TripleCursor::compare(a.current(), b.current());
    if (c < 0) {
      a.advance();
    } else if (c > 0) {
      b.advance();
    } else {
      ++shared;
      a.advance();
      b.advance();
    }
  }
  return ratioOrOne(shared, gold.tripleCount() + other.tripleCount() - shared);
}

double jaccardQuads(const Dataset& gold, const Dataset& other) {
  const auto& a = gold.quads();
  const auto& b = other.quads();
  std::size_t shared = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return ratioOrOne(shared, a.size() + b.size() - shared);
}

namespace {

std::size_t sharedKeyCount(const Index& a, const Index& b) {
  std::size_t shared = 0;
  auto i = a.entries().begin();
  auto j = b.entries().begin();
  while (i != a.entries().end() && j != b.entries().end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return shared;
}

}  // namespace

double jaccardKeys(const Index& gold, const Index& other) {
  std::size_t shared = sharedKeyCount(gold, other);
  return ratioOrOne(shared, gold.keyCount() + other.keyCount() - shared);
}

double keyRecall(const Index& gold, const Index& other) {
  if (gold.keyCount() == 0) throw EmptyGold("gold index has no keys");
  return static_cast<double>(sharedKeyCount(gold, other)) /
         static_cast<double>(gold.keyCount());
}

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

double SmoothedDistribution::probabilityOf(const Key& k) const {
  auto it = std::lower_bound(universe->begin(), universe->end(), k);
  if (it == universe->end() || !(*it == k)) return 0.0;
  return prob[static_cast<std::size_t>(it - universe->begin())];
}

std::shared_ptr<const std::vector<Key>> sharedUniverse(const Index& a,
                                                      const Index& b) {
  auto keys = std::make_shared<std::vector<Key>>();
  keys->reserve(std::max(a.keyCount(), b.keyCount()));
  auto i = a.entries().begin();
  auto j = b.entries().begin();
  while (i != a.entries().end() || j != b.entries().end()) {
    if (j == b.entries().end() ||
        (i != a.entries().end() && i->first < j->first)) {
      keys->push_back(i->first);
      ++i;
    } else if (i == a.entries().end() || j->first < i->first) {
      keys->push_back(j->first);
      ++j;
    } else {
      keys->push_back(i->first);
      ++i;
      ++j;
    }
  }
  return keys;
}

SmoothedDistribution smoothedDistribution(
    const Index& index, std::shared_ptr<const std::vector<Key>> universe,
    double lambda) {
  if (!(lambda > 0)) {
    throw std::invalid_argument("smoothing constant must be positive");
  }
  if (!universe || universe->empty()) {
    throw EmptyUniverse("cannot estimate a distribution over no keys");
  }
  SmoothedDistribution dist;
  dist.prob.reserve(universe->size());
  double total = 0;
  for (const Key& k : *universe) {
    double count = static_cast<double>(index.extensionSize(k)) + lambda;
    dist.prob.push_back(count);
    total += count;
  }
  for (double& p : dist.prob) p /= total;
  dist.universe = std::move(universe);
  return dist;
}

namespace {

void requireSharedUniverse(const SmoothedDistribution& a,
                           const SmoothedDistribution& b) {
  if (a.universe == b.universe) return;
  if (!a.universe || !b.universe || *a.universe != *b.universe) {
    throw UniverseMismatch("distributions are defined over different keys");
  }
}

// -Σ weights(k) log2 model(k); shared by entropy and cross entropy so that
// identical inputs give bit-identical results.
double expectedCodeLength(const std::vector<double>& weights,
                          const std::vector<double>& model) {
  double sum = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    sum -= weights[i] * std::log2(model[i]);
  }
  return sum;
}

}  // namespace

double entropy(const SmoothedDistribution& p) {
  return expectedCodeLength(p.prob, p.prob);
}

double crossEntropy(const SmoothedDistribution& gold,
                    const SmoothedDistribution& p) {
  requireSharedUniverse(gold, p);
  return expectedCodeLength(gold.prob, p.prob);
}

double klDivergence(const SmoothedDistribution& gold,
                    const SmoothedDistribution& p) {
  return crossEntropy(gold, p) - entropy(gold);
}

double perplexity(const SmoothedDistribution& gold,
                  const SmoothedDistribution& p) {
  return std::exp2(crossEntropy(gold, p));
}

double normalizedPerplexity(const SmoothedDistribution& gold,
                            const SmoothedDistribution& p,
                            std::size_t goldKeyCount) {
  if (goldKeyCount == 0) {
    throw ZeroGoldKeys("normalized perplexity needs a non-empty gold key set");
  }
  return perplexity(gold, p) / static_cast<double>(goldKeyCount);
}

// ---------------------------------------------------------------------------
// Retrieval
// ---------------------------------------------------------------------------

namespace {

std::size_t intersectionSize(const Index::Extension& a,
                             const Index::Extension& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace

RetrievalScores retrievalScores(const Index& gold, const Index& other) {
  if (gold.kind() != other.kind()) {
    throw KindMismatch("cannot compare a " + std::string(toString(gold.kind())) +
                       " index with a " + std::string(toString(other.kind())) +
                       " index");
  }
  static const Index::Extension kEmpty;
  std::size_t universe = 0;
  double precisionSum = 0, recallSum = 0;
  std::size_t sharedTotal = 0, resultTotal = 0, goldTotal = 0;

  auto score = [&](const Index::Extension& result,
                   const Index::Extension& expected) {
    if (result.empty() && expected.empty()) return;
    ++universe;
    std::size_t shared = intersectionSize(result, expected);
    if (!result.empty()) {
      precisionSum += static_cast<double>(shared) /
                      static_cast<double>(result.size());
    }
    if (!expected.empty()) {
      recallSum += static_cast<double>(shared) /
                   static_cast<double>(expected.size());
    }
    sharedTotal += shared;
    resultTotal += result.size();
    goldTotal += expected.size();
  };

  auto g = gold.entries().begin();
  auto o = other.entries().begin();
  while (g != gold.entries().end() || o != other.entries().end()) {
    if (o == other.entries().end() ||
        (g != gold.entries().end() && g->first < o->first)) {
      score(kEmpty, g->second);
      ++g;
    } else if (g == gold.entries().end() || o->first < g->first) {
      score(o->second, kEmpty);
      ++o;
    } else {
      score(o->second, g->second);
      ++g;
      ++o;
    }
  }
  if (universe == 0) {
    throw EmptyUniverse("neither index has a key with a non-empty extension");
  }
  RetrievalScores s;
  s.macroPrecision = precisionSum / static_cast<double>(universe);
  s.macroRecall = recallSum / static_cast<double>(universe);
  s.microPrecision = resultTotal == 0 ? 0.0
                                      : static_cast<double>(sharedTotal) /
                                            static_cast<double>(resultTotal);
  s.microRecall = goldTotal == 0 ? 0.0
                                 : static_cast<double>(sharedTotal) /
                                       static_cast<double>(goldTotal);
  return s;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

MeasureReport measureAll(const Dataset& goldData, const Dataset& staleData,
                         const Index& gold, const Index& stale,
                         const MeasureConfig& cfg) {
  if (gold.kind() != stale.kind()) {
    throw KindMismatch("gold and stale indices are of different kinds");
  }
  MeasureReport r;
  r.metadata.goldSnapshotId = goldData.snapshotId();
  r.metadata.staleSnapshotId = staleData.snapshotId();
  r.metadata.indexKind = gold.kind();
  r.metadata.keyCount = stale.keyCount();
  r.metadata.goldKeyCount = gold.keyCount();
  r.metadata.sharedKeyCount = sharedKeyCount(gold, stale);

  r[Measure::JaccardTriples] = cfg.quadLevelJaccard
                                   ? jaccardQuads(goldData, staleData)
                                   : jaccardTriples(goldData, staleData);
  r[Measure::JaccardKeys] = jaccardKeys(gold, stale);
  r[Measure::KeyRecall] = keyRecall(gold, stale);

  auto universe = sharedUniverse(gold, stale);
  auto pGold = smoothedDistribution(gold, universe, cfg.lambda);
  auto pStale = smoothedDistribution(stale, universe, cfg.lambda);
  double h = entropy(pGold);
  double ce = crossEntropy(pGold, pStale);
  r[Measure::CrossEntropy] = ce;
  r[Measure::KlDivergence] = ce - h;
  r[Measure::Perplexity] = std::exp2(ce);
  r[Measure::NormalizedPerplexity] =
      std::exp2(ce) / static_cast<double>(gold.keyCount());

  auto scores = retrievalScores(gold, stale);
  r[Measure::MacroPrecision] = scores.macroPrecision;
  r[Measure::MacroRecall] = scores.macroRecall;
  r[Measure::MicroPrecision] = scores.microPrecision;
  r[Measure::MicroRecall] = scores.microRecall;
  return r;
}

std::string formatValue(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

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

}  // namespace

std::string reportToJson(const MeasureReport& r) {
  nlohmann::ordered_json j;
  for (std::size_t i = 0; i < kMeasureCount; ++i) {
    j[std::string(kMeasureNames[i])] = r.values[i];
  }
  j["metadata"] = {
      {"gold_snapshot_id", r.metadata.goldSnapshotId},
      {"stale_snapshot_id", r.metadata.staleSnapshotId},
      {"index_kind", std::string(toString(r.metadata.indexKind))},
      {"key_count", r.metadata.keyCount},
      {"gold_key_count", r.metadata.goldKeyCount},
      {"shared_key_count", r.metadata.sharedKeyCount},
  };
  return j.dump();
}

std::string reportCsvHeader() {
  std::string h = "index_kind,gold_snapshot_id,stale_snapshot_id";
  for (auto name : kMeasureNames) {
    h += ',';
    h += name;
  }
  return h + ",key_count,gold_key_count,shared_key_count";
}

std::string reportToCsvRow(const MeasureReport& r) {
  std::string row = std::string(toString(r.metadata.indexKind)) + ',' +
                    csvField(r.metadata.goldSnapshotId) + ',' +
                    csvField(r.metadata.staleSnapshotId);
  for (double v : r.values) row += ',' + formatValue(v);
  row += ',' + std::to_string(r.metadata.keyCount);
  row += ',' + std::to_string(r.metadata.goldKeyCount);
  row += ',' + std::to_string(r.metadata.sharedKeyCount);
  return row;
}

}  // namespace lodex
