#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "Fixtures.h"
#include "Synthetic.h"
#include "lodex/Evolution.h"

using namespace lodex;
namespace fs = std::filesystem;

namespace {

fs::path tempDir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("lodex_evo_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path writeFile(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<fs::path> writeSeries(const fs::path& dir,
                                  const std::vector<std::vector<Quad>>& docs) {
  std::vector<fs::path> paths;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    paths.push_back(writeFile(dir / ("t" + std::to_string(i) + ".nq"),
                              testkit::toNQuadsDocument(docs[i])));
  }
  return paths;
}

// Shortcut formula, valid only without ties.
double spearmanNoTies(const std::vector<double>& x, const std::vector<double>& y) {
  auto rx = averageRanks(x);
  auto ry = averageRanks(y);
  double n = static_cast<double>(x.size());
  double d2 = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return 1 - 6 * d2 / (n * (n * n - 1));
}

}  // namespace

TEST(AverageRanks, examples) {
  EXPECT_EQ(averageRanks({10, 20, 30}), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(averageRanks({10, 10, 30}), (std::vector<double>{1.5, 1.5, 3}));
  EXPECT_EQ(averageRanks({5, 5, 5}), (std::vector<double>{2, 2, 2}));
  EXPECT_EQ(averageRanks({3, 1, 2, 1}), (std::vector<double>{4, 1.5, 3, 1.5}));
}

TEST(AverageRanks, sumIsTriangular) {
  testkit::Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 30;
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(static_cast<double>(rng() % 5));
    auto r = averageRanks(v);
    double sum = 0;
    for (double x : r) {
      EXPECT_GE(x, 1.0);
      EXPECT_LE(x, static_cast<double>(n));
      sum += x;
    }
    EXPECT_EQ(sum, static_cast<double>(n * (n + 1)) / 2);
  }
}

TEST(Spearman, examples) {
  std::vector<double> x{0.5, 1.0, 2.0, 1.5};
  std::vector<double> px;
  for (double v : x) px.push_back(std::exp2(v));
  EXPECT_EQ(spearman(x, px), 1.0);
  std::vector<double> neg;
  for (double v : x) neg.push_back(-v);
  EXPECT_EQ(spearman(x, neg), -1.0);
  EXPECT_EQ(spearman({0.3, 0.1, 0.4}, {3, 1, 4}), 1.0);
  EXPECT_FALSE(spearman({1, 1, 1}, {1, 2, 3}).has_value());
  EXPECT_THROW(spearman({1, 2}, {1, 2, 3}), LengthMismatch);
  EXPECT_THROW(spearman({1}, {1}), LengthMismatch);
}

TEST(Spearman, agreesWithShortcutOnTieFreeData) {
  testkit::Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng() % 40;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(std::uniform_real_distribution<double>()(rng));
      y.push_back(std::uniform_real_distribution<double>()(rng));
    }
    auto rho = spearman(x, y);
    ASSERT_TRUE(rho);
    EXPECT_NEAR(*rho, spearmanNoTies(x, y), 1e-12);
  }
}

TEST(Spearman, invariantUnderIncreasingTransforms) {
  testkit::Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + rng() % 20;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < n; ++i) {
      x.push_back(static_cast<double>(rng() % 7));
      y.push_back(std::uniform_real_distribution<double>(-3, 3)(rng));
    }
    std::vector<double> tx;
    for (double v : x) tx.push_back(std::exp2(v) + 3 * v);
    EXPECT_EQ(averageRanks(x), averageRanks(tx));
    EXPECT_EQ(spearman(x, y), spearman(tx, y));
  }
}

TEST(SnapshotSeriesTest, construction) {
  EXPECT_THROW(SnapshotSeries(std::vector<SnapshotEntry>{{"a", "a.nq"}}),
               InvalidSeries);
  EXPECT_THROW(SnapshotSeries({{"a", "a.nq"}, {"a", "b.nq"}}), InvalidSeries);

  auto s = SnapshotSeries::fromPaths({"x/w2.nq.gz", "y/w1.nq", "w1.nq"});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.entries()[0].snapshotId, "w1");
  EXPECT_EQ(s.entries()[1].snapshotId, "w1#2");
  EXPECT_EQ(s.entries()[2].snapshotId, "w2");

  auto dir = tempDir("manifest");
  writeFile(dir / "m.tsv", "# comment\nz\tz.nq\na\t/abs/a.nq\n");
  auto m = SnapshotSeries::fromManifest(dir / "m.tsv");
  EXPECT_EQ(m.entries()[0].snapshotId, "z");
  EXPECT_EQ(m.entries()[0].locator, dir / "z.nq");
  EXPECT_EQ(m.entries()[1].locator, fs::path("/abs/a.nq"));
  writeFile(dir / "bad.tsv", "no tab here\n");
  EXPECT_THROW(SnapshotSeries::fromManifest(dir / "bad.tsv"), FormatError);
  EXPECT_THROW(SnapshotSeries::fromManifest(dir / "none.tsv"), IoError);
}

TEST(RunEvolution, fixtureSeriesReproducesPairwiseReport) {
  auto dir = tempDir("fixture");
  auto a = writeFile(dir / "1.nq", testkit::kFixtureA);
  auto b = writeFile(dir / "2.nq", testkit::kFixtureB);
  auto tables = runEvolution(SnapshotSeries::fromPaths({a, b}),
                             {IndexKind::Type});
  ASSERT_EQ(tables.size(), 1u);
  ASSERT_EQ(tables[0].rows.size(), 1u);
  // Stale index over the first snapshot (A), gold over the later one (B).
  Dataset da = loadSnapshot(a, "1");
  Dataset db = loadSnapshot(b, "2");
  auto expected = measureAll(db, da, buildIndex(db, IndexKind::Type),
                             buildIndex(da, IndexKind::Type));
  EXPECT_EQ(tables[0].rows[0].report.values, expected.values);
  EXPECT_EQ(tables[0].rows[0].goldSnapshotId, "2");
}

TEST(RunEvolution, arityIdentityAndErrors) {
  auto dir = tempDir("arity");
  testkit::Rng rng(12);
  auto base = testkit::randomMicroQuads(rng);
  auto paths = writeSeries(dir, {base, base, testkit::perturb(base, rng)});
  auto tables = runEvolution(SnapshotSeries::fromPaths(paths),
                             {IndexKind::Subject, IndexKind::SchemEX});
  ASSERT_EQ(tables.size(), 2u);
  for (const auto& t : tables) {
    ASSERT_EQ(t.rows.size(), 2u);
    const auto& identity = t.rows[0].report;
    EXPECT_EQ(identity[Measure::KlDivergence], 0.0);
    for (std::size_t m = 0; m < kMeasureCount; ++m) {
      if (orientationOf(static_cast<Measure>(m)) == Orientation::Similarity) {
        EXPECT_EQ(identity.values[m], 1.0) << kMeasureNames[m];
      }
    }
  }

  auto broken = SnapshotSeries({{"t0", paths[0]}, {"t1", dir / "missing.nq"}});
  try {
    runEvolution(broken, {IndexKind::Type});
    FAIL() << "expected SnapshotFailure";
  } catch (const SnapshotFailure& e) {
    EXPECT_EQ(e.snapshotId(), "t1");
  }
}

TEST(CorrelationMatrixTest, structure) {
  auto dir = tempDir("corr");
  testkit::Rng rng(21);
  auto base = testkit::randomMicroQuads(rng, {50, 8, 4});
  std::vector<std::vector<Quad>> docs{base};
  for (int i = 0; i < 6; ++i) docs.push_back(testkit::perturb(base, rng));
  auto tables = runEvolution(SnapshotSeries::fromPaths(writeSeries(dir, docs)),
                             {kAllIndexKinds, kAllIndexKinds + 6});
  for (const auto& t : tables) {
    auto m = correlationMatrix(t);
    for (std::size_t a = 0; a < kMeasureCount; ++a) {
      auto series = t.series(static_cast<Measure>(a));
      bool constant = std::all_of(series.begin(), series.end(),
                                  [&](double v) { return v == series[0]; });
      if (constant) {
        EXPECT_FALSE(m.rho[a][a].has_value());
      } else {
        EXPECT_EQ(m.rho[a][a], 1.0);
      }
      for (std::size_t b = 0; b < kMeasureCount; ++b) {
        EXPECT_EQ(m.rho[a][b], m.rho[b][a]);
        if (m.rho[a][b]) {
          EXPECT_GE(*m.rho[a][b], -1.0);
          EXPECT_LE(*m.rho[a][b], 1.0);
        }
        if (constant) EXPECT_FALSE(m.rho[a][b].has_value());
      }
    }
    if (m.at(Measure::CrossEntropy, Measure::CrossEntropy)) {
      EXPECT_EQ(m.at(Measure::CrossEntropy, Measure::Perplexity), 1.0);
    }
  }
  ObservationTable one{IndexKind::Type, {tables[0].rows[0]}};
  EXPECT_THROW(correlationMatrix(one), TooFewRows);
}

// An object-only change keeps every subject key, so the key-overlap measures
// report a perfect index while retrieval exposes the stale triples.
TEST(SensitivityWitness, objectOnlyChange) {
  Dataset before = datasetFromString(
      "<http://ex/s1> <http://ex/p> \"old\" <http://ex/c> .\n"
      "<http://ex/s2> <http://ex/p> \"same\" <http://ex/c> .\n",
      "t0");
  Dataset after = datasetFromString(
      "<http://ex/s1> <http://ex/p> \"new\" <http://ex/c> .\n"
      "<http://ex/s2> <http://ex/p> \"same\" <http://ex/c> .\n",
      "t1");
  Index stale = buildIndex(before, IndexKind::Subject);
  Index gold = buildIndex(after, IndexKind::Subject);
  auto r = measureAll(after, before, gold, stale);
  EXPECT_EQ(r[Measure::JaccardKeys], 1.0);
  EXPECT_EQ(r[Measure::KeyRecall], 1.0);
  EXPECT_LT(r[Measure::MicroPrecision], 1.0);
}

TEST(SingleEntryRegime, correlationSigns) {
  testkit::Rng rng(31);
  auto dir = tempDir("single");
  auto paths = writeSeries(dir, testkit::singleEntrySeries(30, 12, rng));
  auto tables =
      runEvolution(SnapshotSeries::fromPaths(paths), {IndexKind::Subject});
  auto m = correlationMatrix(tables[0]);
  for (Measure key : {Measure::JaccardKeys, Measure::KeyRecall}) {
    for (Measure ret : {Measure::MacroRecall, Measure::MicroRecall,
                        Measure::MicroPrecision}) {
      ASSERT_TRUE(m.at(key, ret));
      EXPECT_GT(*m.at(key, ret), 0.0);
    }
  }
  ASSERT_TRUE(m.at(Measure::KlDivergence, Measure::MicroRecall));
  EXPECT_LT(*m.at(Measure::KlDivergence, Measure::MicroRecall), 0.0);
}

TEST(EmitReports, filesAndDeterminism) {
  auto dir = tempDir("emit");
  testkit::Rng rng(13);
  auto base = testkit::randomMicroQuads(rng);
  auto paths = writeSeries(dir, {base, base, testkit::perturb(base, rng)});
  auto tables = runEvolution(SnapshotSeries::fromPaths(paths),
                             {IndexKind::Type, IndexKind::Subject});
  std::vector<CorrelationMatrix> matrices;
  for (const auto& t : tables) matrices.push_back(correlationMatrix(t));

  auto out1 = dir / "out1";
  auto written = emitReports(tables, matrices, out1);
  EXPECT_EQ(written.size(), 8u);
  std::string csv = slurp(out1 / "observations_subject.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  std::istringstream lines(csv);
  std::string header, identity;
  std::getline(lines, header);
  std::getline(lines, identity);
  EXPECT_EQ(header.rfind("gold_snapshot_id,jaccard_triples,", 0), 0u);
  EXPECT_EQ(identity.substr(identity.size() - 8), ",1,1,1,1");

  auto corr = slurp(out1 / "correlation_subject.csv");
  EXPECT_EQ(std::count(corr.begin(), corr.end(), '\n'), 12);
  auto j = nlohmann::json::parse(slurp(out1 / "correlation_subject.json"));
  EXPECT_EQ(j["rho"].size(), kMeasureCount);

  auto out2 = dir / "out2";
  emitReports(tables, matrices, out2);
  for (const auto& p : written) {
    EXPECT_EQ(slurp(p), slurp(out2 / p.filename())) << p;
  }

  auto csvOnly = dir / "csv";
  EXPECT_EQ(emitReports(tables, {}, csvOnly, {true, false}).size(), 2u);
}

TEST(ReadObservations, roundTripsWrittenTables) {
  auto dir = tempDir("read");
  testkit::Rng rng(14);
  auto base = testkit::randomMicroQuads(rng);
  std::vector<std::vector<Quad>> docs{base};
  for (int i = 0; i < 4; ++i) docs.push_back(testkit::perturb(base, rng));
  auto tables = runEvolution(SnapshotSeries::fromPaths(writeSeries(dir, docs)),
                             {IndexKind::PropertySet});
  emitReports(tables, {}, dir, {true, false});
  auto back = readObservationsCsv(dir / "observations_propertyset.csv");
  EXPECT_EQ(back.indexKind, IndexKind::PropertySet);
  ASSERT_EQ(back.rows.size(), tables[0].rows.size());
  for (std::size_t r = 0; r < back.rows.size(); ++r) {
    EXPECT_EQ(back.rows[r].goldSnapshotId, tables[0].rows[r].goldSnapshotId);
    for (std::size_t m = 0; m < kMeasureCount; ++m) {
      EXPECT_NEAR(back.rows[r].report.values[m],
                  tables[0].rows[r].report.values[m],
                  1e-11 * std::max(1.0, std::abs(back.rows[r].report.values[m])));
    }
  }
  writeFile(dir / "other.csv", "x\n");
  EXPECT_THROW(readObservationsCsv(dir / "other.csv"), FormatError);
  writeFile(dir / "observations_type.csv", "gold_snapshot_id,jaccard_triples\n");
  EXPECT_THROW(readObservationsCsv(dir / "observations_type.csv"), FormatError);
}
