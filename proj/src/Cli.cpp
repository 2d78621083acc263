#include "lodex/Cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lodex/Dataset.h"
#include "lodex/Measures.h"

namespace fs = std::filesystem;

namespace lodex::cli {

namespace {

constexpr std::pair<std::string_view, Command> kCommands[] = {
    {"build", Command::Build},
    {"compare", Command::Compare},
    {"evolve", Command::Evolve},
    {"correlate", Command::Correlate},
};

std::string_view commandName(Command c) {
  for (auto [name, cmd] : kCommands) {
    if (cmd == c) return name;
  }
  return "?";
}

std::string formatLambda(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string usage() {
  return R"(usage: lodex <command> [inputs...] [options]

commands:
  build <snapshot>                 build indices over one snapshot
  compare <gold> <stale>           compare a stale index against a gold one
  evolve <snap1> <snap2> [...]     fix indices at the first snapshot and
         | --manifest <file>       compare them against every later one
  correlate <observations.csv>...  recompute correlation matrices

options:
  --kind <k>[,<k>...]              subject,type,typeset,propertyset,ecs,
                                   schemex (default: all)
  --lambda <x>                     Lidstone smoothing constant (default 0.5)
  --schemex-strict                 require every property to reach an object
  --exclude-rdf-type-from-ps       drop rdf:type from property sets
  --quad-level-jaccard             compare quads instead of triples
  --strict-parse                   fail on the first malformed line
  --out <dir>                      output directory (fallback: $LODEX_OUT)
  --format <csv|json>[,...]        output formats (default: both)
  --manifest <file>                snapshotId<TAB>path per line (evolve)
  --dump                           print the canonical index dump (build)
)";
}

CliConfig parseArgs(const std::vector<std::string>& args) {
  CLI::App app{"lodex"};
  app.set_help_flag();
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> kinds;
  std::vector<std::string> formats;
  std::optional<std::string> manifest;
  std::optional<std::string> outDir;
  CliConfig cfg;

  app.add_option("command", command)->required();
  app.add_option("inputs", inputs);
  app.add_option("--kind", kinds)->delimiter(',');
  app.add_option("--lambda", cfg.lambda);
  app.add_option("--manifest", manifest);
  app.add_option("--out", outDir);
  app.add_option("--format", formats)->delimiter(',');
  app.add_flag("--schemex-strict", cfg.schemexStrict);
  app.add_flag("--exclude-rdf-type-from-ps", cfg.excludeRdfTypeFromPs);
  app.add_flag("--quad-level-jaccard", cfg.quadLevelJaccard);
  app.add_flag("--strict-parse", cfg.strictParse);
  app.add_flag("--dump", cfg.dump);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  auto it = std::find_if(std::begin(kCommands), std::end(kCommands),
                         [&](const auto& c) { return c.first == command; });
  if (it == std::end(kCommands)) {
    throw UsageError("unknown command '" + command + "'");
  }
  cfg.command = it->second;
  cfg.inputs = std::move(inputs);
  cfg.manifest = std::move(manifest);
  cfg.outDir = std::move(outDir);

  for (const auto& name : kinds) {
    auto kind = parseIndexKind(name);
    if (!kind) throw UsageError("--kind: unknown index kind '" + name + "'");
    if (std::find(cfg.kinds.begin(), cfg.kinds.end(), *kind) ==
        cfg.kinds.end()) {
      cfg.kinds.push_back(*kind);
    }
  }
  if (cfg.kinds.empty()) {
    cfg.kinds.assign(std::begin(kAllIndexKinds), std::end(kAllIndexKinds));
  }

  if (!formats.empty()) {
    cfg.formats = {false, false};
    for (const auto& f : formats) {
      if (f == "csv") {
        cfg.formats.csv = true;
      } else if (f == "json") {
        cfg.formats.json = true;
      } else {
        throw UsageError("--format: expected csv or json, got '" + f + "'");
      }
    }
  }

  if (!(cfg.lambda > 0) || !std::isfinite(cfg.lambda)) {
    throw UsageError("--lambda: must be a positive number");
  }
  if (cfg.dump && cfg.command != Command::Build) {
    throw UsageError("--dump: only valid for build");
  }
  if (cfg.manifest && cfg.command != Command::Evolve) {
    throw UsageError("--manifest: only valid for evolve");
  }

  const std::size_t n = cfg.inputs.size();
  auto arity = [&](bool ok, const char* expected) {
    if (!ok) {
      throw UsageError(std::string(commandName(cfg.command)) + ": expected " +
                       expected + ", got " + std::to_string(n) + " input(s)");
    }
  };
  switch (cfg.command) {
    case Command::Build:
      arity(n == 1, "one snapshot");
      break;
    case Command::Compare:
      arity(n == 2, "a gold and a stale snapshot");
      break;
    case Command::Evolve:
      if (cfg.manifest) {
        arity(n == 0, "no positional snapshots together with --manifest");
      } else {
        arity(n >= 2, "at least two snapshots or --manifest");
      }
      break;
    case Command::Correlate:
      arity(n >= 1, "at least one observations CSV");
      break;
  }
  return cfg;
}

std::vector<std::string> renderArgs(const CliConfig& cfg) {
  std::vector<std::string> args{std::string(commandName(cfg.command))};
  args.insert(args.end(), cfg.inputs.begin(), cfg.inputs.end());
  if (cfg.manifest) {
    args.push_back("--manifest");
    args.push_back(*cfg.manifest);
  }
  for (IndexKind k : cfg.kinds) {
    args.push_back("--kind");
    args.push_back(std::string(toString(k)));
  }
  args.push_back("--lambda");
  args.push_back(formatLambda(cfg.lambda));
  if (cfg.schemexStrict) args.push_back("--schemex-strict");
  if (cfg.excludeRdfTypeFromPs) args.push_back("--exclude-rdf-type-from-ps");
  if (cfg.quadLevelJaccard) args.push_back("--quad-level-jaccard");
  if (cfg.strictParse) args.push_back("--strict-parse");
  if (cfg.dump) args.push_back("--dump");
  if (cfg.outDir) {
    args.push_back("--out");
    args.push_back(*cfg.outDir);
  }
  if (cfg.formats.csv) {
    args.push_back("--format");
    args.push_back("csv");
  }
  if (cfg.formats.json) {
    args.push_back("--format");
    args.push_back("json");
  }
  return args;
}

std::optional<std::string> resolveOutDir(const CliConfig& cfg,
                                         std::optional<std::string> fallback) {
  if (cfg.outDir) return cfg.outDir;
  if (const char* env = std::getenv("LODEX_OUT"); env && *env) {
    return std::string(env);
  }
  return fallback;
}

namespace {

LoadOptions loadOptions(const CliConfig& cfg, std::ostream& err) {
  LoadOptions opts;
  opts.mode = cfg.strictParse ? ParseMode::Strict : ParseMode::Lenient;
  opts.diagnostics = &err;
  return opts;
}

BuildOptions buildOptions(const CliConfig& cfg) {
  return {cfg.schemexStrict, cfg.excludeRdfTypeFromPs};
}

MeasureConfig measureConfig(const CliConfig& cfg) {
  return {cfg.lambda, cfg.quadLevelJaccard};
}

void writeText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw IoError("cannot write " + path.string());
}

fs::path ensureDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir);
  return dir;
}

int runBuild(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string& input = cfg.inputs[0];
  Dataset d = loadSnapshot(input, fs::path(input).filename().string(),
                           loadOptions(cfg, err));
  auto outDir = resolveOutDir(cfg, std::nullopt);
  for (IndexKind kind : cfg.kinds) {
    Index index = buildIndex(d, kind, buildOptions(cfg));
    auto lines = canonicalDump(index);
    if (cfg.dump) {
      if (cfg.kinds.size() > 1) out << "# " << toString(kind) << '\n';
      for (const auto& l : lines) out << l << '\n';
    } else {
      out << toString(kind) << "\tkeys=" << index.keyCount()
          << "\tpairs=" << lines.size() << '\n';
    }
    if (outDir) {
      std::string text;
      for (const auto& l : lines) text += l + '\n';
      writeText(ensureDir(*outDir) /
                    ("index_" + std::string(toString(kind)) + ".tsv"),
                text);
    }
  }
  return 0;
}

int runCompare(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  auto load = loadOptions(cfg, err);
  Dataset gold = loadSnapshot(cfg.inputs[0],
                              fs::path(cfg.inputs[0]).filename().string(), load);
  Dataset stale = loadSnapshot(
      cfg.inputs[1], fs::path(cfg.inputs[1]).filename().string(), load);
  auto outDir = resolveOutDir(cfg, std::nullopt);
  for (IndexKind kind : cfg.kinds) {
    Index gi = buildIndex(gold, kind, buildOptions(cfg));
    Index si = buildIndex(stale, kind, buildOptions(cfg));
    MeasureReport r = measureAll(gold, stale, gi, si, measureConfig(cfg));
    out << reportToJson(r) << '\n';
    if (outDir) {
      fs::path dir = ensureDir(*outDir);
      std::string base = "report_" + std::string(toString(kind));
      if (cfg.formats.json) writeText(dir / (base + ".json"), reportToJson(r) + '\n');
      if (cfg.formats.csv) {
        writeText(dir / (base + ".csv"),
                  reportCsvHeader() + '\n' + reportToCsvRow(r) + '\n');
      }
    }
  }
  return 0;
}

std::vector<CorrelationMatrix> matricesFor(
    const std::vector<ObservationTable>& tables, std::ostream& err) {
  std::vector<CorrelationMatrix> matrices;
  for (const auto& t : tables) {
    if (t.rows.size() < 2) {
      err << "lodex: note: " << toString(t.indexKind)
          << ": fewer than two observations, no correlation matrix\n";
      continue;
    }
    matrices.push_back(correlationMatrix(t));
  }
  return matrices;
}

int runEvolve(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> paths(cfg.inputs.begin(), cfg.inputs.end());
  SnapshotSeries series = cfg.manifest
                              ? SnapshotSeries::fromManifest(*cfg.manifest)
                              : SnapshotSeries::fromPaths(paths);
  EvolutionOptions opts{measureConfig(cfg), buildOptions(cfg),
                        loadOptions(cfg, err)};
  auto tables = runEvolution(series, cfg.kinds, opts);
  auto matrices = matricesFor(tables, err);
  auto written =
      emitReports(tables, matrices, *resolveOutDir(cfg, "."), cfg.formats);
  for (const auto& p : written) out << p.string() << '\n';
  return 0;
}

int runCorrelate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<ObservationTable> tables;
  for (const auto& input : cfg.inputs) {
    tables.push_back(readObservationsCsv(input));
  }
  auto matrices = matricesFor(tables, err);
  auto written =
      emitReports({}, matrices, *resolveOutDir(cfg, "."), cfg.formats);
  for (const auto& p : written) out << p.string() << '\n';
  return 0;
}

}  // namespace

int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Build: return runBuild(cfg, out, err);
      case Command::Compare: return runCompare(cfg, out, err);
      case Command::Evolve: return runEvolve(cfg, out, err);
      case Command::Correlate: return runCorrelate(cfg, out, err);
    }
  } catch (const UsageError& e) {
    err << "lodex: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "lodex: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

int main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  if (args.empty() || args[0] == "--help" || args[0] == "-h" ||
      args[0] == "help") {
    (args.empty() ? err : out) << usage();
    return args.empty() ? 2 : 0;
  }
  CliConfig cfg;
  try {
    cfg = parseArgs(args);
  } catch (const UsageError& e) {
    err << "lodex: " << e.what() << '\n' << "try 'lodex --help'\n";
    return 2;
  }
  return run(cfg, out, err);
}

}  // namespace lodex::cli
