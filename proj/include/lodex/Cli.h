#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lodex/Error.h"
#include "lodex/Evolution.h"
#include "lodex/Index.h"

namespace lodex::cli {

enum class Command { Build, Compare, Evolve, Correlate };

class UsageError : public Error {
 public:
  using Error::Error;
};

struct CliConfig {
  Command command = Command::Build;
  std::vector<std::string> inputs;
  std::optional<std::string> manifest;
  std::vector<IndexKind> kinds;  // all six unless restricted
  double lambda = 0.5;
  bool schemexStrict = false;
  bool excludeRdfTypeFromPs = false;
  bool quadLevelJaccard = false;
  bool strictParse = false;
  bool dump = false;
  std::optional<std::string> outDir;
  OutputFormats formats;

  bool operator==(const CliConfig&) const = default;
};

// argv excludes the program name. Throws UsageError naming the offending
// flag or argument.
CliConfig parseArgs(const std::vector<std::string>& args);

// Canonical argument list that parses back to `cfg`.
std::vector<std::string> renderArgs(const CliConfig& cfg);

std::string usage();

// Output directory: --out, then $LODEX_OUT, then `fallback`.
std::optional<std::string> resolveOutDir(const CliConfig& cfg,
                                         std::optional<std::string> fallback);

// Exit codes: 0 success, 1 data/processing error, 2 usage error.
int run(const CliConfig& cfg, std::ostream& out, std::ostream& err);

// parseArgs + run with diagnostics on `err`.
int main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

}  // namespace lodex::cli
