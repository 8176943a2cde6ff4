#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cupset/io.hpp"

namespace cupset {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBandViolation = 2;

// Lower and upper limits on u + ubar checked for a generated sample.
struct SumBand {
  double lower = 0.0;
  double upper = 1.0;
};
SumBand band_for(const CupSample& sample, bool classical);

// Tables behind each command; throw Error on bad configuration.
Table cupset_table(const RunConfig& cfg, bool& violation);
Table protocol_table(const RunConfig& cfg, Table* decay = nullptr);
Table fit_table(const CsvData& noisy, const CsvData& ideal);

// Run a command, writing to cfg.output (stdout when empty); messages go to `log`.
int cmd_cupset(const RunConfig& cfg, std::ostream& log);
int cmd_protocol(const RunConfig& cfg, std::ostream& log);
int cmd_fit(const RunConfig& cfg, std::ostream& log);

int run_cli(int argc, char** argv);

}  // namespace cupset
