#pragma once

#include <map>
#include <string>
#include <vector>

#include "kicklue/ensemble.hpp"
#include "kicklue/simulate.hpp"

namespace kicklue {

// Full-roundtrip decimal formatting (%.17g); all persisted numbers use it.
std::string format_full(double x);

// Spectra files: '#'-prefixed key = value header (format_version, N, source,
// k1, k2, cpp, sigma, burn_in, stride, seed, count, fixed_trace, init,
// trajectories), then one spectrum per line, N floats, descending.
void write_spectra_file(const std::string& path, const SpectraEnsemble& ensemble);
SpectraEnsemble read_spectra_file(const std::string& path);

// Delimiter-separated table with '#' header lines naming the columns.
void write_table(const std::string& path, const std::vector<std::string>& header_lines,
                 const std::vector<std::string>& column_names,
                 const std::vector<std::vector<double>>& columns);

void write_entropy_series(const std::string& path, const RunConfig& cfg,
                          const std::vector<EntropyRecord>& series);

// Flat "key = value" config text; '#' starts a comment. Returns pairs in
// file order; duplicate or unknown keys are the caller's to reject.
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

// Applies config keys for the simulate/entropy commands onto a RunConfig.
// Throws on unknown keys; `extra_allowed` lists keys consumed elsewhere
// (e.g. output paths), returned in `extras`.
void apply_run_config(RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& kv,
                      const std::vector<std::string>& extra_allowed,
                      std::map<std::string, std::string>& extras);

}  // namespace kicklue
