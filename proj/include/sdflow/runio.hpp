// Batch output files for one run: series.csv, manifest.json, snap_<k>.csv.
#ifndef SDFLOW_RUNIO_HPP
#define SDFLOW_RUNIO_HPP

#include <string>

#include "sdflow/flow.hpp"
#include "sdflow/neumann.hpp"

namespace sdflow {

inline constexpr const char* kVersion = "0.1.0";

// decimal text with 17 significant digits (lossless binary64 round trip)
std::string format_double(double v);

void write_series_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows);
void write_snapshot_csv(const std::string& path, const HeightField& rho);
void write_snapshot_csv(const std::string& path, const NeumannField& rho);

// manifest.json: config echo, version, wall times, outcome, final diagnostics,
// fit when present, and the volume-predicted limit radius
void write_manifest(const std::string& path, const RunConfig& cfg, const RunOutcome& outcome,
                    double initial_volume, double solver_period, const std::string& started,
                    const std::string& finished);

std::string iso_timestamp_now();

// executes a configured run (periodic or neumann) and writes all outputs into
// cfg.output.dir; returns the outcome
RunOutcome execute_run(const RunConfig& cfg);

}  // namespace sdflow

#endif
