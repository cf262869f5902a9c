#pragma once

#include <string>
#include <vector>

#include "slicerl/harness/experiment.hpp"

namespace slicerl::harness {

// Reproducibility sidecar written next to every experiment's artifacts:
// config hash, resolved settings, per-run file list, aggregates, and the
// compare diagnostics when present. Deliberately carries no timestamps so
// identical inputs rewrite identical bytes.
void write_manifest(const std::string& path, const ExperimentConfig& cfg,
                    const std::vector<RunRecord>& runs, const std::vector<AggregateRow>& rows,
                    const CompareResult* compare_extras = nullptr,
                    const std::vector<std::string>& plots = {});

}  // namespace slicerl::harness
