#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "makro/model.hpp"

namespace makro::runner {

struct RunResult {
    TimeSeriesPanel panel;
    bool stalled = false;
    std::uint64_t events = 0;
    double wall_seconds = 0.0;
    // populated when invariant checking is on
    int invariant_violations = 0;
    double worst_invariant_gap = 0.0;
    std::vector<InterbankTick> interbank_ticks;
};

struct RunOptions {
    bool check_invariants = false;   // full ledger audit after every event
    double invariant_tolerance = 1e-6;
    bool record_interbank_ticks = false;
};

/// One replication: fresh world from the config, full horizon.
RunResult run_one(const SimConfig& cfg, std::uint64_t stream_id,
                  const RunOptions& opts = {});

/// All replications; outputs are identical whether executed serially or in
/// parallel (each replication owns its stream).
std::vector<RunResult> run_replications(const SimConfig& cfg,
                                        const RunOptions& opts = {});

}  // namespace makro::runner
