#include "makro/runner.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "makro/ledger.hpp"

namespace makro::runner {

RunResult run_one(const SimConfig& cfg, std::uint64_t stream_id,
                  const RunOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult result;
    World w = initialize(cfg, stream_id);
    w.record_interbank_ticks = opts.record_interbank_ticks;
    Model model(cfg);
    auto& engine = model.engine();
    engine.start(w);

    std::function<void(World&, const gsmp::StepResult&)> on_event;
    if (opts.check_invariants) {
        on_event = [&result, &opts](World& world, const gsmp::StepResult&) {
            const auto rep = ledger::check_invariants(world);
            const double gap = rep.max_abs();
            if (gap > result.worst_invariant_gap) result.worst_invariant_gap = gap;
            if (gap > opts.invariant_tolerance) ++result.invariant_violations;
        };
    }

    const auto status = engine.run_until(w, cfg.run.horizon, on_event);
    result.stalled = status.status == gsmp::StepStatus::Stalled;
    result.events = engine.event_count();
    result.panel = std::move(w.panel);
    result.interbank_ticks = std::move(w.interbank_ticks);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::vector<RunResult> run_replications(const SimConfig& cfg, const RunOptions& opts) {
    const int n = std::max(cfg.run.replications, 1);
    std::vector<RunResult> results(n);
    if (cfg.run.parallel && n > 1) {
        const unsigned hw = std::max(std::thread::hardware_concurrency(), 1u);
        const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(n));
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                int i;
                while ((i = next.fetch_add(1)) < n) {
                    results[i] = run_one(cfg, static_cast<std::uint64_t>(i), opts);
                }
            });
        }
        for (auto& th : pool) th.join();
    } else {
        for (int i = 0; i < n; ++i) {
            results[i] = run_one(cfg, static_cast<std::uint64_t>(i), opts);
        }
    }
    return results;
}

}  // namespace makro::runner
