#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "makro/random.hpp"

namespace makro::gsmp {

// Continuous-time stochastic-rule engine (generalized semi-Markov process).
// A world type W must expose `double now;` and `RngStream rng;`. Rules are
// bound to an agent population and carry a guard, a timing and an effect.
//
// Exponential clocks are resolved with the direct (Gillespie) scheme: the
// winning rule among enabled exponential candidates is chosen with
// probability rate_i / sum(rates) and the joint waiting time is
// Exp(sum(rates)). By memorylessness this is distributed identically to
// drawing an independent waiting time per candidate and taking the minimum,
// i.e. to the first-reaction scheme, while consuming two uniforms per event.
// A literal first-reaction mode is kept for equivalence testing.
//
// FixedPeriod rules keep a deterministic schedule; simultaneous fixed events
// are executed in (agent_id, rule_id) order. Instant rules fire through the
// instant queue before any time advance.

enum class Timing { Exponential, FixedPeriod, Instant };

template <class W>
struct Rule {
    std::string name;
    int population = 0;  // index registered via Engine::add_population
    Timing timing = Timing::Exponential;
    double period = 0.0;  // FixedPeriod only
    std::function<bool(W&, int)> guard;    // nullptr = always enabled
    std::function<double(W&, int)> rate;   // Exponential only
    std::function<void(W&, int)> effect;
};

enum class StepStatus { Fired, ReachedLimit, Stalled };

struct StepResult {
    StepStatus status = StepStatus::Stalled;
    int rule_id = -1;
    int agent_id = -1;
    double time = 0.0;
};

enum class Scheduler { Direct, FirstReaction };

template <class W>
class Engine {
public:
    /// Registers an agent population of fixed size, returns its index.
    int add_population(int count) {
        population_sizes_.push_back(count);
        return static_cast<int>(population_sizes_.size()) - 1;
    }

    int add_rule(Rule<W> rule) {
        rules_.push_back(std::move(rule));
        return static_cast<int>(rules_.size()) - 1;
    }

    void set_scheduler(Scheduler s) { scheduler_ = s; }

    /// Queues an instant rule for an agent; fired before the next time advance.
    void queue_instant(int rule_id, int agent_id) {
        instant_queue_.push_back({rule_id, agent_id});
    }

    /// Resets fixed-rule schedules relative to the world's current time.
    void start(W& world) {
        fixed_next_.assign(rules_.size(), {});
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            if (rules_[r].timing == Timing::FixedPeriod) {
                const int n = population_sizes_[rules_[r].population];
                fixed_next_[r].assign(n, world.now + rules_[r].period);
            }
        }
        instant_queue_.clear();
        event_count_ = 0;
    }

    std::uint64_t event_count() const { return event_count_; }

    /// Advances by one event, never past t_limit (clock clamps to t_limit).
    StepResult step(W& world, double t_limit) {
        while (true) {
            if (!instant_queue_.empty()) {
                auto [r, a] = instant_queue_.front();
                instant_queue_.erase(instant_queue_.begin());
                if (enabled(world, r, a)) {
                    rules_[r].effect(world, a);
                    ++event_count_;
                    return {StepStatus::Fired, r, a, world.now};
                }
                continue;
            }

            // Earliest fixed candidate, ties broken by (agent_id, rule_id).
            int fr = -1, fa = -1;
            double ft = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rules_.size(); ++r) {
                if (rules_[r].timing != Timing::FixedPeriod) continue;
                const auto& sched = fixed_next_[r];
                for (int a = 0; a < static_cast<int>(sched.size()); ++a) {
                    const double t = sched[a];
                    if (t < ft ||
                        (t == ft && (a < fa || (a == fa && static_cast<int>(r) < fr)))) {
                        ft = t;
                        fr = static_cast<int>(r);
                        fa = a;
                    }
                }
            }

            // Joint exponential candidate.
            double total_rate = 0.0;
            double et = std::numeric_limits<double>::infinity();
            int er = -1, ea = -1;
            if (scheduler_ == Scheduler::Direct) {
                exp_rates_.clear();
                for (std::size_t r = 0; r < rules_.size(); ++r) {
                    if (rules_[r].timing != Timing::Exponential) continue;
                    const int n = population_sizes_[rules_[r].population];
                    for (int a = 0; a < n; ++a) {
                        double rate = 0.0;
                        if (!rules_[r].guard || rules_[r].guard(world, a)) {
                            rate = rules_[r].rate(world, a);
                            if (rate < 0.0) {
                                throw ModelError("rule '" + rules_[r].name +
                                                 "' produced a negative rate for agent " +
                                                 std::to_string(a));
                            }
                        }
                        exp_rates_.push_back(rate);
                        total_rate += rate;
                    }
                }
                if (total_rate > 0.0) {
                    et = world.now + draw_waiting_time(total_rate, world.rng);
                    if (et <= ft && et <= t_limit) {
                        // Select the winner only when the event will actually fire,
                        // so the uniform stream stays aligned across t_limit splits.
                        double x = world.rng.uniform01() * total_rate;
                        std::size_t k = 0;
                        for (std::size_t r = 0; r < rules_.size(); ++r) {
                            if (rules_[r].timing != Timing::Exponential) continue;
                            const int n = population_sizes_[rules_[r].population];
                            for (int a = 0; a < n; ++a, ++k) {
                                x -= exp_rates_[k];
                                if (x <= 0.0 && exp_rates_[k] > 0.0) {
                                    er = static_cast<int>(r);
                                    ea = a;
                                    goto selected;
                                }
                            }
                        }
                        // Fall back to the last positive-rate candidate.
                        for (std::size_t k2 = exp_rates_.size(); k2-- > 0;) {
                            if (exp_rates_[k2] > 0.0) {
                                locate(k2, er, ea);
                                break;
                            }
                        }
                    selected:;
                    }
                }
            } else {
                // First-reaction: an independent draw per enabled candidate.
                for (std::size_t r = 0; r < rules_.size(); ++r) {
                    if (rules_[r].timing != Timing::Exponential) continue;
                    const int n = population_sizes_[rules_[r].population];
                    for (int a = 0; a < n; ++a) {
                        if (rules_[r].guard && !rules_[r].guard(world, a)) continue;
                        const double rate = rules_[r].rate(world, a);
                        if (rate < 0.0) {
                            throw ModelError("rule '" + rules_[r].name +
                                             "' produced a negative rate for agent " +
                                             std::to_string(a));
                        }
                        if (rate == 0.0) continue;
                        total_rate += rate;
                        const double t = world.now + draw_waiting_time(rate, world.rng);
                        if (t < et || (t == et && (a < ea || (a == ea && static_cast<int>(r) < er)))) {
                            et = t;
                            er = static_cast<int>(r);
                            ea = a;
                        }
                    }
                }
            }

            const bool have_fixed = fr >= 0;
            const bool have_exp = total_rate > 0.0;
            if (!have_fixed && !have_exp) {
                return {StepStatus::Stalled, -1, -1, world.now};
            }

            if (ft <= et) {
                if (ft > t_limit) {
                    world.now = t_limit;
                    return {StepStatus::ReachedLimit, -1, -1, world.now};
                }
                world.now = ft;
                fixed_next_[fr][fa] += rules_[fr].period;
                if (rules_[fr].guard && !rules_[fr].guard(world, fa)) {
                    continue;  // disabled at firing time: schedule advances, no event
                }
                rules_[fr].effect(world, fa);
                ++event_count_;
                return {StepStatus::Fired, fr, fa, world.now};
            }
            if (et > t_limit) {
                world.now = t_limit;
                return {StepStatus::ReachedLimit, -1, -1, world.now};
            }
            world.now = et;
            rules_[er].effect(world, ea);
            ++event_count_;
            return {StepStatus::Fired, er, ea, world.now};
        }
    }

    /// Runs until t_end. Returns Stalled if the process died early,
    /// otherwise ReachedLimit with the clock clamped at t_end.
    /// `on_event`, when set, observes every fired event.
    StepResult run_until(W& world, double t_end,
                         const std::function<void(W&, const StepResult&)>& on_event = {}) {
        StepResult last{StepStatus::ReachedLimit, -1, -1, world.now};
        while (world.now < t_end) {
            StepResult r = step(world, t_end);
            if (r.status == StepStatus::Fired) {
                if (on_event) on_event(world, r);
                last = r;
                continue;
            }
            return r;
        }
        return {StepStatus::ReachedLimit, last.rule_id, last.agent_id, world.now};
    }

    const Rule<W>& rule(int id) const { return rules_[id]; }
    int rule_count() const { return static_cast<int>(rules_.size()); }

private:
    bool enabled(W& world, int r, int a) {
        return !rules_[r].guard || rules_[r].guard(world, a);
    }

    void locate(std::size_t flat, int& r_out, int& a_out) const {
        std::size_t k = 0;
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            if (rules_[r].timing != Timing::Exponential) continue;
            const std::size_t n = population_sizes_[rules_[r].population];
            if (flat < k + n) {
                r_out = static_cast<int>(r);
                a_out = static_cast<int>(flat - k);
                return;
            }
            k += n;
        }
    }

    std::vector<Rule<W>> rules_;
    std::vector<int> population_sizes_;
    std::vector<std::vector<double>> fixed_next_;
    std::vector<std::pair<int, int>> instant_queue_;
    std::vector<double> exp_rates_;
    Scheduler scheduler_ = Scheduler::Direct;
    std::uint64_t event_count_ = 0;
};

}  // namespace makro::gsmp
