#pragma once

#include "makro/gsmp.hpp"
#include "makro/world.hpp"

namespace makro {

/// Builds the homogeneous start state: identical firms at 90% of their full
/// capacity, one initial loan per firm, balanced bank books.
World initialize(const SimConfig& cfg, std::uint64_t stream_id);

/// Registers all model rules on an engine bound to a World.
class Model {
public:
    explicit Model(const SimConfig& cfg);
    gsmp::Engine<World>& engine() { return engine_; }

private:
    gsmp::Engine<World> engine_;
};

/// The once-per-period accounting cascade: wages, loan redemption, deposit
/// interest, turnover windows, fiscal sweep, insolvencies, regulatory
/// refresh, policy update, panel row.
void period_tick(World& w);

}  // namespace makro
