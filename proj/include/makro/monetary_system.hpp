#pragma once

#include "makro/world.hpp"

namespace makro::monetary {

/// One branch of the interbank quote update (balanced/shortage/excess vs the
/// mean quote), clamped into the standing-facility corridor.
void update_interbank_quote(World& w, int bank_id, double xi);

/// Full settlement tick (incidence 20 per period): facility interest, repay
/// maturing interbank/facility credit, net queued obligations in reserves,
/// interbank matching for shortages, standing facilities for the residual,
/// then quote adaptation. Records the tick statistics.
void settlement_tick(World& w);

/// Rate of the open-market-operation rule, proportional to the deviation of
/// the mean interbank quote from the key rate.
double omo_rate(const World& w);

/// Injects (mean quote above key) or withdraws (below) reserves sized to the
/// aggregate shortage/surplus, as repo-style central-bank credit.
double open_market_operation(World& w);

/// Moves an agent's account to the bank with the most attractive deposit
/// rate (weighted random).
void switch_household_bank(World& w, int household_id);
void switch_firm_bank(World& w, int firm_id);

/// Experiment hook: adds `amount` of reserves per bank as zero-interest
/// central-bank credit.
void inject_reserves(World& w, double amount_per_bank);

}  // namespace makro::monetary
