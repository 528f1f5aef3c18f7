#pragma once

#include "makro/world.hpp"

namespace makro::goods {

/// Transition rate of the pricing/production strategy rule, driven by the
/// inventory gap: x = N/N^T, rate = x when x >= 1 else 2 - x.
/// Degenerate targets clamp into (0, 2].
double strategy_rate(const World& w, int firm_id);

/// Minimum price: wage plus borrowing cost per produced unit.
double cost_covering_price(const World& w, int firm_id);

/// Applies exactly one branch of the pricing/production update; resets the
/// demand counter and enforces the cost-covering price floor.
void update_firm_strategy(World& w, int firm_id, double xi);

double hire_rate(const World& w, int firm_id);
double fire_rate(const World& w, int firm_id);

/// Moves one unemployed household into the firm (no-op when none exists).
void hire_one(World& w, int firm_id);
/// Releases one employee of the firm.
void fire_one(World& w, int firm_id);

/// One production event: one unit of inventory (rate Lambda * alpha).
void produce_one(World& w, int firm_id);

struct PurchaseRecord {
    bool matched = false;
    int firm = -1;
    double price = 0.0;
};

/// One consumption event of a household: weighted-random supplier with
/// weight mean_price / price among firms with inventory the household can
/// afford. Rationed demand is a no-op.
PurchaseRecord consume(World& w, int household_id);

/// Periodic wage payment for one firm; a liquidity shortfall triggers the
/// financial-need credit request before wages are paid.
void pay_wages(World& w, int firm_id);

/// Periodic insolvency check: debt ratio above the hurdle terminates all
/// credit lines, shrinks the firm to the minimum size and keeps it running.
bool check_bankruptcy(World& w, int firm_id);

/// DR_i = (loans + overdraft) / (Liq + E + OCF^e); non-positive denominators
/// map to a huge ratio (treated as insolvent).
double debt_ratio(const World& w, int firm_id);

/// Expected operating cash flow per period: turnover extrapolation minus
/// wages and borrowing costs.
double expected_ocf(const World& w, int firm_id);

/// Book equity of a firm: deposits + inventory at own price - debt.
double firm_equity(const World& w, int firm_id);

}  // namespace makro::goods
