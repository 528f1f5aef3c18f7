#pragma once

#include "makro/world.hpp"

namespace makro::invest {

/// Creditworthiness-derived liquidity limit: the loan whose redemption the
/// expected profit can just carry at the average market rate.
double liquidity_limit(const World& w, int firm_id);

/// One branch of the investment target update: grow the current amount while
/// returns are positive and within the limit, otherwise fall back to it.
void update_investment_strategy(World& w, int firm_id, double xi);

/// Pro-cyclical incidence of investment events, driven by the gap between
/// average full-employment capacity and the firm's own production.
double investment_rate(const World& w, int firm_id);

struct InvestmentRecord {
    double spent = 0.0;
    double units = 0.0;
    double credit_requested = 0.0;
};

/// Executes one investment event: secures funding in pecking order (internal
/// surplus first, then a credit request), then buys goods unit by unit from
/// other firms via the weighted-random supplier match.
InvestmentRecord execute_investment(World& w, int firm_id);

/// Rolls the per-period investment turnover/cost window and refreshes ret_i.
void roll_investment_return(World& w, int firm_id);

}  // namespace makro::invest
