#pragma once

#include <vector>

#include "makro/agents.hpp"
#include "makro/config.hpp"
#include "makro/panel.hpp"
#include "makro/random.hpp"

namespace makro {

/// A queued cross-bank reserve obligation, cleared at the next settlement
/// tick. Government flows settle against the government account at the
/// central bank (id kGovernment).
struct Obligation {
    int from = 0;  // bank id or kGovernment
    int to = 0;
    double amount = 0.0;
};

inline constexpr int kGovernment = -1;

/// An unsecured one-tick interbank loan; principal plus interest settle at
/// the next settlement tick.
struct IbLoan {
    int lender = 0;
    int borrower = 0;
    double principal = 0.0;
    double rate = 0.0;  // per period
};

struct InterbankTick {
    double time = 0.0;
    double mean_quote = 0.0;
    double volume = 0.0;          // interbank loans traded this tick
    double lf_volume = 0.0;       // lending facility draws
    double excess_reserves = 0.0; // sum over banks of R + facility - target
};

/// The complete simulation state of one replication. Owned by a single
/// thread; replications never share a world.
struct World {
    SimConfig cfg;
    double now = 0.0;
    RngStream rng;

    std::vector<Household> households;
    std::vector<Firm> firms;
    std::vector<Bank> banks;
    CentralBank cb;
    Government gov;

    std::vector<Obligation> obligations;
    std::vector<IbLoan> ib_loans;

    // cached aggregates, maintained on every mutation of the underlying state
    double mean_price_cache = 0.0;
    int unemployed_count = 0;

    // 3-period price-index samples for the inflation measure
    std::vector<double> price_samples;
    double current_inflation = 0.0;  // 12-period average, per period

    // credit-to-GDP gap state for the counter-cyclical buffer
    std::vector<double> credit_gdp_history;  // percent, per period
    double ccycb = 0.0;
    double gap_trend = 0.0;  // G^T, refreshed every 12 periods
    bool gap_trend_valid = false;

    // period accumulators (reset when the panel row is cut)
    double acc_consumption_units = 0.0;
    double acc_investment_units = 0.0;
    double acc_consumption_value = 0.0;
    double acc_investment_value = 0.0;
    double acc_production_units = 0.0;
    double acc_credit_granted = 0.0;
    double acc_credit_rationed = 0.0;
    double acc_defaults = 0.0;
    double acc_loan_losses = 0.0;
    double acc_bankruptcies = 0.0;
    double acc_bank_failures = 0.0;
    double acc_bailout_costs = 0.0;
    double acc_ib_rate_sum = 0.0;
    double acc_ib_rate_sq = 0.0;
    int acc_ib_ticks = 0;
    double acc_ib_volume = 0.0;
    double last_gdp_real = 0.0;

    TimeSeriesPanel panel;
    std::vector<InterbankTick> interbank_ticks;
    bool record_interbank_ticks = false;

    // --- aggregate views -------------------------------------------------

    double mean_price() const { return mean_price_cache; }

    void refresh_mean_price() {
        double s = 0.0;
        int n = 0;
        for (const auto& f : firms) {
            if (!f.bankrupt) {
                s += f.price;
                ++n;
            }
        }
        mean_price_cache = n > 0 ? s / n : cfg.goods.price_anchor;
    }

    double unemployment_rate() const {
        return households.empty()
                   ? 0.0
                   : static_cast<double>(unemployed_count) / households.size();
    }

    double full_production() const {
        return static_cast<double>(households.size()) * cfg.goods.alpha;
    }

    /// Average production capacity with full employment across firms.
    double avg_full_capacity() const {
        return firms.empty() ? 0.0 : full_production() / firms.size();
    }

    double avg_margin() const {
        double s = 0.0;
        for (const auto& b : banks) s += b.margin;
        return banks.empty() ? 0.0 : s / banks.size();
    }

    /// Unweighted mean loan offer rate over banks.
    double avg_loan_rate() const {
        double s = 0.0;
        for (const auto& b : banks) s += loan_offer_rate(b);
        return banks.empty() ? 0.0 : s / banks.size();
    }

    double loan_offer_rate(const Bank& b) const {
        return cb.key_rate + cb.corridor + b.margin;
    }

    double deposit_rate(const Bank& b) const {
        const double r = cb.key_rate - cb.corridor - cfg.monetary.deposit_spread +
                         b.deposit_markup;
        return r > 0.0 ? r : 0.0;
    }

    double mean_ib_quote() const {
        double s = 0.0;
        for (const auto& b : banks) s += b.ib_quote;
        return banks.empty() ? 0.0 : s / banks.size();
    }

    double total_firm_debt() const {
        double d = 0.0;
        for (const auto& f : firms) d += f.total_debt();
        return d;
    }

    /// Minimum-reserve target plus expected outflow for one bank.
    double reserve_target(const Bank& b) const {
        return cfg.monetary.reserve_ratio * b.customer_deposits + b.avg_tick_outflow;
    }
};

}  // namespace makro
