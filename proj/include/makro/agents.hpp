#pragma once

#include <array>
#include <vector>

namespace makro {

/// A credit contract between a bank and a firm. Interest is spread equally
/// over the duration, so the per-period redemption is
/// (rate + 1/duration) * original principal while the loan lives.
struct Loan {
    int lender = -1;    // bank id
    int borrower = -1;  // firm id
    double principal = 0.0;          // outstanding
    double original_principal = 0.0;
    double rate = 0.0;               // per period
    int remaining = 0;               // periods
    int duration = 18;
};

struct Household {
    double deposits = 0.0; // Liq_h
    int bank = 0;
    int employer = -1;     // firm id, -1 when unemployed
    bool employed() const { return employer >= 0; }
};

/// Rolling 3-point history with linear extrapolation (simple averages of
/// past events are the model's only expectation device).
struct History3 {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    int n = 0;
    void push(double x) {
        v[0] = v[1];
        v[1] = v[2];
        v[2] = x;
        if (n < 3) ++n;
    }
    double latest() const { return v[2]; }
    /// OLS line through the stored points, evaluated one step ahead.
    double extrapolate() const {
        if (n == 0) return 0.0;
        if (n == 1) return v[2];
        if (n == 2) return v[2] + (v[2] - v[1]);
        // slope through (1,v0),(2,v1),(3,v2); predict at 4
        const double slope = (v[2] - v[0]) / 2.0;
        const double mean = (v[0] + v[1] + v[2]) / 3.0;
        return mean + 2.0 * slope;
    }
};

struct Firm {
    double price = 1.5;         // p_i
    double production_target = 0.0; // Y_i^T, units per period
    int labor = 0;              // Lambda_i
    // real-valued so small expansion targets are not rounded away; hiring
    // fires whenever the target exceeds the integer head count
    double labor_target = 0.0;  // Lambda_i^T
    double inventory = 0.0;     // N_i, units
    double demand_since_strategy = 0.0; // D_i, units
    double liquidity = 0.0;     // Liq_i deposits
    double overdraft = 0.0;     // O_i >= 0
    int bank = 0;
    std::vector<Loan> loans;
    bool bankrupt = false;      // set transiently during the insolvency event

    // investment cycle
    double investment_target = 0.0;   // inv_i^T, nominal per period
    double investment_amount = 0.0;   // inv_i, nominal purchases last period
    double investment_return = 0.0;   // ret_i over the window
    double liquidity_limit = 0.0;     // lim_i
    double interest_pressure = 0.0;   // int_i

    History3 turnover;          // nominal sales per period, last 3 periods
    double window_inv_sales = 0.0;  // investment turnover inside the window
    double window_inv_costs = 0.0;
    std::vector<double> inv_sales_window;  // per-period, length = return window
    std::vector<double> inv_costs_window;

    // period accumulators (reset at the period accounting tick)
    double period_sales = 0.0;        // nominal, consumption + investment
    double period_inv_sales = 0.0;
    double period_inv_costs = 0.0;
    double period_wages = 0.0;
    double period_interest = 0.0;
    double interest_due_last = 0.0;   // feeds int_i
    double principal_due_last = 0.0;
    double inventory_at_period_start = 0.0;
    double last_strategy_time = 0.0;
    /// nominal inventory change realized over the last completed period
    double last_inventory_variation = 0.0;
    double invest_spent_period = 0.0;  // purchases so far in the current period

    // cached per period for O(1) rate evaluation
    double cached_ocf = 0.0;          // OCF_i^e
    double cached_debt_ratio = 0.0;

    std::vector<int> employees;       // household ids

    double capacity(double alpha) const { return labor * alpha; }
    double total_debt() const {
        double d = overdraft;
        for (const auto& l : loans) d += l.principal;
        return d;
    }
};

struct Bank {
    double equity = 0.0;            // E_b
    double reserves = 0.0;          // R_b at the central bank
    double deposit_facility = 0.0;  // interest-bearing account at the CB
    double customer_deposits = 0.0; // liability: sum of customer balances
    double business_loans = 0.0;    // asset: sum of loan principals lent
    double overdraft_assets = 0.0;
    double ib_receivable = 0.0;     // interbank loans granted (1 tick)
    double ib_payable = 0.0;
    double settle_receivable = 0.0; // queued cross-bank obligations
    double settle_payable = 0.0;
    double cb_credit_lf = 0.0;      // marginal lending facility credit
    double cb_credit_omo = 0.0;     // open-market repo credit
    double cb_credit_exp = 0.0;     // experiment injections (zero interest)

    double margin = 0.01;           // m_b loan margin
    double deposit_markup = 0.0;
    double risk_attitude = 1.0;     // upsilon_b
    double ib_quote = 0.0;          // im_b
    double avg_risk_weight = 1.0;   // sigma-bar over the current book
    double risk_exposure = 0.0;     // sum of risk-weighted loan principals
    double credit_demand = 0.0;     // CD_b observed over the last period
    double cd_accum = 0.0;
    double avg_tick_outflow = 0.0;  // expected reserve outflow per tick (EMA)
    double retention_target = 0.0;  // profits to withhold from dividends

    double period_profit = 0.0;     // P&L accumulator
    double maintenance_avg = 0.0;   // reserve holdings averaged over the window

    double assets() const {
        return reserves + deposit_facility + business_loans + overdraft_assets +
               ib_receivable + settle_receivable;
    }
    double liabilities() const {
        return customer_deposits + ib_payable + settle_payable + cb_credit_lf +
               cb_credit_omo + cb_credit_exp;
    }
    double cb_credit_total() const { return cb_credit_lf + cb_credit_omo + cb_credit_exp; }
    double balance_gap() const { return assets() - liabilities() - equity; }
};

struct CentralBank {
    double key_rate = 0.10;          // i_c
    double corridor = 0.01;          // fixed spread of the standing facilities
    double reserves_outstanding = 0.0; // reserves in the bank circuit (incl. facility)
    double lending_rate() const { return key_rate + corridor; }
    double deposit_rate() const { return key_rate - corridor; }
};

struct Government {
    double liquidity = 0.0;   // unbounded below
    double public_debt = 0.0; // cumulative negative liquidity financed
    double tax_receipts_period = 0.0;
    double benefits_period = 0.0;
    double bailout_period = 0.0;
};

}  // namespace makro
