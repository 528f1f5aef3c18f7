#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace makro {

// All model parameters, grouped per sub-model. Every value can be overridden
// from the flat key-value config file; the calibration supplement of the
// original study is not public, so defaults here are declared calibration
// choices, not authoritative.

struct PopulationParams {
    int banks = 12;
    int firms = 48;       // default ratio: 4 firms per bank
    int households = 480; // default ratio: 40 households per bank
};

struct RunParams {
    double horizon = 600.0;
    int warmup = 200;
    int replications = 20;
    std::uint64_t seed = 42;
    bool parallel = false;
};

struct GoodsParams {
    double alpha = 1.0;        // labor productivity, units per worker per period
    double wage = 1.0;         // fixed wage per period
    double gamma_y = 0.10;     // production adaption sensitivity
    double gamma_p = 0.04;     // price adaption sensitivity
    double zeta_h = 1.0;       // hire exponent
    double zeta_f = 1.0;       // fire exponent
    double u_nat = 0.05;       // NAIRU
    double price_anchor = 1.5; // calibrated mean price level
    double inventory_target_mult = 2.0;
    double insolvency_hurdle = 2.0; // debt ratio of 200%
    int min_firm_size = 5;
};

struct InvestmentParams {
    double gamma_inv = 0.50;
    int return_window = 3;   // periods over which investment return accumulates
    double min_capacity_gap = 3.0; // floors cap_i so 1/cap <= 1/3 (three-period cycle)
};

struct CreditParams {
    double car = 0.07;        // capital adequacy requirement
    double ccycb_j = 2.0;     // credit-to-GDP gap ramp start, percentage points
    double ccycb_h = 10.0;    // ramp cap
    double leverage_min = 0.03;
    int loan_duration = 18;   // periods
    double gamma_m = 0.005;   // margin step
    double gamma_r = 0.10;    // risk attitude step
    double risk_buffer = 0.9; // bank incidence buffer on max risk exposure
    double weight_low = 0.2;  // risk weight at high solvency (DR <= dr_low)
    double weight_high = 1.5; // risk weight at low solvency (DR >= dr_high)
    double dr_low = 0.5;
    double dr_high = 2.0;
    double margin_init = 0.01;
    double risk_attitude_init = 1.0;
};

struct MonetaryParams {
    double settlement_incidence = 20.0; // settlements per period
    double corridor = 0.01;             // standing facility spread
    double reserve_ratio = 0.01;        // minimum reserve requirement
    double maintenance_window = 2.0;    // periods
    double gamma_i = 0.0005;            // interbank quote step
    double household_switch_rate = 1.0 / 12.0;
    double firm_switch_rate = 1.0 / 100.0;
    double omo_rate_coeff = 40.0; // OMO incidence per unit of |mean im - key|/corridor
    double deposit_spread = 0.03; // calibration discount on the deposit rate
    double deposit_markup_max = 0.03;
};

struct PolicyParams {
    double pi_star = 0.02;  // inflation target per period
    double i_star = 0.10;   // natural rate
    double a_pi = 0.5;      // Taylor coefficients (Taylor 1993)
    double a_y = 0.5;
    double potential_share = 0.95; // y* as share of full production
    int inflation_window = 12;     // periods
    int inflation_sampling = 3;    // price index sampled every 3 periods
    double tax_rate = 0.10;
    double key_rate_init = 0.10;
    double fixed_key_rate = -1.0;  // >= 0 pins the key rate (experiments)
};

struct InitParams {
    double firm_loan = 35.0;      // initial loan principal per firm
    double firm_liquidity = 30.0;
    double household_wealth = 1.6;
    double bank_equity = 10.0;
    double bank_cb_credit = 2.0;
    double employment_share = 0.9; // initial share of capacity staffed
    double firm_investment = 20.0;  // initial investment amount / target
    double inventory_share = 0.5;  // initial N as share of N^T
};

struct ExperimentParams {
    bool sf13 = false;
    double sf13_start = 50.0;
    double sf13_end = 100.0;
    double sf13_injection = 10.0; // reserves per bank per period
    bool interbank_shutdown = false;
};

struct SimConfig {
    PopulationParams populations;
    RunParams run;
    GoodsParams goods;
    InvestmentParams investment;
    CreditParams credit;
    MonetaryParams monetary;
    PolicyParams policy;
    InitParams init;
    ExperimentParams experiment;

    /// Round-trippable flat key=value serialization with [section] headers.
    std::string serialize() const;
    static SimConfig parse(std::istream& in);
    static SimConfig load(const std::string& path);

    /// Ratio and size warnings (population ratios are calibration guidance,
    /// not hard errors). Returns human-readable warnings.
    std::vector<std::string> validate() const;
};

}  // namespace makro
