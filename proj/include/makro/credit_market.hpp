#pragma once

#include "makro/world.hpp"

namespace makro::credit {

enum class Purpose { Liquidity, Investment };

/// Requested amount when a firm cannot cover its target wage bill.
double liquidity_need(const World& w, int firm_id);

/// Remaining overdraft capacity granted by the firm's own bank; zero once
/// the firm crosses the insolvency hurdle.
double overdraft_headroom(const World& w, int firm_id);

/// Expected profit per period: 3-period turnover extrapolation plus nominal
/// inventory variation plus deposit interest minus wages and borrowing costs.
double expected_profit(const World& w, int firm_id);

/// Present value of the annuity factor sum over the loan duration.
double annuity_factor(double rate, int duration);

/// Expected return on a candidate loan: NPV minus principal minus expected
/// loss (lgd * pd * principal). Negative return means rejection.
double expected_return(const World& w, int bank_id, int firm_id, double loan);

/// Logistic default probability over the expected operating cash flow
/// against the risk-weighted redemption of the candidate loan.
double probability_of_default(const World& w, int bank_id, int firm_id, double loan);

/// Borrower solvency rating: piecewise-linear in the debt ratio between 0.2
/// (high solvency) and 1.5 (low solvency).
double risk_weight(const World& w, double dr);

/// Regulatory credit creation potential of a bank over its current book.
double credit_potential(const World& w, int bank_id);

/// Counter-cyclical buffer add-on from the credit-to-GDP gap deviation
/// (percentage points), as a decimal extension of the capital requirement.
double countercyclical_buffer_value(const World& w, double gap_minus_trend);

/// Periodic refresh of the buffer state (gap history, 60-period trend).
void update_countercyclical_buffer(World& w);

/// Periodic refresh of cached firm solvency and bank risk exposures.
void refresh_risk_state(World& w);

struct GrantPlan {
    double granted = 0.0;    // loans actually booked
    double overdraft = 0.0;  // liquidity fallback drawn
    double rationed = 0.0;   // demand that died
};

/// Routes a credit request across banks (weighted by offered rate), grants
/// against creditworthiness, regulatory and leverage headroom, books loans
/// (deposits appear simultaneously) and falls back to the overdraft for
/// liquidity needs. `below_average_only` restricts lenders to those offering
/// less than the market-average rate (above-limit investment borrowing).
GrantPlan process_credit_request(World& w, int firm_id, double amount,
                                 Purpose purpose, bool below_average_only = false);

/// Incidence of the bank strategy rule, driven by the exposure relative to
/// the buffered regulatory maximum.
double bank_incidence_rate(const World& w, int bank_id);

/// Applies exactly one branch of the bank update rule (earnings retention,
/// margin step, risk-attitude step).
void update_bank_strategy(World& w, int bank_id, double xi);

/// Recapitalizes one insolvent bank to the regulatory minimum; returns the
/// injection paid by the government.
double bailout(World& w, int bank_id);

/// Recapitalizes every bank with negative equity.
void sweep_bailouts(World& w);

enum class MinskyClass { Hedge, Speculative, Ponzi };

/// Financing-position litmus: hedge (OCF^e >= 0), speculative (covers
/// interest but not principal), Ponzi (covers neither).
MinskyClass classify_minsky(const World& w, int firm_id);

}  // namespace makro::credit
