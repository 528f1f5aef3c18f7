#include "makro/credit_market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "makro/goods_market.hpp"
#include "makro/ledger.hpp"

namespace makro::credit {

double liquidity_need(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    const double wage_bill = f.labor_target * w.cfg.goods.wage;
    return std::max(wage_bill - f.liquidity, 0.0);
}

double overdraft_headroom(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    if (goods::debt_ratio(w, firm_id) > w.cfg.goods.insolvency_hurdle) return 0.0;
    // the facility is a pure wage-bill buffer: cap at one period's target bill
    const double cap =
        std::max(f.labor_target,
                 static_cast<double>(w.cfg.goods.min_firm_size)) *
        w.cfg.goods.wage;
    return std::max(cap - f.overdraft, 0.0);
}

double expected_profit(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    const Bank& b = w.banks[f.bank];
    double borrowing = 0.0;
    for (const auto& l : f.loans) {
        borrowing += l.rate * l.original_principal +
                     std::min(l.principal, l.original_principal / l.duration);
    }
    if (f.overdraft > 0.0) borrowing += w.loan_offer_rate(b) * f.overdraft;
    const double inventory_variation = f.last_inventory_variation;
    const double deposit_interest = w.deposit_rate(b) * std::max(f.liquidity, 0.0);
    return f.turnover.extrapolate() + inventory_variation + deposit_interest -
           f.labor * w.cfg.goods.wage - borrowing;
}

double annuity_factor(double rate, int duration) {
    if (rate == 0.0) return static_cast<double>(duration);
    return (1.0 - std::pow(1.0 + rate, -duration)) / rate;
}

double probability_of_default(const World& w, int bank_id, int firm_id, double loan) {
    const Bank& b = w.banks[bank_id];
    const double il = w.loan_offer_rate(b);
    const double lr = (il + 1.0 / w.cfg.credit.loan_duration) * loan;
    if (lr <= 0.0) return 0.0;
    const double ocf = goods::expected_ocf(w, firm_id);
    return 1.0 / (1.0 + std::exp((ocf - b.risk_attitude * lr) / lr));
}

double expected_return(const World& w, int bank_id, int firm_id, double loan) {
    const Bank& b = w.banks[bank_id];
    const double il = w.loan_offer_rate(b);
    const double npv =
        expected_profit(w, firm_id) * annuity_factor(il, w.cfg.credit.loan_duration) -
        loan;
    const double collateral =
        std::max(w.firms[firm_id].liquidity, 0.0) +
        std::max(goods::firm_equity(w, firm_id), 0.0);
    const double lgd = std::clamp((loan - collateral) / loan, 0.0, 1.0);
    return npv - lgd * probability_of_default(w, bank_id, firm_id, loan) * loan;
}

double risk_weight(const World& w, double dr) {
    const CreditParams& cp = w.cfg.credit;
    if (dr <= cp.dr_low) return cp.weight_low;
    if (dr >= cp.dr_high) return cp.weight_high;
    const double t = (dr - cp.dr_low) / (cp.dr_high - cp.dr_low);
    return cp.weight_low + t * (cp.weight_high - cp.weight_low);
}

double credit_potential(const World& w, int bank_id) {
    const Bank& b = w.banks[bank_id];
    if (b.equity <= 0.0) return 0.0;  // credit creation discontinued
    const double requirement = w.cfg.credit.car + w.ccycb;
    const double sigma = std::clamp(b.avg_risk_weight, w.cfg.credit.weight_low,
                                    w.cfg.credit.weight_high);
    return b.equity / (sigma * requirement);
}

double countercyclical_buffer_value(const World& w, double gap_minus_trend) {
    const CreditParams& cp = w.cfg.credit;
    const double pct = (gap_minus_trend - cp.ccycb_j) * 2.5 / (cp.ccycb_h - cp.ccycb_j);
    return std::clamp(pct, 0.0, 2.5) / 100.0;
}

void update_countercyclical_buffer(World& w) {
    const double gdp = w.panel.rows.empty() ? w.last_gdp_real * w.mean_price()
                                            : w.panel.rows.back().gdp_nominal;
    const double credit = w.total_firm_debt();
    const double gap = gdp > 0.0 ? 100.0 * credit / gdp : 0.0;
    w.credit_gdp_history.push_back(gap);
    const std::size_t n = w.credit_gdp_history.size();
    if (n >= 60 && n % 12 == 0) {
        const auto first = w.credit_gdp_history.end() - 60;
        w.gap_trend = std::accumulate(first, w.credit_gdp_history.end(), 0.0) / 60.0;
        w.gap_trend_valid = true;
    }
    w.ccycb = w.gap_trend_valid
                  ? countercyclical_buffer_value(w, gap - w.gap_trend)
                  : 0.0;
}

void refresh_risk_state(World& w) {
    for (std::size_t i = 0; i < w.firms.size(); ++i) {
        Firm& f = w.firms[i];
        f.cached_ocf = goods::expected_ocf(w, static_cast<int>(i));
        f.cached_debt_ratio = goods::debt_ratio(w, static_cast<int>(i));
    }
    for (auto& b : w.banks) {
        b.risk_exposure = 0.0;
        b.avg_risk_weight = 0.0;
    }
    std::vector<double> book(w.banks.size(), 0.0);
    for (const auto& f : w.firms) {
        const double weight = risk_weight(w, f.cached_debt_ratio);
        for (const auto& l : f.loans) {
            w.banks[l.lender].risk_exposure += weight * l.principal;
            book[l.lender] += l.principal;
        }
        if (f.overdraft > 0.0) {
            w.banks[f.bank].risk_exposure += weight * f.overdraft;
            book[f.bank] += f.overdraft;
        }
    }
    for (std::size_t bi = 0; bi < w.banks.size(); ++bi) {
        Bank& b = w.banks[bi];
        b.avg_risk_weight =
            book[bi] > 0.0 ? b.risk_exposure / book[bi] : w.cfg.credit.weight_high;
        b.avg_risk_weight = std::clamp(b.avg_risk_weight, w.cfg.credit.weight_low,
                                       w.cfg.credit.weight_high);
    }
}

namespace {

/// Largest loan the borrower is still creditworthy for, by bisection on the
/// (decreasing) expected return.
double creditworthiness_bound(const World& w, int bank_id, int firm_id, double hi) {
    if (hi <= 0.0) return 0.0;
    if (expected_return(w, bank_id, firm_id, hi) >= 0.0) return hi;
    double lo = 0.0;
    if (expected_profit(w, firm_id) <= 0.0) return 0.0;
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (expected_return(w, bank_id, firm_id, mid) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

/// Largest loan that keeps risk exposure within the credit potential. The
/// average risk weight shifts with the candidate loan, so solve by bisection.
double regulatory_bound(const World& w, int bank_id, int firm_id, double hi) {
    const Bank& b = w.banks[bank_id];
    if (b.equity <= 0.0) return 0.0;
    const double requirement = w.cfg.credit.car + w.ccycb;
    const double candidate_weight =
        risk_weight(w, w.firms[firm_id].cached_debt_ratio);
    double book = b.business_loans + b.overdraft_assets;
    auto headroom = [&](double loan) {
        const double exposure = b.risk_exposure + candidate_weight * loan;
        const double total = book + loan;
        const double sigma =
            std::clamp(total > 0.0 ? exposure / total : w.cfg.credit.weight_high,
                       w.cfg.credit.weight_low, w.cfg.credit.weight_high);
        return b.equity / (sigma * requirement) - exposure;
    };
    if (headroom(0.0) <= 0.0) return 0.0;
    if (headroom(hi) >= 0.0) return hi;
    double lo = 0.0;
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        (headroom(mid) >= 0.0 ? lo : hi) = mid;
    }
    return lo;
}

double leverage_bound(const World& w, int bank_id) {
    const Bank& b = w.banks[bank_id];
    return std::max(b.equity / w.cfg.credit.leverage_min - b.assets(), 0.0);
}

}  // namespace

GrantPlan process_credit_request(World& w, int firm_id, double amount,
                                 Purpose purpose, bool below_average_only) {
    GrantPlan plan;
    if (amount <= 1e-12) return plan;
    double residual = amount;
    const double avg_rate = w.avg_loan_rate();

    std::vector<int> candidates;
    for (std::size_t b = 0; b < w.banks.size(); ++b) {
        if (below_average_only && w.loan_offer_rate(w.banks[b]) >= avg_rate) continue;
        candidates.push_back(static_cast<int>(b));
    }
    std::vector<double> weights;
    while (residual > 1e-9 && !candidates.empty()) {
        weights.clear();
        for (int b : candidates) {
            weights.push_back(avg_rate / std::max(w.loan_offer_rate(w.banks[b]), 1e-9));
        }
        const auto pick = weighted_random(weights, w.rng);
        if (!pick.matched) break;
        const int bank_id = candidates[pick.index];
        w.banks[bank_id].cd_accum += residual;
        const double grant = std::min(
            {residual, creditworthiness_bound(w, bank_id, firm_id, residual),
             regulatory_bound(w, bank_id, firm_id, residual),
             leverage_bound(w, bank_id)});
        if (grant > 1e-9) {
            const double rate = w.loan_offer_rate(w.banks[bank_id]);
            ledger::book_loan(w, bank_id, firm_id, grant, rate,
                              w.cfg.credit.loan_duration);
            const double weight = risk_weight(w, w.firms[firm_id].cached_debt_ratio);
            w.banks[bank_id].risk_exposure += weight * grant;
            residual -= grant;
            plan.granted += grant;
            w.acc_credit_granted += grant;
        }
        candidates.erase(candidates.begin() + static_cast<long>(pick.index));
    }

    if (residual > 1e-9 && purpose == Purpose::Liquidity) {
        const double draw = std::min(residual, overdraft_headroom(w, firm_id));
        if (draw > 0.0) {
            ledger::draw_overdraft(w, firm_id, draw);
            residual -= draw;
            plan.overdraft += draw;
        }
    }
    plan.rationed = residual;
    w.acc_credit_rationed += std::max(residual, 0.0);
    return plan;
}

double bank_incidence_rate(const World& w, int bank_id) {
    const Bank& b = w.banks[bank_id];
    const double target = w.cfg.credit.risk_buffer * credit_potential(w, bank_id);
    if (target <= 0.0) return 2.0;
    const double x = b.risk_exposure / target;
    const double rate = x >= 1.0 ? x : 2.0 - x;
    return std::clamp(rate, 1e-9, 10.0);
}

void update_bank_strategy(World& w, int bank_id, double xi) {
    Bank& b = w.banks[bank_id];
    const CreditParams& cp = w.cfg.credit;
    // lending capacity is whichever regulatory constraint binds first: the
    // risk-weighted capital requirement or the plain leverage floor
    const double lev_headroom =
        std::max(b.equity / cp.leverage_min - b.assets(), 0.0);
    const double potential = std::min(credit_potential(w, bank_id), lev_headroom);
    const double mbar = w.avg_margin();

    b.credit_demand = b.cd_accum;
    b.cd_accum = 0.0;

    if (potential < b.credit_demand) {
        // expand capacity: retain earnings up to the equity need
        const double anticipated_interest =
            w.cb.lending_rate() / w.cfg.monetary.settlement_incidence *
            (b.ib_payable + b.cb_credit_lf + b.cb_credit_omo);
        const double liq_available = std::max(b.reserves - anticipated_interest, 0.0);
        const double requirement = cp.car + w.ccycb;
        const double sigma = std::clamp(b.avg_risk_weight, cp.weight_low, cp.weight_high);
        const double risk_need =
            sigma * requirement * (b.risk_exposure + b.credit_demand) - b.equity;
        const double lev_need =
            cp.leverage_min * (b.assets() + b.credit_demand) - b.equity;
        const double equity_need = std::max({risk_need, lev_need, 0.0});
        b.retention_target = std::min(liq_available, equity_need);
        if (b.margin <= mbar) {
            b.margin += cp.gamma_m * xi;
        } else {
            b.risk_attitude *= 1.0 - cp.gamma_r * xi;
        }
    } else {
        b.retention_target = 0.0;
        if (b.margin > mbar) {
            b.margin -= cp.gamma_m * xi;
        } else {
            b.risk_attitude *= 1.0 + cp.gamma_r * xi;
        }
    }
    b.margin = std::clamp(b.margin, 0.0, 0.10);
    b.risk_attitude = std::clamp(b.risk_attitude, 0.05, 5.0);
}

double bailout(World& w, int bank_id) {
    Bank& b = w.banks[bank_id];
    const double requirement = w.cfg.credit.car + w.ccycb;
    const double sigma = std::clamp(b.avg_risk_weight, w.cfg.credit.weight_low,
                                    w.cfg.credit.weight_high);
    // recapitalization restores the risk-weighted capital minimum only; a
    // bank below the leverage floor is shut out of new lending until retained
    // earnings rebuild equity, it is not topped up against riskless assets
    const double target = sigma * requirement * b.risk_exposure;
    if (b.equity >= target) return 0.0;
    const double injection = target - b.equity;
    // the government pays in reserves from its central-bank account
    b.equity += injection;
    b.reserves += injection;
    w.cb.reserves_outstanding += injection;
    w.gov.liquidity -= injection;
    w.gov.bailout_period += injection;
    w.acc_bailout_costs += injection;
    return injection;
}

void sweep_bailouts(World& w) {
    for (std::size_t b = 0; b < w.banks.size(); ++b) {
        if (w.banks[b].equity < 0.0) {
            w.acc_bank_failures += 1.0;
            bailout(w, static_cast<int>(b));
        }
    }
}

MinskyClass classify_minsky(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    const double ocf = goods::expected_ocf(w, firm_id);
    if (ocf >= 0.0) return MinskyClass::Hedge;
    double principal_due = 0.0;
    for (const auto& l : f.loans) {
        principal_due += std::min(l.principal, l.original_principal / l.duration);
    }
    return ocf >= -principal_due ? MinskyClass::Speculative : MinskyClass::Ponzi;
}

}  // namespace makro::credit
