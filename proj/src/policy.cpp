#include "makro/policy.hpp"

#include <algorithm>
#include <cmath>

#include "makro/ledger.hpp"

namespace makro::policy {

void sample_price_index(World& w) {
    w.price_samples.push_back(w.mean_price());
    const int keep = w.cfg.policy.inflation_window / w.cfg.policy.inflation_sampling + 1;
    if (static_cast<int>(w.price_samples.size()) > keep) {
        w.price_samples.erase(w.price_samples.begin());
    }
    // average log change per sampling interval over the window
    if (w.price_samples.size() >= 2) {
        double sum = 0.0;
        for (std::size_t i = 1; i < w.price_samples.size(); ++i) {
            sum += std::log(w.price_samples[i] / w.price_samples[i - 1]);
        }
        w.current_inflation = sum / static_cast<double>(w.price_samples.size() - 1);
    }
}

double measure_inflation(const World& w) { return w.current_inflation; }

double output_gap(const World& w) {
    const double potential = w.cfg.policy.potential_share * w.full_production();
    if (potential <= 0.0) return 0.0;
    return (w.last_gdp_real - potential) / potential;
}

void taylor_update(World& w) {
    const PolicyParams& pp = w.cfg.policy;
    if (pp.fixed_key_rate >= 0.0) {
        w.cb.key_rate = pp.fixed_key_rate;
        return;
    }
    if (w.price_samples.size() < 2) return;  // hold until the measure exists
    const double pi = measure_inflation(w);
    const double rate =
        pp.i_star + pp.a_pi * (pi - pp.pi_star) + pp.a_y * output_gap(w);
    w.cb.key_rate = std::max(rate, 0.0);
}

void collect_taxes_and_benefits(World& w) {
    const double tax_rate = w.cfg.policy.tax_rate;

    // profit tax on firms (wage tax was withheld at payment)
    for (std::size_t i = 0; i < w.firms.size(); ++i) {
        Firm& f = w.firms[i];
        const double profit =
            f.period_sales - f.period_wages - f.period_interest;
        if (profit > 0.0) {
            const double tax =
                std::min(tax_rate * profit, std::max(f.liquidity, 0.0));
            ledger::pay_government(w, {ledger::AgentRef::FirmKind, static_cast<int>(i)},
                                   tax);
        }
    }

    // profit tax and dividends for banks, paid in reserves from equity
    for (auto& b : w.banks) {
        if (b.period_profit > 0.0) {
            const double tax = tax_rate * b.period_profit;
            const double dividend = std::clamp(
                b.period_profit - tax - b.retention_target, 0.0,
                std::max(b.equity - tax, 0.0));
            const double payout = tax + dividend;
            b.equity -= payout;
            b.reserves -= payout;
            w.cb.reserves_outstanding -= payout;
            w.gov.liquidity += payout;
            w.gov.tax_receipts_period += tax;
        }
    }

    // unemployment benefits, tax-exempt at half the fixed wage
    const double benefit = 0.5 * w.cfg.goods.wage;
    for (std::size_t h = 0; h < w.households.size(); ++h) {
        if (!w.households[h].employed()) {
            ledger::government_pay(w, {ledger::AgentRef::HouseholdKind,
                                       static_cast<int>(h)}, benefit);
            w.gov.benefits_period += benefit;
        }
    }

    w.gov.public_debt = std::max(-w.gov.liquidity, 0.0);
}

}  // namespace makro::policy
