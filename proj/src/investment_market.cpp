#include "makro/investment_market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "makro/credit_market.hpp"
#include "makro/ledger.hpp"

namespace makro::invest {

double liquidity_limit(const World& w, int firm_id) {
    const double pi = credit::expected_profit(w, firm_id);
    if (pi <= 0.0) return 0.0;
    const double redemption_rate =
        w.avg_loan_rate() + 1.0 / w.cfg.credit.loan_duration;
    return pi / redemption_rate;
}

void update_investment_strategy(World& w, int firm_id, double xi) {
    Firm& f = w.firms[firm_id];
    f.liquidity_limit = liquidity_limit(w, firm_id);
    if (f.investment_return >= 0.0 && f.investment_amount <= f.liquidity_limit) {
        // non-negative returns: compound the pursued amount; a firm with no
        // running programme probes with about one unit
        const double base = std::max(f.investment_amount, w.mean_price());
        f.investment_target = base * (1.0 + w.cfg.investment.gamma_inv * xi);
    } else {
        f.investment_target = f.liquidity_limit;
    }
    // the amount is the plan being pursued, not the last realized purchase:
    // execution shortfalls (finance, supply) do not erase the programme
    f.investment_amount = f.investment_target;
}

double investment_rate(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    const double cap = std::max(w.avg_full_capacity() - f.capacity(w.cfg.goods.alpha),
                                w.cfg.investment.min_capacity_gap);
    // spending so far this period against the target: a firm that has not yet
    // filled its plan buys at the fast incidence, one that has cools off
    const double denom = f.investment_target - f.interest_pressure;
    const double ratio = denom > 0.0 ? f.invest_spent_period / denom : 2.0;
    const double rate = ratio <= 1.0 ? 1.0 / cap : 1.0 / (cap + f.investment_amount);
    return std::clamp(rate, 0.0, 1.0 / w.cfg.investment.min_capacity_gap);
}

InvestmentRecord execute_investment(World& w, int firm_id) {
    InvestmentRecord rec;
    Firm& f = w.firms[firm_id];
    update_investment_strategy(w, firm_id, w.rng.uniform01());
    const double target =
        std::max(f.investment_target - f.invest_spent_period, 0.0);
    if (target <= 1e-9) return rec;

    // pecking order: internal surplus beyond the wage buffer, then credit
    const double wage_buffer = f.labor_target * w.cfg.goods.wage;
    const double internal = std::max(f.liquidity - wage_buffer, 0.0);
    if (internal < target) {
        const double need = target - internal;
        const bool above_limit = target > f.liquidity_limit;
        rec.credit_requested = need;
        credit::process_credit_request(w, firm_id, need, credit::Purpose::Investment,
                                       above_limit);
    }

    double budget = std::min(target, std::max(f.liquidity - wage_buffer, 0.0));
    thread_local std::vector<int> candidates;
    thread_local std::vector<double> weights;
    thread_local std::vector<char> sold_out;
    sold_out.assign(w.firms.size(), 0);
    const double pbar = w.cfg.goods.price_anchor;
    while (budget > 0.0) {
        candidates.clear();
        weights.clear();
        for (std::size_t i = 0; i < w.firms.size(); ++i) {
            if (static_cast<int>(i) == firm_id) continue;
            if (sold_out[i]) continue;
            const Firm& s = w.firms[i];
            if (s.price <= budget) {
                candidates.push_back(static_cast<int>(i));
                weights.push_back(pbar / s.price);
            }
        }
        const auto pick = weighted_random(weights, w.rng);
        if (!pick.matched) break;
        const int seller_id = candidates[pick.index];
        Firm& seller = w.firms[seller_id];
        seller.demand_since_strategy += 1.0;
        if (seller.inventory < 1.0) {
            // sold out: demand noted, keep trying the remaining suppliers
            sold_out[seller_id] = 1;
            continue;
        }
        const double price = seller.price;
        auto tr = ledger::transfer_deposit(
            w, {ledger::AgentRef::FirmKind, firm_id},
            {ledger::AgentRef::FirmKind, seller_id}, price);
        if (tr.rejected) break;
        seller.inventory -= 1.0;
        seller.period_sales += price;
        seller.period_inv_sales += price;
        f.period_inv_costs += price;
        budget -= price;
        rec.spent += price;
        rec.units += 1.0;
        w.acc_investment_units += 1.0;
        w.acc_investment_value += price;
    }
    // unspent budget is frustrated demand: express it so supply-constrained
    // sellers read a sellout as excess demand rather than as its absence
    int residual_units = static_cast<int>(budget / std::max(w.mean_price(), pbar));
    while (residual_units-- > 0) {
        candidates.clear();
        weights.clear();
        for (std::size_t i = 0; i < w.firms.size(); ++i) {
            if (static_cast<int>(i) == firm_id) continue;
            candidates.push_back(static_cast<int>(i));
            weights.push_back(pbar / w.firms[i].price);
        }
        const auto pick = weighted_random(weights, w.rng);
        if (!pick.matched) break;
        w.firms[candidates[pick.index]].demand_since_strategy += 1.0;
    }
    f.invest_spent_period += rec.spent;
    return rec;
}

void roll_investment_return(World& w, int firm_id) {
    Firm& f = w.firms[firm_id];
    const std::size_t window =
        static_cast<std::size_t>(std::max(w.cfg.investment.return_window, 1));
    f.inv_sales_window.push_back(f.period_inv_sales);
    f.inv_costs_window.push_back(f.period_inv_costs);
    if (f.inv_sales_window.size() > window) {
        f.inv_sales_window.erase(f.inv_sales_window.begin());
        f.inv_costs_window.erase(f.inv_costs_window.begin());
    }
    f.period_inv_sales = 0.0;
    f.period_inv_costs = 0.0;
    f.invest_spent_period = 0.0;
    const double sales =
        std::accumulate(f.inv_sales_window.begin(), f.inv_sales_window.end(), 0.0);
    const double costs =
        std::accumulate(f.inv_costs_window.begin(), f.inv_costs_window.end(), 0.0);
    f.investment_return = sales - costs;
}

}  // namespace makro::invest
