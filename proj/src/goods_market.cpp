#include "makro/goods_market.hpp"

#include <algorithm>
#include <cmath>

#include "makro/credit_market.hpp"
#include "makro/ledger.hpp"

namespace makro::goods {

double strategy_rate(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    const double target =
        w.cfg.goods.inventory_target_mult * f.capacity(w.cfg.goods.alpha);
    if (target <= 0.0) return 2.0;  // maximal urgency at degenerate capacity
    const double x = f.inventory / target;
    const double rate = x >= 1.0 ? x : 2.0 - x;
    return std::clamp(rate, 1e-9, 10.0);
}

double cost_covering_price(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    const double unit_wage = w.cfg.goods.wage / w.cfg.goods.alpha;
    const double capacity = f.capacity(w.cfg.goods.alpha);
    double redemption = 0.0;
    for (const auto& l : f.loans) {
        redemption += l.rate * l.original_principal +
                      std::min(l.principal, l.original_principal / l.duration);
    }
    const double unit_borrowing = capacity > 0.0 ? redemption / capacity : 0.0;
    return unit_wage + unit_borrowing;
}

void update_firm_strategy(World& w, int firm_id, double xi) {
    Firm& f = w.firms[firm_id];
    const GoodsParams& gp = w.cfg.goods;
    const double capacity = f.capacity(gp.alpha);
    // prices steer toward the fixed calibration anchor, not the drifting mean
    const double pbar = gp.price_anchor;
    const double u = w.unemployment_rate();

    // demand accrues since the last strategy event, so compare its per-period
    // rate with capacity to keep the two sides on the same time base
    const double dt = std::max(w.now - f.last_strategy_time, 1e-3);
    const double demand_rate = f.demand_since_strategy / dt;
    if (capacity <= demand_rate) {
        if (u > gp.u_nat && f.price >= pbar) {
            f.production_target = capacity * (1.0 + gp.gamma_y * xi);
        } else if (u > gp.u_nat && f.price < pbar) {
            f.price *= 1.0 + gp.gamma_p * xi;
        } else {  // full employment: firms only raise their price
            f.price *= 1.0 + gp.gamma_p * xi;
        }
    } else {
        if (f.price <= pbar) {
            f.production_target = capacity * (1.0 - gp.gamma_y * xi);
        } else {
            f.price *= 1.0 - gp.gamma_p * xi;
        }
    }
    f.price = std::max(f.price, cost_covering_price(w, firm_id));
    f.labor_target = std::max(1.0, f.production_target / gp.alpha);
    f.demand_since_strategy = 0.0;
    f.last_strategy_time = w.now;
    w.refresh_mean_price();
}

double hire_rate(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    if (f.labor_target <= f.labor) return 0.0;
    if (f.labor <= 0) return 2.0;  // degenerate clamp
    return std::pow(static_cast<double>(f.labor_target) / f.labor, w.cfg.goods.zeta_h);
}

double fire_rate(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    if (f.labor_target >= f.labor) return 0.0;
    if (f.labor_target <= 0) return 2.0;
    return std::pow(static_cast<double>(f.labor) / f.labor_target, w.cfg.goods.zeta_f);
}

void hire_one(World& w, int firm_id) {
    if (w.unemployed_count <= 0) return;  // no candidate: hire attempt is a no-op
    std::size_t pick = w.rng.index(static_cast<std::size_t>(w.unemployed_count));
    for (std::size_t h = 0; h < w.households.size(); ++h) {
        if (w.households[h].employed()) continue;
        if (pick-- == 0) {
            w.households[h].employer = firm_id;
            w.firms[firm_id].employees.push_back(static_cast<int>(h));
            w.firms[firm_id].labor += 1;
            w.unemployed_count -= 1;
            return;
        }
    }
}

void fire_one(World& w, int firm_id) {
    Firm& f = w.firms[firm_id];
    if (f.employees.empty()) return;
    const std::size_t k = w.rng.index(f.employees.size());
    const int h = f.employees[k];
    f.employees[k] = f.employees.back();
    f.employees.pop_back();
    w.households[h].employer = -1;
    f.labor -= 1;
    w.unemployed_count += 1;
}

void produce_one(World& w, int firm_id) {
    w.firms[firm_id].inventory += 1.0;
    w.acc_production_units += 1.0;
}

PurchaseRecord consume(World& w, int household_id) {
    Household& h = w.households[household_id];
    PurchaseRecord rec;
    const double pbar = w.cfg.goods.price_anchor;
    thread_local std::vector<int> candidates;
    thread_local std::vector<double> weights;
    candidates.clear();
    weights.clear();
    // suppliers are picked by price attractiveness regardless of stock; an
    // out-of-stock pick still registers demand so sellouts read as excess
    // demand rather than as its absence
    for (std::size_t i = 0; i < w.firms.size(); ++i) {
        const Firm& f = w.firms[i];
        if (f.price <= h.deposits) {
            candidates.push_back(static_cast<int>(i));
            weights.push_back(pbar / f.price);
        }
    }
    const auto pick = weighted_random(weights, w.rng);
    if (!pick.matched) return rec;  // nothing affordable
    Firm& f = w.firms[candidates[pick.index]];
    f.demand_since_strategy += 1.0;
    if (f.inventory < 1.0) return rec;  // rationed by supply
    const double price = f.price;
    auto r = ledger::transfer_deposit(w, {ledger::AgentRef::HouseholdKind, household_id},
                                      {ledger::AgentRef::FirmKind, candidates[pick.index]},
                                      price);
    if (r.rejected) return rec;
    f.inventory -= 1.0;
    f.period_sales += price;
    w.acc_consumption_units += 1.0;
    w.acc_consumption_value += price;
    rec = {true, candidates[pick.index], price};
    return rec;
}

void pay_wages(World& w, int firm_id) {
    Firm& f = w.firms[firm_id];
    if (f.labor <= 0) return;
    const double wage = w.cfg.goods.wage;
    const double target_bill = f.labor_target * wage;
    if (f.liquidity < target_bill) {
        credit::process_credit_request(w, firm_id, credit::liquidity_need(w, firm_id),
                                       credit::Purpose::Liquidity);
    }
    const double tax = w.cfg.policy.tax_rate;
    for (int h : f.employees) {
        double available = f.liquidity + credit::overdraft_headroom(w, firm_id);
        const double pay = std::min(wage, std::max(available, 0.0));
        if (pay <= 0.0) break;
        const double net = pay * (1.0 - tax);
        auto rec = ledger::transfer_deposit(w, {ledger::AgentRef::FirmKind, firm_id},
                                            {ledger::AgentRef::HouseholdKind, h}, net,
                                            credit::overdraft_headroom(w, firm_id));
        if (rec.rejected) break;
        ledger::pay_government(w, {ledger::AgentRef::FirmKind, firm_id}, pay - net);
        f.period_wages += pay;
    }
}

double expected_ocf(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    double borrowing = 0.0;
    for (const auto& l : f.loans) {
        borrowing += l.rate * l.original_principal +
                     std::min(l.principal, l.original_principal / l.duration);
    }
    if (f.overdraft > 0.0) {
        borrowing += w.loan_offer_rate(w.banks[f.bank]) * f.overdraft;
    }
    return f.turnover.extrapolate() - f.labor * w.cfg.goods.wage - borrowing;
}

double firm_equity(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    return f.liquidity + f.inventory * f.price - f.total_debt();
}

double debt_ratio(const World& w, int firm_id) {
    const Firm& f = w.firms[firm_id];
    const double debt = f.total_debt();
    if (debt <= 0.0) return 0.0;
    const double denom =
        f.liquidity + firm_equity(w, firm_id) + expected_ocf(w, firm_id);
    if (denom <= 0.0) return 1e9;  // limit DR -> infinity: treated as insolvent
    return debt / denom;
}

bool check_bankruptcy(World& w, int firm_id) {
    Firm& f = w.firms[firm_id];
    if (debt_ratio(w, firm_id) <= w.cfg.goods.insolvency_hurdle) return false;
    f.bankrupt = true;
    const auto wr = ledger::write_off(w, firm_id);
    w.acc_defaults += wr.loans_terminated;
    w.acc_loan_losses += wr.principal_lost;
    const int min_size = w.cfg.goods.min_firm_size;
    while (f.labor > min_size) fire_one(w, firm_id);
    f.labor_target = std::min(f.labor_target, static_cast<double>(min_size));
    f.production_target =
        std::min(f.production_target, min_size * w.cfg.goods.alpha);
    f.investment_target = 0.0;
    w.acc_bankruptcies += 1.0;
    f.bankrupt = false;  // the firm is not reborn; it keeps operating small
    credit::sweep_bailouts(w);
    return true;
}

}  // namespace makro::goods
