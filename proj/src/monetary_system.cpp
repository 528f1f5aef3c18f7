#include "makro/monetary_system.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "makro/ledger.hpp"

namespace makro::monetary {

namespace {

double corridor_floor(const World& w) {
    return std::max(w.cb.key_rate - w.cb.corridor, 0.0);
}

double corridor_ceiling(const World& w) { return w.cb.key_rate + w.cb.corridor; }

/// Central bank pays/charges in reserves; both legs move the outstanding
/// total, so conservation holds by construction.
void cb_pays_bank(World& w, Bank& b, double amount) {
    b.reserves += amount;
    b.equity += amount;
    b.period_profit += amount;
    w.cb.reserves_outstanding += amount;
}

void release_deposit_facility(World& w, Bank& b) {
    if (b.deposit_facility > 0.0) {
        b.reserves += b.deposit_facility;
        b.deposit_facility = 0.0;
    }
    (void)w;
}

}  // namespace

void update_interbank_quote(World& w, int bank_id, double xi) {
    Bank& b = w.banks[bank_id];
    const double target = w.reserve_target(b);
    const double gap = b.reserves + b.deposit_facility - target;
    const double step = w.cfg.monetary.gamma_i * xi;
    const double mean = w.mean_ib_quote();
    const double tol = 1e-9;
    if (std::fabs(gap) <= tol) {
        b.ib_quote += b.ib_quote > mean ? -step : step;
    } else if (gap < 0.0) {
        b.ib_quote += step;
    } else {
        b.ib_quote -= step;
    }
    b.ib_quote = std::clamp(b.ib_quote, corridor_floor(w), corridor_ceiling(w));

    // deposit mark-up adapts with the same mechanism: reserve-hungry banks
    // bid for depositors, flush banks let the mark-up decay
    if (gap < 0.0) {
        b.deposit_markup += step;
    } else {
        b.deposit_markup -= step;
    }
    // the mark-up may go far enough negative to cancel the pass-through
    // entirely: a bank flooded with excess reserves stops paying for deposits
    b.deposit_markup = std::clamp(b.deposit_markup, -0.30,
                                  w.cfg.monetary.deposit_markup_max);
}

void settlement_tick(World& w) {
    const double dt = 1.0 / w.cfg.monetary.settlement_incidence;
    std::vector<double> outflow(w.banks.size(), 0.0);

    for (auto& b : w.banks) release_deposit_facility(w, b);

    // facility interest on the previous tick's positions
    for (auto& b : w.banks) {
        if (b.cb_credit_lf > 0.0) cb_pays_bank(w, b, -w.cb.lending_rate() * dt * b.cb_credit_lf);
        if (b.cb_credit_omo > 0.0) cb_pays_bank(w, b, -w.cb.key_rate * dt * b.cb_credit_omo);
    }

    // maturing interbank loans: principal plus one tick of interest
    for (const IbLoan& l : w.ib_loans) {
        Bank& borrower = w.banks[l.borrower];
        Bank& lender = w.banks[l.lender];
        const double interest = l.rate * dt * l.principal;
        borrower.reserves -= l.principal + interest;
        borrower.ib_payable -= l.principal;
        borrower.equity -= interest;
        borrower.period_profit -= interest;
        lender.reserves += l.principal + interest;
        lender.ib_receivable -= l.principal;
        lender.equity += interest;
        lender.period_profit += interest;
        outflow[l.borrower] += l.principal + interest;
    }
    w.ib_loans.clear();

    // repay marginal-lending-facility principal
    for (auto& b : w.banks) {
        if (b.cb_credit_lf > 0.0) {
            const double repay = b.cb_credit_lf;
            b.reserves -= repay;
            b.cb_credit_lf = 0.0;
            w.cb.reserves_outstanding -= repay;
        }
    }

    // net queued obligations in reserves; government legs create/destroy them
    for (const Obligation& o : w.obligations) {
        if (o.from == kGovernment) {
            w.banks[o.to].reserves += o.amount;
            w.banks[o.to].settle_receivable -= o.amount;
            w.cb.reserves_outstanding += o.amount;
        } else if (o.to == kGovernment) {
            w.banks[o.from].reserves -= o.amount;
            w.banks[o.from].settle_payable -= o.amount;
            w.cb.reserves_outstanding -= o.amount;
            outflow[o.from] += o.amount;
        } else {
            w.banks[o.from].reserves -= o.amount;
            w.banks[o.from].settle_payable -= o.amount;
            w.banks[o.to].reserves += o.amount;
            w.banks[o.to].settle_receivable -= o.amount;
            outflow[o.from] += o.amount;
        }
    }
    w.obligations.clear();

    // shortage banks borrow on the interbank market from excess banks
    double tick_volume = 0.0;
    double rate_sum = 0.0;
    double rate_sq = 0.0;
    int trades = 0;
    const bool market_open = !w.cfg.experiment.interbank_shutdown;
    std::vector<int> lenders;
    std::vector<double> weights;
    for (std::size_t bi = 0; bi < w.banks.size(); ++bi) {
        Bank& borrower = w.banks[bi];
        double need = std::max(w.reserve_target(borrower) - borrower.reserves,
                               -std::min(borrower.reserves, 0.0));
        if (need <= 1e-9) continue;
        const bool creditworthy =
            borrower.equity > 0.0 &&
            borrower.equity >= w.cfg.credit.leverage_min * borrower.assets();
        while (market_open && creditworthy && need > 1e-9) {
            lenders.clear();
            weights.clear();
            const double mean_quote = std::max(w.mean_ib_quote(), 1e-6);
            for (std::size_t li = 0; li < w.banks.size(); ++li) {
                if (li == bi) continue;
                const Bank& lender = w.banks[li];
                const double excess = lender.reserves - w.reserve_target(lender);
                if (excess > 1e-9) {
                    lenders.push_back(static_cast<int>(li));
                    weights.push_back(mean_quote / std::max(lender.ib_quote, 1e-6));
                }
            }
            const auto pick = weighted_random(weights, w.rng);
            if (!pick.matched) break;
            Bank& lender = w.banks[lenders[pick.index]];
            const double excess = lender.reserves - w.reserve_target(lender);
            const double amount = std::min(need, excess);
            if (amount <= 1e-9) break;
            lender.reserves -= amount;
            lender.ib_receivable += amount;
            borrower.reserves += amount;
            borrower.ib_payable += amount;
            w.ib_loans.push_back({lenders[pick.index], static_cast<int>(bi), amount,
                                  lender.ib_quote});
            tick_volume += amount;
            rate_sum += lender.ib_quote;
            rate_sq += lender.ib_quote * lender.ib_quote;
            ++trades;
            need -= amount;
        }
        // lender of last resort: marginal lending facility
        if (need > 1e-9) {
            borrower.cb_credit_lf += need;
            borrower.reserves += need;
            w.cb.reserves_outstanding += need;
        }
    }

    // surplus reserves beyond the target park at the deposit facility
    double excess_total = 0.0;
    for (auto& b : w.banks) {
        const double excess = b.reserves - w.reserve_target(b);
        if (excess > 1e-9) {
            b.reserves -= excess;
            b.deposit_facility += excess;
            cb_pays_bank(w, b, std::max(w.cb.deposit_rate(), 0.0) * dt * excess);
            excess_total += excess;
        }
    }

    // quote adaptation and outflow expectation (EMA over ticks)
    for (std::size_t bi = 0; bi < w.banks.size(); ++bi) {
        update_interbank_quote(w, static_cast<int>(bi), w.rng.uniform01());
        Bank& b = w.banks[bi];
        b.avg_tick_outflow = 0.9 * b.avg_tick_outflow + 0.1 * outflow[bi];
    }

    const double mean_rate = trades > 0 ? rate_sum / trades : w.mean_ib_quote();
    w.acc_ib_rate_sum += mean_rate;
    w.acc_ib_rate_sq += mean_rate * mean_rate;
    w.acc_ib_ticks += 1;
    w.acc_ib_volume += tick_volume;
    if (w.record_interbank_ticks) {
        w.interbank_ticks.push_back({w.now, mean_rate, tick_volume, 0.0, excess_total});
    }
}

double omo_rate(const World& w) {
    const double dev = std::fabs(w.mean_ib_quote() - w.cb.key_rate) / w.cb.corridor;
    return w.cfg.monetary.omo_rate_coeff * dev;
}

double open_market_operation(World& w) {
    const double mean = w.mean_ib_quote();
    double moved = 0.0;
    if (mean > w.cb.key_rate) {
        // tight market: inject reserves into short banks as repo credit
        for (auto& b : w.banks) {
            const double shortage = w.reserve_target(b) - b.reserves - b.deposit_facility;
            if (shortage > 1e-9) {
                b.cb_credit_omo += shortage;
                b.reserves += shortage;
                w.cb.reserves_outstanding += shortage;
                moved += shortage;
            }
        }
    } else if (mean < w.cb.key_rate) {
        // loose market: unwind repo credit against surplus reserves
        for (auto& b : w.banks) {
            const double surplus = b.reserves + b.deposit_facility - w.reserve_target(b);
            const double unwind = std::min({std::max(surplus, 0.0), b.cb_credit_omo,
                                            b.reserves + b.deposit_facility});
            if (unwind > 1e-9) {
                release_deposit_facility(w, b);
                b.cb_credit_omo -= unwind;
                b.reserves -= unwind;
                w.cb.reserves_outstanding -= unwind;
                moved -= unwind;
            }
        }
    }
    return moved;
}

namespace {

void switch_bank(World& w, ledger::AgentRef agent) {
    if (w.banks.size() < 2) return;
    const int current = ledger::bank_of(w, agent);
    std::vector<double> weights(w.banks.size(), 0.0);
    for (std::size_t bi = 0; bi < w.banks.size(); ++bi) {
        if (static_cast<int>(bi) == current) continue;
        weights[bi] = w.deposit_rate(w.banks[bi]);
    }
    const auto pick = weighted_random(weights, w.rng);
    if (!pick.matched || static_cast<int>(pick.index) == current) return;
    ledger::switch_deposit_bank(w, agent, static_cast<int>(pick.index));
}

}  // namespace

void switch_household_bank(World& w, int household_id) {
    switch_bank(w, {ledger::AgentRef::HouseholdKind, household_id});
}

void switch_firm_bank(World& w, int firm_id) {
    switch_bank(w, {ledger::AgentRef::FirmKind, firm_id});
}

void inject_reserves(World& w, double amount_per_bank) {
    for (auto& b : w.banks) {
        b.cb_credit_exp += amount_per_bank;
        b.reserves += amount_per_bank;
        w.cb.reserves_outstanding += amount_per_bank;
    }
}

}  // namespace makro::monetary
