#include "makro/model.hpp"
#include <cstdio>
#include <cstdlib>

#include <algorithm>
#include <cmath>

#include "makro/credit_market.hpp"
#include "makro/goods_market.hpp"
#include "makro/investment_market.hpp"
#include "makro/ledger.hpp"
#include "makro/monetary_system.hpp"
#include "makro/policy.hpp"

namespace makro {

World initialize(const SimConfig& cfg, std::uint64_t stream_id) {
    World w;
    w.cfg = cfg;
    w.rng = RngStream(cfg.run.seed, stream_id);
    w.panel.warmup = cfg.run.warmup;

    const int banks = cfg.populations.banks;
    const int firms = cfg.populations.firms;
    const int households = cfg.populations.households;
    const int firms_per_bank = std::max(firms / banks, 1);
    const int households_per_firm = std::max(households / firms, 1);
    const InitParams& in = cfg.init;

    w.cb.key_rate = cfg.policy.fixed_key_rate >= 0.0 ? cfg.policy.fixed_key_rate
                                                     : cfg.policy.key_rate_init;
    w.cb.corridor = cfg.monetary.corridor;

    w.banks.assign(banks, {});
    for (auto& b : w.banks) {
        b.equity = in.bank_equity;
        b.cb_credit_omo = in.bank_cb_credit;
        b.margin = cfg.credit.margin_init;
        b.risk_attitude = cfg.credit.risk_attitude_init;
        b.ib_quote = w.cb.key_rate;
    }
    w.cb.reserves_outstanding = 0.0;

    w.households.assign(households, {});
    for (int h = 0; h < households; ++h) {
        Household& hh = w.households[h];
        hh.deposits = in.household_wealth;
        hh.bank = std::min(h / (firms_per_bank * households_per_firm), banks - 1);
        w.banks[hh.bank].customer_deposits += hh.deposits;
    }

    w.firms.assign(firms, {});
    const double capacity = static_cast<double>(households) / firms * cfg.goods.alpha;
    const int staffed = static_cast<int>(std::lround(
        in.employment_share * households / static_cast<double>(firms)));
    const double loan_rate = w.cb.key_rate + w.cb.corridor + cfg.credit.margin_init;
    for (int i = 0; i < firms; ++i) {
        Firm& f = w.firms[i];
        f.bank = std::min(i / firms_per_bank, banks - 1);
        f.price = cfg.goods.price_anchor;
        f.liquidity = in.firm_liquidity;
        w.banks[f.bank].customer_deposits += f.liquidity;
        ledger::book_loan(w, f.bank, i, 0.0, loan_rate, cfg.credit.loan_duration);
        f.loans.back().principal = in.firm_loan;
        f.loans.back().original_principal = in.firm_loan;
        w.banks[f.bank].business_loans += in.firm_loan;

        for (int k = 0; k < staffed; ++k) {
            const int h = i * households_per_firm + k;
            if (h >= households || w.households[h].employed()) continue;
            w.households[h].employer = i;
            f.employees.push_back(h);
            f.labor += 1;
        }
        f.labor_target = f.labor;
        f.production_target = f.labor * cfg.goods.alpha;
        const double inventory_target =
            cfg.goods.inventory_target_mult * f.capacity(cfg.goods.alpha);
        f.inventory = in.inventory_share * inventory_target;
        f.inventory_at_period_start = f.inventory;
        f.investment_amount = in.firm_investment;
        f.investment_target = in.firm_investment;
        for (int t = 0; t < 3; ++t) {
            f.turnover.push(f.price * f.production_target);
        }
        (void)capacity;
    }

    // reserves close each bank's balance: assets = liabilities + equity.
    // Deposits are largely loan-backed, so the residual reserve position is
    // small and the interbank rate starts anchored near the key rate
    for (auto& b : w.banks) {
        b.reserves = b.customer_deposits + b.cb_credit_total() + b.equity -
                     b.business_loans;
        w.cb.reserves_outstanding += b.reserves;
    }

    w.unemployed_count = 0;
    for (const auto& h : w.households) {
        if (!h.employed()) ++w.unemployed_count;
    }
    w.refresh_mean_price();
    credit::refresh_risk_state(w);
    for (auto& f : w.firms) {
        f.liquidity_limit = 0.0;
    }
    for (int i = 0; i < firms; ++i) {
        w.firms[i].liquidity_limit = invest::liquidity_limit(w, i);
    }
    return w;
}

void period_tick(World& w) {
    auto dbg=[&](const char* tag){ if(std::getenv("MAKRO_DBG_GOV")&&w.now>165.0&&w.now<172.0) std::fprintf(stderr,"t=%.0f %s gov=%.1f\n",w.now,tag,w.gov.liquidity); };
    dbg("start");
    // 1. wages (with the liquidity-shortage credit path)
    for (std::size_t i = 0; i < w.firms.size(); ++i) {
        goods::pay_wages(w, static_cast<int>(i));
    }

    dbg("after_wages");
    // 2. loan redemption, overdraft service and repayment from surplus
    for (std::size_t i = 0; i < w.firms.size(); ++i) {
        ledger::amortize_loans(w, static_cast<int>(i));
        ledger::charge_overdraft_interest(w, static_cast<int>(i));
        Firm& f = w.firms[i];
        const double buffer = f.labor_target * w.cfg.goods.wage;
        const double surplus = f.liquidity - buffer;
        if (f.overdraft > 0.0 && surplus > 0.0) {
            ledger::repay_overdraft(w, static_cast<int>(i),
                                    std::min(f.overdraft, surplus));
        }
    }

    dbg("after_amort");
    // 3. deposit interest
    ledger::credit_deposit_interest(w);

    dbg("after_depint");
    // 4. turnover history and investment-return windows
    for (std::size_t i = 0; i < w.firms.size(); ++i) {
        w.firms[i].turnover.push(w.firms[i].period_sales);
        invest::roll_investment_return(w, static_cast<int>(i));
    }

    dbg("pretax");
    // 5. fiscal sweep
    policy::collect_taxes_and_benefits(w);

    dbg("after_tax");
    // 6. insolvencies and bank recapitalization
    for (std::size_t i = 0; i < w.firms.size(); ++i) {
        goods::check_bankruptcy(w, static_cast<int>(i));
    }
    credit::sweep_bailouts(w);

    dbg("after_bankruptcy");
    // 7. regulatory refresh
    credit::refresh_risk_state(w);
    credit::update_countercyclical_buffer(w);

    // 8. monetary policy (the price index is sampled by its own 3-period rule)
    policy::taylor_update(w);

    // 9. panel row and accumulator reset
    PanelRow row;
    row.period = std::round(w.now);
    double delta_inventories = 0.0;
    double delta_inventories_nominal = 0.0;
    double firm_debt = 0.0;
    for (auto& f : w.firms) {
        const double dn = f.inventory - f.inventory_at_period_start;
        delta_inventories += dn;
        delta_inventories_nominal += dn * f.price;
        // smooth over a few periods: a one-off stock drawdown should not read
        // as a lasting profit hit
        f.last_inventory_variation +=
            (dn * f.price - f.last_inventory_variation) / 3.0;
        firm_debt += f.total_debt();
    }
    row.consumption = w.acc_consumption_units;
    row.investment = w.acc_investment_units;
    row.delta_inventories = delta_inventories;
    row.gdp_real = row.consumption + row.investment + delta_inventories;
    row.gdp_nominal =
        w.acc_consumption_value + w.acc_investment_value + delta_inventories_nominal;
    row.unemployment = w.unemployment_rate();
    row.inflation = policy::measure_inflation(w);
    row.mean_price = w.mean_price();
    row.firm_debt = firm_debt;
    double bank_profits = 0.0;
    double excess = 0.0;
    for (auto& b : w.banks) {
        bank_profits += b.period_profit;
        excess += b.reserves + b.deposit_facility - w.reserve_target(b);
    }
    row.bank_profits = bank_profits;
    row.credit_defaults = w.acc_defaults;
    row.loan_losses = w.acc_loan_losses;
    row.firm_bankruptcies = w.acc_bankruptcies;
    row.bank_failures = w.acc_bank_failures;
    row.bailout_costs = w.acc_bailout_costs;
    row.interbank_rate =
        w.acc_ib_ticks > 0 ? w.acc_ib_rate_sum / w.acc_ib_ticks : w.mean_ib_quote();
    row.interbank_volume = w.acc_ib_volume;
    if (w.acc_ib_ticks > 1) {
        const double mean = w.acc_ib_rate_sum / w.acc_ib_ticks;
        const double var =
            std::max(w.acc_ib_rate_sq / w.acc_ib_ticks - mean * mean, 0.0);
        row.interbank_rate_sd = std::sqrt(var);
    }
    row.excess_reserves = excess;
    row.key_rate = w.cb.key_rate;
    row.credit_granted = w.acc_credit_granted;
    row.credit_rationed = w.acc_credit_rationed;
    row.tax_receipts = w.gov.tax_receipts_period;
    row.benefits = w.gov.benefits_period;
    w.panel.rows.push_back(row);
    w.last_gdp_real = row.gdp_real;

    for (auto& f : w.firms) {
        f.period_sales = 0.0;
        f.period_wages = 0.0;
        f.period_interest = 0.0;
        f.inventory_at_period_start = f.inventory;
    }
    for (auto& b : w.banks) b.period_profit = 0.0;
    w.gov.tax_receipts_period = 0.0;
    w.gov.benefits_period = 0.0;
    w.gov.bailout_period = 0.0;
    w.acc_consumption_units = 0.0;
    w.acc_investment_units = 0.0;
    w.acc_consumption_value = 0.0;
    w.acc_investment_value = 0.0;
    w.acc_production_units = 0.0;
    w.acc_credit_granted = 0.0;
    w.acc_credit_rationed = 0.0;
    w.acc_defaults = 0.0;
    w.acc_loan_losses = 0.0;
    w.acc_bankruptcies = 0.0;
    w.acc_bank_failures = 0.0;
    w.acc_bailout_costs = 0.0;
    w.acc_ib_rate_sum = 0.0;
    w.acc_ib_rate_sq = 0.0;
    w.acc_ib_ticks = 0;
    w.acc_ib_volume = 0.0;
}

Model::Model(const SimConfig& cfg) {
    const int firms = engine_.add_population(cfg.populations.firms);
    const int households = engine_.add_population(cfg.populations.households);
    const int banks = engine_.add_population(cfg.populations.banks);
    const int global = engine_.add_population(1);

    using R = gsmp::Rule<World>;

    // fixed-period rules first: at shared instants the settlement clears
    // queued obligations before the accounting cascade runs
    engine_.add_rule(R{"settlement", global, gsmp::Timing::FixedPeriod,
                       1.0 / cfg.monetary.settlement_incidence, nullptr, nullptr,
                       [](World& w, int) { monetary::settlement_tick(w); }});
    engine_.add_rule(R{"price_sampling", global, gsmp::Timing::FixedPeriod,
                       static_cast<double>(cfg.policy.inflation_sampling), nullptr,
                       nullptr,
                       [](World& w, int) { policy::sample_price_index(w); }});
    if (cfg.experiment.sf13) {
        engine_.add_rule(
            R{"reserve_injection", global, gsmp::Timing::FixedPeriod, 1.0,
              [](World& w, int) {
                  return w.now >= w.cfg.experiment.sf13_start &&
                         w.now <= w.cfg.experiment.sf13_end;
              },
              nullptr,
              [](World& w, int) {
                  monetary::inject_reserves(w, w.cfg.experiment.sf13_injection);
              }});
    }
    engine_.add_rule(R{"period_accounting", global, gsmp::Timing::FixedPeriod, 1.0,
                       nullptr, nullptr, [](World& w, int) { period_tick(w); }});

    // exponential rules
    engine_.add_rule(R{"firm_strategy", firms, gsmp::Timing::Exponential, 0.0, nullptr,
                       [](World& w, int i) { return goods::strategy_rate(w, i); },
                       [](World& w, int i) {
                           goods::update_firm_strategy(w, i, w.rng.uniform01());
                       }});
    engine_.add_rule(R{"produce", firms, gsmp::Timing::Exponential, 0.0, nullptr,
                       [](World& w, int i) {
                           return w.firms[i].labor * w.cfg.goods.alpha;
                       },
                       [](World& w, int i) { goods::produce_one(w, i); }});
    engine_.add_rule(R{"hire", firms, gsmp::Timing::Exponential, 0.0,
                       [](World& w, int i) {
                           return w.firms[i].labor_target > w.firms[i].labor &&
                                  w.unemployed_count > 0;
                       },
                       [](World& w, int i) { return goods::hire_rate(w, i); },
                       [](World& w, int i) { goods::hire_one(w, i); }});
    engine_.add_rule(R{"fire", firms, gsmp::Timing::Exponential, 0.0,
                       [](World& w, int i) {
                           return w.firms[i].labor_target < w.firms[i].labor;
                       },
                       [](World& w, int i) { return goods::fire_rate(w, i); },
                       [](World& w, int i) { goods::fire_one(w, i); }});
    engine_.add_rule(R{"consume", households, gsmp::Timing::Exponential, 0.0,
                       [](World& w, int h) { return w.households[h].deposits > 0.0; },
                       [](World& w, int h) { return w.households[h].deposits; },
                       [](World& w, int h) { goods::consume(w, h); }});
    engine_.add_rule(R{"investment_strategy", firms, gsmp::Timing::Exponential, 0.0,
                       nullptr,
                       [](World& w, int i) { return goods::strategy_rate(w, i); },
                       [](World& w, int i) {
                           invest::update_investment_strategy(w, i, w.rng.uniform01());
                       }});
    engine_.add_rule(R{"invest", firms, gsmp::Timing::Exponential, 0.0, nullptr,
                       [](World& w, int i) { return invest::investment_rate(w, i); },
                       [](World& w, int i) { invest::execute_investment(w, i); }});
    engine_.add_rule(R{"bank_strategy", banks, gsmp::Timing::Exponential, 0.0, nullptr,
                       [](World& w, int b) { return credit::bank_incidence_rate(w, b); },
                       [](World& w, int b) {
                           credit::update_bank_strategy(w, b, w.rng.uniform01());
                       }});
    engine_.add_rule(R{"open_market_operation", global, gsmp::Timing::Exponential, 0.0,
                       nullptr, [](World& w, int) { return monetary::omo_rate(w); },
                       [](World& w, int) { monetary::open_market_operation(w); }});
    engine_.add_rule(R{"household_switch", households, gsmp::Timing::Exponential, 0.0,
                       nullptr,
                       [](World& w, int) {
                           return w.cfg.monetary.household_switch_rate;
                       },
                       [](World& w, int h) { monetary::switch_household_bank(w, h); }});
    engine_.add_rule(R{"firm_switch", firms, gsmp::Timing::Exponential, 0.0, nullptr,
                       [](World& w, int) { return w.cfg.monetary.firm_switch_rate; },
                       [](World& w, int i) { monetary::switch_firm_bank(w, i); }});
}

}  // namespace makro
