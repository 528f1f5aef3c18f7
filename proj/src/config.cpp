#include "makro/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace makro {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Binding {
    std::function<std::string()> get;
    std::function<void(const std::string&)> set;
};

/// Flat key-value view over a config; one binding table drives both
/// serialization and parsing so the two cannot drift apart.
std::map<std::string, Binding> bindings(SimConfig& c) {
    std::map<std::string, Binding> m;
    auto num = [&m](const std::string& key, double& ref) {
        m[key] = {[&ref] { return fmt(ref); },
                  [&ref](const std::string& v) { ref = std::stod(v); }};
    };
    auto integer = [&m](const std::string& key, int& ref) {
        m[key] = {[&ref] { return std::to_string(ref); },
                  [&ref](const std::string& v) { ref = std::stoi(v); }};
    };
    auto flag = [&m](const std::string& key, bool& ref) {
        m[key] = {[&ref] { return ref ? std::string("true") : std::string("false"); },
                  [&ref](const std::string& v) {
                      ref = v == "true" || v == "1" || v == "yes";
                  }};
    };
    auto u64 = [&m](const std::string& key, std::uint64_t& ref) {
        m[key] = {[&ref] { return std::to_string(ref); },
                  [&ref](const std::string& v) { ref = std::stoull(v); }};
    };

    integer("populations.banks", c.populations.banks);
    integer("populations.firms", c.populations.firms);
    integer("populations.households", c.populations.households);

    num("run.horizon", c.run.horizon);
    integer("run.warmup", c.run.warmup);
    integer("run.replications", c.run.replications);
    u64("run.seed", c.run.seed);
    flag("run.parallel", c.run.parallel);

    num("goods.alpha", c.goods.alpha);
    num("goods.wage", c.goods.wage);
    num("goods.gamma_y", c.goods.gamma_y);
    num("goods.gamma_p", c.goods.gamma_p);
    num("goods.zeta_h", c.goods.zeta_h);
    num("goods.zeta_f", c.goods.zeta_f);
    num("goods.u_nat", c.goods.u_nat);
    num("goods.price_anchor", c.goods.price_anchor);
    num("goods.inventory_target_mult", c.goods.inventory_target_mult);
    num("goods.insolvency_hurdle", c.goods.insolvency_hurdle);
    integer("goods.min_firm_size", c.goods.min_firm_size);

    num("investment.gamma_inv", c.investment.gamma_inv);
    integer("investment.return_window", c.investment.return_window);
    num("investment.min_capacity_gap", c.investment.min_capacity_gap);

    num("credit.car", c.credit.car);
    num("credit.ccycb_j", c.credit.ccycb_j);
    num("credit.ccycb_h", c.credit.ccycb_h);
    num("credit.leverage_min", c.credit.leverage_min);
    integer("credit.loan_duration", c.credit.loan_duration);
    num("credit.gamma_m", c.credit.gamma_m);
    num("credit.gamma_r", c.credit.gamma_r);
    num("credit.risk_buffer", c.credit.risk_buffer);
    num("credit.weight_low", c.credit.weight_low);
    num("credit.weight_high", c.credit.weight_high);
    num("credit.dr_low", c.credit.dr_low);
    num("credit.dr_high", c.credit.dr_high);
    num("credit.margin_init", c.credit.margin_init);
    num("credit.risk_attitude_init", c.credit.risk_attitude_init);

    num("monetary.settlement_incidence", c.monetary.settlement_incidence);
    num("monetary.corridor", c.monetary.corridor);
    num("monetary.reserve_ratio", c.monetary.reserve_ratio);
    num("monetary.maintenance_window", c.monetary.maintenance_window);
    num("monetary.gamma_i", c.monetary.gamma_i);
    num("monetary.household_switch_rate", c.monetary.household_switch_rate);
    num("monetary.firm_switch_rate", c.monetary.firm_switch_rate);
    num("monetary.omo_rate_coeff", c.monetary.omo_rate_coeff);
    num("monetary.deposit_spread", c.monetary.deposit_spread);
    num("monetary.deposit_markup_max", c.monetary.deposit_markup_max);

    num("policy.pi_star", c.policy.pi_star);
    num("policy.i_star", c.policy.i_star);
    num("policy.a_pi", c.policy.a_pi);
    num("policy.a_y", c.policy.a_y);
    num("policy.potential_share", c.policy.potential_share);
    integer("policy.inflation_window", c.policy.inflation_window);
    integer("policy.inflation_sampling", c.policy.inflation_sampling);
    num("policy.tax_rate", c.policy.tax_rate);
    num("policy.key_rate_init", c.policy.key_rate_init);
    num("policy.fixed_key_rate", c.policy.fixed_key_rate);

    num("init.firm_loan", c.init.firm_loan);
    num("init.firm_liquidity", c.init.firm_liquidity);
    num("init.household_wealth", c.init.household_wealth);
    num("init.bank_equity", c.init.bank_equity);
    num("init.bank_cb_credit", c.init.bank_cb_credit);
    num("init.employment_share", c.init.employment_share);
    num("init.firm_investment", c.init.firm_investment);
    num("init.inventory_share", c.init.inventory_share);

    flag("experiment.sf13", c.experiment.sf13);
    num("experiment.sf13_start", c.experiment.sf13_start);
    num("experiment.sf13_end", c.experiment.sf13_end);
    num("experiment.sf13_injection", c.experiment.sf13_injection);
    flag("experiment.interbank_shutdown", c.experiment.interbank_shutdown);

    return m;
}

}  // namespace

std::string SimConfig::serialize() const {
    auto& self = const_cast<SimConfig&>(*this);
    auto m = bindings(self);
    std::ostringstream out;
    std::string section;
    for (const auto& [key, binding] : m) {
        const std::string sec = key.substr(0, key.find('.'));
        if (sec != section) {
            if (!section.empty()) out << "\n";
            out << "[" << sec << "]\n";
            section = sec;
        }
        out << key.substr(key.find('.') + 1) << " = " << binding.get() << "\n";
    }
    return out.str();
}

SimConfig SimConfig::parse(std::istream& in) {
    SimConfig c;
    auto m = bindings(c);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        }
        const std::string key =
            (section.empty() ? "" : section + ".") + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = m.find(key);
        if (it == m.end()) {
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
        }
        it->second.set(value);
    }
    return c;
}

SimConfig SimConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse(in);
}

std::vector<std::string> SimConfig::validate() const {
    std::vector<std::string> warnings;
    if (populations.firms != 4 * populations.banks) {
        warnings.push_back("firms != 4 x banks; calibration assumes the 4:1 ratio");
    }
    if (populations.households != 40 * populations.banks) {
        warnings.push_back(
            "households != 40 x banks; calibration assumes the 40:1 ratio");
    }
    if (populations.firms > 200) {
        warnings.push_back(
            "more than 200 firms: behavior unvalidated at this population");
    }
    if (run.horizon <= run.warmup) {
        warnings.push_back("horizon does not exceed the warm-up phase");
    }
    return warnings;
}

}  // namespace makro
