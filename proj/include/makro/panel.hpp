#pragma once

#include <string>
#include <vector>

namespace makro {

/// Per-period aggregates feeding the stylized-facts battery. One row per
/// period; the warm-up marker tells the analysis which prefix to discard.
struct PanelRow {
    double period = 0.0;
    double gdp_real = 0.0;      // C + I + dN in units
    double gdp_nominal = 0.0;
    double consumption = 0.0;   // units
    double investment = 0.0;    // units
    double delta_inventories = 0.0;
    double unemployment = 0.0;
    double inflation = 0.0;     // per-period, 3-period sampled measure
    double mean_price = 0.0;
    double firm_debt = 0.0;
    double bank_profits = 0.0;
    double credit_defaults = 0.0; // count of loans written off
    double loan_losses = 0.0;     // written-off principal net of recovery
    double firm_bankruptcies = 0.0;
    double bank_failures = 0.0;
    double bailout_costs = 0.0;
    double interbank_rate = 0.0;   // mean traded/quoted rate over the period
    double interbank_volume = 0.0;
    double interbank_rate_sd = 0.0; // intra-period tick volatility
    double excess_reserves = 0.0;
    double key_rate = 0.0;
    double credit_granted = 0.0;
    double credit_rationed = 0.0;
    double tax_receipts = 0.0;
    double benefits = 0.0;
};

struct TimeSeriesPanel {
    std::vector<PanelRow> rows;
    int warmup = 200;

    std::vector<double> column(double PanelRow::*field, bool drop_warmup) const {
        std::vector<double> out;
        const std::size_t start = drop_warmup ? static_cast<std::size_t>(warmup) : 0;
        for (std::size_t i = start; i < rows.size(); ++i) out.push_back(rows[i].*field);
        return out;
    }

    static const std::vector<std::pair<std::string, double PanelRow::*>>& schema();

    void write_csv(const std::string& path) const;
    static TimeSeriesPanel read_csv(const std::string& path, int warmup);
    std::string to_csv_string() const;
};

}  // namespace makro
