#include "makro/panel.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace makro {

const std::vector<std::pair<std::string, double PanelRow::*>>& TimeSeriesPanel::schema() {
    static const std::vector<std::pair<std::string, double PanelRow::*>> s = {
        {"period", &PanelRow::period},
        {"gdp_real", &PanelRow::gdp_real},
        {"gdp_nominal", &PanelRow::gdp_nominal},
        {"consumption", &PanelRow::consumption},
        {"investment", &PanelRow::investment},
        {"delta_inventories", &PanelRow::delta_inventories},
        {"unemployment", &PanelRow::unemployment},
        {"inflation", &PanelRow::inflation},
        {"mean_price", &PanelRow::mean_price},
        {"firm_debt", &PanelRow::firm_debt},
        {"bank_profits", &PanelRow::bank_profits},
        {"credit_defaults", &PanelRow::credit_defaults},
        {"loan_losses", &PanelRow::loan_losses},
        {"firm_bankruptcies", &PanelRow::firm_bankruptcies},
        {"bank_failures", &PanelRow::bank_failures},
        {"bailout_costs", &PanelRow::bailout_costs},
        {"interbank_rate", &PanelRow::interbank_rate},
        {"interbank_volume", &PanelRow::interbank_volume},
        {"interbank_rate_sd", &PanelRow::interbank_rate_sd},
        {"excess_reserves", &PanelRow::excess_reserves},
        {"key_rate", &PanelRow::key_rate},
        {"credit_granted", &PanelRow::credit_granted},
        {"credit_rationed", &PanelRow::credit_rationed},
        {"tax_receipts", &PanelRow::tax_receipts},
        {"benefits", &PanelRow::benefits},
    };
    return s;
}

std::string TimeSeriesPanel::to_csv_string() const {
    std::ostringstream out;
    const auto& cols = schema();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out << cols[c].first << (c + 1 < cols.size() ? "," : "\n");
    }
    char buf[40];
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", row.*(cols[c].second));
            out << buf << (c + 1 < cols.size() ? "," : "\n");
        }
    }
    return out.str();
}

void TimeSeriesPanel::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write panel CSV: " + path);
    out << to_csv_string();
}

TimeSeriesPanel TimeSeriesPanel::read_csv(const std::string& path, int warmup) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read panel CSV: " + path);
    TimeSeriesPanel panel;
    panel.warmup = warmup;
    const auto& cols = schema();
    std::string line;
    if (!std::getline(in, line)) return panel;
    // map header columns to known fields; unknown columns are rejected
    std::vector<double PanelRow::*> fields;
    std::stringstream header(line);
    std::string name;
    while (std::getline(header, name, ',')) {
        double PanelRow::*field = nullptr;
        for (const auto& [cname, cfield] : cols) {
            if (cname == name) {
                field = cfield;
                break;
            }
        }
        if (!field) throw std::runtime_error("unknown panel column: " + name);
        fields.push_back(field);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        PanelRow row;
        std::stringstream cells(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(cells, cell, ',') && c < fields.size()) {
            row.*(fields[c++]) = std::stod(cell);
        }
        if (c != fields.size()) {
            throw std::runtime_error("short panel CSV row: " + line);
        }
        panel.rows.push_back(row);
    }
    return panel;
}

}  // namespace makro
