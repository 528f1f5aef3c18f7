#pragma once

#include <string>
#include <vector>

#include "makro/panel.hpp"

namespace makro::analysis {

/// Symmetric finite-order bandpass filter passing cycles between `low` and
/// `high` periods; weights normalized to zero sum, K points trimmed per end.
std::vector<double> baxter_king(const std::vector<double>& x, double low = 6.0,
                                double high = 32.0, int k = 12);

/// Frequency response (gain) of the filter weights at the given cycle
/// period, via direct evaluation against a complex exponential.
double baxter_king_gain(double cycle_period, double low = 6.0, double high = 32.0,
                        int k = 12);

double mean(const std::vector<double>& x);
double std_dev(const std::vector<double>& x);
double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// corr(y_t, x_{t+lag}) for lag in [-max_lag, +max_lag].
std::vector<double> cross_correlation(const std::vector<double>& x,
                                      const std::vector<double>& y, int max_lag = 4);

struct RecessionStats {
    std::vector<int> durations;  // maximal runs of negative growth
    double slope = 0.0;          // log-survival vs duration
    double intercept = 0.0;
    double r2 = 0.0;
};

RecessionStats recession_stats(const std::vector<double>& gdp);
RecessionStats fit_durations(const std::vector<int>& durations);

struct DistStats {
    double mean = 0.0, sd = 0.0, skewness = 0.0, kurtosis = 0.0;
    double min = 0.0, max = 0.0, median = 0.0, mode = 0.0;
    double jarque_bera = 0.0, jb_pvalue = 1.0;
    bool degenerate = false;
};

/// Sample moments (kurtosis non-excess) plus the Jarque-Bera normality test.
DistStats distribution_stats(std::vector<double> x);

struct OlsFit {
    double intercept = 0.0, slope = 0.0, r2 = 0.0;
    double slope_se = 0.0, slope_pvalue = 1.0;
};

OlsFit regress(const std::vector<double>& y, const std::vector<double>& x);

/// Kolmogorov-Smirnov statistic against Exp(lambda).
double ks_exponential(std::vector<double> sample, double lambda);

struct WelchTest {
    double t = 0.0, df = 0.0;
    double p_less = 1.0;  // one-sided, H1: mean(a) < mean(b)
};

WelchTest welch_less(const std::vector<double>& a, const std::vector<double>& b);

/// Runs of consecutive true values.
std::vector<int> run_lengths(const std::vector<bool>& flags);

// --- stylized-fact battery over replication panels -----------------------

struct StylizedFacts {
    double rel_sd_investment = 0.0;
    double rel_sd_consumption = 0.0;
    double rel_sd_unemployment = 0.0;
    double recession_r2 = 0.0;
    int recession_count = 0;
    double corr_unemployment_lag0 = 0.0;
    double corr_inflation_peak = 0.0;
    int corr_inflation_peak_lag = 0;
    double corr_investment_lag0 = 0.0;  // vs GDP less inventory changes
    double corr_firm_debt_lag0 = 0.0;
    double corr_bank_profits_peak = 0.0;
    int corr_bank_profits_peak_lag = 0;
    int loan_loss_peak_lag = 0;  // vs firm debt; positive = losses lag debt
    double crisis_skewness = 0.0;
    int crisis_count = 0;
    double bankruptcy_min_corr = 0.0;
    int bankruptcy_min_lag = 0;
    double fiscal_jb = 0.0;
    double fiscal_jb_pvalue = 1.0;
    double phillips_slope = 0.0, phillips_pvalue = 1.0;
    double okun_slope = 0.0, okun_pvalue = 1.0;
    double gdp_growth_sd_across_reps = 0.0;
};

StylizedFacts stylized_facts(const std::vector<TimeSeriesPanel>& panels);

std::string stylized_facts_report(const StylizedFacts& sf);

struct Sf13Report {
    double rate_inside = 0.0, rate_outside = 0.0;
    double volume_inside = 0.0, volume_outside = 0.0;
    double volatility_inside = 0.0, volatility_outside = 0.0;
    double volume_pvalue = 1.0;      // H1: inside < outside
    double volatility_pvalue = 1.0;  // H1: inside < outside
    double floor_rate = 0.0;
};

/// Inside-vs-outside comparison of the interbank market under the reserve
/// injection window.
Sf13Report sf13_report(const std::vector<TimeSeriesPanel>& panels,
                       double window_start, double window_end, double floor_rate);

}  // namespace makro::analysis
