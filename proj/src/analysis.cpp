#include "makro/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace makro::analysis {

namespace {

const double kPi = std::acos(-1.0);

std::vector<double> bk_weights(double low, double high, int k) {
    const double wl = 2.0 * kPi / high;  // low cutoff frequency (long cycles)
    const double wh = 2.0 * kPi / low;
    std::vector<double> w(k + 1, 0.0);
    w[0] = (wh - wl) / kPi;
    for (int j = 1; j <= k; ++j) {
        w[j] = (std::sin(wh * j) - std::sin(wl * j)) / (kPi * j);
    }
    // normalize the two-sided sum to zero so trends are annihilated
    double sum = w[0];
    for (int j = 1; j <= k; ++j) sum += 2.0 * w[j];
    const double adjust = sum / (2 * k + 1);
    for (int j = 0; j <= k; ++j) w[j] -= adjust;
    return w;
}

}  // namespace

std::vector<double> baxter_king(const std::vector<double>& x, double low, double high,
                                int k) {
    if (static_cast<int>(x.size()) <= 2 * k) {
        throw std::invalid_argument("bandpass filter: series shorter than 2K+1");
    }
    const auto w = bk_weights(low, high, k);
    std::vector<double> out;
    out.reserve(x.size() - 2 * k);
    for (std::size_t t = k; t + k < x.size(); ++t) {
        double v = w[0] * x[t];
        for (int j = 1; j <= k; ++j) v += w[j] * (x[t - j] + x[t + j]);
        out.push_back(v);
    }
    return out;
}

double baxter_king_gain(double cycle_period, double low, double high, int k) {
    const auto w = bk_weights(low, high, k);
    const double omega = 2.0 * kPi / cycle_period;
    std::complex<double> g = w[0];
    for (int j = 1; j <= k; ++j) {
        g += w[j] * (std::exp(std::complex<double>(0, omega * j)) +
                     std::exp(std::complex<double>(0, -omega * j)));
    }
    return std::abs(g);
}

double mean(const std::vector<double>& x) {
    return x.empty() ? 0.0
                     : std::accumulate(x.begin(), x.end(), 0.0) /
                           static_cast<double>(x.size());
}

double std_dev(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) return std::nan("");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nan("");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> cross_correlation(const std::vector<double>& x,
                                      const std::vector<double>& y, int max_lag) {
    std::vector<double> out;
    const int n = static_cast<int>(std::min(x.size(), y.size()));
    for (int lag = -max_lag; lag <= max_lag; ++lag) {
        std::vector<double> xa, ya;
        for (int t = 0; t < n; ++t) {
            const int s = t + lag;
            if (s < 0 || s >= n) continue;
            ya.push_back(y[t]);
            xa.push_back(x[s]);
        }
        out.push_back(pearson(xa, ya));
    }
    return out;
}

std::vector<int> run_lengths(const std::vector<bool>& flags) {
    std::vector<int> runs;
    int current = 0;
    for (bool f : flags) {
        if (f) {
            ++current;
        } else if (current > 0) {
            runs.push_back(current);
            current = 0;
        }
    }
    if (current > 0) runs.push_back(current);
    return runs;
}

RecessionStats fit_durations(const std::vector<int>& durations) {
    RecessionStats rs;
    rs.durations = durations;
    if (durations.empty()) return rs;
    const int maxd = *std::max_element(durations.begin(), durations.end());
    std::vector<double> d, logsurv;
    const double n = static_cast<double>(durations.size());
    for (int dur = 1; dur <= maxd; ++dur) {
        const double surv =
            static_cast<double>(std::count_if(durations.begin(), durations.end(),
                                              [dur](int v) { return v >= dur; })) /
            n;
        if (surv <= 0.0) break;
        d.push_back(dur);
        logsurv.push_back(std::log(surv));
    }
    if (d.size() >= 3) {
        const auto fit = regress(logsurv, d);
        rs.slope = fit.slope;
        rs.intercept = fit.intercept;
        rs.r2 = fit.r2;
    }
    return rs;
}

RecessionStats recession_stats(const std::vector<double>& gdp) {
    std::vector<bool> negative;
    for (std::size_t t = 1; t < gdp.size(); ++t) {
        const double prev = gdp[t - 1];
        const double growth = prev != 0.0 ? (gdp[t] - prev) / std::fabs(prev) : 0.0;
        negative.push_back(growth < 0.0);
    }
    return fit_durations(run_lengths(negative));
}

DistStats distribution_stats(std::vector<double> x) {
    DistStats d;
    const std::size_t n = x.size();
    if (n < 8) {
        d.degenerate = true;
        return d;
    }
    d.mean = mean(x);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double e = v - d.mean;
        m2 += e * e;
        m3 += e * e * e;
        m4 += e * e * e * e;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (m2 <= 0.0) {
        d.degenerate = true;
        return d;
    }
    d.sd = std::sqrt(m2 * static_cast<double>(n) / static_cast<double>(n - 1));
    d.skewness = m3 / std::pow(m2, 1.5);
    d.kurtosis = m4 / (m2 * m2);  // non-excess: Gaussian = 3
    std::sort(x.begin(), x.end());
    d.min = x.front();
    d.max = x.back();
    d.median = n % 2 ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
    // modal histogram bin midpoint, Freedman-Diaconis width
    const double iqr = x[(3 * n) / 4] - x[n / 4];
    const double width = iqr > 0.0 ? 2.0 * iqr / std::cbrt(static_cast<double>(n))
                                   : (d.max - d.min) / 10.0;
    if (width > 0.0) {
        const int bins = std::max(1, static_cast<int>((d.max - d.min) / width) + 1);
        std::vector<int> counts(bins, 0);
        for (double v : x) {
            int b = static_cast<int>((v - d.min) / width);
            b = std::clamp(b, 0, bins - 1);
            counts[b] += 1;
        }
        const int best = static_cast<int>(
            std::max_element(counts.begin(), counts.end()) - counts.begin());
        d.mode = d.min + (best + 0.5) * width;
    } else {
        d.mode = d.median;
    }
    d.jarque_bera = static_cast<double>(n) / 6.0 *
                    (d.skewness * d.skewness +
                     0.25 * (d.kurtosis - 3.0) * (d.kurtosis - 3.0));
    d.jb_pvalue = std::exp(-0.5 * d.jarque_bera);  // chi-squared, 2 dof
    return d;
}

OlsFit regress(const std::vector<double>& y, const std::vector<double>& x) {
    OlsFit fit;
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 3) throw std::invalid_argument("regress: need at least 3 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0) throw std::invalid_argument("regress: zero x-variance");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - fit.intercept - fit.slope * x[i];
        ssr += e * e;
    }
    fit.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    if (n > 2 && ssr >= 0.0) {
        const double sigma2 = ssr / static_cast<double>(n - 2);
        fit.slope_se = std::sqrt(sigma2 / sxx);
        if (fit.slope_se > 0.0) {
            const boost::math::students_t dist(static_cast<double>(n - 2));
            const double t = fit.slope / fit.slope_se;
            fit.slope_pvalue = 2.0 * boost::math::cdf(dist, -std::fabs(t));
        } else {
            fit.slope_pvalue = 0.0;
        }
    }
    return fit;
}

double ks_exponential(std::vector<double> sample, double lambda) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double cdf = 1.0 - std::exp(-lambda * sample[i]);
        d = std::max(d, std::fabs(cdf - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - cdf));
    }
    return d;
}

WelchTest welch_less(const std::vector<double>& a, const std::vector<double>& b) {
    WelchTest w;
    if (a.size() < 2 || b.size() < 2) return w;
    const double ma = mean(a), mb = mean(b);
    const double va = std_dev(a) * std_dev(a) / static_cast<double>(a.size());
    const double vb = std_dev(b) * std_dev(b) / static_cast<double>(b.size());
    if (va + vb <= 0.0) {
        w.p_less = ma < mb ? 0.0 : 1.0;
        return w;
    }
    w.t = (ma - mb) / std::sqrt(va + vb);
    w.df = (va + vb) * (va + vb) /
           (va * va / static_cast<double>(a.size() - 1) +
            vb * vb / static_cast<double>(b.size() - 1));
    const boost::math::students_t dist(w.df);
    w.p_less = boost::math::cdf(dist, w.t);
    return w;
}

namespace {

std::vector<double> col(const TimeSeriesPanel& p, double PanelRow::*f) {
    return p.column(f, true);
}

int peak_index(const std::vector<double>& v) {
    int best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] <= v[best])) best = static_cast<int>(i);
    }
    return best;
}

void add_cc(std::vector<double>& acc, const std::vector<double>& cc) {
    if (acc.empty()) acc.assign(cc.size(), 0.0);
    for (std::size_t i = 0; i < cc.size(); ++i) {
        if (!std::isnan(cc[i])) acc[i] += cc[i];
    }
}

}  // namespace

StylizedFacts stylized_facts(const std::vector<TimeSeriesPanel>& panels) {
    StylizedFacts sf;
    const int kLag = 4;
    int reps = 0;
    double sd_i = 0.0, sd_c = 0.0, sd_u = 0.0, corr_u = 0.0, corr_debt = 0.0,
           corr_inv = 0.0;
    std::vector<double> cc_inflation, cc_profits, cc_losses, cc_bankruptcy;
    std::vector<int> recession_durations, crisis_durations;
    std::vector<double> fiscal_costs, phillips_u, phillips_pi, okun_du, okun_g;
    std::vector<double> rep_mean_growth;

    for (const auto& p : panels) {
        const auto gdp = col(p, &PanelRow::gdp_real);
        if (static_cast<int>(gdp.size()) <= 26) continue;
        const auto bp_gdp = baxter_king(gdp);
        const double s_gdp = std_dev(bp_gdp);
        if (s_gdp <= 0.0) continue;
        ++reps;

        const auto investment = col(p, &PanelRow::investment);
        const auto consumption = col(p, &PanelRow::consumption);
        const auto unemployment = col(p, &PanelRow::unemployment);
        const auto inflation = col(p, &PanelRow::inflation);
        const auto debt = col(p, &PanelRow::firm_debt);
        const auto profits = col(p, &PanelRow::bank_profits);
        const auto losses = col(p, &PanelRow::loan_losses);
        const auto bankruptcies = col(p, &PanelRow::firm_bankruptcies);
        const auto dn = col(p, &PanelRow::delta_inventories);
        std::vector<double> gdp_ex_dn(gdp.size());
        for (std::size_t t = 0; t < gdp.size(); ++t) gdp_ex_dn[t] = gdp[t] - dn[t];

        const auto bp_i = baxter_king(investment);
        const auto bp_c = baxter_king(consumption);
        const auto bp_u = baxter_king(unemployment);
        sd_i += std_dev(bp_i) / s_gdp;
        sd_c += std_dev(bp_c) / s_gdp;
        sd_u += std_dev(bp_u) / s_gdp;

        corr_u += pearson(bp_u, bp_gdp);
        corr_debt += pearson(baxter_king(debt), bp_gdp);
        corr_inv += pearson(bp_i, baxter_king(gdp_ex_dn));
        add_cc(cc_inflation, cross_correlation(baxter_king(inflation), bp_gdp, kLag));
        add_cc(cc_profits, cross_correlation(baxter_king(profits), bp_gdp, kLag));
        add_cc(cc_losses,
               cross_correlation(baxter_king(losses), baxter_king(debt), kLag));
        add_cc(cc_bankruptcy,
               cross_correlation(baxter_king(bankruptcies), bp_gdp, kLag));

        const auto rec = recession_stats(gdp);
        recession_durations.insert(recession_durations.end(), rec.durations.begin(),
                                   rec.durations.end());

        const auto bailouts = col(p, &PanelRow::bailout_costs);
        std::vector<bool> crisis;
        const auto gdp_nom = col(p, &PanelRow::gdp_nominal);
        for (std::size_t t = 0; t < bailouts.size(); ++t) {
            crisis.push_back(bailouts[t] > 0.0);
            fiscal_costs.push_back(gdp_nom[t] > 0.0 ? bailouts[t] / gdp_nom[t] : 0.0);
        }
        const auto runs = run_lengths(crisis);
        crisis_durations.insert(crisis_durations.end(), runs.begin(), runs.end());

        for (std::size_t t = 0; t < unemployment.size(); ++t) {
            phillips_u.push_back(unemployment[t]);
            phillips_pi.push_back(inflation[t]);
        }
        std::vector<double> growth;
        for (std::size_t t = 1; t < gdp.size(); ++t) {
            if (gdp[t - 1] != 0.0) {
                okun_du.push_back(unemployment[t] - unemployment[t - 1]);
                const double g = (gdp[t] - gdp[t - 1]) / std::fabs(gdp[t - 1]);
                okun_g.push_back(g);
                growth.push_back(g);
            }
        }
        rep_mean_growth.push_back(mean(growth));
    }

    if (reps == 0) return sf;
    const double r = static_cast<double>(reps);
    sf.rel_sd_investment = sd_i / r;
    sf.rel_sd_consumption = sd_c / r;
    sf.rel_sd_unemployment = sd_u / r;
    sf.corr_unemployment_lag0 = corr_u / r;
    sf.corr_firm_debt_lag0 = corr_debt / r;
    sf.corr_investment_lag0 = corr_inv / r;

    for (auto* cc : {&cc_inflation, &cc_profits, &cc_losses, &cc_bankruptcy}) {
        for (auto& v : *cc) v /= r;
    }
    sf.corr_inflation_peak = cc_inflation[peak_index(cc_inflation)];
    sf.corr_inflation_peak_lag = peak_index(cc_inflation) - kLag;
    {
        // restrict the profit peak to contemporaneous-or-lagging positions
        int best = kLag;
        for (int i = kLag; i < static_cast<int>(cc_profits.size()); ++i) {
            if (cc_profits[i] > cc_profits[best]) best = i;
        }
        sf.corr_bank_profits_peak = cc_profits[best];
        sf.corr_bank_profits_peak_lag = best - kLag;
    }
    sf.loan_loss_peak_lag = peak_index(cc_losses) - kLag;
    {
        int best = 0;
        for (int i = 1; i < static_cast<int>(cc_bankruptcy.size()); ++i) {
            if (cc_bankruptcy[i] < cc_bankruptcy[best]) best = i;
        }
        sf.bankruptcy_min_corr = cc_bankruptcy[best];
        sf.bankruptcy_min_lag = best - kLag;
    }

    const auto rec_fit = fit_durations(recession_durations);
    sf.recession_r2 = rec_fit.r2;
    sf.recession_count = static_cast<int>(recession_durations.size());

    sf.crisis_count = static_cast<int>(crisis_durations.size());
    if (crisis_durations.size() >= 8) {
        std::vector<double> d(crisis_durations.begin(), crisis_durations.end());
        sf.crisis_skewness = distribution_stats(d).skewness;
    }
    const auto fiscal = distribution_stats(fiscal_costs);
    sf.fiscal_jb = fiscal.jarque_bera;
    sf.fiscal_jb_pvalue = fiscal.jb_pvalue;

    // degenerate panels (e.g. a collapsed economy with constant unemployment)
    // should yield an uninformative fit, not abort the report
    auto safe_regress = [](const std::vector<double>& y,
                           const std::vector<double>& x) -> OlsFit {
        try {
            return regress(y, x);
        } catch (const std::invalid_argument&) {
            OlsFit fit;
            fit.slope = 0.0;
            fit.slope_pvalue = 1.0;
            return fit;
        }
    };
    const auto phillips = safe_regress(phillips_pi, phillips_u);
    sf.phillips_slope = phillips.slope;
    sf.phillips_pvalue = phillips.slope_pvalue;
    const auto okun = safe_regress(okun_du, okun_g);
    sf.okun_slope = okun.slope;
    sf.okun_pvalue = okun.slope_pvalue;
    sf.gdp_growth_sd_across_reps = std_dev(rep_mean_growth);
    return sf;
}

std::string stylized_facts_report(const StylizedFacts& sf) {
    std::ostringstream out;
    char buf[256];
    auto line = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof buf, fmt, args...);
        out << buf << "\n";
    };
    line("SF1  relative std dev: investment %.3f, consumption %.3f, unemployment %.3f",
         sf.rel_sd_investment, sf.rel_sd_consumption, sf.rel_sd_unemployment);
    line("SF2  recession durations: n=%d, log-survival R2 %.3f", sf.recession_count,
         sf.recession_r2);
    line("SF3  corr vs GDP: unemployment %.3f (t), inflation %.3f (t%+d), "
         "investment %.3f (t)",
         sf.corr_unemployment_lag0, sf.corr_inflation_peak, sf.corr_inflation_peak_lag,
         sf.corr_investment_lag0);
    line("SF5  corr vs GDP: firm debt %.3f (t), bank profits %.3f (t%+d)",
         sf.corr_firm_debt_lag0, sf.corr_bank_profits_peak,
         sf.corr_bank_profits_peak_lag);
    line("SF6  loan losses vs firm debt: peak at t%+d", sf.loan_loss_peak_lag);
    line("SF7  banking-crisis durations: n=%d, skewness %.3f", sf.crisis_count,
         sf.crisis_skewness);
    line("SF8  fiscal costs / GDP: Jarque-Bera %.1f (p %.2e)", sf.fiscal_jb,
         sf.fiscal_jb_pvalue);
    line("SF10 firm bankruptcies vs GDP: min corr %.3f (t%+d)", sf.bankruptcy_min_corr,
         sf.bankruptcy_min_lag);
    line("SF11 Phillips slope %.4f (p %.2e)", sf.phillips_slope, sf.phillips_pvalue);
    line("SF12 Okun slope %.4f (p %.2e)", sf.okun_slope, sf.okun_pvalue);
    line("cross-replication mean-growth std dev %.3e", sf.gdp_growth_sd_across_reps);
    return out.str();
}

Sf13Report sf13_report(const std::vector<TimeSeriesPanel>& panels,
                       double window_start, double window_end, double floor_rate) {
    Sf13Report rep;
    rep.floor_rate = floor_rate;
    std::vector<double> rate_in, rate_out, vol_in, vol_out, sd_in, sd_out;
    for (const auto& p : panels) {
        for (const auto& row : p.rows) {
            if (row.period < 10.0) continue;  // settle-in phase
            const bool inside =
                row.period > window_start + 2.0 && row.period <= window_end;
            const bool outside = row.period <= window_start - 2.0 ||
                                 row.period > window_end + 10.0;
            if (inside) {
                rate_in.push_back(row.interbank_rate);
                vol_in.push_back(row.interbank_volume);
                sd_in.push_back(row.interbank_rate_sd);
            } else if (outside) {
                rate_out.push_back(row.interbank_rate);
                vol_out.push_back(row.interbank_volume);
                sd_out.push_back(row.interbank_rate_sd);
            }
        }
    }
    rep.rate_inside = mean(rate_in);
    rep.rate_outside = mean(rate_out);
    rep.volume_inside = mean(vol_in);
    rep.volume_outside = mean(vol_out);
    rep.volatility_inside = mean(sd_in);
    rep.volatility_outside = mean(sd_out);
    rep.volume_pvalue = welch_less(vol_in, vol_out).p_less;
    rep.volatility_pvalue = welch_less(sd_in, sd_out).p_less;
    return rep;
}

}  // namespace makro::analysis
