#pragma once

#include "makro/world.hpp"

namespace makro::policy {

/// Samples the mean price every `inflation_sampling` periods and maintains
/// the 12-period average inflation measure (per-period terms).
void sample_price_index(World& w);

/// Current inflation measure; zero while history is insufficient.
double measure_inflation(const World& w);

/// Relative output gap from real GDP against potential output.
double output_gap(const World& w);

/// Key-rate update per the policy feedback rule, floored at zero. A pinned
/// rate (experiments) overrides the rule.
void taylor_update(World& w);

/// Periodic fiscal sweep: profit taxes for firms and banks, unemployment
/// benefits, and bank dividends net of the retention target.
void collect_taxes_and_benefits(World& w);

}  // namespace makro::policy
