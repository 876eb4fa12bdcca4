#pragma once

#include <string>

#include <json.hpp>

#include "pivotboot/bounds.hpp"
#include "pivotboot/intervals.hpp"
#include "pivotboot/multi_bootstrap.hpp"
#include "pivotboot/simulation.hpp"

namespace pivotboot {

using Json = nlohmann::ordered_json;

// Shortest decimal string that parses back to exactly `value`.
std::string format_number(double value);

Json to_json(const CoverageRecord& record);
Json to_json(const CoverageReport& report);
Json to_json(const Interval<double>& interval);
Json to_json(const BoundParams& params);
Json to_json(const BoundTerms& terms);

Json to_json(const SimConfig& cfg);
Json to_json(const CoverageConfig& cfg);
Json to_json(const PivotCdfConfig& cfg);
Json to_json(const BootstrapCutoffConfig& cfg);

// Aligned text table with one row per (distribution, n) and one column per
// statistic, in record order.
std::string render_table(const CoverageReport& report);

}  // namespace pivotboot
