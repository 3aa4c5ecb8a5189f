#pragma once

// CSV and JSON renderings of experiment reports. Field names are stable; see README.

#include "bernint/experiments.hpp"
#include "bernint/integer_variants.hpp"
#include "bernint/moduli.hpp"

#include <json.hpp>

#include <ostream>

namespace bernint {

inline constexpr const char* kRateCsvHeader = "n,sup_error,bound,ratio";

nlohmann::json to_json(const Measured& m);
nlohmann::json to_json(const ModulusEstimate& e);
nlohmann::json to_json(const BoundValue& b);
nlohmann::json to_json(const RateReport& r);
nlohmann::json to_json(const HypothesisReport& r);
nlohmann::json to_json(const DeviationReport& r);
nlohmann::json to_json(const NecessityReport& r);
nlohmann::json to_json(const IntegerCoefficients& c);
nlohmann::json to_json(const ClosedFormReport& r);

/// Header line, one row per n, then a trailing "# slope,<value>" comment line.
void write_rate_csv(const RateReport& r, std::ostream& out, int digits = precision_digits());

}  // namespace bernint
