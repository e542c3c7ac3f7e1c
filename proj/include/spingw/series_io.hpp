#pragma once

#include <json.hpp>

#include "spingw/series.hpp"

namespace spingw {

/// {"variables": [...], "novikov": name|null, "q_bound": int, "t_bound": int,
///  "terms": [{"exponents": [...], "coeff": "a/b"}, ...]}
/// Terms are emitted in ascending exponent order, so output is deterministic.
nlohmann::ordered_json series_to_json(const TruncatedSeries &s);
TruncatedSeries series_from_json(const nlohmann::json &j);

/// One row per term: the exponent columns named after the variables, then coeff.
std::string series_to_csv(const TruncatedSeries &s);

} // namespace spingw
