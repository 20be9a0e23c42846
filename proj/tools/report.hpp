#pragma once

#include <nlohmann/json.hpp>

#include "monocone/cftp.hpp"
#include "monocone/classify.hpp"
#include "monocone/monotonicity.hpp"

namespace monocone::report {

using nlohmann::json;

json rational_vector(const RationalVector& v);
json poset(const Poset& p);
json generator(const Generator& l);
json violation(const Poset& p, const MonotonicityViolation& v);
json weights(const Poset& p, const LambdaWeights& w);
json equivalence(const EquivalenceReport& r, std::size_t max_witnesses);
json failing_class(const FailingClass& f);
json classification(const ClassificationResult& r);
json ray_row(const RayCountRow& row);
json extension(const ExtensionPlan& plan, const ExtensionReport& verdict);

}  // namespace monocone::report
