#pragma once

#include <json.hpp>

#include "core/divisor.hpp"

namespace trop {

using Json = nlohmann::json;

// Raised for malformed or schema-violating input documents.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All coordinates, weights and values are serialized as exact strings
// ("p/q" or integer strings); plain JSON numbers are rejected for them.
// Dimensions and ray indices are plain JSON integers.

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json qvec_to_json(const QVec& v);
QVec qvec_from_json(const Json& j, int expect_len = -1);

Json zvec_to_json(const ZVec& v);
ZVec zvec_from_json(const Json& j, int expect_len = -1);

Json poly_to_json(const Polyhedron& p);
Polyhedron poly_from_json(const Json& j);

Json cycle_to_json(const Cycle& s);
Cycle cycle_from_json(const Json& j);

Json fan_to_json(const Fan& d);
Fan fan_from_json(const Json& j);

Json polynomial_to_json(const TropicalPolynomial& f);
TropicalPolynomial polynomial_from_json(const Json& j);

Json mw_to_json(const MinkowskiWeight& c);
MinkowskiWeight mw_from_json(const Json& j);

Json stratified_to_json(const StratifiedCycle& s, const Fan& d);
StratifiedCycle stratified_from_json(const Json& j, const Fan& d);

// canonical serialization: sorted keys, reduced "p/q" strings
std::string dump_canonical(const Json& j);

}  // namespace trop
