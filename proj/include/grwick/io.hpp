#pragma once

#include <string>

#include <json.hpp>

#include "grwick/covariance.hpp"
#include "grwick/element.hpp"
#include "grwick/fock.hpp"

namespace grwick {

using Json = nlohmann::json;

// JSON encodings. Exact scalars serialize as "p/q" strings (with an optional
// "+p/q i" imaginary part); floating scalars as numbers or [re, im] pairs.
//
//   scalar      "3/5" | -2.25 | ["1/2", "-1/3"] | [0.5, 1.25]
//   element     {"signature": {"a": 1, "v": 4, "copies": 2},
//                "terms": [{"a_mask": 1, "v_masks": [3, 0], "re": "1/2", "im": "0"}, ...]}
//   covariance  {"dim": 4, "upper": [[0, 1, "1/3", "0"], ...]}
//   fock setup  {"h": 2, "generators": [{"side": 0, "tau": "1/2",
//                                        "w": [["1/2", "0"], ...]}, ...]}

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json element_to_json(const Element<Scalar>& f);
Element<Scalar> element_from_json(const Json& j);

Json covariance_to_json(const Covariance& c);
Covariance covariance_from_json(const Json& j);

Json fock_setup_to_json(const FockSetup& fs);
FockSetup fock_setup_from_json(const Json& j);

// Parses and validates; throws std::runtime_error with a readable message on
// malformed input (bad JSON, wrong shapes, non-antisymmetric covariance).
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace grwick
