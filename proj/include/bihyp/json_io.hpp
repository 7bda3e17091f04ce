#pragma once

#include <json.hpp>

#include "bihyp/arithmetic.hpp"
#include "bihyp/frobenius.hpp"
#include "bihyp/model.hpp"
#include "bihyp/picture.hpp"

namespace bihyp {

using Json = nlohmann::json;

Json picture_to_json(const Picture& pic);
Picture picture_from_json(const Json& j);

// "u*p^m" literals: plain rationals, "p^m", "-p^2", "3/2*p^4", ...
Rat parse_p_literal(const std::string& text, long long p);

// p_override > 0 replaces the file's prime before "p^m" literals are
// expanded.
PolynomialInput polynomial_input_from_json(const Json& j, long long p_override = 0);

Json graph_to_json(const DualGraph& g);
Json classification_to_json(const Classification& cls);

EpsilonTable eps_table_from_json(const Json& j, const Picture& pic);
std::vector<int> cluster_perm_from_json(const Json& j, const Picture& pic);
Json automorphism_to_json(const DualGraph& g, const GraphAutomorphism& a);

} // namespace bihyp
