#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "kneser/blowup.hpp"
#include "kneser/coloring.hpp"

namespace kneser {

using json = nlohmann::json;

struct Instance {
    Hypergraph hypergraph;
    std::optional<Coloring> coloring;
};

/// Object with n, k, r, vertices and either edges or generator: "kneser",
/// plus coloring when given. Requires a family-backed hypergraph.
json to_json(const Hypergraph& h, const std::optional<Coloring>& coloring = std::nullopt);

/// Inverse of to_json; throws std::invalid_argument on malformed input.
Instance instance_from_json(const json& j);

/// Canonical text form (compact, keys sorted).
std::string emit(const Hypergraph& h, const std::optional<Coloring>& coloring = std::nullopt);
Instance parse(const std::string& text);

json to_json(const WitnessReport& w);
json to_json(const ChiCertificate& c);

}  // namespace kneser
