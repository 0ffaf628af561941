#pragma once

// JSON state descriptions and result serialization.
//
//   {"family":"werner","V":0.8}
//   {"family":"schmidt","c0":0.8,"c1":0.6}
//   {"family":"noisy_schmidt","c0":0.8,"c1":0.6,"V":0.9}
//   {"family":"dense","re":[[...] x4],"im":[[...] x4]}

#include <string>

#include <json.hpp>

#include "biloc/criteria.hpp"
#include "biloc/network.hpp"
#include "biloc/optimizer.hpp"
#include "biloc/state.hpp"

namespace biloc::io {

using nlohmann::json;

/// Throws ParseError for a malformed description, InvalidState / DomainError
/// when the described state is not a valid density matrix.
TwoQubitState parse_state(const json& description);

/// Inline JSON when the text starts with '{', otherwise a file path.
json load_description(const std::string& jsonOrPath);

/// Dense description of an arbitrary state (round-trips bit-exactly).
json dense_description(const TwoQubitState& state);

json to_json(const Mat2& m);
json to_json(const BilocReport& r);
json to_json(const SearchResult& r);
json to_json(const TripartiteDistribution& d);
json to_json(const SampleEstimate& e);

}  // namespace biloc::io
