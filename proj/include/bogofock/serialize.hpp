#pragma once

#include <json.hpp>

#include "bogofock/extended.hpp"
#include "bogofock/fock.hpp"

namespace bogofock {

using Json = nlohmann::ordered_json;

/// Versioned record {modes, nmax, sectors: [{N, entries: [(occupation,
/// re, im)]}]}; entries are nonzero amplitudes in basis order.
Json to_json(const FockVector& psi);
FockVector fock_from_json(const Json& doc);

/// Same layout with (N, L) keys, a summable flag, and dense row-major
/// value arrays [re, im, re, im, ...].
Json to_json(const ExtendedVector& v);
ExtendedVector extended_from_json(const Json& doc);

}  // namespace bogofock
