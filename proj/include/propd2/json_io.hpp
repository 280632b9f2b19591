#pragma once

#include <json.hpp>

#include "propd2/decomp_graphs.hpp"
#include "propd2/normalizer.hpp"

namespace propd2 {

using ordered_json = nlohmann::ordered_json;

/// All JSON uses decimal strings for unbounded integers (exponents, coords,
/// lambda) and plain ints for small structural numbers.

ordered_json word_to_json(const FreeWord& w);
FreeWord word_from_json(const ordered_json& j);

ordered_json malcev_to_json(const NilpotentQuotient& nq, const MalcevElement& m);

ordered_json chi_to_json(const OrientationCharacter& chi);
OrientationCharacter chi_from_json(const ordered_json& j);
/// "trivial", "up:M", "minus_times:F", "minus_power:F".
OrientationCharacter chi_from_string(const std::string& s, int p);

ordered_json pair_to_json(const PairPresentation& pair);
PairPresentation pair_from_json(const ordered_json& j);

ordered_json certificate_to_json(const BasisChangeCertificate& cert);
BasisChangeCertificate certificate_from_json(const ordered_json& j);

ordered_json graph_to_json(const DecompositionGraph& g);
DecompositionGraph graph_from_json(const ordered_json& j);

ordered_json delta_to_json(const DeltaMap& dm);

ordered_json cupform_to_json(const CupForm& f);

}  // namespace propd2
