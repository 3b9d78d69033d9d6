#pragma once

// Structured output. Groups render as {"free": n, "torsion": {"p": [exponents]}},
// elements as {"torsion": [...], "free": [...]}; integers that do not fit in
// 64 bits are emitted as decimal strings.

#include <nlohmann/json.hpp>

#include "kdual/fga.hpp"
#include "kdual/k_calculus.hpp"
#include "kdual/p_invariants.hpp"
#include "kdual/verifier.hpp"

namespace kdual {

nlohmann::json to_json(const Int& x);
nlohmann::json to_json(const FgaGroup& g);
nlohmann::json to_json(const GroupElement& e);
nlohmann::json to_json(const IntMatrix& m);
nlohmann::json to_json(const KPair& p);
nlohmann::json to_json(const KTriple& t);
nlohmann::json to_json(const HomotopyProfile& h);
nlohmann::json to_json(const PExponentProfile& p);
nlohmann::json to_json(const NormalFormData& d);
nlohmann::json to_json(const VerificationReport& r);

std::string to_string(NormalFormMode m);

}  // namespace kdual
