#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "tpk/curve.hpp"
#include "tpk/kernel.hpp"
#include "tpk/oracle.hpp"

namespace tpk {

using Json = nlohmann::ordered_json;

/// Pretty-printed JSON with every floating value written as %.12e (non-finite as null).
std::string dump(const Json& j);

/// {"p", "rational": {"scale", "zeros", "poles"}, "jumps": [{"location", "alpha"}]}.
/// `p` overrides the file's value when given. Exponents may be numbers or "n/d" strings.
PCSymbol symbol_from_json(const Json& j, std::optional<Exponent> p = std::nullopt);
Json symbol_to_json(const PCSymbol& s);

Json exponent_json(const Exponent& e);
Json complex_json(cplx z);
/// {"scale": [re, im], "terms": [[re a, im a, beta, branch], ...]}
Json factor_json(const FactorExpression& f);
Json decomposition_json(const PCDecomposition& d);
Json factorization_json(const Factorization& f);
Json kernel_json(const KernelDescription& k);
Json rank_json(const RankEstimate& r);

}  // namespace tpk
