#ifndef UVFLOW_IO_HPP
#define UVFLOW_IO_HPP

#include <string>

#include <json.hpp>

#include "uvflow/flow.hpp"
#include "uvflow/jacrep.hpp"
#include "uvflow/poly.hpp"
#include "uvflow/uvrep.hpp"

namespace uvflow {

using Json = nlohmann::json;

// Wire schema:
//   {"arity": n, "vars": [names...],
//    "components": [[{"coeff": "p/q", "exps": [e1..en]}, ...], ...]}
Json polymap_to_json(const PolyMap& f);
PolyMap polymap_from_json(const Json& j);

// {"m": int, "N": int, "h": ["p/q", ...], "role": [i, j], "sign": 1|-1}
Json uvrep_to_json(const UVRep& rep);
UVRep uvrep_from_json(const Json& j);

Json record_to_json(const VerificationRecord& rec);

PolyMap load_polymap(const std::string& path);

} // namespace uvflow

#endif
