#include "uvflow/io.hpp"

#include <fstream>

namespace uvflow {

Json polymap_to_json(const PolyMap& f) {
    Json j;
    j["arity"] = f.arity;
    j["vars"] = f.var_names();
    Json comps = Json::array();
    for (const auto& c : f.components) {
        Json terms = Json::array();
        for (const auto& [e, coef] : c.terms()) {
            Json t;
            t["coeff"] = coef.str();
            t["exps"] = e;
            terms.push_back(t);
        }
        comps.push_back(terms);
    }
    j["components"] = comps;
    return j;
}

PolyMap polymap_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("arity") || !j.contains("components"))
        fail(ErrorKind::BadInput, "map JSON needs 'arity' and 'components'");
    if (!j["arity"].is_number_integer())
        fail(ErrorKind::BadInput, "'arity' must be an integer");
    PolyMap f;
    f.arity = j["arity"].get<int>();
    if (f.arity < 1) fail(ErrorKind::BadInput, "'arity' must be >= 1");
    if (j.contains("vars")) {
        if (!j["vars"].is_array()) fail(ErrorKind::BadInput, "'vars' must be an array");
        for (const auto& v : j["vars"]) f.vars.push_back(v.get<std::string>());
    }
    if (!j["components"].is_array())
        fail(ErrorKind::BadInput, "'components' must be an array");
    for (const auto& comp : j["components"]) {
        if (!comp.is_array()) fail(ErrorKind::BadInput, "each component must be a term array");
        Poly p(f.arity);
        for (const auto& t : comp) {
            if (!t.is_object() || !t.contains("coeff") || !t.contains("exps"))
                fail(ErrorKind::BadInput, "each term needs 'coeff' and 'exps'");
            Rat c = Rat::parse(t["coeff"].get<std::string>());
            std::vector<int> e = t["exps"].get<std::vector<int>>();
            if (static_cast<int>(e.size()) != f.arity)
                fail(ErrorKind::BadInput, "term exponent length != arity");
            p += Poly::monomial(f.arity, e, c);
        }
        f.components.push_back(std::move(p));
    }
    f.validate();
    return f;
}

Json uvrep_to_json(const UVRep& rep) {
    Json j;
    j["m"] = rep.m;
    j["N"] = rep.N;
    Json h = Json::array();
    for (const auto& v : rep.h) h.push_back(v.str());
    j["h"] = h;
    j["role"] = {rep.role[0], rep.role[1]};
    j["sign"] = rep.sign;
    return j;
}

UVRep uvrep_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("N") || !j.contains("h"))
        fail(ErrorKind::BadInput, "representation JSON needs 'm', 'N', 'h'");
    UVRep rep;
    rep.m = j["m"].get<int>();
    rep.N = j["N"].get<int>();
    for (const auto& v : j["h"]) rep.h.push_back(Rat::parse(v.get<std::string>()));
    if (j.contains("role")) {
        auto r = j["role"].get<std::vector<int>>();
        if (r.size() != 2) fail(ErrorKind::BadInput, "'role' must have two entries");
        rep.role = {r[0], r[1]};
    }
    if (j.contains("sign")) rep.sign = j["sign"].get<int>();
    rep.validate();
    return rep;
}

Json record_to_json(const VerificationRecord& rec) {
    Json j;
    j["identity"] = rec.identity;
    j["status"] = status_name(rec.status);
    j["residual"] = rec.residual;
    j["notes"] = rec.notes;
    if (rec.approximate) j["approximate"] = true;
    return j;
}

PolyMap load_polymap(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::BadInput, "cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(ErrorKind::BadInput, std::string("malformed JSON: ") + e.what());
    }
    return polymap_from_json(j);
}

} // namespace uvflow
