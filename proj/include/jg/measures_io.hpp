#pragma once

#include <json.hpp>

#include "jg/measures.hpp"

namespace jg {

using json = nlohmann::ordered_json;

namespace detail {

inline json payload_to_json(const AlgebraDescriptor& d, size_t s, const Payload& p) {
    json j;
    switch (d.summands[s].kind) {
        case Factor::matrix:
        case Factor::symmetric: {
            const CMat& m = std::get<CMat>(p);
            j["kind"] = d.summands[s].kind == Factor::matrix ? "matrix" : "symmetric";
            j["n"] = m.n();
            json entries = json::array();
            for (int i = 0; i < m.n(); ++i)
                for (int k = 0; k < m.n(); ++k) {
                    entries.push_back(m(i, k).real());
                    entries.push_back(m(i, k).imag());
                }
            j["entries"] = std::move(entries);
            break;
        }
        case Factor::spin: {
            const auto& sp = std::get<SpinElem>(p);
            j["kind"] = "spin";
            j["k"] = static_cast<int>(sp.u.size());
            json coeffs = json::array();
            coeffs.push_back(sp.a.real());
            coeffs.push_back(sp.a.imag());
            for (const auto& v : sp.u) {
                coeffs.push_back(v.real());
                coeffs.push_back(v.imag());
            }
            j["coeffs"] = std::move(coeffs);
            break;
        }
        case Factor::albert: {
            const auto& al = std::get<AlbertElem>(p);
            j["kind"] = "albert";
            auto dump = [](const AlbertReal& r) {
                json arr = json::array();
                for (int i = 0; i < 3; ++i) arr.push_back(r.a[i]);
                for (int i = 0; i < 3; ++i)
                    for (int k = 0; k < 8; ++k) arr.push_back(r.x[i][k]);
                return arr;
            };
            j["re"] = dump(al.re);
            j["im"] = dump(al.im);
            break;
        }
    }
    return j;
}

inline Payload payload_from_json(const FactorKind& fk, const json& j) {
    switch (fk.kind) {
        case Factor::matrix:
        case Factor::symmetric: {
            CMat m(fk.dim);
            const auto& e = j.at("entries");
            size_t idx = 0;
            for (int i = 0; i < fk.dim; ++i)
                for (int k = 0; k < fk.dim; ++k) {
                    const double re = e.at(idx++);
                    const double im = e.at(idx++);
                    m(i, k) = cplx(re, im);
                }
            return m;
        }
        case Factor::spin: {
            SpinElem sp{cplx(0.0), std::vector<cplx>(fk.dim)};
            const auto& c = j.at("coeffs");
            sp.a = cplx(c.at(0), c.at(1));
            for (int i = 0; i < fk.dim; ++i) sp.u[i] = cplx(c.at(2 + 2 * i), c.at(3 + 2 * i));
            return sp;
        }
        case Factor::albert: {
            auto load = [](const json& arr) {
                AlbertReal r;
                for (int i = 0; i < 3; ++i) r.a[i] = arr.at(i);
                for (int i = 0; i < 3; ++i)
                    for (int k = 0; k < 8; ++k) r.x[i][k] = arr.at(3 + 8 * i + k);
                return r;
            };
            return AlbertElem{load(j.at("re")), load(j.at("im"))};
        }
    }
    fail(errc::parse_error, "bad factor kind in payload");
}

} // namespace detail

inline json element_to_json(const Element& e) {
    json j;
    j["algebra"] = e.desc.str();
    json parts = json::array();
    for (size_t s = 0; s < e.parts.size(); ++s)
        parts.push_back(detail::payload_to_json(e.desc, s, e.parts[s]));
    j["parts"] = std::move(parts);
    return j;
}

inline Element element_from_json(const json& j) {
    const AlgebraDescriptor d = AlgebraDescriptor::parse(j.at("algebra").get<std::string>());
    Element e = zero(d);
    const auto& parts = j.at("parts");
    if (parts.size() != d.summands.size()) fail(errc::parse_error, "summand count mismatch");
    for (size_t s = 0; s < d.summands.size(); ++s)
        e.parts[s] = detail::payload_from_json(d.summands[s], parts.at(s));
    return e;
}

// Witness-backed measures serialize as their descriptor plus density
// coefficients; oracle measures serialize by builtin identifier.
inline json measure_to_json(const Measure& mu) {
    json j;
    if (mu.witness) {
        j["type"] = "witness";
        j["density"] = element_to_json(*mu.witness);
    } else {
        j["type"] = "builtin";
        j["name"] = mu.name;
    }
    return j;
}

// identifiers: "kadison_s2" or "spin_counterexample:K"
inline Measure measure_from_identifier(const std::string& id) {
    if (id == "kadison_s2") return kadison_s2();
    const std::string prefix = "spin_counterexample:";
    if (id.rfind(prefix, 0) == 0) {
        const int k = std::stoi(id.substr(prefix.size()));
        return spin_counterexample(k);
    }
    fail(errc::parse_error, "unknown measure identifier '" + id + "'");
}

inline Measure measure_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "witness") return from_density(element_from_json(j.at("density")));
    if (type == "builtin") return measure_from_identifier(j.at("name").get<std::string>());
    fail(errc::parse_error, "unknown measure type '" + type + "'");
}

} // namespace jg
