#ifndef CIQL_JSON_IO_HPP
#define CIQL_JSON_IO_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "cigeom.hpp"
#include "exactmath.hpp"
#include "projgeom.hpp"

// JSON fixture and report formats. Every emitted numeric is exact:
// integers stay bare, rationals serialize as "a/b" strings.

namespace ciql {

using Json = nlohmann::ordered_json;

// Fixture: { "characteristic": p, "ambient_dim": m, "points": [[...]] },
// integer coordinates reduced mod p on load. characteristic 0 means
// rational coordinates given as strings "a/b".
inline Configuration<Fp> load_configuration_fp(const Json& doc) {
    std::uint32_t p = doc.at("characteristic").get<std::uint32_t>();
    PrimeField field(p);
    std::size_t m = doc.at("ambient_dim").get<std::size_t>();
    std::vector<Point<Fp>> pts;
    for (const auto& row : doc.at("points")) {
        if (row.size() != m + 1)
            throw math_error("fixture: point has wrong coordinate count");
        std::vector<Fp> c;
        for (const auto& x : row) c.push_back(field.elem(x.get<std::int64_t>()));
        pts.emplace_back(std::move(c));
    }
    return Configuration<Fp>(std::move(pts));
}

inline Configuration<Rat> load_configuration_rat(const Json& doc) {
    if (doc.at("characteristic").get<int>() != 0)
        throw math_error("fixture: expected characteristic 0");
    std::size_t m = doc.at("ambient_dim").get<std::size_t>();
    std::vector<Point<Rat>> pts;
    for (const auto& row : doc.at("points")) {
        if (row.size() != m + 1)
            throw math_error("fixture: point has wrong coordinate count");
        std::vector<Rat> c;
        for (const auto& x : row) {
            if (x.is_string()) c.push_back(Rat::parse(x.get<std::string>()));
            else c.push_back(Rat(x.get<std::int64_t>()));
        }
        pts.emplace_back(std::move(c));
    }
    return Configuration<Rat>(std::move(pts));
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw math_error("cannot open file: " + path);
    Json doc;
    in >> doc;
    return doc;
}

inline Json point_to_json(const Point<Fp>& pt) {
    Json arr = Json::array();
    for (const auto& c : pt.coords()) arr.push_back(c.value());
    return arr;
}

inline Json configuration_to_json(const Configuration<Fp>& cfg) {
    Json arr = Json::array();
    for (const auto& pt : cfg.points()) arr.push_back(point_to_json(pt));
    return arr;
}

inline Json report_to_json(const VerificationReport& rep) {
    Json j;
    j["claim"] = rep.claim_id;
    j["p"] = rep.p;
    j["seed"] = rep.seed;
    j["trials"] = rep.trials;
    j["passes"] = rep.passes;
    j["skipped"] = rep.skipped;
    Json failures = Json::array();
    for (const auto& f : rep.failures) {
        Json jf;
        Json subset = Json::array();
        for (std::size_t i : f.subset) subset.push_back(i);
        jf["subset"] = subset;
        jf["configuration"] = configuration_to_json(f.configuration);
        jf["observed_rank"] = f.observed_rank;
        jf["expected_rank"] = f.expected_rank;
        std::vector<std::string> flags = f.flags;
        std::sort(flags.begin(), flags.end());
        jf["flags"] = flags;
        failures.push_back(jf);
    }
    j["failures"] = failures;
    j["runtime_ms"] = rep.runtime_ms;
    return j;
}

inline Json quadratic_form_to_json(const QuadraticForm& q) {
    Json arr = Json::array();
    for (const auto& c : q.coeffs()) arr.push_back(c.value());
    return arr;
}

inline Json curve_sample_to_json(const CurveSample& curve) {
    Json j;
    j["p"] = curve.p;
    j["seed"] = curve.seed;
    j["tries"] = curve.tries;
    j["accepted"] = curve.accepted;
    Json net = Json::array();
    for (std::size_t i = 0; i < 3; ++i) net.push_back(quadratic_form_to_json(curve.net.form(i)));
    j["net"] = net;
    Json pts = Json::array();
    for (const auto& pt : curve.points) pts.push_back(point_to_json(pt));
    j["points"] = pts;
    Json flags = Json::array();
    for (bool b : curve.smooth_flags) flags.push_back(b);
    j["smooth_flags"] = flags;
    return j;
}

}  // namespace ciql

#endif  // CIQL_JSON_IO_HPP
