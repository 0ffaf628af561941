#include "biloc/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace biloc::io {

namespace {

double number_field(const json& d, const char* key) {
    const auto it = d.find(key);
    if (it == d.end()) throw ParseError(std::string("state description is missing \"") + key + "\"");
    if (!it->is_number()) throw ParseError(std::string("\"") + key + "\" must be a number");
    return it->get<double>();
}

std::array<std::array<double, 4>, 4> matrix_field(const json& d, const char* key) {
    const auto it = d.find(key);
    if (it == d.end()) throw ParseError(std::string("dense state is missing \"") + key + "\"");
    if (!it->is_array() || it->size() != 4) throw ParseError(std::string("\"") + key + "\" must be a 4x4 array");
    std::array<std::array<double, 4>, 4> m{};
    for (std::size_t i = 0; i < 4; ++i) {
        const json& row = (*it)[i];
        if (!row.is_array() || row.size() != 4) throw ParseError(std::string("\"") + key + "\" must be a 4x4 array");
        for (std::size_t j = 0; j < 4; ++j) {
            if (!row[j].is_number()) throw ParseError(std::string("\"") + key + "\" entries must be numbers");
            m[i][j] = row[j].get<double>();
        }
    }
    return m;
}

}  // namespace

TwoQubitState parse_state(const json& d) {
    if (!d.is_object()) throw ParseError("state description must be a JSON object");
    const auto fam = d.find("family");
    if (fam == d.end() || !fam->is_string()) throw ParseError("state description needs a string \"family\"");
    const std::string family = fam->get<std::string>();

    if (family == "werner") return make_werner(number_field(d, "V"));
    if (family == "schmidt") return make_schmidt_state(number_field(d, "c0"), number_field(d, "c1"));
    if (family == "noisy_schmidt")
        return add_isotropic_noise(make_schmidt_state(number_field(d, "c0"), number_field(d, "c1")), number_field(d, "V"));
    if (family == "dense") {
        const auto re = matrix_field(d, "re");
        const auto im = d.contains("im") ? matrix_field(d, "im") : std::array<std::array<double, 4>, 4>{};
        Mat4 m;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = cplx(re[i][j], im[i][j]);
        return TwoQubitState::from_matrix(m);
    }
    throw ParseError("unknown state family \"" + family + "\"");
}

json load_description(const std::string& text) {
    std::string body = text;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
        std::ifstream in(text);
        if (!in) throw ParseError("cannot read state description file \"" + text + "\"");
        std::ostringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

json dense_description(const TwoQubitState& state) {
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        json r = json::array(), m = json::array();
        for (std::size_t j = 0; j < 4; ++j) {
            r.push_back(state.matrix()(i, j).real());
            m.push_back(state.matrix()(i, j).imag());
        }
        re.push_back(r);
        im.push_back(m);
    }
    return {{"family", "dense"}, {"re", re}, {"im", im}};
}

json to_json(const Mat2& m) {
    return {{"re", {{m(0, 0).real(), m(0, 1).real()}, {m(1, 0).real(), m(1, 1).real()}}},
            {"im", {{m(0, 0).imag(), m(0, 1).imag()}, {m(1, 0).imag(), m(1, 1).imag()}}}};
}

namespace {

json setting_json(const SettingPair& p) {
    return json::array({p[0].bloch, p[1].bloch});
}

// NaN is not representable in JSON; unreliable statistics become null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const BilocReport& r) {
    return {{"sMax", r.sMax},
            {"alpha", r.alpha},
            {"gamma", r.gamma},
            {"xi", r.xi},
            {"zeta", r.zeta},
            {"bobAlignment", json::array({to_json(r.bobAlignment.left), to_json(r.bobAlignment.right)})},
            {"chshAB", r.chshAB},
            {"chshBC", r.chshBC},
            {"violates", r.violates},
            {"marginal", r.marginal},
            {"aliceSettings", setting_json(r.alice)},
            {"charlieSettings", setting_json(r.charlie)}};
}

json to_json(const SearchResult& r) {
    return {{"mode", std::string(mode_name(r.mode))},
            {"sBest", r.sBest},
            {"settings", r.settings},
            {"converged", r.converged},
            {"evaluations", r.evaluations}};
}

json to_json(const TripartiteDistribution& d) {
    // p[x][z][a][b0][b1][c], outcome index 0 = +1, 1 = -1.
    json p = json::array();
    for (int x = 0; x < 2; ++x) {
        json px = json::array();
        for (int z = 0; z < 2; ++z) {
            json pz = json::array();
            for (int a : {1, -1}) {
                json pa = json::array();
                for (int b0 : {1, -1}) {
                    json pb0 = json::array();
                    for (int b1 : {1, -1}) pb0.push_back({d(x, z, a, b0, b1, 1), d(x, z, a, b0, b1, -1)});
                    pa.push_back(pb0);
                }
                pz.push_back(pa);
            }
            px.push_back(pz);
        }
        p.push_back(px);
    }
    return {{"p", p}, {"I", compute_I(d)}, {"J", compute_J(d)}, {"S", biloc_score(d)}};
}

json to_json(const SampleEstimate& e) {
    return {{"shots", e.shotsPerSettingPair},
            {"I", e.I},
            {"J", e.J},
            {"S", e.S},
            {"stderr_I", number_or_null(e.stderr_I)},
            {"stderr_J", number_or_null(e.stderr_J)},
            {"stderr_S", number_or_null(e.stderr_S)},
            {"unreliable", e.unreliable},
            {"correlators", e.correlators}};
}

}  // namespace biloc::io
