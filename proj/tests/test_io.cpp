#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "biloc/io.hpp"

using namespace biloc;
using biloc::io::json;

TEST_CASE("parse_state families") {
    CHECK(max_abs_diff(io::parse_state(json::parse(R"({"family":"werner","V":0.8})")).matrix(), make_werner(0.8).matrix()) == 0.0);
    CHECK(max_abs_diff(io::parse_state(json::parse(R"({"family":"schmidt","c0":0.8,"c1":0.6})")).matrix(), make_schmidt_state(0.8, 0.6).matrix()) ==
          0.0);
    CHECK(max_abs_diff(io::parse_state(json::parse(R"({"family":"noisy_schmidt","c0":0.8,"c1":0.6,"V":0.9})")).matrix(),
                       add_isotropic_noise(make_schmidt_state(0.8, 0.6), 0.9).matrix()) == 0.0);
    const auto dense = io::parse_state(json::parse(R"({"family":"dense","re":[[0.25,0,0,0],[0,0.25,0,0],[0,0,0.25,0],[0,0,0,0.25]]})"));
    CHECK(max_abs_diff(dense.matrix(), make_werner(0.0).matrix()) == 0.0);
}

TEST_CASE("parse_state error classes") {
    CHECK_THROWS_AS(io::parse_state(json::parse("[1,2]")), ParseError);
    CHECK_THROWS_AS(io::parse_state(json::parse(R"({"V":0.5})")), ParseError);
    CHECK_THROWS_AS(io::parse_state(json::parse(R"({"family":"ghz"})")), ParseError);
    CHECK_THROWS_AS(io::parse_state(json::parse(R"({"family":"werner","V":"high"})")), ParseError);
    CHECK_THROWS_AS(io::parse_state(json::parse(R"({"family":"dense","re":[[1,0],[0,0]]})")), ParseError);
    // well-formed descriptions of invalid states
    CHECK_THROWS_AS(io::parse_state(json::parse(R"({"family":"werner","V":2})")), DomainError);
    CHECK_THROWS_AS(io::parse_state(json::parse(R"({"family":"dense","re":[[1,0,0,0],[0,1,0,0],[0,0,0,0],[0,0,0,0]]})")), InvalidState);
    CHECK_THROWS_AS(io::parse_state(json::parse(R"({"family":"dense","re":[[1.5,0,0,0],[0,-0.5,0,0],[0,0,0,0],[0,0,0,0]]})")), InvalidState);
}

TEST_CASE("load_description reads inline JSON or a file") {
    CHECK(io::load_description(R"(  {"family":"werner","V":0.3})")["V"] == 0.3);
    CHECK_THROWS_AS(io::load_description("{not json"), ParseError);
    CHECK_THROWS_AS(io::load_description("/nonexistent/state.json"), ParseError);

    const std::string path = "biloc_io_test_state.json";
    {
        std::ofstream out(path);
        out << R"({"family":"schmidt","c0":0.6,"c1":0.8})";
    }
    CHECK(io::load_description(path)["c1"] == 0.8);
    std::remove(path.c_str());
}

TEST_CASE("dense description round-trips bit-exactly and re-analysis is identical") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const TwoQubitState s = random_state(seed % 2 ? StateKind::Pure : StateKind::Mixed, seed);
        const TwoQubitState t = random_state(StateKind::Mixed, 100 + seed);
        // through text, as the CLI would emit and re-read it
        const json text = json::parse(io::dense_description(s).dump());
        const TwoQubitState back = io::parse_state(text);
        CHECK(max_abs_diff(back.matrix(), s.matrix()) == 0.0);
        CHECK(io::to_json(mixed_pair_optimum(back, t)) == io::to_json(mixed_pair_optimum(s, t)));
    }
}

TEST_CASE("report JSON carries the documented fields") {
    const json j = io::to_json(mixed_pair_optimum(make_werner(0.72), make_werner(0.72)));
    for (const char* key : {"sMax", "alpha", "gamma", "xi", "zeta", "bobAlignment", "chshAB", "chshBC", "violates", "marginal"}) CHECK(j.contains(key));
    CHECK(j["violates"] == true);
    CHECK(j["xi"].size() == 2);
    CHECK(j["bobAlignment"].size() == 2);
}

TEST_CASE("search result JSON keeps the full parameter vector") {
    SearchResult r;
    r.mode = SearchMode::GeneralBob;
    r.sBest = 2.5;
    r.settings = {0.1, 0.2, 0.30000000000000004};
    r.evaluations = 17;
    const json j = json::parse(io::to_json(r).dump());
    CHECK(j["mode"] == "general-bob");
    CHECK(j["settings"][2].get<double>() == 0.30000000000000004);
    CHECK(j["evaluations"] == 17);
}

TEST_CASE("unreliable sample statistics serialize as null") {
    SampleEstimate e;
    e.stderr_I = e.stderr_J = e.stderr_S = std::nan("");
    e.unreliable = true;
    const json j = io::to_json(e);
    CHECK(j["stderr_S"].is_null());
    CHECK(j["unreliable"] == true);
    CHECK_NOTHROW(j.dump());
}

TEST_CASE("distribution JSON nests p[x][z][a][b0][b1][c]") {
    TripartiteDistribution d;
    d.at(1, 0, -1, 1, -1, 1) = 0.5;
    const json j = io::to_json(d);
    CHECK(j["p"][1][0][1][0][1][0] == 0.5);
    CHECK(j.contains("S"));
}
