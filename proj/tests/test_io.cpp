#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "chowbench/generators.hpp"
#include "chowbench/io.hpp"

using namespace chowbench;
using nlohmann::json;

namespace {

IntVec iv(std::vector<int> v) { return IntVec(v.begin(), v.end()); }

QuotientDiagram cube3_diagram() {
    auto doc = example_cube(3);
    return build_diagram(analyze_action(document_polytope(doc), *doc.nu));
}

}  // namespace

TEST_CASE("document round-trip") {
    PolytopeDocument doc;
    doc.name = "demo";
    doc.ambient_dim = 2;
    doc.vertices = {{0, 0}, {1, 0}, {Rational(1, 2), Rational(3, 2)}};
    doc.nu = iv({1, -1});

    auto back = parse_polytope_document(document_to_string(doc));
    CHECK(back.schema_version == "1");
    CHECK(back.name == doc.name);
    CHECK(back.ambient_dim == 2);
    CHECK(back.vertices == doc.vertices);
    REQUIRE(back.nu.has_value());
    CHECK(*back.nu == *doc.nu);

    // nu and name are optional
    doc.nu.reset();
    doc.name.clear();
    auto bare = parse_polytope_document(document_to_string(doc));
    CHECK_FALSE(bare.nu.has_value());
    CHECK(bare.name.empty());
}

TEST_CASE("documents accept raw integer entries") {
    auto doc = parse_polytope_document(R"({
        "ambient_dim": 2,
        "vertices": [[0, 0], [1, "0"], ["1/2", "3/2"]],
        "nu": [2, "3"]
    })");
    CHECK(doc.schema_version == "1");  // defaulted
    CHECK(doc.vertices[2] == RatVec{Rational(1, 2), Rational(3, 2)});
    CHECK(*doc.nu == iv({2, 3}));
    CHECK(document_polytope(doc).lattice_tag() == "ambient");
}

TEST_CASE("parse errors carry a located message") {
    auto message_of = [](const std::string& text) {
        try {
            parse_polytope_document(text);
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message_of("{ not json").find("JSON parse error") == 0);
    CHECK(message_of("[1, 2]") == "document: top level must be an object");
    CHECK(message_of(R"({"ambient_dim": 2})") ==
          "document: nonempty vertices array is required");
    CHECK(message_of(R"({"vertices": [[0]]})") ==
          "document: ambient_dim (integer) is required");
    CHECK(message_of(R"({"ambient_dim": 2, "vertices": [[0, 0], [1]]})") ==
          "document: every vertex must have ambient_dim entries");
    CHECK(message_of(R"({"ambient_dim": 1, "vertices": [[0.5]]})") ==
          "document: vertex entries must be integer or rational strings");
    CHECK(message_of(R"({"ambient_dim": 1, "vertices": [["x"]]})").find("x") !=
          std::string::npos);
    CHECK(message_of(R"({"ambient_dim": 1, "vertices": [[0]], "nu": ["1/2"]})") ==
          "document: nu entries must be integers");
    CHECK(message_of(R"({"ambient_dim": 1, "vertices": [[0]], "nu": [1, 2]})") ==
          "document: nu must have ambient_dim entries");
    CHECK(message_of(R"({"schema_version": "2", "ambient_dim": 1, "vertices": [[0]]})") ==
          "document: unsupported schema_version 2");
    CHECK(message_of(R"({"ambient_dim": -1, "vertices": [[]]})") ==
          "document: ambient_dim must be >= 0");
}

TEST_CASE("vertex matrix of the bordism example") {
    // re-typed from the source table, column per vertex
    const int expected[4][26] = {
        {0, 0, 0, 0, 0, -1, -2, -2, -2, -2, -2, -2, -3, -5,
         0, 0, 0, 0, 0, -1, -3, -5, -6, -6, -6, -6},
        {0, 0, -1, -4, -4, 0, 0, 0, -1, -3, -4, -4, -4, -4,
         0, 0, -1, -4, -4, 0, -4, -4, 0, 0, -4, -4},
        {0, -6, 0, -3, -6, 0, -1, -6, 0, 0, -1, -6, 0, 0,
         0, -6, 0, -3, -6, 0, 0, 0, -5, -6, -1, -6},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 3,
         4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4}};

    const IntMatrix& M = brus_matrix();
    REQUIRE(M.rows == 4);
    REQUIRE(M.cols == 26);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 26; ++j) CHECK(M(i, j) == expected[i][j]);

    auto doc = example_brus();
    CHECK(doc.name == "brus");
    CHECK(doc.ambient_dim == 4);
    REQUIRE(doc.vertices.size() == 26);
    for (int j = 0; j < 26; ++j)
        for (int i = 0; i < 4; ++i) CHECK(doc.vertices[j][i] == Rational(expected[i][j]));
    CHECK(*doc.nu == iv({0, 0, 0, 1}));

    // all 26 columns are extreme points
    CHECK(document_polytope(doc).vertices().size() == 26);
}

TEST_CASE("example generators") {
    CHECK(example_cube(1).vertices == example_segment().vertices);
    CHECK(example_square().vertices.size() == 4);
    CHECK(make_example("cube", 4).vertices.size() == 16);
    CHECK(make_example("brus").name == "brus");
    CHECK_THROWS_AS(make_example("simplex"), std::invalid_argument);
    CHECK_THROWS_AS(example_cube(0), std::invalid_argument);
}

TEST_CASE("canonical dumps are deterministic") {
    auto doc = example_brus();
    CHECK(document_to_string(doc) == document_to_string(doc));

    // two full diagram builds (thread pool and all) must serialize identically
    auto D1 = cube3_diagram();
    auto D2 = cube3_diagram();
    auto s1 = dump_json(diagram_json(D1, true));
    auto s2 = dump_json(diagram_json(D2, true));
    CHECK(s1 == s2);
    CHECK(s1.back() == '\n');
    CHECK(s1.find("\"all_squares_pass\": true") != std::string::npos);
    CHECK(s1.find("\"all_cross_pass\": true") != std::string::npos);
}

TEST_CASE("analysis serialization carries the verdicts") {
    auto doc = example_square();
    auto a = analyze_action(document_polytope(doc), iv({2, 1}));
    auto j = analysis_json(a);
    CHECK(j["equalized"] == false);
    CHECK(j["criticality"] == 3);
    CHECK(j["offending_edges"].size() == 2);
    CHECK(j["offending_edges"][0]["isotropy_order"] == "2");
    CHECK(j["flags"]["b_type"] == false);

    auto ab = analyze_action(document_polytope(example_brus()), iv({0, 0, 0, 1}));
    auto jb = analysis_json(ab);
    CHECK(jb["equalized"] == true);
    CHECK(jb["bandwidth"] == "4");
    CHECK(jb["critical_values"] == json::array({"0", "1", "3", "4"}));
    CHECK(jb["fixed_faces"].size() == 4);
    CHECK(jb["flags"]["bordism"] == true);
    CHECK(jb["flags"]["theorem_hypothesis"] == true);
    CHECK(jb["flags"]["bordism_identity_ok"] == true);
    CHECK(jb["sink"] == 0);
    CHECK(jb["source"] == 3);
}

TEST_CASE("emitted node polytopes re-ingest to the same fans") {
    auto D = cube3_diagram();
    auto j = diagram_json(D, true);

    for (const auto& o : j["nodes"]) {
        if (!o["has_fan"].get<bool>()) continue;
        std::vector<RatVec> pts;
        for (const auto& row : o["polytope"]["vertices"]) {
            RatVec v;
            for (const auto& e : row) v.push_back(parse_rational(e.get<std::string>()));
            pts.push_back(std::move(v));
        }
        auto tag = o["polytope"]["lattice_tag"].get<std::string>();
        auto P = LatticePolytope::hull(pts, tag);
        const auto& n = D.node(o["i"].get<int>(), o["j"].get<int>());
        CHECK(P == n.polytope);
        CHECK(fans_equal(normal_fan(P), *n.fan));
    }

    // edge metadata: the two blowup edges carry their three point centers
    int blowups = 0;
    for (const auto& e : j["edges"]) {
        if (e["classification"] == "smooth_blowup") {
            ++blowups;
            CHECK(e["centers"].size() == 3);
            CHECK(e["components"] == 3);
            for (const auto& c : e["centers"]) CHECK(c["codim"] == 2);
        } else {
            CHECK_FALSE(e.contains("centers"));
        }
    }
    CHECK(blowups == 2);

    // polytope dumps include exact facet data on demand
    auto pj = polytope_json(document_polytope(example_square()), true);
    CHECK(pj["facets"].size() == 4);
    CHECK(pj["f_vector"] == json::array({4, 4}));
}
