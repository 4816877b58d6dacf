#include "syncorr/bell_search.hpp"
#include "syncorr/correlation.hpp"
#include "syncorr/errors.hpp"
#include "syncorr/json_io.hpp"
#include "syncorr/polytope.hpp"
#include "syncorr/quantum.hpp"

#include <doctest.h>

#include <random>
#include <variant>

using namespace syncorr;

TEST_CASE("digests are stable and canonical dumps deterministic") {
    CHECK(digest_hex("") == "cbf29ce484222325");
    CHECK(digest_hex("hello") == "a430d84680aabd0b");
    CHECK(digest_hex("hello") != digest_hex("hellp"));

    Json j;
    j["b"] = 1;
    j["a"] = 2;  // ordered_json preserves insertion order
    const std::string once = dump_json(j);
    CHECK(once == dump_json(j));
    CHECK(once.back() == '\n');
    CHECK(once.find("\"b\"") < once.find("\"a\""));
}

TEST_CASE("rational correlations round trip byte for byte") {
    const auto& p = reference_saturators().front().exact;
    const Json j = correlation_to_json(p);
    CHECK(j["mode"] == "rational");
    const std::string text = dump_json(j);

    const auto parsed = correlation_from_json(Json::parse(text));
    REQUIRE(std::holds_alternative<Correlation<Rational>>(parsed));
    const auto& q = std::get<Correlation<Rational>>(parsed);
    CHECK(q == p);
    CHECK(dump_json(correlation_to_json(q)) == text);
}

TEST_CASE("float correlations round trip within representation") {
    const auto p = correlation_me(qubit_pvms(reference_saturators().front().angles));
    const Json j = correlation_to_json(p);
    CHECK(j["mode"] == "float");
    const auto parsed = correlation_from_json(j);
    REQUIRE(std::holds_alternative<Correlation<double>>(parsed));
    const auto& q = std::get<Correlation<double>>(parsed);
    CHECK(max_entry_distance(p, q) <= 1e-12);
}

TEST_CASE("correlation parsing rejects malformed documents") {
    Json j;
    j["n"] = 1;
    j["m"] = 2;
    j["mode"] = "decimal";
    j["entries"] = Json::array({Json::array({"1/2"}), Json::array({"0"}), Json::array({"0"}),
                                Json::array({"1/2"})});
    CHECK_THROWS_AS(correlation_from_json(j), ParseError);
    j["mode"] = "rational";
    CHECK_NOTHROW(correlation_from_json(j));

    j["entries"][0][0] = 0.5;  // float literal in rational mode
    CHECK_THROWS_AS(correlation_from_json(j), ParseError);

    j["entries"][0][0] = "1/2";
    j["entries"][3][0] = "1/3";  // columns no longer sum to one
    CHECK_THROWS_AS(correlation_from_json(j), ColumnSumViolation);

    Json missing;
    missing["n"] = 1;
    CHECK_THROWS_AS(correlation_from_json(missing), ParseError);

    Json wrong_rows = j;
    wrong_rows["entries"] = Json::array({Json::array({"1"})});
    CHECK_THROWS_AS(correlation_from_json(wrong_rows), ParseError);
}

TEST_CASE("distributions serialize with explicit function tables") {
    FunctionDistribution<Rational> mu{GameShape(3, 2),
                                      {{0, Rational(1, 4)}, {5, Rational(3, 4)}}};
    const Json j = distribution_to_json(mu);
    CHECK(j["n"] == 3);
    REQUIRE(j["weights"].size() == 2);
    CHECK(j["weights"][0]["f"] == Json::array({0, 0, 0}));
    CHECK(j["weights"][1]["f"] == Json::array({1, 0, 1}));  // index 5 = binary 101
    CHECK(j["weights"][1]["w"] == "3/4");
}

TEST_CASE("measurement families round trip through JSON") {
    std::mt19937_64 rng(3);
    const PVMFamily fam = random_pvm_family(3, 2, 3, rng);
    const Json j = pvm_to_json(fam);
    const PVMFamily back = pvm_from_json(j);
    CHECK(back.d == fam.d);
    CHECK(back.n == fam.n);
    CHECK(back.m == fam.m);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 3; ++y)
            CHECK((back.projectors[x][y] - fam.projectors[x][y]).cwiseAbs().maxCoeff() <= 1e-15);

    Json broken = j;
    broken["projectors"][0][0][0][0][0] = 0.7;  // destroys idempotence
    CHECK_THROWS_AS(pvm_from_json(broken), NotIdempotent);
}

TEST_CASE("polytope serializations carry counts and exact coordinates") {
    const auto cl = dd_enumerate(classical_polytope_3_2());
    const Json j = vpolytope_to_json(cl);
    CHECK(j["dim"] == 9);
    CHECK(j["count"] == 8);
    REQUIRE(j["vertices"].size() == 8);
    CHECK(j["vertices"][0].size() == 9);

    const Json h = hpolytope_to_json(sync_ns_polytope_3_2());
    CHECK(h["dim"] == 9);
    CHECK(h["inequalities"].size() == 24);
    CHECK(h["equations"].size() == 0);
}

TEST_CASE("search results serialize their minimizers") {
    const SearchResult res = minimize(BellTarget::J0, 64, 1e-8);
    const Json j = search_result_to_json(res);
    CHECK(j["target"] == "J0");
    CHECK(j["min_value"].get<double>() == doctest::Approx(-0.125).epsilon(1e-8));
    CHECK(j["argmin"].size() == res.argmin.size());
    CHECK(j["distinct_matrices"] == 1);
    CHECK(j["canonical_matrix"]["mode"] == "float");
}

TEST_CASE("file helpers report failures") {
    CHECK_THROWS_AS(read_file("/nonexistent/path/file.json"), ParseError);
}
