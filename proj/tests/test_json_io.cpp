#include <doctest.h>

#include "anomalia/json_io.hpp"
#include "anomalia/orbifold.hpp"

#include <json.hpp>

using namespace anomalia;
using json = nlohmann::json;

TEST_CASE("group round trip") {
    FinAbGroup g({9, 3});
    CHECK(group_to_json(g) == R"({"factors":[9,3]})");
    CHECK(group_from_json(group_to_json(g)) == g);
    CHECK(group_from_json(R"({"factors":[]})").order() == 1);
    CHECK_THROWS_AS(group_from_json("{}"), InvalidInputError);
    CHECK_THROWS_AS(group_from_json(R"({"factors":[0]})"), InvalidInputError);
    CHECK_THROWS_AS(group_from_json("not json"), InvalidInputError);
}

TEST_CASE("form round trip") {
    FinAbGroup g({3, 3});
    QuadraticForm f(g, {QmodZ::zero(), QmodZ::zero()},
                    {{QmodZ::zero(), QmodZ(1, 3)}, {QmodZ(1, 3), QmodZ::zero()}});
    const auto text = form_to_json(f);
    CHECK(form_from_json(text) == f);
    const auto j = json::parse(text);
    CHECK(j["q_diag"][0] == "0");
    CHECK(j["pairing"][0][1] == "1/3");

    QuadraticForm d(QuadraticForm::diagonal(FinAbGroup({9}), {QmodZ(4, 9)}));
    CHECK(form_from_json(form_to_json(d)) == d);
    CHECK(json::parse(form_to_json(d))["pairing"][0][0] == "8/9");

    CHECK_THROWS_AS(form_from_json(R"({"group":{"factors":[3]}})"), InvalidInputError);
    // inconsistent pairing diagonal is rejected
    CHECK_THROWS_AS(
        form_from_json(
            R"({"group":{"factors":[9]},"q_diag":["4/9"],"pairing":[["0"]]})"),
        InvalidInputError);
}

TEST_CASE("subgroup round trip") {
    FinAbGroup g({9});
    auto h = Subgroup::generated(g, {{3}});
    CHECK(subgroup_to_json(h) == R"({"generators":[[3]]})");
    CHECK(subgroup_from_json(g, subgroup_to_json(h)) == h);
    CHECK_THROWS_AS(subgroup_from_json(g, R"({"generators":[[9]]})"), InvalidInputError);
}

TEST_CASE("extension round trip") {
    for (const auto& e : {twisted_double_cyclic(4, 3), standard_extension(5),
                          order3_extension(2, -1), order3_extension(3, 1)}) {
        const auto text = extension_to_json(e);
        auto back = extension_from_json(text);
        CHECK(back.metric() == e.metric());
        CHECK(back.iota_generator() == e.iota_generator());
        CHECK(back.lift_of_one() == e.lift_of_one());
        CHECK(back.anomaly_index() == e.anomaly_index());
        CHECK(json::parse(text)["anomaly_index"] == e.anomaly_index());
    }
    CHECK_THROWS_AS(extension_from_json(R"({"metric":{}})"), InvalidInputError);
    // invalid extension data fails validation on parse
    auto bad = json::parse(extension_to_json(standard_extension(3)));
    bad["iota_images"] = json::array({json::array({1, 1})});
    CHECK_THROWS_AS(extension_from_json(bad.dump()), InvalidInputError);
}

TEST_CASE("report serialization shape") {
    auto report = orbifold_report(CentralCharge(8), 3);
    const auto j = json::parse(report_to_json(report));
    CHECK(j["n"] == 3);
    CHECK(j["c"] == 8);
    CHECK(j["k"] == 1);
    CHECK(j["spectrum"] == json::array({"8/9", "2/9", "5/9"}));
    CHECK(j["anomalous"] == true);
    CHECK(j["anomaly_index"] == 2);
    CHECK(j["dual_lagrangian"].is_null());
    CHECK(j["metric_group"]["group"]["factors"].is_array());

    auto clean = orbifold_report(CentralCharge(24), 3);
    const auto j2 = json::parse(report_to_json(clean));
    CHECK(j2["anomalous"] == false);
    CHECK(j2["dual_lagrangian"]["generators"] == json::array({json::array({0, 1})}));
}
