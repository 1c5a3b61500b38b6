/*
   Copyright 2026 The frobsplit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "frobsplit/cli.hpp"

using namespace frobsplit;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("fedder on a supersingular cubic") {
    auto r = run({"fedder", "--p", "2", "--f", "y^2*z + y*z^2 + x^3"});
    REQUIRE(r.code == 0);
    auto j = r.report();
    CHECK(j["schema_version"] == 1);
    CHECK(j["command"] == "fedder");
    const auto& res = j["results"];
    CHECK(res["criterion"] == "cy-coefficient");
    CHECK(res["value"] == 0);
    CHECK(res["fsplit"] == false);
    CHECK(res["oracle"]["points"] == 3);
    CHECK(res["oracle"]["a_p"] == 0);
    CHECK(res["oracle_agrees"] == true);
    CHECK_FALSE(j.contains("timing"));
}

TEST_CASE("fedder on an ordinary cubic") {
    auto j = run({"fedder", "--p", "2", "--f", "y^2*z + x*y*z + x^3 + z^3"}).report();
    CHECK(j["results"]["fsplit"] == true);
    CHECK(j["results"]["oracle_agrees"] == true);
}

TEST_CASE("quadric report") {
    auto r = run({"quadric", "--p", "3", "--n", "2"});
    REQUIRE(r.code == 0);
    const auto res = r.report()["results"];
    CHECK(res["central_binomial"] == 2);
    CHECK(res["coefficient_in_sigma"] == 2);
    CHECK(res["sigma_conditions"]["f_power_divides_sigma"] == true);
    CHECK(res["sigma_conditions"]["coefficient_nonzero"] == true);
    CHECK(res["oracle"]["central_binomial_exact"] == "2");
}

TEST_CASE("height with automatic degree bound") {
    auto r = run({"height", "--p", "2", "--f", "y^2*z + y*z^2 + x^3", "--nmax", "2"});
    REQUIRE(r.code == 0);
    const auto res = r.report()["results"];
    CHECK(res["height"] == 2);
    CHECK(res["degree_bound"] == 4);
    CHECK(res["escalation"].size() == 3);
    CHECK(res["witness_check"]["ok"] == true);
    CHECK(res["oracle_agrees"] == true);
    CHECK(res["witness_generators"].get<int>() > 0);

    auto fixed = run({"height", "--p", "2", "--f", "y^2*z + x*y*z + x^3 + z^3", "--degree-bound", "3"});
    REQUIRE(fixed.code == 0);
    CHECK(fixed.report()["results"]["height"] == 1);
}

TEST_CASE("forms subcommands") {
    auto c = run({"cartier-check", "--p", "2", "--vars", "x,y", "--deg", "4"});
    REQUIRE(c.code == 0);
    CHECK(c.report()["results"]["ok"] == true);

    auto d = run({"decompose", "--p", "2", "--vars", "x", "--lift", "g1=x^2", "--deg", "8"});
    REQUIRE(d.code == 0);
    CHECK(d.report()["results"]["ok"] == true);
    CHECK(d.report()["inputs"]["lift_corrections"][0] == "x^2");

    auto w = run({"witt-basechange", "--p", "2", "--n", "2", "--vars", "x", "--deg", "6"});
    REQUIRE(w.code == 0);
    CHECK(w.report()["results"]["ok"] == true);
    CHECK(w.report()["results"]["basis_cardinality"] == 4);
}

TEST_CASE("qrsp demo certificate") {
    auto r = run({"qrsp-demo", "--p", "2", "--gens", "x", "--levels", "3"});
    REQUIRE(r.code == 0);
    const auto res = r.report()["results"];
    CHECK(res["levels"].size() == 4);
    for (const auto& lv : res["levels"]) CHECK(lv["bijective"] == true);
    CHECK(res["certificate"]["filtered_bijection"] == true);
    CHECK(res["filtration_generators"] == json::array({2, 4, 6, 8}));

    auto two = run({"qrsp-demo", "--p", "2", "--gens", "x,y", "--levels", "2"});
    REQUIRE(two.code == 0);
    CHECK(two.report()["results"]["ok"] == true);
}

TEST_CASE("reports are byte-identical across runs") {
    const std::vector<std::string> args{"qrsp-demo", "--p", "3", "--gens", "x", "--levels", "2", "--seed", "5"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> h{"height", "--p", "3", "--f", "y^2*z - x^3 + x*z^2", "--degree-bound", "3"};
    CHECK(run(h).out == run(h).out);
}

TEST_CASE("timing only on request") {
    auto j = run({"quadric", "--p", "5", "--n", "3", "--timing"}).report();
    CHECK(j.contains("timing"));
    CHECK(j["timing"]["seconds"].get<double>() >= 0);
}

TEST_CASE("errors and exit codes") {
    auto parse = run({"fedder", "--p", "2", "--f", "x^^2 + y"});
    CHECK(parse.code == kExitInput);
    CHECK(parse.out.empty());
    CHECK(parse.err.find("input error") != std::string::npos);

    auto prime = run({"quadric", "--p", "4", "--n", "2"});
    CHECK(prime.code == kExitInput);

    CHECK(run({"no-such-command"}).code == kExitInput);
    CHECK(run({}).code == kExitInput);
    CHECK(run({"fedder", "--p", "2"}).code == kExitInput);

    auto bound = run({"height", "--p", "2", "--f", "y^2*z + y*z^2 + x^3", "--degree-bound", "1"});
    CHECK(bound.code == kExitVerification);
    CHECK(bound.err.find("bound exceeded") != std::string::npos);

    auto singular = run({"height", "--p", "3", "--f", "y^2*z - x^3"});
    CHECK(singular.code == kExitInput);

    auto cap = run({"qrsp-demo", "--p", "2", "--gens", "x", "--levels", "4"});
    CHECK(cap.code == kExitVerification);

    CHECK(run({"qrsp-demo", "--p", "2", "--gens", "w", "--vars", "x"}).code == kExitInput);
    CHECK(run({"decompose", "--p", "2", "--lift", "h1=x"}).code == kExitInput);
    CHECK(run({"--help"}).code == kExitOk);
}
