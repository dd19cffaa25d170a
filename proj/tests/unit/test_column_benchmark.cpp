/*
 * Copyright 2026 The rbdo-ouq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>

#include "ouq/column_benchmark.hpp"
#include "ouq/response.hpp"

using namespace ouq;
using namespace ouq::column;

TEST_CASE("section properties") {
    CHECK(section_properties(SectionGeometry::square(324.6)).A == doctest::Approx(12984.0).epsilon(1e-15));
    CHECK(section_properties(SectionGeometry::square(329.6)).A == doctest::Approx(13184.0).epsilon(1e-15));
    CHECK(section_properties(SectionGeometry::square(100.0)).A == 4000.0);
    CHECK(section_properties(SectionGeometry::square(350.0)).A == 14000.0);

    // Independent arbitrary-precision transcription.
    const auto p = section_properties(SectionGeometry::square(324.6));
    CHECK(p.W == doctest::Approx(526992.46666666666667).epsilon(1e-14));
    CHECK(p.I == doctest::Approx(85530877.34).epsilon(1e-14));
    CHECK(buckling_load(SectionGeometry::square(324.6), 210000.0) ==
          doctest::Approx(3151515.4474492195525).epsilon(1e-14));
}

TEST_CASE("limit state") {
    const auto geom = SectionGeometry::square(324.6);
    CHECK(limit_state(geom, {200e3, 300e3, 60.0, 400.0, 210000.0}) ==
          doctest::Approx(0.73457371821966930589).epsilon(1e-13));

    // Without imperfection only the squash term remains.
    const ColumnState straight{100e3, 50e3, 0.0, 400.0, 210000.0};
    CHECK(limit_state(geom, straight) == doctest::Approx(1.0 - 150e3 / (400.0 * 12984.0)).epsilon(1e-14));

    // Approaching the buckling load from below drives g to minus infinity.
    const double pb = buckling_load(geom, 210000.0);
    double previous = limit_state(geom, {0.9 * pb, 0.0, 10.0, 400.0, 210000.0});
    for (double frac : {0.99, 0.999, 0.9999}) {
        const double g = limit_state(geom, {frac * pb, 0.0, 10.0, 400.0, 210000.0});
        CHECK(g < previous);
        previous = g;
    }
    CHECK(previous < -100.0);
    CHECK(limit_state(geom, {pb, 0.0, 10.0, 400.0, 210000.0}) == kBuckledLimitState);
    CHECK(limit_state(geom, {pb, 1e3, 10.0, 400.0, 210000.0}) == kBuckledLimitState);
}

TEST_CASE("property: limit state monotonicity below the pole") {
    const auto geom = SectionGeometry::square(300.0);
    const double h = 1e-3;
    for (double pp : {100e3, 150e3, 200e3})
        for (double pe : {50e3, 250e3, 600e3})
            for (double d0 : {0.0, 30.0, 60.0})
                for (double y0 : {300.0, 400.0, 500.0}) {
                    const ColumnState s{pp, pe, d0, y0, 210000.0};
                    const double g = limit_state(geom, s);
                    auto with = [&](auto edit) {
                        ColumnState t = s;
                        edit(t);
                        return limit_state(geom, t);
                    };
                    REQUIRE(with([&](ColumnState& t) { t.P_p += 1.0; }) < g);
                    REQUIRE(with([&](ColumnState& t) { t.P_e += 1.0; }) < g);
                    REQUIRE(with([&](ColumnState& t) { t.delta_0 += h; }) <= g);
                    REQUIRE(with([&](ColumnState& t) { t.y0 += h; }) > g);
                }
}

TEST_CASE("registered responses") {
    auto& reg = ResponseRegistry::global();
    REQUIRE(reg.contains("column_buckling"));
    REQUIRE(reg.contains("column_area"));
    const std::vector<std::string> names{"E", "y0", "delta_0", "P_e", "P_p"};
    const auto g = reg.bind({"column_buckling", {{"b", 324.6}}}, names);
    const std::vector<double> z{210000.0, 400.0, 60.0, 300e3, 200e3};
    CHECK(g(z) == doctest::Approx(0.73457371821966930589).epsilon(1e-13));
    const auto area = reg.bind({"column_area", {{"b", 324.6}, {"t_b", 15.0}, {"t_h", 10.0}}}, {});
    CHECK(area({}) == doctest::Approx(12984.0));
}

TEST_CASE("scenarios") {
    const auto g = scenario(ScenarioKind::ouq_g);
    CHECK(g.p_adm == 1.3e-6);
    const auto* y0 = g.reliability.find("y0");
    REQUIRE(y0);
    REQUIRE(y0->distribution);
    CHECK(y0->distribution->family == Family::lognormal);
    CHECK(y0->distribution->find("mean")->value == 400.0);
    CHECK(y0->distribution->find("sd")->value == 32.0);
    const auto* pe = g.reliability.find("P_e");
    CHECK(pe->distribution->family == Family::gumbel);
    CHECK(pe->distribution->find("location")->reference == "a_e");
    CHECK(pe->distribution->find("scale")->reference == "b_e");
    CHECK(g.reliability.find("a_e")->moments.size() == 1);
    CHECK(g.reliability.find("delta_0")->range == Range{0.0, 60.0});
    CHECK(g.reliability.find("P_p")->range == Range{100e3, 200e3});

    for (auto kind : {ScenarioKind::ouq_e_range_100_500, ScenarioKind::ouq_e_range_0_1000}) {
        const auto e = scenario(kind);
        const auto* load = e.reliability.find("P_e");
        CHECK(load->epistemic());
        CHECK(load->moments.size() == 3);
        CHECK(load->moments[1].lower == doctest::Approx(2251.91e6));
        CHECK(load->moments[2].upper == doctest::Approx(974204e9));
        CHECK(validate(e).empty());
    }
    CHECK(scenario(ScenarioKind::ouq_e_range_100_500).reliability.find("P_e")->range == Range{100e3, 500e3});
    CHECK(scenario(ScenarioKind::ouq_e_range_0_1000).reliability.find("P_e")->range == Range{0.0, 1000e3});
    CHECK(validate(g).empty());
}
