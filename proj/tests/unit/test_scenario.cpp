#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "holonomy/errors.hpp"
#include "holonomy/groupconn.hpp"
#include "holonomy/moduli.hpp"
#include "holonomy/scenario.hpp"
#include "holonomy/transport.hpp"
#include "test_helpers.hpp"

using namespace holonomy;
using nlohmann::json;
using holab_test::v1;
using holab_test::v2;

namespace {

json base_box() {
    return json::parse(R"({"type": "box", "intervals": [[-4, 4], [-4, 4]]})");
}

}  // namespace

TEST_CASE("box base and defaults") {
    json j;
    j["base"] = base_box();
    Scenario sc = Scenario::from_json(j);
    BaseChart b = sc.base();
    CHECK(b.dim() == 2);
    CHECK(b.contains(v2(3.9, -3.9)));
    CHECK_FALSE(b.contains(v2(4.1, 0.0)));
    CHECK_FALSE(sc.annulus().has_value());
    // Defaults: additive line group, trivial bundle, standard run params.
    CHECK(sc.group().dim == 1);
    CHECK(sc.bundle().fiber_dim == 1);
    RunParams rp = sc.run_params();
    CHECK(rp.steps == 10000);
    CHECK(rp.tol == 1e-6);
    CHECK(rp.seed == 42);
}

TEST_CASE("annulus base") {
    json j;
    j["base"] = {{"type", "annulus"}, {"r0", 0.5}, {"r1", 2.5}};
    Scenario sc = Scenario::from_json(j);
    auto an = sc.annulus();
    REQUIRE(an.has_value());
    CHECK(an->r0 == 0.5);
    CHECK(sc.base().contains(v2(1.0, 0.0)));
    CHECK_FALSE(sc.base().contains(v2(0.1, 0.0)));
}

TEST_CASE("group selection") {
    json j;
    j["base"] = base_box();
    j["group"] = {{"name", "Aff1"}};
    CHECK(Scenario::from_json(j).group().dim == 2);
    j["group"] = {{"name", "AdditiveR"}, {"n", 3}};
    CHECK(Scenario::from_json(j).group().dim == 3);
    j["group"] = {{"name", "SemidirectRplusR2"}, {"lambda", 0.5}, {"mu", 0.25}};
    LieGroupModel S = Scenario::from_json(j).group();
    CHECK(S.dim == 3);
    j["group"] = {{"name", "Nope"}};
    CHECK_THROWS_AS(Scenario::from_json(j).group(), SchemaError);
}

TEST_CASE("area-rule connection evaluates and transports") {
    json j;
    j["base"] = base_box();
    j["connection"] = {{"type", "exA"}};
    j["paths"]["unit_square"] = {{"type", "square_loop"},
                                 {"corner", {0.0, 0.0}},
                                 {"side", 1.0}};
    Scenario sc = Scenario::from_json(j);
    Connection c = sc.connection();
    Mat m = c.gamma(v2(1.5, 0.0), v1(0.0));
    CHECK(m(0, 0) == 0.0);
    CHECK(m(0, 1) == doctest::Approx(1.5));
    HolonomyMap h = holonomy::holonomy(c, sc.path("unit_square"), sc.run_params().steps);
    CHECK(h.transport(v1(0.0))[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("linear and expression connections agree when they encode the same rule") {
    json j;
    j["base"] = base_box();
    j["connection"] = {{"type", "linear"}, {"coeff", {"0.3*x2", "-0.2"}}};
    j["connection2"]["type"] = "expression";
    j["connection2"]["gamma"] =
        json::array({json::array({"g1*0.3*x2", "g1*(-0.2)"})});
    Scenario sc = Scenario::from_json(j);
    Connection a = sc.connection();
    Connection b = sc.connection("connection2");
    for (double xx : {-1.0, 0.4, 2.0}) {
        Vec x = v2(xx, 0.7 * xx + 0.1);
        Vec g = v1(1.3);
        Mat gap = a.gamma(x, g) - b.gamma(x, g);
        CHECK(gap.cwiseAbs().maxCoeff() < 1e-15);
    }
    CHECK(check_group_connection(a, 50).pass);
}

TEST_CASE("semidirect family bundle from a scenario") {
    json j;
    j["base"] = json::parse(R"({"type": "box", "intervals": [[0.25, 2], [0.1, 1.5]]})");
    j["bundle"] = {{"type", "semidirect_family"}};
    j["connection"] = {{"type", "trivial"}};
    Scenario sc = Scenario::from_json(j);
    Connection c = sc.connection();
    CHECK(c.fiber_dim() == 3);
    CHECK_FALSE(check_group_connection(c, 40).pass);
}

TEST_CASE("cocycle form from expressions") {
    json j;
    j["base"] = base_box();
    j["group"] = {{"name", "Aff1"}};
    j["cocycle"]["theta"] = json::array(
        {json::array({"0", "0"}), json::array({"g2*x2", "g2*0.5"})});
    Scenario sc = Scenario::from_json(j);
    CocycleForm form = sc.cocycle_form();
    CHECK(check_cocycle(form).pass);
    Mat m = form.theta(v2(0.0, 1.0), v2(2.0, 3.0));
    CHECK(m(1, 0) == doctest::Approx(3.0));
}

TEST_CASE("principal and representation blocks") {
    json j;
    j["base"] = base_box();
    j["principal"]["group"] = {{"name", "Aff1"}};
    j["principal"]["coeff"] =
        json::array({json::array({"0", "x1"}), json::array({"0", "0"})});
    j["connection"] = {{"type", "principal"}};
    Scenario sc = Scenario::from_json(j);
    PrincipalConnection pc = sc.principal();
    CHECK(pc.group.dim == 2);
    CHECK(pc.coeff(v2(0.7, 0.0))(0, 1) == doctest::Approx(0.7));
    CHECK(sc.connection().fiber_dim() == 2);

    json r;
    r["base"] = {{"type", "annulus"}, {"r0", 0.5}, {"r1", 2.5}};
    r["group"] = {{"name", "AdditiveR"}, {"n", 1}};
    r["representation"] = {{"flow", {"g1*0.6931471805599453"}}};
    r["connection"] = {{"type", "representation"}};
    Scenario rs = Scenario::from_json(r);
    RepresentationSpec rep = rs.representation();
    CHECK(rep.flow_field(v1(2.0))[0] == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    Connection c = rs.connection();
    AutomorphismEstimate est = monodromy(c, *rs.annulus(), 4000);
    CHECK(sup_norm(est.map(v1(1.0)) - v1(2.0)) < 1e-8);
}

TEST_CASE("witness flows forward and backward") {
    json j;
    j["base"] = base_box();
    j["group"] = {{"name", "AdditiveR"}, {"n", 1}};
    j["witness"] = {{"flow", {"g1*1.6094379124341003"}}};  // scale by 5
    Scenario sc = Scenario::from_json(j);
    auto w = sc.witness();
    REQUIRE(w.has_value());
    CHECK(w->fwd(v1(1.0))[0] == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(w->inv(v1(5.0))[0] == doctest::Approx(1.0).epsilon(1e-10));
    json none;
    none["base"] = base_box();
    CHECK_FALSE(Scenario::from_json(none).witness().has_value());
}

TEST_CASE("path library: primitives, concatenation, reversal, cycles") {
    json j;
    j["base"] = base_box();
    j["paths"] = {
        {"right", {{"type", "segment"}, {"from", {0.0, 0.0}}, {"to", {1.0, 0.0}}}},
        {"up", {{"type", "segment"}, {"from", {1.0, 0.0}}, {"to", {1.0, 1.0}}}},
        {"corner", {{"type", "concat"}, {"of", {"right", "up"}}}},
        {"back", {{"type", "reverse"}, {"of", "corner"}}},
        {"circle", {{"type", "circle"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
        {"oval", {{"type", "ellipse"}, {"center", {0.0, 0.0}}, {"ax", 1.2}, {"ay", 0.8}}},
        {"still", {{"type", "constant"}, {"at", {0.3, 0.4}}}},
        {"loopy", {{"type", "concat"}, {"of", {"loopy", "right"}}}},
    };
    Scenario sc = Scenario::from_json(j);
    PathSpec corner = sc.path("corner");
    CHECK(sup_norm(corner.at(0.25) - v2(0.5, 0.0)) < 1e-15);
    CHECK(sup_norm(corner.at(0.75) - v2(1.0, 0.5)) < 1e-15);
    PathSpec back = sc.path("back");
    CHECK(sup_norm(back.at(0.0) - v2(1.0, 1.0)) < 1e-15);
    CHECK(sup_norm(back.at(1.0) - v2(0.0, 0.0)) < 1e-15);
    CHECK(sc.path("circle").is_closed());
    CHECK(sup_norm(sc.path("oval").at(0.0) - v2(1.2, 0.0)) < 1e-12);
    CHECK(sup_norm(sc.path("still").at(0.5) - v2(0.3, 0.4)) < 1e-15);
    CHECK_THROWS_AS(sc.path("loopy"), SchemaError);
    CHECK_THROWS_AS(sc.path("missing"), SchemaError);
    CHECK(sc.path_names().size() == 8);
}

TEST_CASE("cube block") {
    json j;
    j["base"] = base_box();
    j["cube"] = {{"center", {0.2, -0.3}}, {"half_width", 0.5}};
    Box cube = Scenario::from_json(j).cube();
    CHECK(cube[0].lo == doctest::Approx(-0.3));
    CHECK(cube[0].hi == doctest::Approx(0.7));
    CHECK(cube[1].lo == doctest::Approx(-0.8));
    j["cube"]["half_width"] = -1.0;
    CHECK_THROWS_AS(Scenario::from_json(j).cube(), SchemaError);
}

TEST_CASE("schema errors carry dotted field paths") {
    auto field_of = [](auto&& fn) -> std::string {
        try {
            fn();
        } catch (const SchemaError& e) {
            return e.field_path();
        }
        return "";
    };
    json j;  // no base at all
    j["connection"] = {{"type", "exA"}};
    CHECK(field_of([&] { Scenario::from_json(j).base(); }) == "scenario.base");

    json bad_iv;
    bad_iv["base"] = json::parse(R"({"type": "box", "intervals": [[1, -1]]})");
    CHECK(field_of([&] { Scenario::from_json(bad_iv).base(); }) == "base.intervals[0]");

    json bad_expr;
    bad_expr["base"] = base_box();
    bad_expr["connection"] = {{"type", "linear"}, {"coeff", {"x1", "x9"}}};
    std::string path = field_of([&] { Scenario::from_json(bad_expr).connection(); });
    CHECK(path == "connection.coeff[1]");

    json bad_run;
    bad_run["base"] = base_box();
    bad_run["run"] = {{"steps", 0}};
    CHECK(field_of([&] { Scenario::from_json(bad_run).run_params(); }) == "run.steps");
}

TEST_CASE("run parameter overrides") {
    json j;
    j["base"] = base_box();
    j["run"] = {{"steps", 2500}, {"tol", 1e-8}, {"seed", 7}};
    RunParams rp = Scenario::from_json(j).run_params();
    CHECK(rp.steps == 2500);
    CHECK(rp.tol == 1e-8);
    CHECK(rp.seed == 7);
}

TEST_CASE("file loading reports unreadable and malformed input") {
    CHECK_THROWS_AS(Scenario::load_file("/nonexistent/path.json"), SchemaError);
}
