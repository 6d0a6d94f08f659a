// holonomy-lab: scenario-driven command line for connections on group
// bundles -- horizontal lifts, holonomy, curvature, group-connection gates,
// cocycle calculus, trivializations, gauge comparisons and annulus
// monodromy.  Reports are deterministic JSON (or CSV) with 17-significant-
// digit numbers; exit code 0 = PASS, 2 = FAIL or numerical error, 1 =
// usage or schema error.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holonomy/curvature.hpp"
#include "holonomy/errors.hpp"
#include "holonomy/gauge.hpp"
#include "holonomy/groupconn.hpp"
#include "holonomy/groups.hpp"
#include "holonomy/moduli.hpp"
#include "holonomy/report.hpp"
#include "holonomy/rng.hpp"
#include "holonomy/scenario.hpp"
#include "holonomy/transport.hpp"

namespace {

using namespace holonomy;

struct SubOpts {
    std::string scenario;
    int steps = -1;        // -1: use the scenario's run block (default 10000)
    double tol = -1.0;     // -1: use the scenario's run block (default 1e-6)
    long long seed = -1;   // -1: use the scenario's run block (default 42)
    std::string format = "json";
    std::string output;

    std::string loop = "loop";
    std::vector<double> g0, x, g;
    int i = 1, j = 2;  // 1-based direction indices
    int samples = -1;
    double eps0 = 0.04;
};

void add_common(CLI::App* sub, SubOpts& o) {
    sub->add_option("--scenario", o.scenario, "scenario file (JSON)")->required();
    sub->add_option("--steps", o.steps, "integrator steps (default: scenario, then 10000)");
    sub->add_option("--tol", o.tol, "verdict tolerance (default: scenario, then 1e-6)");
    sub->add_option("--seed", o.seed, "sample seed (default: scenario, then 42)");
    sub->add_option("--format", o.format, "report format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", o.output, "write the report here instead of stdout");
}

RunParams resolve_params(const Scenario& sc, const SubOpts& o) {
    RunParams rp = sc.run_params();
    if (o.steps > 0) rp.steps = o.steps;
    if (o.tol > 0) rp.tol = o.tol;
    if (o.seed >= 0) rp.seed = static_cast<std::uint64_t>(o.seed);
    return rp;
}

Vec to_vec(const std::vector<double>& xs) {
    Vec v(static_cast<int>(xs.size()));
    for (size_t k = 0; k < xs.size(); ++k) v[static_cast<int>(k)] = xs[k];
    return v;
}

Vec default_fiber_point(const Connection& conn, const Vec& x) {
    if (conn.bundle.has_group_law()) return conn.bundle.id(x);
    return Vec::Zero(conn.fiber_dim());
}

json common_header(const char* command, const SubOpts& o, const RunParams& rp) {
    json doc;
    doc["command"] = command;
    doc["scenario"] = o.scenario;
    doc["steps"] = rp.steps;
    doc["tol"] = rp.tol;
    doc["seed"] = rp.seed;
    return doc;
}

std::vector<std::string> axis_names(const char* prefix, int n) {
    std::vector<std::string> out;
    for (int k = 1; k <= n; ++k) out.push_back(prefix + std::to_string(k));
    return out;
}

void set_verdict(json& doc, const char* token, bool pass) {
    doc["verdict"] = pass ? "PASS" : "FAIL";
    std::fprintf(stderr, "%s: %s\n", token, pass ? "PASS" : "FAIL");
}

/// Writes the rendered report and maps the verdict to the exit code.
int emit(const json& doc, const SubOpts& o) {
    std::string text = o.format == "csv" ? render_csv(doc) : render_json(doc);
    if (o.output.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream out(o.output, std::ios::binary);
        if (!out) throw Error("cannot open output file '" + o.output + "'");
        out << text;
    }
    if (doc.contains("verdict") && doc["verdict"] == "FAIL") return 2;
    return 0;
}

// ---- subcommands ---------------------------------------------------------

int run_lift(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    Connection conn = sc.connection();
    PathSpec path = sc.path(o.loop);
    Vec g0 = o.g0.empty() ? default_fiber_point(conn, path.start()) : to_vec(o.g0);

    LiftedCurve lift = lift_path(conn, path, g0, rp.steps);
    json doc = common_header("lift", o, rp);
    doc["loop"] = o.loop;
    doc["g0"] = vec_to_json(g0);
    doc["base_start"] = vec_to_json(lift.base.front());
    doc["base_end"] = vec_to_json(lift.base.back());
    doc["endpoint"] = vec_to_json(lift.endpoint());
    doc["doubling_delta"] = endpoint_doubling_delta(conn, path, g0, rp.steps);

    // Down-sampled trajectory (at most 11 rows, endpoints always included).
    json columns = json::array();
    columns.push_back("t");
    for (const auto& n : axis_names("x", conn.base_dim())) columns.push_back(n);
    for (const auto& n : axis_names("g", conn.fiber_dim())) columns.push_back(n);
    json rows = json::array();
    size_t n = lift.t.size();
    size_t stride = n > 11 ? (n - 1) / 10 : 1;
    for (size_t k = 0; k < n; k += stride) {
        size_t at = k;
        if (k + stride >= n) at = n - 1;  // land exactly on the endpoint
        json row = json::array();
        row.push_back(lift.t[at]);
        for (int c = 0; c < lift.base[at].size(); ++c) row.push_back(lift.base[at][c]);
        for (int c = 0; c < lift.fiber[at].size(); ++c) row.push_back(lift.fiber[at][c]);
        rows.push_back(row);
        if (at == n - 1) break;
    }
    doc["table"] = {{"columns", columns}, {"rows", rows}};
    return emit(doc, o);
}

int run_holonomy(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    Connection conn = sc.connection();
    PathSpec path = sc.path(o.loop);
    Vec g0 = o.g0.empty() ? default_fiber_point(conn, path.start()) : to_vec(o.g0);

    HolonomyMap h = holonomy::holonomy(conn, path, rp.steps);
    Vec end = h.transport(g0);
    json doc = common_header("holonomy", o, rp);
    doc["loop"] = o.loop;
    doc["closed"] = path.is_closed(1e-9);
    doc["g0"] = vec_to_json(g0);
    doc["endpoint"] = vec_to_json(end);
    doc["displacement"] = vec_to_json(Vec(end - g0));
    doc["source"] = vec_to_json(h.source);
    doc["target"] = vec_to_json(h.target);
    doc["doubling_delta"] = endpoint_doubling_delta(conn, path, g0, rp.steps);
    return emit(doc, o);
}

int run_curvature(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    Connection conn = sc.connection();
    int i = o.i - 1, j = o.j - 1;

    json doc = common_header("curvature", o, rp);
    doc["i"] = o.i;
    doc["j"] = o.j;
    if (!o.x.empty()) {
        Vec x = to_vec(o.x);
        Vec g = o.g.empty() ? default_fiber_point(conn, x) : to_vec(o.g);
        Vec value = curvature(conn, x, i, j, g);
        doc["x"] = vec_to_json(x);
        doc["g"] = vec_to_json(g);
        doc["value"] = vec_to_json(value);
        doc["sup"] = sup_norm(value);
        return emit(doc, o);
    }

    int samples = o.samples > 0 ? o.samples : 5;
    SampleRng rng(rp.seed);
    json columns = json::array();
    for (const auto& nm : axis_names("x", conn.base_dim())) columns.push_back(nm);
    for (const auto& nm : axis_names("g", conn.fiber_dim())) columns.push_back(nm);
    columns.push_back("sup");
    json rows = json::array();
    double max_sup = 0.0;
    for (int k = 0; k < samples; ++k) {
        Vec x = sample_chart_point(rng, conn.bundle.base);
        Vec g = rng.point_in(conn.bundle.fiber_chart);
        double s = sup_norm(curvature(conn, x, i, j, g));
        max_sup = std::max(max_sup, s);
        json row = json::array();
        for (int c = 0; c < x.size(); ++c) row.push_back(x[c]);
        for (int c = 0; c < g.size(); ++c) row.push_back(g[c]);
        row.push_back(s);
        rows.push_back(row);
    }
    doc["samples"] = samples;
    doc["max_sup"] = max_sup;
    doc["table"] = {{"columns", columns}, {"rows", rows}};
    return emit(doc, o);
}

int run_as_slope(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    Connection conn = sc.connection();
    if (o.x.empty()) throw SchemaError("flags.x", "as-slope needs --x");
    Vec x = to_vec(o.x);
    Vec g = o.g.empty() ? default_fiber_point(conn, x) : to_vec(o.g);
    int i = o.i - 1, j = o.j - 1;

    SlopeFit fit = ambrose_singer_slope(conn, x, i, j, g, default_eps_list(o.eps0), rp.steps);
    Vec twice = 2.0 * curvature(conn, x, i, j, g);
    double gap = sup_norm(Vec(fit.estimate - twice));
    // The slope comparison has its own default tolerance (1e-4): the
    // extrapolation error dominates the gate tolerances used elsewhere.
    double tol = o.tol > 0 ? o.tol : 1e-4;

    json doc = common_header("as-slope", o, rp);
    doc["tol"] = tol;
    doc["x"] = vec_to_json(x);
    doc["g"] = vec_to_json(g);
    doc["i"] = o.i;
    doc["j"] = o.j;
    doc["estimate"] = vec_to_json(fit.estimate);
    doc["two_curvature"] = vec_to_json(twice);
    doc["gap"] = gap;
    doc["residual"] = fit.residual;
    doc["monotone"] = fit.monotone;
    doc["eps"] = json::array();
    for (double e : fit.eps) doc["eps"].push_back(e);
    doc["deviation"] = json::array();
    for (const Vec& d : fit.deviation) doc["deviation"].push_back(vec_to_json(d));
    set_verdict(doc, "AS_SLOPE", gap < tol);
    return emit(doc, o);
}

json residual_sample_json(const ResidualSample& s) {
    json out;
    out["x"] = vec_to_json(s.x);
    out["g"] = vec_to_json(s.g);
    if (s.h.size() > 0) out["h"] = vec_to_json(s.h);
    out["v"] = vec_to_json(s.v);
    out["kind"] = s.kind;
    out["residual"] = s.residual;
    return out;
}

int run_check_group(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    Connection conn = sc.connection();
    int samples = o.samples > 0 ? o.samples : 200;

    GroupConnectionReport rep = check_group_connection(conn, samples, rp.seed, rp.tol);
    json doc = common_header("check-group", o, rp);
    doc["samples"] = rep.samples;
    doc["max_residual"] = rep.max_residual;
    doc["worst"] = residual_sample_json(rep.worst);
    json columns = json::array({"index", "kind", "residual"});
    json rows = json::array();
    for (size_t k = 0; k < rep.rows.size() && k < 20; ++k) {
        rows.push_back(json::array(
            {static_cast<int>(k), rep.rows[k].kind, rep.rows[k].residual}));
    }
    doc["table"] = {{"columns", columns}, {"rows", rows}};
    set_verdict(doc, "GROUP_CONNECTION", rep.pass);
    return emit(doc, o);
}

int run_cocycle(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    CocycleForm form = sc.cocycle_form();
    int samples = o.samples > 0 ? o.samples : 200;

    CocycleReport rep = check_cocycle(form, samples, rp.seed, rp.tol);
    json doc = common_header("cocycle", o, rp);
    doc["samples"] = rep.samples;
    doc["max_residual"] = rep.max_residual;
    set_verdict(doc, "COCYCLE", rep.pass);
    return emit(doc, o);
}

int run_difference(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    Connection a = sc.connection("connection");
    Connection b = sc.connection("connection2");

    CocycleForm theta = connection_difference(a, b, 200, rp.seed, rp.tol);
    CocycleReport rep = check_cocycle(theta, 100, rp.seed, rp.tol);

    json doc = common_header("difference", o, rp);
    doc["cocycle_max_residual"] = rep.max_residual;
    SampleRng rng(rp.seed);
    json rows = json::array();
    json columns = json::array();
    for (const auto& nm : axis_names("x", a.base_dim())) columns.push_back(nm);
    for (const auto& nm : axis_names("g", a.fiber_dim())) columns.push_back(nm);
    for (int r = 1; r <= a.fiber_dim(); ++r)
        for (int c = 1; c <= a.base_dim(); ++c)
            columns.push_back("theta" + std::to_string(r) + std::to_string(c));
    for (int k = 0; k < 10; ++k) {
        Vec x = sample_chart_point(rng, a.bundle.base);
        Vec g = rng.point_in(a.bundle.fiber_chart);
        Mat th = theta.theta(x, g);
        json row = json::array();
        for (int c = 0; c < x.size(); ++c) row.push_back(x[c]);
        for (int c = 0; c < g.size(); ++c) row.push_back(g[c]);
        for (int r = 0; r < th.rows(); ++r)
            for (int c = 0; c < th.cols(); ++c) row.push_back(th(r, c));
        rows.push_back(row);
    }
    doc["table"] = {{"columns", columns}, {"rows", rows}};
    set_verdict(doc, "DIFFERENCE", rep.pass);
    return emit(doc, o);
}

int run_add_cocycle(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    Connection conn = sc.connection();
    CocycleForm form = sc.cocycle_form();

    Connection shifted = add_cocycle(conn, form);
    GroupConnectionReport gate = check_group_connection(shifted, 200, rp.seed, rp.tol);

    json doc = common_header("add-cocycle", o, rp);
    doc["max_residual"] = gate.max_residual;
    SampleRng rng(rp.seed);
    json columns = json::array();
    for (const auto& nm : axis_names("x", conn.base_dim())) columns.push_back(nm);
    for (const auto& nm : axis_names("g", conn.fiber_dim())) columns.push_back(nm);
    for (int r = 1; r <= conn.fiber_dim(); ++r)
        for (int c = 1; c <= conn.base_dim(); ++c)
            columns.push_back("gamma" + std::to_string(r) + std::to_string(c));
    json rows = json::array();
    for (int k = 0; k < 10; ++k) {
        Vec x = sample_chart_point(rng, conn.bundle.base);
        Vec g = rng.point_in(conn.bundle.fiber_chart);
        Mat m = shifted.gamma(x, g);
        json row = json::array();
        for (int c = 0; c < x.size(); ++c) row.push_back(x[c]);
        for (int c = 0; c < g.size(); ++c) row.push_back(g[c]);
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    doc["table"] = {{"columns", columns}, {"rows", rows}};
    set_verdict(doc, "ADD_COCYCLE", gate.pass);
    return emit(doc, o);
}

int run_trivialize(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    Connection conn = sc.connection();
    Box cube = sc.cube();

    TrivializationMap tm = flow_trivialization(conn, cube, rp.steps);
    SampleRng rng(rp.seed);
    double max_roundtrip = 0.0, max_hom = 0.0;
    json columns = json::array();
    for (const auto& nm : axis_names("x", conn.base_dim())) columns.push_back(nm);
    for (const auto& nm : axis_names("g", conn.fiber_dim())) columns.push_back(nm);
    for (const auto& nm : axis_names("psi", conn.fiber_dim())) columns.push_back(nm);
    columns.push_back("roundtrip_error");
    json rows = json::array();
    for (int k = 0; k < 10; ++k) {
        Vec x = rng.point_in(tm.cube);
        Vec g = rng.point_in(conn.bundle.fiber_chart);
        Vec at_anchor = tm.to_anchor(x, g);
        double rt = sup_norm(Vec(tm.from_anchor(x, at_anchor) - g));
        max_roundtrip = std::max(max_roundtrip, rt);
        if (conn.bundle.has_group_law()) {
            Vec h = rng.point_in(conn.bundle.fiber_chart);
            Vec lhs = tm.to_anchor(x, conn.bundle.mul(x, g, h));
            Vec rhs = conn.bundle.mul(tm.anchor, at_anchor, tm.to_anchor(x, h));
            max_hom = std::max(max_hom, sup_norm(Vec(lhs - rhs)));
        }
        json row = json::array();
        for (int c = 0; c < x.size(); ++c) row.push_back(x[c]);
        for (int c = 0; c < g.size(); ++c) row.push_back(g[c]);
        for (int c = 0; c < at_anchor.size(); ++c) row.push_back(at_anchor[c]);
        row.push_back(rt);
        rows.push_back(row);
    }
    json doc = common_header("trivialize", o, rp);
    doc["anchor"] = vec_to_json(tm.anchor);
    doc["max_roundtrip_error"] = max_roundtrip;
    doc["max_homomorphism_error"] = max_hom;
    doc["table"] = {{"columns", columns}, {"rows", rows}};
    set_verdict(doc, "TRIVIALIZE", max_roundtrip < rp.tol && max_hom < rp.tol);
    return emit(doc, o);
}

int run_gauge(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    PrincipalConnection pc = sc.principal();
    PathSpec loop = sc.path(o.loop);

    double equiv = right_equivariance_residual(pc, loop, rp.steps, 10, rp.seed);
    // The curvature comparison carries an extra finite-difference layer, so
    // its tolerance is one decade looser than the transport tolerance.
    double curv_tol = 10.0 * rp.tol;
    SampleRng rng(rp.seed);
    double curv_gap = 0.0;
    for (int k = 0; k < 5; ++k) {
        Vec x = sample_chart_point(rng, pc.base);
        Vec g = rng.point_in(pc.group.chart);
        curv_gap = std::max(curv_gap, compare_curvatures(pc, x, 0, 1, g));
    }
    json doc = common_header("gauge", o, rp);
    doc["loop"] = o.loop;
    doc["equivariance_residual"] = equiv;
    doc["curvature_gap"] = curv_gap;
    doc["curvature_tol"] = curv_tol;
    set_verdict(doc, "GAUGE", equiv < rp.tol && curv_gap < curv_tol);
    return emit(doc, o);
}

int run_compare_hol(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    PrincipalConnection pc = sc.principal();
    PathSpec loop = sc.path(o.loop);

    double gap = compare_holonomies(pc, loop, rp.steps, 20, rp.seed);
    Connection frame = principal_to_connection(pc);
    Vec k = lift_path(frame, loop, pc.group.id, rp.steps).endpoint();

    json doc = common_header("compare-hol", o, rp);
    doc["loop"] = o.loop;
    doc["frame_holonomy"] = vec_to_json(k);
    doc["max_gap"] = gap;
    set_verdict(doc, "COMPARE_HOL", gap < rp.tol);
    return emit(doc, o);
}

int run_monodromy(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    auto an = sc.annulus();
    if (!an) throw SchemaError("base.type", "monodromy needs an annulus base");
    Connection conn = sc.connection();

    AutomorphismEstimate est = monodromy(conn, *an, rp.steps, rp.seed);
    json doc = common_header("monodromy", o, rp);
    doc["id_residual"] = est.id_residual;
    doc["hom_residual"] = est.hom_residual;
    doc["condition_number"] = est.condition_number;
    doc["homotopy_discrepancy"] = est.homotopy_discrepancy;
    doc["d_id"] = mat_to_json(est.d_id);
    json columns = json::array();
    for (const auto& nm : axis_names("g", conn.fiber_dim())) columns.push_back(nm);
    for (const auto& nm : axis_names("image", conn.fiber_dim())) columns.push_back(nm);
    json rows = json::array();
    for (const Vec& g : est.grid) {
        Vec img = est.map(g);
        json row = json::array();
        for (int c = 0; c < g.size(); ++c) row.push_back(g[c]);
        for (int c = 0; c < img.size(); ++c) row.push_back(img[c]);
        rows.push_back(row);
    }
    doc["table"] = {{"columns", columns}, {"rows", rows}};
    set_verdict(doc, "MONODROMY", est.id_residual < rp.tol && est.hom_residual < rp.tol);
    return emit(doc, o);
}

int run_roundtrip(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    auto an = sc.annulus();
    if (!an) throw SchemaError("base.type", "roundtrip needs an annulus base");
    RepresentationSpec rep = sc.representation();

    double worst = roundtrip_check(rep, *an, rp.steps, rp.seed);
    json doc = common_header("roundtrip", o, rp);
    doc["max_gap"] = worst;
    set_verdict(doc, "ROUNDTRIP", worst < rp.tol);
    return emit(doc, o);
}

int run_compare_aut(const SubOpts& o) {
    Scenario sc = Scenario::load_file(o.scenario);
    RunParams rp = resolve_params(sc, o);
    auto an = sc.annulus();
    if (!an) throw SchemaError("base.type", "compare-aut needs an annulus base");
    RepresentationSpec rep1 = sc.representation("representation");
    RepresentationSpec rep2 = sc.representation("representation2");
    std::optional<AutomorphismWitness> witness = sc.witness();

    AutomorphismEstimate a = monodromy(build_from_representation(rep1, *an), *an, rp.steps,
                                       rp.seed);
    AutomorphismEstimate b = monodromy(build_from_representation(rep2, *an), *an, rp.steps,
                                       rp.seed);
    double gap = compare_automorphisms(a, b, witness);

    json doc = common_header("compare-aut", o, rp);
    doc["witness"] = witness.has_value();
    doc["max_gap"] = gap;
    set_verdict(doc, "COMPARE_AUT", gap < rp.tol);
    return emit(doc, o);
}

int guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const SchemaError& e) {
        std::fprintf(stderr, "schema error at %s: %s\n", e.field_path().c_str(), e.what());
        return 1;
    } catch (const ChartEscapeError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        std::fprintf(stderr, "t_escape: %s\n", format_double(e.escape_parameter()).c_str());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"holonomy-lab: transport, holonomy and monodromy on group bundles"};
    app.require_subcommand(1);

    struct Entry {
        const char* name;
        const char* help;
        int (*fn)(const SubOpts&);
        bool loop_flag = false;
        bool g0_flag = false;
        bool point_flags = false;
        bool samples_flag = false;
        bool eps_flag = false;
    };
    const std::vector<Entry> entries = {
        {"lift", "horizontal lift of a path; reports the endpoint and a trajectory table",
         run_lift, true, true},
        {"holonomy", "fiber transport along a (closed) path", run_holonomy, true, true},
        {"curvature", "curvature values at a point or on seeded samples", run_curvature,
         false, false, true, true},
        {"as-slope", "shrinking commutator-loop derivative vs twice the curvature",
         run_as_slope, false, false, true, false, true},
        {"check-group", "group-connection residual gate on seeded samples", run_check_group,
         false, false, false, true},
        {"cocycle", "twisted-additivity gate for a cocycle form", run_cocycle, false, false,
         false, true},
        {"difference", "difference of two group connections as a cocycle form",
         run_difference},
        {"add-cocycle", "shift a group connection by a cocycle form", run_add_cocycle},
        {"trivialize", "flow trivialization over a scenario cube", run_trivialize},
        {"gauge", "induced gauge-bundle connection checks", run_gauge, true},
        {"compare-hol", "gauge holonomy vs conjugation by the frame holonomy",
         run_compare_hol, true},
        {"monodromy", "monodromy of a flat connection over the annulus", run_monodromy},
        {"roundtrip", "representation -> connection -> monodromy round trip", run_roundtrip},
        {"compare-aut", "compare two monodromy automorphisms (optional witness)",
         run_compare_aut},
    };

    std::vector<std::pair<CLI::App*, const Entry*>> subs;
    std::vector<SubOpts> opts(entries.size());
    for (size_t k = 0; k < entries.size(); ++k) {
        const Entry& e = entries[k];
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, opts[k]);
        if (e.loop_flag)
            sub->add_option("--loop,--path", opts[k].loop, "named path from the scenario");
        if (e.g0_flag)
            sub->add_option("--g0", opts[k].g0, "start fiber point (defaults to the identity)");
        if (e.point_flags) {
            sub->add_option("--x", opts[k].x, "base point");
            sub->add_option("--g", opts[k].g, "fiber point (defaults to the identity)");
            sub->add_option("--i", opts[k].i, "first direction index (1-based)");
            sub->add_option("--j", opts[k].j, "second direction index (1-based)");
        }
        if (e.samples_flag) sub->add_option("--samples", opts[k].samples, "sample count");
        if (e.eps_flag)
            sub->add_option("--eps0", opts[k].eps0, "largest loop area in the ladder");
        subs.emplace_back(sub, &e);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors -> 1, help/version -> 0
    }

    for (size_t k = 0; k < subs.size(); ++k) {
        if (subs[k].first->parsed()) {
            const SubOpts& o = opts[k];
            auto fn = subs[k].second->fn;
            return guarded([&] { return fn(o); });
        }
    }
    std::fprintf(stderr, "no subcommand selected\n");
    return 1;
}
