#include "holonomy/scenario.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <set>

#include "holonomy/errors.hpp"
#include "holonomy/expr.hpp"

namespace holonomy {

namespace {

using nlohmann::json;

const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "." + key, "missing required field");
    return *it;
}

double need_num(const json& j, const std::string& key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_number()) throw SchemaError(path + "." + key, "expected a number");
    return v.get<double>();
}

std::string need_str(const json& j, const std::string& key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_string()) throw SchemaError(path + "." + key, "expected a string");
    return v.get<std::string>();
}

double opt_num(const json& j, const std::string& key, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return j.at(key).get<double>();
}

Vec need_point(const json& j, const std::string& key, const std::string& path, int dim) {
    const json& v = need(j, key, path);
    if (!v.is_array() || (dim >= 0 && static_cast<int>(v.size()) != dim))
        throw SchemaError(path + "." + key,
                          "expected an array of " + std::to_string(dim) + " numbers");
    Vec out(static_cast<int>(v.size()));
    for (int i = 0; i < out.size(); ++i) {
        if (!v[static_cast<size_t>(i)].is_number())
            throw SchemaError(path + "." + key + "[" + std::to_string(i) + "]",
                              "expected a number");
        out[i] = v[static_cast<size_t>(i)].get<double>();
    }
    return out;
}

/// Shared, immutable matrix of parsed expressions; closures capture it.
using ExprMatrix = std::vector<std::vector<Expression>>;

std::shared_ptr<const ExprMatrix> parse_expr_matrix(const json& arr, const std::string& path,
                                                    int cols, int base_dim, int fiber_dim) {
    if (!arr.is_array() || arr.empty()) throw SchemaError(path, "expected a non-empty array");
    ExprMatrix m;
    for (size_t r = 0; r < arr.size(); ++r) {
        const json& row = arr[r];
        std::string rpath = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || (cols >= 0 && static_cast<int>(row.size()) != cols))
            throw SchemaError(rpath, "expected a row of " + std::to_string(cols) + " expressions");
        std::vector<Expression> out_row;
        for (size_t c = 0; c < row.size(); ++c) {
            std::string cpath = rpath + "[" + std::to_string(c) + "]";
            if (!row[c].is_string()) throw SchemaError(cpath, "expected an expression string");
            try {
                out_row.push_back(
                    Expression::parse(row[c].get<std::string>(), base_dim, fiber_dim));
            } catch (const SchemaError& e) {
                throw SchemaError(cpath, e.what());
            }
        }
        m.push_back(std::move(out_row));
    }
    size_t w = m.front().size();
    for (const auto& row : m)
        if (row.size() != w) throw SchemaError(path, "rows have inconsistent lengths");
    return std::make_shared<const ExprMatrix>(std::move(m));
}

std::vector<Expression> parse_expr_list(const json& arr, const std::string& path, int count,
                                        int base_dim, int fiber_dim) {
    if (!arr.is_array() || (count >= 0 && static_cast<int>(arr.size()) != count))
        throw SchemaError(path, "expected an array of " + std::to_string(count) + " expressions");
    std::vector<Expression> out;
    for (size_t i = 0; i < arr.size(); ++i) {
        std::string ipath = path + "[" + std::to_string(i) + "]";
        if (!arr[i].is_string()) throw SchemaError(ipath, "expected an expression string");
        try {
            out.push_back(Expression::parse(arr[i].get<std::string>(), base_dim, fiber_dim));
        } catch (const SchemaError& e) {
            throw SchemaError(ipath, e.what());
        }
    }
    return out;
}

}  // namespace

Scenario Scenario::load_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw SchemaError("scenario", "cannot open file '" + file + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError("scenario", std::string("JSON parse error: ") + e.what());
    }
    return from_json(std::move(j));
}

Scenario Scenario::from_json(json j) {
    if (!j.is_object()) throw SchemaError("scenario", "top level must be an object");
    Scenario s;
    s.doc_ = std::move(j);
    return s;
}

std::optional<AnnulusBase> Scenario::annulus() const {
    const json& b = need(doc_, "base", "scenario");
    if (need_str(b, "type", "base") != "annulus") return std::nullopt;
    AnnulusBase an;
    an.r0 = need_num(b, "r0", "base");
    an.r1 = need_num(b, "r1", "base");
    if (!(0.0 < an.r0 && an.r0 < an.r1)) throw SchemaError("base", "need 0 < r0 < r1");
    return an;
}

BaseChart Scenario::base() const {
    const json& b = need(doc_, "base", "scenario");
    std::string type = need_str(b, "type", "base");
    if (type == "annulus") return annulus()->chart();
    if (type != "box") throw SchemaError("base.type", "expected 'box' or 'annulus'");
    const json& ivs = need(b, "intervals", "base");
    if (!ivs.is_array() || ivs.empty())
        throw SchemaError("base.intervals", "expected a non-empty array of [lo, hi] pairs");
    std::vector<Interval> intervals;
    for (size_t i = 0; i < ivs.size(); ++i) {
        const json& iv = ivs[i];
        std::string path = "base.intervals[" + std::to_string(i) + "]";
        if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
            throw SchemaError(path, "expected [lo, hi]");
        intervals.push_back(Interval{iv[0].get<double>(), iv[1].get<double>()});
        if (!(intervals.back().lo < intervals.back().hi))
            throw SchemaError(path, "need lo < hi");
    }
    return BaseChart{Box(intervals), nullptr};
}

LieGroupModel Scenario::group() const {
    if (!doc_.contains("group")) return additive_group(1);
    const json& g = doc_.at("group");
    std::string name = need_str(g, "name", "group");
    if (name == "AdditiveR") {
        double n = opt_num(g, "n", 1.0);
        if (n < 1 || n != static_cast<int>(n))
            throw SchemaError("group.n", "expected a positive integer");
        return additive_group(static_cast<int>(n));
    }
    if (name == "Aff1") return aff1_group();
    if (name == "SemidirectRplusR2")
        return semidirect_group(need_num(g, "lambda", "group"), need_num(g, "mu", "group"));
    throw SchemaError("group.name", "unknown group '" + name + "'");
}

GroupBundle Scenario::bundle() const {
    std::string type = "trivial";
    if (doc_.contains("bundle")) type = need_str(doc_.at("bundle"), "type", "bundle");
    if (type == "trivial") return trivial_bundle(base(), group());
    if (type == "semidirect_family") {
        BaseChart b = base();
        if (b.dim() != 2)
            throw SchemaError("bundle", "semidirect_family needs a 2-dimensional base");
        return semidirect_family_bundle(b);
    }
    throw SchemaError("bundle.type", "expected 'trivial' or 'semidirect_family'");
}

Connection Scenario::connection(const std::string& key) const {
    const json& c = need(doc_, key, "scenario");
    std::string type = need_str(c, "type", key);

    if (type == "trivial") return trivial_connection(bundle());

    if (type == "exA") {
        GroupBundle b = bundle();
        if (b.base.dim() != 2 || b.fiber_dim != 1)
            throw SchemaError(key, "exA needs a 2-dimensional base and a 1-dimensional fiber");
        Connection conn;
        conn.bundle = std::move(b);
        conn.gamma = [](const Vec& x, const Vec&) -> Mat {
            Mat m(1, 2);
            m << 0.0, x[0];
            return m;
        };
        return conn;
    }

    if (type == "linear") {
        GroupBundle b = bundle();
        if (b.fiber_dim != 1)
            throw SchemaError(key, "linear connections need a 1-dimensional additive fiber");
        auto coeff = parse_expr_list(need(c, "coeff", key), key + ".coeff", b.base.dim(),
                                     b.base.dim(), 0);
        auto shared = std::make_shared<const std::vector<Expression>>(std::move(coeff));
        Connection conn;
        conn.bundle = std::move(b);
        Vec dummy;
        conn.gamma = [shared, dummy](const Vec& x, const Vec& g) -> Mat {
            Mat m(1, static_cast<int>(shared->size()));
            for (size_t k = 0; k < shared->size(); ++k)
                m(0, static_cast<int>(k)) = g[0] * (*shared)[k].eval(x, dummy);
            return m;
        };
        return conn;
    }

    if (type == "expression") {
        GroupBundle b = bundle();
        auto gamma = parse_expr_matrix(need(c, "gamma", key), key + ".gamma", b.base.dim(),
                                       b.base.dim(), b.fiber_dim);
        if (static_cast<int>(gamma->size()) != b.fiber_dim)
            throw SchemaError(key + ".gamma",
                              "expected " + std::to_string(b.fiber_dim) + " rows");
        Connection conn;
        conn.bundle = std::move(b);
        conn.gamma = [gamma](const Vec& x, const Vec& g) -> Mat {
            Mat m(static_cast<int>(gamma->size()), static_cast<int>((*gamma)[0].size()));
            for (int r = 0; r < m.rows(); ++r)
                for (int cc = 0; cc < m.cols(); ++cc)
                    m(r, cc) = (*gamma)[static_cast<size_t>(r)][static_cast<size_t>(cc)].eval(x, g);
            return m;
        };
        return conn;
    }

    if (type == "representation") {
        auto an = annulus();
        if (!an) throw SchemaError(key, "representation connections need an annulus base");
        return build_from_representation(representation(), *an);
    }

    if (type == "principal") return principal_to_connection(principal());
    if (type == "gauge") return induce_gauge_connection(principal());

    throw SchemaError(key + ".type", "unknown connection type '" + type + "'");
}

CocycleForm Scenario::cocycle_form() const {
    const json& c = need(doc_, "cocycle", "scenario");
    GroupBundle b = bundle();
    auto theta = parse_expr_matrix(need(c, "theta", "cocycle"), "cocycle.theta", b.base.dim(),
                                   b.base.dim(), b.fiber_dim);
    if (static_cast<int>(theta->size()) != b.fiber_dim)
        throw SchemaError("cocycle.theta", "expected " + std::to_string(b.fiber_dim) + " rows");
    CocycleForm form;
    form.bundle = std::move(b);
    form.theta = [theta](const Vec& x, const Vec& g) -> Mat {
        Mat m(static_cast<int>(theta->size()), static_cast<int>((*theta)[0].size()));
        for (int r = 0; r < m.rows(); ++r)
            for (int cc = 0; cc < m.cols(); ++cc)
                m(r, cc) = (*theta)[static_cast<size_t>(r)][static_cast<size_t>(cc)].eval(x, g);
        return m;
    };
    return form;
}

PrincipalConnection Scenario::principal() const {
    const json& p = need(doc_, "principal", "scenario");
    PrincipalConnection pc;
    pc.base = base();
    if (p.contains("group")) {
        const json& g = p.at("group");
        std::string name = need_str(g, "name", "principal.group");
        if (name == "AdditiveR")
            pc.group = additive_group(static_cast<int>(opt_num(g, "n", 1.0)));
        else if (name == "Aff1")
            pc.group = aff1_group();
        else if (name == "SemidirectRplusR2")
            pc.group = semidirect_group(need_num(g, "lambda", "principal.group"),
                                        need_num(g, "mu", "principal.group"));
        else
            throw SchemaError("principal.group.name", "unknown group '" + name + "'");
    } else {
        pc.group = group();
    }
    auto coeff = parse_expr_matrix(need(p, "coeff", "principal"), "principal.coeff",
                                   pc.base.dim(), pc.base.dim(), 0);
    if (static_cast<int>(coeff->size()) != pc.group.dim)
        throw SchemaError("principal.coeff",
                          "expected " + std::to_string(pc.group.dim) + " rows");
    Vec dummy;
    pc.coeff = [coeff, dummy](const Vec& x) -> Mat {
        Mat m(static_cast<int>(coeff->size()), static_cast<int>((*coeff)[0].size()));
        for (int r = 0; r < m.rows(); ++r)
            for (int cc = 0; cc < m.cols(); ++cc)
                m(r, cc) = (*coeff)[static_cast<size_t>(r)][static_cast<size_t>(cc)].eval(x, dummy);
        return m;
    };
    return pc;
}

RepresentationSpec Scenario::representation(const std::string& key) const {
    const json& r = need(doc_, key, "scenario");
    RepresentationSpec rep;
    rep.group = group();
    auto flow = parse_expr_list(need(r, "flow", key), key + ".flow", rep.group.dim, 0,
                                rep.group.dim);
    auto shared = std::make_shared<const std::vector<Expression>>(std::move(flow));
    Vec dummy;
    rep.flow_field = [shared, dummy](const Vec& g) -> Vec {
        Vec out(static_cast<int>(shared->size()));
        for (size_t k = 0; k < shared->size(); ++k)
            out[static_cast<int>(k)] = (*shared)[k].eval(dummy, g);
        return out;
    };
    return rep;
}

std::optional<AutomorphismWitness> Scenario::witness() const {
    if (!doc_.contains("witness")) return std::nullopt;
    const json& w = doc_.at("witness");
    RepresentationSpec rep;
    rep.group = group();
    auto flow = parse_expr_list(need(w, "flow", "witness"), "witness.flow", rep.group.dim, 0,
                                rep.group.dim);
    auto shared = std::make_shared<const std::vector<Expression>>(std::move(flow));
    Vec dummy;
    rep.flow_field = [shared, dummy](const Vec& g) -> Vec {
        Vec out(static_cast<int>(shared->size()));
        for (size_t k = 0; k < shared->size(); ++k)
            out[static_cast<int>(k)] = (*shared)[k].eval(dummy, g);
        return out;
    };
    AutomorphismWitness aw;
    aw.fwd = [rep](const Vec& g) { return flow_time(rep, g, 1.0, 4096); };
    aw.inv = [rep](const Vec& g) { return flow_time(rep, g, -1.0, 4096); };
    return aw;
}

namespace {

PathSpec build_path(const Scenario& sc, const json& paths, const std::string& name,
                    std::set<std::string>& visiting, int base_dim);

PathSpec build_path_node(const Scenario& sc, const json& paths, const json& node,
                         const std::string& path, std::set<std::string>& visiting,
                         int base_dim) {
    std::string type = need_str(node, "type", path);
    if (type == "segment")
        return segment_path(need_point(node, "from", path, base_dim),
                            need_point(node, "to", path, base_dim));
    if (type == "constant") return constant_path(need_point(node, "at", path, base_dim));
    if (type == "polyline") {
        const json& pts = need(node, "points", path);
        if (!pts.is_array() || pts.size() < 2)
            throw SchemaError(path + ".points", "expected at least two points");
        std::vector<Vec> out;
        for (size_t i = 0; i < pts.size(); ++i) {
            json holder = json::object();
            holder["p"] = pts[i];
            out.push_back(need_point(holder, "p", path + ".points[" + std::to_string(i) + "]",
                                     base_dim));
        }
        return polyline_path(out);
    }
    if (type == "square_loop") {
        Vec corner = need_point(node, "corner", path, base_dim);
        double side = need_num(node, "side", path);
        std::string orient = node.contains("orientation")
                                 ? node.at("orientation").get<std::string>()
                                 : "ccw";
        if (orient != "ccw" && orient != "cw")
            throw SchemaError(path + ".orientation", "expected 'ccw' or 'cw'");
        int i = static_cast<int>(opt_num(node, "i", 1.0)) - 1;
        int j = static_cast<int>(opt_num(node, "j", 2.0)) - 1;
        return square_loop(corner, side, orient == "ccw", i, j);
    }
    if (type == "circle") {
        Vec center = need_point(node, "center", path, base_dim);
        double r = need_num(node, "radius", path);
        double a0 = opt_num(node, "angle0", 0.0);
        double a1 = opt_num(node, "angle1", 2.0 * M_PI);
        return arc_path(center, r, r, a0, a1);
    }
    if (type == "ellipse") {
        Vec center = need_point(node, "center", path, base_dim);
        return arc_path(center, need_num(node, "ax", path), need_num(node, "ay", path), 0.0,
                        2.0 * M_PI);
    }
    if (type == "concat") {
        const json& of = need(node, "of", path);
        if (!of.is_array() || of.size() < 2)
            throw SchemaError(path + ".of", "expected at least two path names");
        PathSpec acc = build_path(sc, paths, of[0].get<std::string>(), visiting, base_dim);
        for (size_t k = 1; k < of.size(); ++k) {
            PathSpec next = build_path(sc, paths, of[k].get<std::string>(), visiting, base_dim);
            acc = concat(next, acc);  // acc is traversed first
        }
        return acc;
    }
    if (type == "reverse") {
        const json& of = need(node, "of", path);
        if (!of.is_string()) throw SchemaError(path + ".of", "expected a path name");
        return reverse(build_path(sc, paths, of.get<std::string>(), visiting, base_dim));
    }
    throw SchemaError(path + ".type", "unknown path type '" + type + "'");
}

PathSpec build_path(const Scenario& sc, const json& paths, const std::string& name,
                    std::set<std::string>& visiting, int base_dim) {
    if (!paths.contains(name))
        throw SchemaError("paths." + name, "no such path in the scenario");
    if (!visiting.insert(name).second)
        throw SchemaError("paths." + name, "cyclic path definition");
    PathSpec p = build_path_node(sc, paths, paths.at(name), "paths." + name, visiting, base_dim);
    visiting.erase(name);
    return p;
}

}  // namespace

PathSpec Scenario::path(const std::string& name) const {
    const json& paths = need(doc_, "paths", "scenario");
    std::set<std::string> visiting;
    return build_path(*this, paths, name, visiting, base().dim());
}

std::vector<std::string> Scenario::path_names() const {
    std::vector<std::string> out;
    if (!doc_.contains("paths")) return out;
    for (auto it = doc_.at("paths").begin(); it != doc_.at("paths").end(); ++it)
        out.push_back(it.key());
    return out;
}

Box Scenario::cube() const {
    const json& c = need(doc_, "cube", "scenario");
    int dim = base().dim();
    Vec center = need_point(c, "center", "cube", dim);
    double hw = need_num(c, "half_width", "cube");
    if (!(hw > 0.0)) throw SchemaError("cube.half_width", "must be positive");
    std::vector<Interval> ivs;
    for (int i = 0; i < dim; ++i) ivs.push_back(Interval{center[i] - hw, center[i] + hw});
    return Box(ivs);
}

RunParams Scenario::run_params() const {
    RunParams rp;
    if (!doc_.contains("run")) return rp;
    const json& r = doc_.at("run");
    if (r.contains("steps")) {
        double s = r.at("steps").get<double>();
        if (s < 1 || s != static_cast<int>(s))
            throw SchemaError("run.steps", "expected a positive integer");
        rp.steps = static_cast<int>(s);
    }
    if (r.contains("tol")) {
        rp.tol = r.at("tol").get<double>();
        if (!(rp.tol > 0.0)) throw SchemaError("run.tol", "must be positive");
    }
    if (r.contains("seed")) rp.seed = r.at("seed").get<std::uint64_t>();
    return rp;
}

}  // namespace holonomy
