#include "holonomy/groups.hpp"

#include <cmath>

#include "holonomy/errors.hpp"
#include "holonomy/finite_diff.hpp"

namespace holonomy {

namespace {

/// (e^{k t} - 1) / k, stable for small k.
double phi1(double k, double t) {
    if (k == 0.0) return t;
    return std::expm1(k * t) / k;
}

void require_same_dim(const LieGroupModel& G, const Vec& v, const char* what) {
    if (v.size() != G.dim) throw DomainError(std::string(what) + ": dimension mismatch");
}

}  // namespace

Vec group_exp(const LieGroupModel& G, const Vec& A, double t) {
    require_same_dim(G, A, "group_exp");
    if (G.exp) return G.exp(A, t);
    // One-parameter subgroup ODE gdot = dL_g(A), fixed-step RK4.
    int steps = static_cast<int>(std::ceil(256.0 * std::max(1.0, std::abs(t))));
    double h = t / steps;
    auto f = [&](const Vec& g) { return dmul_left(G, g, G.id, A); };
    Vec g = G.id;
    for (int s = 0; s < steps; ++s) {
        Vec k1 = f(g);
        Vec k2 = f(g + 0.5 * h * k1);
        Vec k3 = f(g + 0.5 * h * k2);
        Vec k4 = f(g + h * k3);
        g += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return g;
}

Vec numeric_adj(const LieGroupModel& G, const Vec& g, const Vec& A) {
    require_same_dim(G, g, "numeric_adj");
    require_same_dim(G, A, "numeric_adj");
    double h = fd_step(g);
    auto conj_at = [&](double t) {
        Vec e = group_exp(G, A, t);
        if (!G.chart.contains(e))
            throw BoundaryProximityError("numeric_adj: exp(tA) left the chart");
        Vec ge = G.mul(g, e);
        if (!G.chart.contains(ge))
            throw BoundaryProximityError(
                "numeric_adj: finite-difference point g*exp(tA) left the chart; "
                "g is too close to the chart boundary");
        Vec c = G.mul(ge, G.inv(g));
        if (!G.chart.contains(c))
            throw BoundaryProximityError("numeric_adj: conjugate left the chart");
        return c;
    };
    return (conj_at(h) - conj_at(-h)) / (2.0 * h);
}

Vec numeric_bracket(const LieGroupModel& G, const Vec& A, const Vec& B) {
    require_same_dim(G, A, "numeric_bracket");
    require_same_dim(G, B, "numeric_bracket");
    // Nested differencing is noisier than a single central difference, so a
    // wider step is used when the inner adjoint is itself a finite difference.
    double h = G.adj ? 1e-5 : 1e-4;
    auto adj_exp = [&](double t) {
        Vec e = group_exp(G, A, t);
        return G.adj ? G.adj(e, B) : numeric_adj(G, e, B);
    };
    return (adj_exp(h) - adj_exp(-h)) / (2.0 * h);
}

Vec adjoint(const LieGroupModel& G, const Vec& g, const Vec& A) {
    return G.adj ? G.adj(g, A) : numeric_adj(G, g, A);
}

Vec lie_bracket(const LieGroupModel& G, const Vec& A, const Vec& B) {
    return G.bracket ? G.bracket(A, B) : numeric_bracket(G, A, B);
}

Vec dmul_left(const LieGroupModel& G, const Vec& g, const Vec& h, const Vec& w) {
    if (G.dmul_left) return G.dmul_left(g, h, w);
    double step = fd_step(h);
    return central_diff([&](const Vec& y) { return G.mul(g, y); }, h, w, step);
}

Vec dmul_right(const LieGroupModel& G, const Vec& g, const Vec& h, const Vec& w) {
    if (G.dmul_right) return G.dmul_right(g, h, w);
    double step = fd_step(g);
    return central_diff([&](const Vec& y) { return G.mul(y, h); }, g, w, step);
}

Vec left_translate_from_id(const LieGroupModel& G, const Vec& g, const Vec& w) {
    return dmul_left(G, g, G.id, w);
}

Vec right_translate_from_id(const LieGroupModel& G, const Vec& g, const Vec& w) {
    return dmul_right(G, G.id, g, w);
}

Vec right_translate_to_id(const LieGroupModel& G, const Vec& g, const Vec& w) {
    return dmul_right(G, g, G.inv(g), w);
}

// ---- catalog -------------------------------------------------------------

LieGroupModel additive_group(int n) {
    if (n < 1) throw DomainError("additive_group: n must be >= 1");
    LieGroupModel G;
    G.dim = n;
    G.chart = Box::unbounded(n);
    G.name = "AdditiveR(" + std::to_string(n) + ")";
    G.mul = [](const Vec& a, const Vec& b) -> Vec { return a + b; };
    G.inv = [](const Vec& a) -> Vec { return -a; };
    G.id = Vec::Zero(n);
    G.bracket = [n](const Vec&, const Vec&) -> Vec { return Vec::Zero(n); };
    G.adj = [](const Vec&, const Vec& A) -> Vec { return A; };
    G.exp = [](const Vec& A, double t) -> Vec { return t * A; };
    G.dmul_left = [](const Vec&, const Vec&, const Vec& w) -> Vec { return w; };
    G.dmul_right = [](const Vec&, const Vec&, const Vec& w) -> Vec { return w; };
    return G;
}

LieGroupModel aff1_group() {
    LieGroupModel G;
    G.dim = 2;
    G.chart = Box({Interval{0.0, std::numeric_limits<double>::infinity()}, Interval{}});
    G.name = "Aff1";
    G.mul = [](const Vec& g, const Vec& h) -> Vec {
        return make_vec({g[0] * h[0], g[1] + g[0] * h[1]});
    };
    G.inv = [](const Vec& g) -> Vec { return make_vec({1.0 / g[0], -g[1] / g[0]}); };
    G.id = make_vec({1.0, 0.0});
    G.adj = [](const Vec& g, const Vec& A) -> Vec {
        return make_vec({A[0], g[0] * A[1] - g[1] * A[0]});
    };
    G.bracket = [](const Vec& A, const Vec& B) -> Vec {
        return make_vec({0.0, A[0] * B[1] - A[1] * B[0]});
    };
    G.exp = [](const Vec& A, double t) -> Vec {
        return make_vec({std::exp(t * A[0]), A[1] * phi1(A[0], t)});
    };
    G.dmul_left = [](const Vec& g, const Vec&, const Vec& w) -> Vec {
        return make_vec({g[0] * w[0], g[0] * w[1]});
    };
    G.dmul_right = [](const Vec&, const Vec& h, const Vec& w) -> Vec {
        return make_vec({w[0] * h[0], w[1] + w[0] * h[1]});
    };
    return G;
}

LieGroupModel semidirect_group(double lambda, double mu) {
    LieGroupModel G;
    G.dim = 3;
    G.chart =
        Box({Interval{0.0, std::numeric_limits<double>::infinity()}, Interval{}, Interval{}});
    G.name = "SemidirectRplusR2";
    G.mul = [lambda, mu](const Vec& g, const Vec& h) -> Vec {
        return make_vec({g[0] * h[0], g[1] + std::pow(g[0], lambda) * h[1],
                         g[2] + std::pow(g[0], mu) * h[2]});
    };
    G.inv = [lambda, mu](const Vec& g) -> Vec {
        return make_vec({1.0 / g[0], -g[1] * std::pow(g[0], -lambda),
                         -g[2] * std::pow(g[0], -mu)});
    };
    G.id = make_vec({1.0, 0.0, 0.0});
    G.adj = [lambda, mu](const Vec& g, const Vec& A) -> Vec {
        return make_vec({A[0], std::pow(g[0], lambda) * A[1] - lambda * g[1] * A[0],
                         std::pow(g[0], mu) * A[2] - mu * g[2] * A[0]});
    };
    G.bracket = [lambda, mu](const Vec& A, const Vec& B) -> Vec {
        return make_vec({0.0, lambda * (A[0] * B[1] - A[1] * B[0]),
                         mu * (A[0] * B[2] - A[2] * B[0])});
    };
    G.exp = [lambda, mu](const Vec& A, double t) -> Vec {
        return make_vec({std::exp(t * A[0]), A[1] * phi1(lambda * A[0], t),
                         A[2] * phi1(mu * A[0], t)});
    };
    G.dmul_left = [lambda, mu](const Vec& g, const Vec&, const Vec& w) -> Vec {
        return make_vec({g[0] * w[0], std::pow(g[0], lambda) * w[1],
                         std::pow(g[0], mu) * w[2]});
    };
    G.dmul_right = [lambda, mu](const Vec& g, const Vec& h, const Vec& w) -> Vec {
        return make_vec({w[0] * h[0],
                         w[1] + lambda * std::pow(g[0], lambda - 1.0) * h[1] * w[0],
                         w[2] + mu * std::pow(g[0], mu - 1.0) * h[2] * w[0]});
    };
    return G;
}

LieGroupModel make_group(const GroupCatalogEntry& entry) {
    if (entry.name == "AdditiveR") {
        if (entry.params.size() != 1)
            throw DomainError("make_group: AdditiveR takes one parameter n");
        return additive_group(static_cast<int>(entry.params[0]));
    }
    if (entry.name == "Aff1") {
        if (!entry.params.empty()) throw DomainError("make_group: Aff1 takes no parameters");
        return aff1_group();
    }
    if (entry.name == "SemidirectRplusR2") {
        if (entry.params.size() != 2)
            throw DomainError("make_group: SemidirectRplusR2 takes (lambda, mu)");
        return semidirect_group(entry.params[0], entry.params[1]);
    }
    throw DomainError("make_group: unknown catalog entry '" + entry.name + "'");
}

}  // namespace holonomy
