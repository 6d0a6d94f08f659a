#include "holonomy/curvature.hpp"

#include <cmath>

#include "holonomy/errors.hpp"
#include "holonomy/finite_diff.hpp"
#include "holonomy/transport.hpp"

namespace holonomy {

Vec curvature(const Connection& conn, const Vec& x, int i, int j, const Vec& g) {
    int m = conn.base_dim();
    int n = conn.fiber_dim();
    if (i < 0 || i >= m || j < 0 || j >= m)
        throw DomainError("curvature: direction index out of range");
    if (!conn.bundle.base.contains(x)) throw DomainError("curvature: x outside base chart");
    if (!conn.bundle.fiber_chart.contains(g))
        throw DomainError("curvature: g outside fiber chart");

    auto Gamma = [&](const Vec& xx, const Vec& gg, int k) -> Vec {
        return conn.gamma(xx, gg).col(k);
    };

    double hx = fd_step(x);
    Vec ei = Vec::Zero(m), ej = Vec::Zero(m);
    ei[i] = 1.0;
    ej[j] = 1.0;
    Vec dxi_Gj = central_diff([&](const Vec& xx) { return Gamma(xx, g, j); }, x, ei, hx);
    Vec dxj_Gi = central_diff([&](const Vec& xx) { return Gamma(xx, g, i); }, x, ej, hx);

    double hg = fd_step(g);
    Mat Dg_Gj = central_jacobian([&](const Vec& gg) { return Gamma(x, gg, j); }, g, n, hg);
    Mat Dg_Gi = central_jacobian([&](const Vec& gg) { return Gamma(x, gg, i); }, g, n, hg);

    Vec Gi = Gamma(x, g, i);
    Vec Gj = Gamma(x, g, j);
    return 0.5 * (dxi_Gj - dxj_Gi + Dg_Gj * Gi - Dg_Gi * Gj);
}

PathSpec commutator_loop(const BaseChart& base, const Vec& x, int i, int j, double eps) {
    if (eps <= 0.0) throw GeometryError("commutator_loop: eps must be positive");
    int m = base.dim();
    if (i < 0 || i >= m || j < 0 || j >= m || i == j)
        throw GeometryError("commutator_loop: bad direction pair");
    double r = std::sqrt(eps);
    Vec ei = Vec::Zero(m), ej = Vec::Zero(m);
    ei[i] = r;
    ej[j] = r;
    std::vector<Vec> pts = {x, x + ei, x + ei + ej, x + ej, x};
    for (const Vec& p : pts)
        if (!base.contains(p))
            throw GeometryError("commutator_loop: square of side sqrt(eps) leaves the base chart");
    return polyline_path(pts);
}

std::vector<double> default_eps_list(double eps0) {
    return {eps0, eps0 / 2.0, eps0 / 4.0, eps0 / 8.0};
}

SlopeFit ambrose_singer_slope(const Connection& conn, const Vec& x, int i, int j, const Vec& g,
                              const std::vector<double>& eps_list, int steps) {
    if (eps_list.size() < 2)
        throw DomainError("ambrose_singer_slope: need at least two eps values");
    for (size_t k = 1; k < eps_list.size(); ++k)
        if (std::abs(eps_list[k] - 0.5 * eps_list[k - 1]) > 1e-12 * eps_list[0])
            throw DomainError("ambrose_singer_slope: eps ladder must halve at each step");

    SlopeFit fit;
    fit.eps = eps_list;
    std::vector<Vec> slopes;
    for (double eps : eps_list) {
        PathSpec loop = commutator_loop(conn.bundle.base, x, i, j, eps);
        Vec end = lift_path(conn, loop, g, steps).endpoint();
        fit.deviation.push_back(end - g);
        slopes.push_back(fit.deviation.back() / eps);
    }

    // Richardson table for an error expansion in powers of eps on a halving
    // ladder: T[k][c] = (2^c T[k][c-1] - T[k-1][c-1]) / (2^c - 1).
    std::vector<std::vector<Vec>> T(slopes.size());
    for (size_t k = 0; k < slopes.size(); ++k) {
        T[k].resize(k + 1);
        T[k][0] = slopes[k];
        for (size_t c = 1; c <= k; ++c) {
            double w = std::pow(2.0, static_cast<double>(c));
            T[k][c] = (w * T[k][c - 1] - T[k - 1][c - 1]) / (w - 1.0);
        }
    }
    size_t last = slopes.size() - 1;
    fit.estimate = T[last][last];
    fit.residual = sup_norm(T[last][last] - T[last][last - 1]);

    double prev = sup_norm(slopes[0] - fit.estimate);
    for (size_t k = 1; k < slopes.size(); ++k) {
        double cur = sup_norm(slopes[k] - fit.estimate);
        if (cur > prev * (1.0 + 1e-9) && cur > 1e-13) fit.monotone = false;
        prev = cur;
    }
    return fit;
}

}  // namespace holonomy
