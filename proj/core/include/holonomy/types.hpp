#pragma once

#include <Eigen/Dense>

namespace holonomy {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Sup norm used for all reported residuals.
inline double sup_norm(const Vec& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

inline Vec make_vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

}  // namespace holonomy
