#include <unsupported/Eigen/MatrixFunctions>

#include "wqed/dynamics.hpp"

namespace wqed {

Mat propagator(const Mat& h_eff, double t) {
    if (h_eff.rows() != h_eff.cols()) throw std::invalid_argument("H_eff must be square");
    if (!h_eff.allFinite()) throw std::invalid_argument("H_eff has non-finite entries");
    if (!(t >= 0.0)) throw std::invalid_argument("propagation time must be >= 0");
    if (t == 0.0) return Mat::Identity(h_eff.rows(), h_eff.cols());
    Mat a = (-I * t) * h_eff;
    return a.exp();
}

Vec evolve_nonhermitian(const Mat& h_eff, const Vec& psi0, double t) {
    if (psi0.size() != h_eff.rows()) throw std::invalid_argument("state/operator dimension mismatch");
    return propagator(h_eff, t) * psi0;
}

}  // namespace wqed
