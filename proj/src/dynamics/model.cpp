#include <cmath>
#include <stdexcept>

#include "wqed/dynamics.hpp"

namespace wqed {

namespace {

bool finite(const Mat& m) { return m.allFinite(); }

}  // namespace

Mat LindbladModel::h_eff() const {
    Mat h = H;
    for (const auto& j : jumps) h -= 0.5 * I * j.rate * (j.op.adjoint() * j.op);
    for (const auto& l : losses) h -= 0.5 * I * l.rate * l.counting;
    return h;
}

void LindbladModel::validate() const {
    if (H.rows() != H.cols()) throw std::invalid_argument("H must be square");
    if (!finite(H)) throw std::invalid_argument("H has non-finite entries");
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + H.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("H is not Hermitian");
    for (const auto& j : jumps) {
        if (!(j.rate >= 0.0)) throw std::invalid_argument("negative rate on channel " + j.label);
        if (j.op.rows() != H.rows() || j.op.cols() != H.cols())
            throw std::invalid_argument("jump operator shape mismatch on " + j.label);
        if (!finite(j.op)) throw std::invalid_argument("non-finite jump operator " + j.label);
    }
    for (const auto& l : losses) {
        if (!(l.rate >= 0.0)) throw std::invalid_argument("negative rate on loss " + l.label);
        if (l.counting.rows() != H.rows() || l.counting.cols() != H.cols())
            throw std::invalid_argument("loss operator shape mismatch on " + l.label);
        if ((l.counting - l.counting.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("loss operator not Hermitian: " + l.label);
    }
}

double LindbladModel::max_antihermitian_eigenvalue() const {
    Mat h = h_eff();
    Mat a = (h - h.adjoint()) * (-0.5 * I);
    Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

DensityOperator DensityOperator::pure(const Vec& psi, std::size_t n_sinks) {
    return {psi * psi.adjoint(), std::vector<double>(n_sinks, 0.0)};
}

double DensityOperator::trace() const {
    double t = rho.trace().real();
    for (double s : sinks) t += s;
    return t;
}

double DensityOperator::min_eigenvalue() const {
    Mat h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double DensityOperator::hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

double trace_norm_hermitian(const Mat& m) {
    Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    if (a.rho.rows() != b.rho.rows() || a.sinks.size() != b.sinks.size())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    double d = trace_norm_hermitian(a.rho - b.rho);
    for (std::size_t i = 0; i < a.sinks.size(); ++i) d += std::abs(a.sinks[i] - b.sinks[i]);
    return 0.5 * d;
}

}  // namespace wqed
