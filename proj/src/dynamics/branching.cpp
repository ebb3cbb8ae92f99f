#include <Eigen/LU>
#include <unsupported/Eigen/KroneckerProduct>

#include "wqed/dynamics.hpp"

namespace wqed {

Branching relaxation_branching(const LindbladModel& model, const std::vector<Eigen::Index>& block, const Mat& rho0) {
    model.validate();
    const auto nb = static_cast<Eigen::Index>(block.size());
    if (rho0.rows() != nb || rho0.cols() != nb) throw std::invalid_argument("rho0 must live on the block");
    for (auto i : block)
        if (i < 0 || i >= model.dim()) throw std::out_of_range("block index out of range");

    const Mat heff = model.h_eff();
    Mat hb(nb, nb);
    for (Eigen::Index i = 0; i < nb; ++i)
        for (Eigen::Index j = 0; j < nb; ++j) hb(i, j) = heff(block[i], block[j]);

    // A X + X A^dag = -rho0, A = -i H_eff
    const Mat a = -I * hb;
    const Mat id = Mat::Identity(nb, nb);
    Mat m = Eigen::kroneckerProduct(id, a);
    m += Eigen::kroneckerProduct(a.conjugate(), id);
    Vec rhs = -Eigen::Map<const Vec>(rho0.data(), nb * nb);
    Eigen::PartialPivLU<Mat> lu(m);
    Vec x = lu.solve(rhs);

    Branching out;
    out.integrated = Eigen::Map<const Mat>(x.data(), nb, nb);
    const Mat& X = out.integrated;

    auto columns = [&](const Mat& op) {
        Mat c(op.rows(), nb);
        for (Eigen::Index j = 0; j < nb; ++j) c.col(j) = op.col(block[j]);
        return c;
    };
    auto restrict = [&](const Mat& op) {
        Mat r(nb, nb);
        for (Eigen::Index i = 0; i < nb; ++i)
            for (Eigen::Index j = 0; j < nb; ++j) r(i, j) = op(block[i], block[j]);
        return r;
    };
    for (const auto& j : model.jumps) {
        Mat oc = columns(j.op);
        out.probability[j.label] += j.rate * (oc.adjoint() * oc * X).trace().real();
    }
    for (const auto& l : model.losses)
        out.probability[l.label] += l.rate * (restrict(l.counting) * X).trace().real();
    return out;
}

}  // namespace wqed
