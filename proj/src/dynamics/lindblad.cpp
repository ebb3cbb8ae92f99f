#include "ode.hpp"
#include "rhs.hpp"
#include "wqed/dynamics.hpp"
#include "wqed/kernels.hpp"

namespace wqed {

namespace detail {

LindbladRhs::LindbladRhs(const LindbladModel& m) : d(m.dim()), heff(m.h_eff()) {
    for (const auto& j : m.jumps)
        if (j.rate > 0.0) jumps.push_back({j.rate, j.op});
    for (const auto& l : m.losses) losses.push_back({l.rate, l.counting.transpose()});
    t1.resize(d, d);
    t2.resize(d, d);
}

void LindbladRhs::apply(const cplx* rho, cplx* drho, cplx* dsinks, bool recycle) const {
    const auto n = static_cast<std::size_t>(d);
    const auto nn = n * n;
    cplx* a = t1.data();
    kernels::cgemm_nn(n, heff.data(), rho, a);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const cplx aij = -I * a[i + j * n];
            const cplx aji = -I * a[j + i * n];
            drho[i + j * n] = aij + std::conj(aji);
        }
    }
    if (recycle) {
        cplx* b = t2.data();
        for (const auto& [rate, op] : jumps) {
            kernels::cgemm_nn(n, op.data(), rho, a);
            kernels::cgemm_nc(n, a, op.data(), b);
            kernels::caxpy(nn, rate, b, drho);
        }
    }
    for (std::size_t l = 0; l < losses.size(); ++l) {
        const auto& [rate, kt] = losses[l];
        cplx acc = 0.0;
        for (std::size_t i = 0; i < nn; ++i) acc += kt.data()[i] * rho[i];
        dsinks[l] = rate * acc;
    }
}

}  // namespace detail

DensityOperator integrate_lindblad(const LindbladModel& model, const DensityOperator& rho0, double t, double tol) {
    return integrate_lindblad(std::vector<Segment>{{model, t}}, rho0, tol);
}

DensityOperator integrate_lindblad(const std::vector<Segment>& schedule, const DensityOperator& rho0, double tol) {
    if (schedule.empty()) return rho0;
    const Eigen::Index d = rho0.rho.rows();
    const std::size_t nl = schedule.front().model.losses.size();
    std::vector<double> sinks = rho0.sinks;
    if (sinks.empty()) sinks.assign(nl, 0.0);
    if (sinks.size() != nl) throw std::invalid_argument("sink count does not match loss channels");

    Vec y(d * d + static_cast<Eigen::Index>(nl));
    Eigen::Map<Mat>(y.data(), d, d) = rho0.rho;
    for (std::size_t l = 0; l < nl; ++l) y(d * d + static_cast<Eigen::Index>(l)) = sinks[l];

    OdeOptions opt{tol, tol};
    for (const auto& seg : schedule) {
        seg.model.validate();
        if (seg.model.dim() != d) throw std::invalid_argument("schedule dimension mismatch");
        if (seg.model.losses.size() != nl) throw std::invalid_argument("schedule loss channels mismatch");
        if (!(seg.duration >= 0.0)) throw std::invalid_argument("segment duration must be >= 0");
        detail::LindbladRhs rhs(seg.model);
        auto f = [&](double, const Vec& yy, Vec& dy) {
            rhs.apply(yy.data(), dy.data(), dy.data() + d * d, true);
        };
        detail::dopri5(f, y, 0.0, seg.duration, opt);
    }

    DensityOperator out;
    out.rho = Eigen::Map<const Mat>(y.data(), d, d);
    out.sinks.resize(nl);
    for (std::size_t l = 0; l < nl; ++l) out.sinks[l] = y(d * d + static_cast<Eigen::Index>(l)).real();
    return out;
}

}  // namespace wqed
