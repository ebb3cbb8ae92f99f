#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "wqed/basis.hpp"
#include "wqed/dynamics.hpp"
#include "wqed/protocols.hpp"
#include "wqed/zeno.hpp"

namespace wqed {

namespace {

// int_0^t e^{-r s} ds
double expint(double r, double t) { return r > 0.0 ? -std::expm1(-r * t) / r : t; }

double geometric_sum(double q, long r) {
    if (r < 1) throw ConfigError("repeat_b", "must be >= 1");
    if (q >= 1.0) return static_cast<double>(r);
    return -std::expm1(static_cast<double>(r) * std::log1p(q - 1.0)) / (1.0 - q);
}

}  // namespace

StepB protocol3_step_b_analytic(double t, double gamma_1d, double gamma_star) {
    if (!(t >= 0.0)) throw ConfigError("t", "must be >= 0");
    const double d = std::exp(-gamma_star * t), e = std::exp(-gamma_1d * t);
    return {0.25 * d * (1.0 + e) * (1.0 + e), 0.25 * d * (1.0 - e) * (1.0 - e)};
}

double protocol3_pb_star(double t, double G, double Gs) {
    return 0.25 * Gs * (expint(Gs, t) + 2.0 * expint(Gs + G, t) + expint(Gs + 2.0 * G, t));
}

double protocol3_pb_coll(double t, double G, double Gs) {
    const double i1 = 0.25 * (expint(Gs, t) + 2.0 * expint(Gs + G, t) + expint(Gs + 2.0 * G, t));
    const double i2 = 0.25 * (expint(Gs, t) - 2.0 * expint(Gs + G, t) + expint(Gs + 2.0 * G, t));
    return G * i1 + (G + 0.5 * Gs) * i2;
}

double protocol3_cumulative_pb(double t, double G, double Gs, long repeats) {
    const auto b = protocol3_step_b_analytic(t, G, Gs);
    return b.beta2 * geometric_sum(b.beta1, repeats);
}

double optimal_retry_window(double P1d, double gamma_star) {
    if (!(P1d > 0.0)) throw ConfigError("P1d", "must be > 0");
    const double G = P1d * gamma_star;
    auto f = [&](double t) {
        const auto b = protocol3_step_b_analytic(t, G, gamma_star);
        return -b.beta2 / (1.0 - b.beta1);
    };
    auto r = boost::math::tools::brent_find_minima(f, 1e-3 / G, 10.0 / G, 50);
    return r.first;
}

StepReport protocol3_step(const PhysicalParams& pp, long repeat_b) {
    pp.validate();
    const double P = pp.P1d, G = pp.gamma_1d(), Gs = pp.gamma_star;
    const double N = static_cast<double>(pp.N), Nm = static_cast<double>(pp.N_m());
    const double Tb = pp.window_value();

    const double pa = zeno_success_probability(0, pp.N_m(), P);
    const auto b = protocol3_step_b_analytic(Tb, G, Gs);
    const double geo = geometric_sum(b.beta1, repeat_b);
    const double pb = b.beta2 * geo;

    StepReport r;
    r.p = pa * pb;
    const double pa_star = std::numbers::pi / (2.0 * (Nm + 1.0) * std::sqrt(P));
    const double pb_star = protocol3_pb_star(Tb, G, Gs) * geo;
    const double pb_coll = protocol3_pb_coll(Tb, G, Gs) * geo;
    const double pump = pp.pump_coefficient / (N * P);
    r.eps_closed = pp.alpha_value() / (N * std::sqrt(P));
    r.eps_fail = (pa_star + pb_star + pump) * leaky_overlap_error(pp.N, pp.m);
    r.I_step = r.eps_closed + r.eps_fail / r.p;
    r.channels = {{"p_a", pa},
                  {"p_b", pb},
                  {"beta1", b.beta1},
                  {"p_a_star", pa_star},
                  {"p_b_star", pb_star},
                  {"p_b_coll", pb_coll},
                  {"p_pump_star", pump}};
    return r;
}

namespace {

struct StepBNumeric {
    double beta1, beta2, star, coll, detector_a1, total;
};

StepBNumeric step_b_numeric(const PhysicalParams& pp, double Tb, double tol) {
    const long Nm = pp.N_m();
    EnsembleSpec tgt{Nm, {"g", "e2", "s"}, {}};
    EnsembleSpec det{1, {"s", "e2", "a1"}, {}};
    const BasisState b1{{{Nm - 1, 1, 0}, {1, 0, 0}}};
    const BasisState b2{{{Nm - 1, 0, 1}, {0, 1, 0}}};
    const BasisState gs{{{Nm - 1, 0, 1}, {1, 0, 0}}};
    const BasisState a1{{{Nm - 1, 0, 1}, {0, 0, 1}}};
    HilbertBasis B({tgt, det}, {b1, b2, gs, a1});

    LindbladModel model;
    model.H = Mat::Zero(4, 4);
    model.jumps.push_back(
        {"collective", pp.gamma_1d(), collective(B, 0, "s", "e2") + collective(B, 1, "s", "e2"), ChannelKind::collective});
    model.jumps.push_back({"detector:s", 0.5 * pp.gamma_star, collective(B, 1, "s", "e2"), ChannelKind::free_space});
    model.jumps.push_back({"detector:a1", 0.5 * pp.gamma_star, collective(B, 1, "a1", "e2"), ChannelKind::free_space});
    model.losses.push_back({"target:star", pp.gamma_star, number(B, 0, "e2"), ChannelKind::free_space});

    auto rho = integrate_lindblad(model, DensityOperator::pure(basis_vector(B, b1), 1), Tb, tol);
    auto at = [&](const BasisState& s) {
        auto i = static_cast<Eigen::Index>(B.at(s));
        return rho.rho(i, i).real();
    };
    StepBNumeric o{at(b1), at(b2), rho.sinks[0], at(gs), at(a1), rho.trace()};
    return o;
}

}  // namespace

StepReport protocol3_numeric(const PhysicalParams& pp, long repeat_b, double tol) {
    pp.validate();
    const double P = pp.P1d;
    const double N = static_cast<double>(pp.N);

    // step a on the occupation basis, then relaxation of what is left excited
    auto zp = ZenoParams::optimal(0, pp.N_m(), P, pp.gamma_star);
    auto z = zeno_model(zp, zp.omega, 1);
    auto rho = integrate_lindblad(z.model, DensityOperator::pure(basis_vector(z.basis, z.basis[z.psi1]), 2), zp.T,
                                  tol);
    const auto i1 = static_cast<Eigen::Index>(z.psi1), i2 = static_cast<Eigen::Index>(z.psi2);
    Mat blk(2, 2);
    blk << rho.rho(i1, i1), rho.rho(i1, i2), rho.rho(i2, i1), rho.rho(i2, i2);
    auto z0 = zeno_model(zp, 0.0, 1);
    auto tail = relaxation_branching(z0.model, {i1, i2}, blk);

    const auto i3 = static_cast<Eigen::Index>(z.psi3), ig = static_cast<Eigen::Index>(z.ground);
    const double pa = rho.rho(i3, i3).real();
    const double a_source_star = rho.sinks[0] + tail.probability.at("a:2");
    const double a_target_star = rho.sinks[1] + tail.probability.at("b:2");
    const double a_coll = rho.rho(ig, ig).real() + tail.probability.at("collective");

    const auto b = step_b_numeric(pp, pp.window_value(), tol);
    const double geo = geometric_sum(b.beta1, repeat_b);
    const double left = std::pow(b.beta1, static_cast<double>(repeat_b));
    const double pb = b.beta2 * geo;

    // incoherent repump through the waveguide from the branches left in a1 or s
    const double pump_branch = pp.gamma_star / (pp.gamma_star + static_cast<double>(pp.N_m()) * pp.gamma_1d());
    const double needs_pump = pa * (left + (b.coll + b.detector_a1) * geo);
    const double pump_star = needs_pump * pump_branch;

    StepReport r;
    r.p = pa * pb;
    r.eps_closed = pp.alpha_value() / (N * std::sqrt(P));
    r.eps_fail = (a_target_star + pa * b.star * geo + pump_star) * leaky_overlap_error(pp.N, pp.m);
    r.I_step = r.eps_closed + r.eps_fail / r.p;
    r.channels = {{"p_a", pa},
                  {"p_b", pb},
                  {"beta1", b.beta1},
                  {"p_a_star", a_target_star},
                  {"p_a_source_star", a_source_star},
                  {"p_a_coll", a_coll},
                  {"p_b_star", pa * b.star * geo},
                  {"p_b_coll", pa * b.coll * geo},
                  {"p_b_detector_a1", pa * b.detector_a1 * geo},
                  {"p_b_left", pa * left},
                  {"p_pump_star", pump_star}};
    const double outcomes = r.p + a_source_star + a_target_star + a_coll +
                            pa * (left + (b.star + b.coll + b.detector_a1) * geo);
    r.closure = 1.0 - outcomes;
    return r;
}

}  // namespace wqed
