#include <algorithm>
#include <cmath>

#include "wqed/basis.hpp"
#include "wqed/dynamics.hpp"
#include "wqed/merging.hpp"
#include "wqed/protocols.hpp"

namespace wqed {

namespace {

int count_token(const std::string& label, const std::string& tok) {
    int n = 0;
    std::size_t pos = 0;
    while (pos <= label.size()) {
        auto next = label.find('>', pos);
        if (next == std::string::npos) next = label.size();
        if (label.compare(pos, next - pos, tok) == 0) ++n;
        pos = next + 1;
    }
    return n;
}

}  // namespace

StepReport protocol1_step(const PhysicalParams& pp) {
    pp.validate();
    const double x2 = pp.x * pp.x, P = pp.P1d, eta = pp.eta;
    const double Nm = static_cast<double>(pp.N_m());
    StepReport r;
    const double p_coll = x2 / (1.0 + 1.0 / P);
    const double p_star = x2 / (P + 1.0);
    const double p_pump = (1.0 - eta) * x2 / (Nm * P);
    r.p = eta * x2 * (1.0 - 1.0 / P);
    r.eps_double = x2 * (1.0 - eta);
    r.eps_fail = (p_pump + p_star) * leaky_overlap_error(pp.N, pp.m);
    r.I_step = r.p > 0.0 ? r.eps_fail / r.p + r.eps_double : 0.0;
    r.channels = {{"p_coll", p_coll}, {"p_star", p_star}, {"p_pump_star", p_pump}};
    return r;
}

StepReport protocol1_numeric(const PhysicalParams& pp, double horizon) {
    pp.validate();
    const long Nm = pp.N_m();
    EnsembleSpec ens{Nm, {"g", "e", "s"}, {}};
    HilbertBasis b = build_basis({ens}, 2);

    const Mat seg = collective(b, 0, "e", "g");
    const double theta = pp.x / std::sqrt(static_cast<double>(Nm));
    // instantaneous weak drive
    const Mat u = propagator(theta * (seg + seg.adjoint()), 1.0);
    const Vec psi0 = u * basis_vector(b, BasisState{{{Nm, 0, 0}}});

    LindbladModel model;
    model.H = Mat::Zero(static_cast<Eigen::Index>(b.dim()), static_cast<Eigen::Index>(b.dim()));
    model.jumps.push_back({"coll", pp.gamma_1d(), collective(b, 0, "s", "e"), ChannelKind::collective});
    model.losses.push_back({"star", pp.gamma_star, number(b, 0, "e"), ChannelKind::free_space});

    auto probs = jump_series_probabilities(model, psi0, horizon / pp.gamma_star, 2);

    double p_herald = 0, p_coll = 0, p_star = 0, wrong = 0, total = 0;
    for (const auto& [label, pr] : probs) {
        total += pr;
        const int nc = count_token(label, "coll");
        const bool lost = count_token(label, "star") > 0;
        const double h = 1.0 - std::pow(1.0 - pp.eta, nc);
        p_herald += pr * h;
        if (nc >= 1) p_coll += pr;
        if (lost) p_star += pr;
        if (nc >= 2 || (nc >= 1 && lost)) wrong += pr * h;
    }
    const double branch = pp.gamma_star / (pp.gamma_star + static_cast<double>(Nm) * pp.gamma_1d());
    const double p_pump = (1.0 - pp.eta) * p_coll * branch;

    StepReport r;
    r.p = p_herald;
    r.eps_double = p_herald > 0 ? wrong / p_herald : 0.0;
    r.eps_fail = (p_pump + p_star) * leaky_overlap_error(pp.N, pp.m);
    r.I_step = p_herald > 0 ? r.eps_fail / p_herald + r.eps_double : 0.0;
    r.closure = 1.0 - total;
    r.channels = {{"p_coll", p_coll}, {"p_star", p_star}, {"p_pump_star", p_pump}};
    for (const auto& [label, pr] : probs) r.channels["seq:" + label] = pr;
    return r;
}

AccumulationReport protocol1_accumulate(const PhysicalParams& pp, long m_target, bool same_level) {
    pp.validate();
    if (m_target < 1) throw ConfigError("m_target", "must be >= 1");
    AccumulationReport a;
    const double x2 = pp.x * pp.x;
    if (same_level) {
        double logR = 0.0;
        for (long j = 0; j < m_target; ++j) {
            const double pj = pp.eta * x2 * (1.0 - 1.0 / (static_cast<double>(j + 1) * pp.P1d));
            if (!(pj > 0.0)) throw ConfigError("P1d", "heralding probability is not positive");
            logR -= std::log(pj);
            a.p_trace.push_back(pj);
            a.R_trace.push_back(std::exp(logR));
            a.I_trace.push_back(static_cast<double>(j + 1) * (1.0 - pp.eta) * x2);
        }
    } else {
        double I = 0.0;
        for (long j = 0; j < m_target; ++j) {
            PhysicalParams q = pp;
            q.m = std::min(j, pp.N - 1);
            const auto s = protocol1_step(q);
            I += s.I_step;
            a.p_trace.push_back(s.p);
            a.R_trace.push_back(one_by_one_Rm(j + 1, s.p));
            a.I_trace.push_back(I);
        }
    }
    a.R_m = a.R_trace.back();
    a.I_m = a.I_trace.back();
    return a;
}

}  // namespace wqed
