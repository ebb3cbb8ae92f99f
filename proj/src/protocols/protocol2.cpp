#include <cmath>
#include <numbers>

#include "wqed/protocols.hpp"
#include "wqed/zeno.hpp"

namespace wqed {

StepReport protocol2_step(const PhysicalParams& pp) {
    pp.validate();
    StepReport r;
    const double pa = zeno_success_probability(0, pp.N_m(), pp.P1d);
    const double pb = zeno_success_probability(pp.m, pp.N_d, pp.P1d);
    r.p = pa * pb;
    r.I_step = 0.0;
    r.channels["p_a"] = pa;
    r.channels["p_b"] = pb;

    const auto ja = zeno_jump_probabilities(ZenoParams::optimal(0, pp.N_m(), pp.P1d, pp.gamma_star));
    const auto jb = zeno_jump_probabilities(ZenoParams::optimal(pp.m, pp.N_d, pp.P1d, pp.gamma_star));
    r.channels["a:source_star"] = ja.a();
    r.channels["a:target_star"] = ja.b();
    r.channels["a:collective"] = ja.collective;
    r.channels["b:target_star"] = jb.a();
    r.channels["b:detector_star"] = jb.b();
    r.channels["b:collective"] = jb.collective;
    r.closure = 1.0 - (ja.success + ja.a() + ja.b() + ja.collective);
    return r;
}

AccumulationReport protocol2_accumulate(const PhysicalParams& pp, long m_target) {
    pp.validate();
    if (m_target < 1) throw ConfigError("m_target", "must be >= 1");
    const double pa = zeno_success_probability(0, pp.N, pp.P1d);
    const double p = pa * pa;
    AccumulationReport a;
    for (long j = 1; j <= m_target; ++j) {
        a.p_trace.push_back(p);
        a.R_trace.push_back(std::pow(p, -static_cast<double>(j)));
        a.I_trace.push_back(0.0);
    }
    a.R_m = a.R_trace.back();
    a.I_m = 0.0;
    return a;
}

std::vector<long> fig3_curve(double R_budget, const std::vector<double>& P1d_grid) {
    if (!(R_budget >= 1.0)) throw ConfigError("R", "budget must be >= 1");
    std::vector<long> out;
    for (double P : P1d_grid) {
        if (!(P > 0.0)) throw ConfigError("P1d", "must be > 0");
        const double lp = 2.0 * std::numbers::pi / std::sqrt(P);  // ln(1/p)
        out.push_back(static_cast<long>(std::floor(std::log(R_budget) / lp)));
    }
    return out;
}

}  // namespace wqed
