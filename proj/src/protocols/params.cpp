#include <cmath>

#include "wqed/protocols.hpp"

namespace wqed {

double PhysicalParams::alpha_value() const { return alpha < 0.0 ? 1.0 / std::sqrt(P1d) : alpha; }

double PhysicalParams::window_value() const { return window > 0.0 ? window : 1.0 / gamma_1d(); }

void PhysicalParams::validate() const {
    if (N < 1) throw ConfigError("N", "must be >= 1");
    if (N_d < 1) throw ConfigError("N_d", "must be >= 1");
    if (m < 0) throw ConfigError("m", "must be >= 0");
    if (m >= N) throw ConfigError("m", "must be < N");
    if (!(P1d > 0.0) || !std::isfinite(P1d)) throw ConfigError("P1d", "must be > 0");
    if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("eta", "must lie in [0,1]");
    if (!(x > 0.0 && x <= 0.3)) throw ConfigError("x", "must lie in (0, 0.3]");
    if (!(gamma_star > 0.0)) throw ConfigError("gamma_star", "must be > 0");
    if (!(pump_coefficient >= 0.0)) throw ConfigError("pump_coefficient", "must be >= 0");
    if (!std::isfinite(alpha)) throw ConfigError("alpha", "must be finite");
    if (!(window >= 0.0)) throw ConfigError("window", "must be >= 0");
}

std::vector<std::string> PhysicalParams::warnings() const {
    std::vector<std::string> w;
    if (x > 0.1) w.push_back("x > 0.1: weak-drive expansion loses accuracy");
    if (N_m() < 10) w.push_back("N - m < 10: large-N approximations are poor");
    return w;
}

std::vector<std::pair<std::string, double>> StepReport::fields() const {
    std::vector<std::pair<std::string, double>> f{{"p", p},
                                                  {"eps_double", eps_double},
                                                  {"eps_fail", eps_fail},
                                                  {"eps_closed", eps_closed},
                                                  {"I_step", I_step},
                                                  {"closure", closure}};
    for (const auto& [k, v] : channels) f.emplace_back(k, v);
    return f;
}

double leaky_overlap_error(long N, long m) {
    if (N < 1 || m < 0 || m > N) throw std::invalid_argument("leaky_overlap_error: need 0 <= m <= N");
    // C(N-1,m)/C(N,m) = (N-m)/N
    return static_cast<double>(m) / static_cast<double>(N);
}

}  // namespace wqed
