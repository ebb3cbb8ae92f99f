#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

// Rates in units of gamma_star; gamma_1d = P1d * gamma_star.
struct PhysicalParams {
    long N = 101;      // target atoms
    long N_d = 100;    // detector atoms
    double P1d = 100.0;
    double eta = 0.5;
    double alpha = -1.0;  // < 0: 1/sqrt(P1d)
    long m = 1;
    double x = 0.1;
    double gamma_star = 1.0;
    double pump_coefficient = 1.0;
    double window = 0.0;  // step-b wait, <= 0: 1/gamma_1d

    double gamma_1d() const { return P1d * gamma_star; }
    long N_m() const { return N - m; }
    double alpha_value() const;
    double window_value() const;
    void validate() const;
    std::vector<std::string> warnings() const;
};

struct StepReport {
    double p = 0.0;
    std::map<std::string, double> channels;  // per-channel jump probabilities
    double eps_double = 0.0;
    double eps_fail = 0.0;
    double eps_closed = 0.0;
    double I_step = 0.0;
    double closure = 0.0;  // 1 - sum of all exclusive outcomes (numeric pipelines)

    // Ordered name/value list for tables.
    std::vector<std::pair<std::string, double>> fields() const;
};

struct AccumulationReport {
    double R_m = 0.0;
    double I_m = 0.0;
    std::vector<double> p_trace, R_trace, I_trace;
};

// overlap loss <Phi_m|J_* rho_m|Phi_m> = C(N-1,m)/C(N,m); returns 1 - that.
double leaky_overlap_error(long N, long m);

StepReport protocol1_step(const PhysicalParams& pp);
StepReport protocol1_numeric(const PhysicalParams& pp, double horizon = 50.0);
AccumulationReport protocol1_accumulate(const PhysicalParams& pp, long m_target, bool same_level);

StepReport protocol2_step(const PhysicalParams& pp);
AccumulationReport protocol2_accumulate(const PhysicalParams& pp, long m_target);
// m = floor(ln R / ln(1/p)) with p = exp(-2 pi / sqrt(P1d)).
std::vector<long> fig3_curve(double R_budget, const std::vector<double>& P1d_grid);

struct StepB {
    double beta1 = 0.0;  // |beta_1(t)|^2
    double beta2 = 0.0;  // |beta_2(t)|^2 = p_b
};
StepB protocol3_step_b_analytic(double t, double gamma_1d, double gamma_star);
// Gamma* int_0^t |beta_1|^2
double protocol3_pb_star(double t, double gamma_1d, double gamma_star);
// (Gamma_1d) int |beta_1|^2 + (Gamma_1d + Gamma*/2) int |beta_2|^2
double protocol3_pb_coll(double t, double gamma_1d, double gamma_star);
// Cumulative p_b after `repeats` tries from the surviving beta_1 branch.
double protocol3_cumulative_pb(double t, double gamma_1d, double gamma_star, long repeats);
// Wait time maximizing the infinite-retry limit p_b / (1 - |beta_1|^2).
double optimal_retry_window(double P1d, double gamma_star = 1.0);

StepReport protocol3_step(const PhysicalParams& pp, long repeat_b = 1);
StepReport protocol3_numeric(const PhysicalParams& pp, long repeat_b = 1, double tol = 1e-10);

// ratio <= 0 selects (N_m+1)/2.
Mat protocol4_hamiltonian(const PhysicalParams& pp, double ratio = 0.0);
double protocol4_default_ratio(const PhysicalParams& pp);
// reference_s: P1d is read as Gamma_1d^s / Gamma*.
StepReport protocol4_step(const PhysicalParams& pp, bool reference_s = false);
struct Protocol4Drive {
    double ratio = 0.0;  // <= 0: default
    double omega = 0.0;  // <= 0: sqrt(N_m P1d / 3)
    double T = 0.0;      // <= 0: pi sqrt(3) / sqrt(P1d)
};
StepReport protocol4_numeric(const PhysicalParams& pp, const Protocol4Drive& drive = {});
// Success probability only, from the 4x4 matrix.
double protocol4_success(const PhysicalParams& pp, const Protocol4Drive& drive = {});

struct RepetitionStats {
    double mean = 0.0;
    double stddev = 0.0;
    double sem = 0.0;
    long min = 0;
    long max = 0;
    std::vector<long> samples;
};
RepetitionStats monte_carlo_repetitions(double p, long n_trials, std::uint64_t seed, bool keep_samples = false);

}  // namespace wqed
