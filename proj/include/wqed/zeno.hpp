#pragma once

#include <cstddef>
#include <vector>

#include "wqed/basis.hpp"
#include "wqed/dynamics.hpp"

namespace wqed {

// Two ensembles a (source) and b (receiving). Ensemble a already holds k
// excitations in level 1 and one in level 2; b holds N_b atoms in level 1
// driven on the 0-2 transition. Rates are in units of gamma_star.
struct ZenoParams {
    long k = 0;
    long N_b = 100;
    double gamma_1d = 100.0;
    double gamma_star = 1.0;
    double omega = 0.0;
    double T = 0.0;

    // omega = sqrt((N_b+k+1) G G*), T = pi / (sqrt((k+1)/(N_b+k+1)) omega)
    static ZenoParams optimal(long k, long N_b, double P1d, double gamma_star = 1.0);
    double purcell() const { return gamma_1d / gamma_star; }
    double dark_weight() const;  // N_b / (N_b+k+1)
    void validate() const;
};

// 3x3 H_eff on {psi1, psi2, psi3}.
Mat zeno_hamiltonian(const ZenoParams& p);
Mat zeno_hamiltonian(const ZenoParams& p, double omega);
// Rows give psi_s, psi_d, psi3 in the {psi1, psi2, psi3} basis.
Mat zeno_rotation(const ZenoParams& p);

// The same step written on occupation states of the two ensembles, with the
// collective jump recycled into the ground state and free-space decay of
// level 2 in either ensemble as a loss.
struct ZenoModel {
    HilbertBasis basis;
    LindbladModel model;
    std::size_t psi1 = 0, psi2 = 0, psi3 = 0, ground = 0;
    Vec dark() const;  // psi_d embedded
    Vec superradiant() const;
    long k = 0, N_b = 0;
};
ZenoModel zeno_model(const ZenoParams& p, double omega, long N_a = -1);

struct ZenoPopulations {
    std::vector<double> t, dark, target, superradiant;
};

ZenoPopulations zeno_analytic_populations(const ZenoParams& p, const std::vector<double>& t);
// Master-equation populations on the occupation basis.
ZenoPopulations zeno_numeric_populations(const ZenoParams& p, const std::vector<double>& t,
                                         double tol = 1e-10);

double zeno_success_probability(long k, long N_b, double P1d);
// |psi3(T)|^2 from the 3x3 propagator.
double zeno_numeric_success(const ZenoParams& p);

struct ZenoJumps {
    double a1 = 0, a2 = 0, b1 = 0, b2 = 0;  // free-space jumps, during pulse / after
    double collective = 0;                  // waveguide decay, during pulse and tail
    double success = 0;
    double closure = 0;  // 1 - everything above
    double bound_a1 = 0, bound_b1 = 0, bound_a2 = 0, bound_b2 = 0;
    double a() const { return a1 + a2; }
    double b() const { return b1 + b2; }
};
ZenoJumps zeno_jump_probabilities(const ZenoParams& p);

struct PulseShape {
    std::vector<double> omega;
    std::vector<double> duration;
    double total() const;
};

struct PulseResult {
    PulseShape shape;
    double p_pulse = 0;
    double p_constant = 0;
    double omega_constant = 0;
    double ratio = 0;
    bool converged = false;
    int evaluations = 0;
};

double pulse_success(const ZenoParams& p, const PulseShape& s);
// Best constant drive over a fixed duration.
std::pair<double, double> best_constant_pulse(const ZenoParams& p, double total_time);
// total_time <= 0 uses p.T. warm_start, if given, is interpolated onto the new grid
// and used as an extra start.
PulseResult optimize_pulse_shape(const ZenoParams& p, int n_segments, double total_time = 0.0,
                                 const std::vector<double>& warm_start = {});

}  // namespace wqed
