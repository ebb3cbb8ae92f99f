#pragma once

#include <map>
#include <string>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

enum class ChannelKind { collective, free_space };

// Recycled jump: rate * (O rho O^dag - 1/2 {O^dag O, rho}).
struct JumpChannel {
    std::string label;
    double rate = 0.0;
    Mat op;
    ChannelKind kind = ChannelKind::collective;
};

// Absorbing loss: population leaves the modelled space into a sink at rate
// rate * Tr(K rho); K Hermitian and positive semidefinite (usually a number operator).
struct LossChannel {
    std::string label;
    double rate = 0.0;
    Mat counting;
    ChannelKind kind = ChannelKind::free_space;
};

struct LindbladModel {
    Mat H;
    std::vector<JumpChannel> jumps;
    std::vector<LossChannel> losses;

    Eigen::Index dim() const { return H.rows(); }
    Mat h_eff() const;
    // Throws std::invalid_argument on negative rates, shape mismatch or non-finite entries.
    void validate() const;
    // Largest eigenvalue of i(H_eff - H_eff^dag)/2; <= 0 for a valid model.
    double max_antihermitian_eigenvalue() const;
};

struct DensityOperator {
    Mat rho;
    std::vector<double> sinks;  // one per loss channel of the model that produced it

    static DensityOperator pure(const Vec& psi, std::size_t n_sinks = 0);
    double trace() const;  // includes sinks
    double min_eigenvalue() const;
    double hermiticity_error() const;
};

double trace_distance(const DensityOperator& a, const DensityOperator& b);
double trace_norm_hermitian(const Mat& m);

// A time-independent piece of a piecewise-constant schedule.
struct Segment {
    LindbladModel model;
    double duration = 0.0;
};

struct OdeOptions {
    double atol = 1e-10;
    double rtol = 1e-10;
    std::size_t max_steps = 20'000'000;
};

// exp(-i H_eff t)
Mat propagator(const Mat& h_eff, double t);
Vec evolve_nonhermitian(const Mat& h_eff, const Vec& psi0, double t);

DensityOperator integrate_lindblad(const LindbladModel& model, const DensityOperator& rho0, double t,
                                   double tol = 1e-10);
DensityOperator integrate_lindblad(const std::vector<Segment>& schedule, const DensityOperator& rho0,
                                   double tol = 1e-10);

// Quantum-jump series. Each node is a sequence of recycled jumps; a loss ends
// a sequence. Nodes deeper than max_jumps are not resolved further: a recycled
// jump out of the deepest level is booked under "<sequence>><label>" as terminal.
struct JumpSeries {
    std::map<std::string, double> probability;  // sequence label -> probability
    std::map<std::string, Mat> state;           // unnormalized conditional states (non-terminal nodes)
    double total() const;
    Mat reconstruct() const;  // sum of conditional states
};

inline constexpr const char* kNoJump = "no-jump";

JumpSeries jump_series(const std::vector<Segment>& schedule, const Mat& rho0, int max_jumps,
                       double tol = 1e-10);
std::map<std::string, double> jump_series_probabilities(const LindbladModel& model, const Vec& psi0,
                                                        double horizon, int max_jumps, double tol = 1e-10);

// Branching of a decaying block after the drive is switched off.
// Solves (-iH)X + X(iH^dag) = -rho0 for X = int_0^inf rho(t) dt on the block,
// then each channel gets rate * Tr(O^dag O X) (loss: rate * Tr(K X)).
struct Branching {
    std::map<std::string, double> probability;
    Mat integrated;  // X
};
Branching relaxation_branching(const LindbladModel& model, const std::vector<Eigen::Index>& block,
                               const Mat& rho0);

}  // namespace wqed
