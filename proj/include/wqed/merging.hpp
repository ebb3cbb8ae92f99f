#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

// Bosonic amplitudes over one mode (index n) or two modes (index n1, n2),
// each occupation bounded by n_max.
class FockVector {
public:
    static FockVector single(int n_max);
    static FockVector two(int n_max);
    static FockVector number(int n, int n_max);
    static FockVector number(int n1, int n2, int n_max);

    int modes() const { return modes_; }
    int n_max() const { return n_max_; }
    cplx& operator()(int n) { return amp_.at(idx(n)); }
    const cplx& operator()(int n) const { return amp_.at(idx(n)); }
    cplx& operator()(int n1, int n2) { return amp_.at(idx(n1, n2)); }
    const cplx& operator()(int n1, int n2) const { return amp_.at(idx(n1, n2)); }
    double norm2() const;
    void normalize();
    // Highest occupied total excitation number (|amp| > 0).
    int max_occupied() const;

private:
    std::size_t idx(int n) const;
    std::size_t idx(int n1, int n2) const;
    int modes_ = 1;
    int n_max_ = 0;
    std::vector<cplx> amp_;
};

// a1^dag -> T a1^dag + R a2^dag,  a2^dag -> -R* a1^dag + T* a2^dag
struct BeamSplitter {
    cplx T{1.0, 0.0};
    cplx R{0.0, 0.0};
    static BeamSplitter fifty_fifty();  // T = 1/sqrt2, R = -1/sqrt2
    static BeamSplitter transmissivity(double t2);
    void validate() const;
};

// Throws std::out_of_range if the output needs occupations above n_max.
FockVector apply_beamsplitter(const FockVector& in, const BeamSplitter& bs);

// Exact rational as canonical decimal strings.
struct Rational {
    std::string num, den;
    double value() const;
    bool operator==(const Rational&) const = default;
};

// Mode-1 amplitude after |m,n> meets the 50/50 splitter and p quanta are found in mode 2.
double fp_5050(long m, long n, long p);
Rational fp_5050_squared_exact(long m, long n, long p);
// sum_p |f_p(m,n)|^2
double fp_norm(long m, long n);
// |f_p(m,n)|^2 for p = 0..m+n
std::vector<double> fp_5050_distribution(long m, long n);

struct OneByOneQ {
    double q = 0.0;
    double transmissivity = 0.0;
};
// Numerical maximization of (n+1) t^n (1-t); n >= 1.
OneByOneQ one_by_one_q(long n);
double one_by_one_q_closed(long n);  // (n/(n+1))^n
double one_by_one_Rm(long m, double p);
double one_by_one_log_Rm(long m, double p);  // natural log, safe for large m

double doubling_d(long n);
Rational doubling_d_exact(long n);  // (2n)! / (2^{2n} (n!)^2)
// Non-powers of two: largest power of two, then one-by-one for the rest.
double doubling_Rm(long m, double p);
double doubling_log_Rm(long m, double p);

struct MergeResult {
    FockVector state;
    double probability = 0.0;
};
// 50/50 splitter on left (x) right, mode 2 projected on vacuum.
MergeResult superposition_merge(const FockVector& left, const FockVector& right);

struct TrimResult {
    FockVector state;
    double expected_attempts = 0.0;
    std::vector<double> reduction_probability;  // per removed quantum, from the top
};
// Repeated weak splitting (angle theta) with single-click post-selection.
TrimResult excitation_trim(const FockVector& state, int target_n, double theta);
// Expected attempts to go from |n> to |target> with theta^2 = 0.1/k at each level k.
double trim_attempts(long n, long target);
double trim_single_click_probability(long k, double theta);

// sum_{p < m/2} |f_p(m+shift, m-shift)|^2 (exact summation).
double number_resolved_success(long m, long shift = 0);

// Worst-case ladder c_{L+1} = ceil(3 c_L / 2).
std::vector<long> number_resolved_ladder(long m);
struct NumberResolvedPlan {
    std::vector<long> counts;
    std::vector<double> success;  // s_L
    std::vector<double> log_R;    // ln of expected operations per level
    double log_R_final = 0.0;     // after trimming to m
    long levels = 0;
};
NumberResolvedPlan number_resolved_expected(long m, double p);

enum class MergeKind { one_by_one, doubling, number_resolved };
std::string to_string(MergeKind k);
MergeKind merge_kind_from_string(const std::string& s);

struct MergeStrategy {
    MergeKind kind = MergeKind::one_by_one;
    long m = 1;
    bool worst_case = true;  // number-resolved only
};

struct SchedulerStats {
    double mean = 0.0;
    double stddev = 0.0;
    double sem = 0.0;
    double analytic = 0.0;  // recursion value (0 if none)
    long levels = 0;
    long n_trials = 0;
    double mean_final_count = 0.0;  // number-resolved realistic: excitations before final trim
};
SchedulerStats scheduler_simulate(const MergeStrategy& s, double p, long n_trials, std::uint64_t seed);

struct CountingModel {
    double gamma_1d = 1.0;
    double T = 1.0;
    long m = 1;
    double lambda() const { return static_cast<double>(m) * gamma_1d * T; }
};
// P[n] for n = 0..n_max where the remaining tail is below 1e-16.
std::vector<double> counting_pmf(const CountingModel& c);
// Maximum-likelihood threshold test between m and m+1 emitters.
double discrimination_error(long m, double gamma_1d, double T);
double discrimination_threshold(long m, double gamma_1d, double T);

}  // namespace wqed
