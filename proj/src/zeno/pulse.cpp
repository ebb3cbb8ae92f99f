#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/tools/minima.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "wqed/zeno.hpp"

namespace wqed {

double PulseShape::total() const { return std::accumulate(duration.begin(), duration.end(), 0.0); }

double pulse_success(const ZenoParams& p, const PulseShape& s) {
    if (s.omega.size() != s.duration.size()) throw std::invalid_argument("pulse shape size mismatch");
    Vec psi = Vec::Zero(3);
    psi(0) = 1.0;
    for (std::size_t i = 0; i < s.omega.size(); ++i) {
        if (!(s.duration[i] > 0.0)) throw std::invalid_argument("segment durations must be > 0");
        psi = propagator(zeno_hamiltonian(p, std::abs(s.omega[i])), s.duration[i]) * psi;
    }
    return std::norm(psi(2));
}

std::pair<double, double> best_constant_pulse(const ZenoParams& p, double total_time) {
    if (total_time <= 0.0) total_time = p.T;
    const double w0 = p.omega > 0.0 ? p.omega : ZenoParams::optimal(p.k, p.N_b, p.purcell(), p.gamma_star).omega;
    auto f = [&](double w) { return -pulse_success(p, {{w}, {total_time}}); };
    // coarse scan first; the objective has secondary maxima at large drive
    const int n = 60;
    std::vector<double> grid(n), val(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = w0 * (0.1 + 2.9 * i / (n - 1));
        val[i] = f(grid[i]);
    }
    const auto i = static_cast<int>(std::min_element(val.begin(), val.end()) - val.begin());
    const double lo = grid[std::max(0, i - 1)], hi = grid[std::min(n - 1, i + 1)];
    auto r = boost::math::tools::brent_find_minima(f, lo, hi, 40);
    return {r.first, -r.second};
}

namespace {

struct Objective {
    const ZenoParams* p;
    double dt;
    double scale;
    std::size_t n;
    int evals = 0;
};

double nm_f(const gsl_vector* x, void* params) {
    auto* o = static_cast<Objective*>(params);
    PulseShape s;
    s.omega.resize(o->n);
    s.duration.assign(o->n, o->dt);
    for (std::size_t i = 0; i < o->n; ++i) s.omega[i] = std::abs(gsl_vector_get(x, i)) * o->scale;
    ++o->evals;
    return -pulse_success(*o->p, s);
}

struct NmOutcome {
    std::vector<double> x;
    double f;
    bool converged;
};

NmOutcome simplex(Objective& obj, std::vector<double> x0, double step) {
    const std::size_t n = x0.size();
    gsl_multimin_function fn{&nm_f, n, &obj};
    gsl_vector* x = gsl_vector_alloc(n);
    gsl_vector* ss = gsl_vector_alloc(n);
    NmOutcome out{x0, 0.0, false};
    // restart a few times: Nelder-Mead can stall on a collapsed simplex
    for (int round = 0; round < 4; ++round) {
        for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x, i, out.x[i]);
        gsl_vector_set_all(ss, step);
        gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
        gsl_multimin_fminimizer_set(m, &fn, x, ss);
        int status = GSL_CONTINUE;
        for (int it = 0; it < 20000 && status == GSL_CONTINUE; ++it) {
            if (gsl_multimin_fminimizer_iterate(m)) break;
            status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-9);
        }
        const double fnew = m->fval;
        for (std::size_t i = 0; i < n; ++i) out.x[i] = std::abs(gsl_vector_get(m->x, i));
        gsl_multimin_fminimizer_free(m);
        const bool improved = round == 0 || fnew < out.f - 1e-13;
        out.f = round == 0 ? fnew : std::min(out.f, fnew);
        out.converged = status == GSL_SUCCESS;
        if (!improved) break;
        step *= 0.3;
    }
    gsl_vector_free(x);
    gsl_vector_free(ss);
    return out;
}

}  // namespace

PulseResult optimize_pulse_shape(const ZenoParams& p, int n_segments, double total_time,
                                 const std::vector<double>& warm_start) {
    p.validate();
    if (n_segments < 1) throw ConfigError("n_segments", "must be >= 1");
    if (total_time <= 0.0) total_time = p.T;
    if (!(total_time > 0.0)) throw ConfigError("total_time", "must be > 0");
    gsl_set_error_handler_off();

    PulseResult res;
    auto [wc, pc] = best_constant_pulse(p, total_time);
    res.omega_constant = wc;
    res.p_constant = pc;

    const auto n = static_cast<std::size_t>(n_segments);
    Objective obj{&p, total_time / n_segments, wc, n};

    std::vector<std::vector<double>> starts;
    starts.emplace_back(n, 1.0);
    std::vector<double> up(n), down(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1);
        up[i] = 0.5 + u;
        down[i] = 1.5 - u;
    }
    if (n > 1) {
        starts.push_back(up);
        starts.push_back(down);
    }
    if (!warm_start.empty()) {
        // piecewise-constant resampling onto the new grid
        std::vector<double> w(n);
        const std::size_t m = warm_start.size();
        for (std::size_t i = 0; i < n; ++i) {
            double mid = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
            auto j = std::min(m - 1, static_cast<std::size_t>(mid * static_cast<double>(m)));
            w[i] = warm_start[j] / wc;
        }
        starts.push_back(w);
    }

    NmOutcome best{std::vector<double>(n, 1.0), -pc, true};
    for (const auto& s0 : starts) {
        auto o = simplex(obj, s0, 0.1);
        if (o.f < best.f) best = o;
        else if (o.f == best.f) best.converged = best.converged || o.converged;
    }
    res.evaluations = obj.evals;
    res.converged = best.converged;
    res.shape.omega.resize(n);
    res.shape.duration.assign(n, total_time / n_segments);
    for (std::size_t i = 0; i < n; ++i) res.shape.omega[i] = best.x[i] * wc;
    res.p_pulse = pulse_success(p, res.shape);
    // the constant pulse is in the search space
    if (res.p_pulse < pc) {
        res.shape.omega.assign(n, wc);
        res.p_pulse = pc;
    }
    res.ratio = res.p_pulse / pc;
    return res;
}

}  // namespace wqed
