#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "wqed/merging.hpp"
#include "wqed/rng.hpp"

namespace wqed {

namespace {

long largest_power_of_two(long m) {
    long k = 1;
    while (2 * k <= m) k *= 2;
    return k;
}

class Sampler {
public:
    Sampler(const MergeStrategy& s, double p) : s_(s), p_(p) {
        if (s.kind == MergeKind::number_resolved) counts_ = number_resolved_ladder(s.m);
    }

    // one trial: (operations, excitations before the final trim)
    std::pair<double, long> run(std::mt19937_64& g) {
        g_ = &g;
        switch (s_.kind) {
            case MergeKind::one_by_one: return {one_by_one(s_.m), s_.m};
            case MergeKind::doubling: return {doubling(s_.m), s_.m};
            case MergeKind::number_resolved: {
                const long L = static_cast<long>(counts_.size()) - 1;
                auto [cost, n] = s_.worst_case ? std::pair<double, long>{worst(L), counts_.back()} : realistic(L);
                return {cost + trim(n, s_.m), n};
            }
        }
        return {0.0, 0};
    }

private:
    double bernoulli_tries(double q) { return static_cast<double>(geometric_trials(*g_, q)); }

    double one_by_one(long k) {
        if (k == 1) return bernoulli_tries(p_);
        const long tries = geometric_trials(*g_, one_by_one_q_closed(k - 1));
        double c = 0.0;
        for (long t = 0; t < tries; ++t) c += one_by_one(k - 1) + 1.0;
        return c;
    }

    double doubling(long k) {
        if (k == 1) return bernoulli_tries(p_);
        if (k != largest_power_of_two(k)) {
            const long tries = geometric_trials(*g_, one_by_one_q_closed(k - 1));
            double c = 0.0;
            for (long t = 0; t < tries; ++t) c += doubling(k - 1) + 1.0;
            return c;
        }
        const long tries = geometric_trials(*g_, doubling_d(k / 2));
        double c = 0.0;
        for (long t = 0; t < tries; ++t) c += doubling(k / 2) + doubling(k / 2) + 1.0;
        return c;
    }

    long sample_p(long a, long b) {
        auto it = cdf_.find({a, b});
        if (it == cdf_.end()) {
            auto d = fp_5050_distribution(a, b);
            std::partial_sum(d.begin(), d.end(), d.begin());
            it = cdf_.emplace(std::make_pair(a, b), std::move(d)).first;
        }
        const auto& c = it->second;
        const double u = uniform_open0(*g_) * c.back();
        return static_cast<long>(std::lower_bound(c.begin(), c.end(), u) - c.begin());
    }

    double trim(long from, long to) {
        double c = 0.0;
        for (long k = from; k > to; --k)
            c += bernoulli_tries(trim_single_click_probability(k, std::sqrt(0.1 / static_cast<double>(k))));
        return c;
    }

    double worst(long L) {
        if (L == 0) return bernoulli_tries(p_);
        const long c = counts_[static_cast<std::size_t>(L - 1)];
        double cost = 0.0;
        for (;;) {
            cost += worst(L - 1) + worst(L - 1) + 1.0;
            const long q = sample_p(c, c);
            if (2 * q < c) return cost + trim(2 * c - q, counts_[static_cast<std::size_t>(L)]);
        }
    }

    std::pair<double, long> realistic(long L) {
        if (L == 0) return {bernoulli_tries(p_), 1};
        double cost = 0.0;
        for (;;) {
            auto [c1, a] = realistic(L - 1);
            auto [c2, b] = realistic(L - 1);
            cost += c1 + c2 + 1.0;
            const long q = sample_p(a, b);
            if (4 * q < a + b) return {cost, a + b - q};
        }
    }

    MergeStrategy s_;
    double p_;
    std::vector<long> counts_;
    std::map<std::pair<long, long>, std::vector<double>> cdf_;
    std::mt19937_64* g_ = nullptr;
};

}  // namespace

SchedulerStats scheduler_simulate(const MergeStrategy& s, double p, long n_trials, std::uint64_t seed) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("p", "must lie in (0,1]");
    if (s.m < 1) throw ConfigError("m", "must be >= 1");
    if (n_trials < 1) throw ConfigError("n_trials", "must be >= 1");

    SchedulerStats st;
    st.n_trials = n_trials;
    switch (s.kind) {
        case MergeKind::one_by_one:
            st.analytic = one_by_one_Rm(s.m, p);
            st.levels = s.m - 1;
            break;
        case MergeKind::doubling: {
            st.analytic = doubling_Rm(s.m, p);
            long top = largest_power_of_two(s.m), lv = 0;
            for (long k = 1; k < top; k *= 2) ++lv;
            st.levels = lv + (s.m - top);
            break;
        }
        case MergeKind::number_resolved: {
            const auto plan = number_resolved_expected(s.m, p);
            st.analytic = s.worst_case ? std::exp(plan.log_R_final) : 0.0;
            st.levels = plan.levels;
            break;
        }
    }

    Sampler smp(s, p);
    double sum = 0.0, sum2 = 0.0, counts = 0.0;
    for (long i = 0; i < n_trials; ++i) {
        auto g = stream(seed, static_cast<std::uint64_t>(i));
        const auto [cost, n] = smp.run(g);
        sum += cost;
        sum2 += cost * cost;
        counts += static_cast<double>(n);
    }
    const double n = static_cast<double>(n_trials);
    st.mean = sum / n;
    st.stddev = n > 1 ? std::sqrt(std::max(0.0, (sum2 - n * st.mean * st.mean) / (n - 1.0))) : 0.0;
    st.sem = st.stddev / std::sqrt(n);
    st.mean_final_count = counts / n;
    return st;
}

}  // namespace wqed
