#include <algorithm>
#include <cmath>
#include <limits>

#include "wqed/protocols.hpp"
#include "wqed/rng.hpp"

namespace wqed {

RepetitionStats monte_carlo_repetitions(double p, long n_trials, std::uint64_t seed, bool keep_samples) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("p", "must lie in (0,1]");
    if (n_trials < 1) throw ConfigError("n_trials", "must be >= 1");
    RepetitionStats s;
    s.min = std::numeric_limits<long>::max();
    double sum = 0.0, sum2 = 0.0;
    for (long i = 0; i < n_trials; ++i) {
        auto g = stream(seed, static_cast<std::uint64_t>(i));
        const long k = geometric_trials(g, p);
        sum += static_cast<double>(k);
        sum2 += static_cast<double>(k) * static_cast<double>(k);
        s.min = std::min(s.min, k);
        s.max = std::max(s.max, k);
        if (keep_samples) s.samples.push_back(k);
    }
    const double n = static_cast<double>(n_trials);
    s.mean = sum / n;
    s.stddev = n > 1 ? std::sqrt(std::max(0.0, (sum2 - n * s.mean * s.mean) / (n - 1.0))) : 0.0;
    s.sem = s.stddev / std::sqrt(n);
    return s;
}

}  // namespace wqed
