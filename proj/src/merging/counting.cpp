#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/poisson.hpp>

#include "wqed/merging.hpp"

namespace wqed {

std::vector<double> counting_pmf(const CountingModel& c) {
    if (!(c.T >= 0.0) || !(c.gamma_1d >= 0.0) || c.m < 0) throw ConfigError("T", "counting model needs T, gamma_1d, m >= 0");
    const double lam = c.lambda();
    if (lam == 0.0) return {1.0};
    boost::math::poisson_distribution<double> d(lam);
    std::vector<double> pmf;
    for (long n = 0;; ++n) {
        pmf.push_back(boost::math::pdf(d, static_cast<double>(n)));
        if (static_cast<double>(n) > lam && boost::math::cdf(boost::math::complement(d, static_cast<double>(n))) < 1e-16)
            break;
    }
    return pmf;
}

double discrimination_threshold(long m, double gamma_1d, double T) {
    if (m < 0) throw ConfigError("m", "must be >= 0");
    if (!(T >= 0.0) || !(gamma_1d > 0.0)) throw ConfigError("T", "need T >= 0 and gamma_1d > 0");
    const double l0 = static_cast<double>(m) * gamma_1d * T, l1 = static_cast<double>(m + 1) * gamma_1d * T;
    if (l1 == 0.0) return 0.0;
    if (l0 == 0.0) return 0.0;
    return (l1 - l0) / std::log(l1 / l0);
}

double discrimination_error(long m, double gamma_1d, double T) {
    const double thr = discrimination_threshold(m, gamma_1d, T);
    const double l0 = static_cast<double>(m) * gamma_1d * T, l1 = static_cast<double>(m + 1) * gamma_1d * T;
    if (l1 == 0.0) return 0.5;
    // decide m+1 when n > threshold
    const double k = std::floor(thr) + 1.0;
    const double p1_low = boost::math::cdf(boost::math::poisson_distribution<double>(l1), k - 1.0);
    const double p0_high =
        l0 == 0.0 ? 0.0 : boost::math::cdf(boost::math::complement(boost::math::poisson_distribution<double>(l0), k - 1.0));
    return 0.5 * (p0_high + p1_low);
}

}  // namespace wqed
