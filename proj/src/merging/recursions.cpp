#include <cmath>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "wqed/merging.hpp"

namespace wqed {

namespace {

void check_p(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("p", "must lie in (0,1]");
}

// log(e^a + e^b)
double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

long largest_power_of_two(long m) {
    long k = 1;
    while (2 * k <= m) k *= 2;
    return k;
}

}  // namespace

OneByOneQ one_by_one_q(long n) {
    if (n < 0) throw std::invalid_argument("one_by_one_q: n must be >= 0");
    if (n == 0) return {1.0, 0.0};
    const double nn = static_cast<double>(n);
    auto neg = [nn](double t) { return -(std::log(nn + 1.0) + nn * std::log(t) + std::log1p(-t)); };
    auto r = boost::math::tools::brent_find_minima(neg, 1e-12, 1.0 - 1e-12, 60);
    return {std::exp(-r.second), r.first};
}

double one_by_one_q_closed(long n) {
    if (n < 0) throw std::invalid_argument("one_by_one_q: n must be >= 0");
    if (n == 0) return 1.0;
    const double nn = static_cast<double>(n);
    return std::exp(nn * std::log(nn / (nn + 1.0)));
}

double one_by_one_log_Rm(long m, double p) {
    check_p(p);
    if (m < 1) throw ConfigError("m", "must be >= 1");
    double lr = -std::log(p);
    for (long k = 2; k <= m; ++k) lr = log_add(0.0, lr) - std::log(one_by_one_q_closed(k - 1));
    return lr;
}

double one_by_one_Rm(long m, double p) { return std::exp(one_by_one_log_Rm(m, p)); }

double doubling_log_Rm(long m, double p) {
    check_p(p);
    if (m < 1) throw ConfigError("m", "must be >= 1");
    const long top = largest_power_of_two(m);
    double lr = -std::log(p);
    for (long k = 1; k < top; k *= 2) lr = log_add(0.0, std::log(2.0) + lr) - std::log(doubling_d(k));
    for (long k = top + 1; k <= m; ++k) lr = log_add(0.0, lr) - std::log(one_by_one_q_closed(k - 1));
    return lr;
}

double doubling_Rm(long m, double p) { return std::exp(doubling_log_Rm(m, p)); }

std::vector<long> number_resolved_ladder(long m) {
    if (m < 1) throw ConfigError("m", "must be >= 1");
    std::vector<long> c{1};
    while (c.back() < m) c.push_back((3 * c.back() + 1) / 2);
    return c;
}

NumberResolvedPlan number_resolved_expected(long m, double p) {
    check_p(p);
    NumberResolvedPlan plan;
    plan.counts = number_resolved_ladder(m);
    plan.levels = static_cast<long>(plan.counts.size()) - 1;
    double lr = -std::log(p);
    plan.log_R.push_back(lr);
    for (std::size_t L = 0; L + 1 < plan.counts.size(); ++L) {
        const long c = plan.counts[L], next = plan.counts[L + 1];
        const auto dist = fp_5050_distribution(c, c);
        double s = 0.0, trim = 0.0;
        for (long q = 0; 2 * q < c; ++q) {
            const double w = dist[static_cast<std::size_t>(q)];
            s += w;
            if (w > 0.0) trim += w * trim_attempts(2 * c - q, next);
        }
        trim /= s;
        plan.success.push_back(s);
        // (1 + 2 R_L) / s_L + E[trim | success]
        lr = log_add(0.0, std::log(2.0) + lr) - std::log(s);
        if (trim > 0.0) lr = log_add(lr, std::log(trim));
        plan.log_R.push_back(lr);
    }
    const double tail = trim_attempts(plan.counts.back(), m);
    plan.log_R_final = tail > 0.0 ? log_add(lr, std::log(tail)) : lr;
    return plan;
}

std::string to_string(MergeKind k) {
    switch (k) {
        case MergeKind::one_by_one: return "one-by-one";
        case MergeKind::doubling: return "doubling";
        case MergeKind::number_resolved: return "number-resolved";
    }
    return "?";
}

MergeKind merge_kind_from_string(const std::string& s) {
    if (s == "one-by-one") return MergeKind::one_by_one;
    if (s == "doubling") return MergeKind::doubling;
    if (s == "number-resolved") return MergeKind::number_resolved;
    throw ConfigError("strategy", "unknown merge strategy '" + s + "'");
}

}  // namespace wqed
