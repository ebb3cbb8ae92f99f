#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "wqed/merging.hpp"

namespace wqed {

namespace mp = boost::multiprecision;

namespace {

// [y^p] (1-y)^m (1+y)^n for all p
std::vector<mp::cpp_int> coefficients(long m, long n) {
    std::vector<mp::cpp_int> c(static_cast<std::size_t>(m + n) + 1, 0);
    c[0] = 1;
    long deg = 0;
    for (long i = 0; i < m + n; ++i) {
        const int s = i < m ? -1 : 1;
        for (long k = deg + 1; k >= 1; --k) {
            if (s < 0)
                c[static_cast<std::size_t>(k)] -= c[static_cast<std::size_t>(k - 1)];
            else
                c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k - 1)];
        }
        ++deg;
    }
    return c;
}

double log_abs(const mp::cpp_int& v) {
    mp::cpp_int a = mp::abs(v);
    if (a == 0) return -INFINITY;
    const auto bits = static_cast<long>(mp::msb(a));
    long shift = 0;
    if (bits > 60) {
        shift = bits - 60;
        a >>= static_cast<unsigned>(shift);
    }
    return std::log(a.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double lfact(long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

void check(long m, long n, long p) {
    if (m < 0 || n < 0) throw std::invalid_argument("fp_5050: m, n must be >= 0");
    if (p < 0 || p > m + n) throw std::invalid_argument("fp_5050: p outside [0, m+n]");
}

double amplitude(const mp::cpp_int& c, long m, long n, long p) {
    if (c == 0) return 0.0;
    const double lg = log_abs(c) + 0.5 * (lfact(p) + lfact(m + n - p) - lfact(m) - lfact(n)) -
                      0.5 * static_cast<double>(m + n) * std::log(2.0);
    return (c < 0 ? -1.0 : 1.0) * std::exp(lg);
}

mp::cpp_int factorial(long n) {
    mp::cpp_int f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

Rational to_rational(const mp::cpp_rational& q) {
    return {mp::numerator(q).str(), mp::denominator(q).str()};
}

}  // namespace

double Rational::value() const {
    using F = mp::cpp_bin_float_50;
    return static_cast<double>(F(mp::cpp_int(num)) / F(mp::cpp_int(den)));
}

double fp_5050(long m, long n, long p) {
    check(m, n, p);
    return amplitude(coefficients(m, n)[static_cast<std::size_t>(p)], m, n, p);
}

Rational fp_5050_squared_exact(long m, long n, long p) {
    check(m, n, p);
    const auto c = coefficients(m, n)[static_cast<std::size_t>(p)];
    mp::cpp_int num = c * c * factorial(p) * factorial(m + n - p);
    mp::cpp_int den = factorial(m) * factorial(n);
    den <<= static_cast<unsigned>(m + n);
    return to_rational(mp::cpp_rational(num, den));
}

double fp_norm(long m, long n) {
    check(m, n, 0);
    const auto c = coefficients(m, n);
    long double s = 0.0L;
    for (long p = 0; p <= m + n; ++p) {
        const long double a = amplitude(c[static_cast<std::size_t>(p)], m, n, p);
        s += a * a;
    }
    return static_cast<double>(s);
}

std::vector<double> fp_5050_distribution(long m, long n) {
    check(m, n, 0);
    const auto c = coefficients(m, n);
    std::vector<double> out(static_cast<std::size_t>(m + n) + 1);
    for (long p = 0; p <= m + n; ++p) {
        const double a = amplitude(c[static_cast<std::size_t>(p)], m, n, p);
        out[static_cast<std::size_t>(p)] = a * a;
    }
    return out;
}

double number_resolved_success(long m, long shift) {
    if (m < 1) throw std::invalid_argument("number_resolved_success: m must be >= 1");
    if (shift < 0 || shift > m) throw std::invalid_argument("number_resolved_success: shift outside [0, m]");
    const long a = m + shift, b = m - shift;
    const auto c = coefficients(a, b);
    long double s = 0.0L;
    for (long p = 0; 2 * p < m; ++p) {
        const long double f = amplitude(c[static_cast<std::size_t>(p)], a, b, p);
        s += f * f;
    }
    return static_cast<double>(s);
}

double doubling_d(long n) {
    if (n < 0) throw std::invalid_argument("doubling_d: n must be >= 0");
    return std::exp(lfact(2 * n) - 2.0 * lfact(n) - 2.0 * static_cast<double>(n) * std::log(2.0));
}

Rational doubling_d_exact(long n) {
    if (n < 0) throw std::invalid_argument("doubling_d: n must be >= 0");
    const auto f = factorial(n);
    mp::cpp_int den = f * f;
    den <<= static_cast<unsigned>(2 * n);
    return to_rational(mp::cpp_rational(factorial(2 * n), den));
}

}  // namespace wqed
