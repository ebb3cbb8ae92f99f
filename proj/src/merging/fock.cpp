#include <cmath>
#include <stdexcept>
#include <vector>

#include "wqed/merging.hpp"

namespace wqed {

FockVector FockVector::single(int n_max) {
    if (n_max < 0) throw std::invalid_argument("FockVector: n_max < 0");
    FockVector f;
    f.modes_ = 1;
    f.n_max_ = n_max;
    f.amp_.assign(static_cast<std::size_t>(n_max) + 1, cplx{});
    return f;
}

FockVector FockVector::two(int n_max) {
    if (n_max < 0) throw std::invalid_argument("FockVector: n_max < 0");
    FockVector f;
    f.modes_ = 2;
    f.n_max_ = n_max;
    const auto s = static_cast<std::size_t>(n_max) + 1;
    f.amp_.assign(s * s, cplx{});
    return f;
}

FockVector FockVector::number(int n, int n_max) {
    auto f = single(n_max);
    f(n) = 1.0;
    return f;
}

FockVector FockVector::number(int n1, int n2, int n_max) {
    auto f = two(n_max);
    f(n1, n2) = 1.0;
    return f;
}

std::size_t FockVector::idx(int n) const {
    if (modes_ != 1) throw std::logic_error("FockVector: single-mode index on two-mode state");
    if (n < 0 || n > n_max_) throw std::out_of_range("FockVector: occupation outside truncation");
    return static_cast<std::size_t>(n);
}

std::size_t FockVector::idx(int n1, int n2) const {
    if (modes_ != 2) throw std::logic_error("FockVector: two-mode index on single-mode state");
    if (n1 < 0 || n2 < 0 || n1 > n_max_ || n2 > n_max_)
        throw std::out_of_range("FockVector: occupation outside truncation");
    return static_cast<std::size_t>(n1) * (static_cast<std::size_t>(n_max_) + 1) + static_cast<std::size_t>(n2);
}

double FockVector::norm2() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return s;
}

void FockVector::normalize() {
    const double n = std::sqrt(norm2());
    if (!(n > 0.0)) throw std::domain_error("FockVector: zero norm");
    for (auto& a : amp_) a /= n;
}

int FockVector::max_occupied() const {
    int best = -1;
    const int s = n_max_ + 1;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (std::abs(amp_[i]) == 0.0) continue;
        const int tot = modes_ == 1 ? static_cast<int>(i) : static_cast<int>(i) / s + static_cast<int>(i) % s;
        best = std::max(best, tot);
    }
    return best;
}

BeamSplitter BeamSplitter::fifty_fifty() { return {cplx{M_SQRT1_2, 0.0}, cplx{-M_SQRT1_2, 0.0}}; }

BeamSplitter BeamSplitter::transmissivity(double t2) {
    if (!(t2 >= 0.0 && t2 <= 1.0)) throw std::invalid_argument("BeamSplitter: |T|^2 outside [0,1]");
    return {cplx{std::sqrt(t2), 0.0}, cplx{-std::sqrt(1.0 - t2), 0.0}};
}

void BeamSplitter::validate() const {
    if (std::abs(std::norm(T) + std::norm(R) - 1.0) > 1e-12)
        throw std::invalid_argument("BeamSplitter: |T|^2 + |R|^2 != 1");
}

namespace {

using lcplx = std::complex<long double>;

std::vector<lcplx> powers(lcplx z, int n) {
    std::vector<lcplx> p(static_cast<std::size_t>(n) + 1);
    p[0] = 1.0L;
    for (int i = 1; i <= n; ++i) p[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i) - 1] * z;
    return p;
}

long double lfact(int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); }

}  // namespace

FockVector apply_beamsplitter(const FockVector& in, const BeamSplitter& bs) {
    bs.validate();
    if (in.modes() != 2) throw std::invalid_argument("apply_beamsplitter: need a two-mode state");
    const int nm = in.n_max();
    auto out = FockVector::two(nm);
    const int top = 2 * nm;
    const lcplx T{bs.T.real(), bs.T.imag()}, R{bs.R.real(), bs.R.imag()};
    const auto pT = powers(T, top), pR = powers(R, top), pRc = powers(-std::conj(R), top),
               pTc = powers(std::conj(T), top);

    for (int n1 = 0; n1 <= nm; ++n1) {
        for (int n2 = 0; n2 <= nm; ++n2) {
            const cplx a = in(n1, n2);
            if (a == cplx{}) continue;
            // (T a1 + R a2)^n1 (-R* a1 + T* a2)^n2 / sqrt(n1! n2!)
            std::vector<lcplx> acc(static_cast<std::size_t>(n1 + n2) + 1, lcplx{});
            for (int j = 0; j <= n1; ++j) {
                const long double bj = std::exp(lfact(n1) - lfact(j) - lfact(n1 - j));
                for (int k = 0; k <= n2; ++k) {
                    const long double bk = std::exp(lfact(n2) - lfact(k) - lfact(n2 - k));
                    acc[static_cast<std::size_t>(j + k)] += bj * bk * pT[static_cast<std::size_t>(j)] *
                                                           pR[static_cast<std::size_t>(n1 - j)] *
                                                           pRc[static_cast<std::size_t>(k)] *
                                                           pTc[static_cast<std::size_t>(n2 - k)];
                }
            }
            const int n = n1 + n2;
            for (int o1 = 0; o1 <= n; ++o1) {
                const lcplx c = acc[static_cast<std::size_t>(o1)];
                if (std::abs(c) == 0.0L) continue;
                const int o2 = n - o1;
                if (o1 > nm || o2 > nm) {
                    if (std::abs(c) > 1e-15L) throw std::out_of_range("apply_beamsplitter: output exceeds n_max");
                    continue;
                }
                const long double w = std::exp(0.5L * (lfact(o1) + lfact(o2) - lfact(n1) - lfact(n2)));
                const lcplx v = c * w * lcplx{a.real(), a.imag()};
                out(o1, o2) += cplx{static_cast<double>(v.real()), static_cast<double>(v.imag())};
            }
        }
    }
    return out;
}

}  // namespace wqed

namespace wqed {

MergeResult superposition_merge(const FockVector& left, const FockVector& right) {
    if (left.modes() != 1 || right.modes() != 1) throw std::invalid_argument("superposition_merge: single-mode inputs");
    const int nl = left.max_occupied(), nr = right.max_occupied();
    if (nl < 0 || nr < 0) throw std::domain_error("superposition_merge: empty input");
    const int nm = nl + nr;
    auto in = FockVector::two(nm);
    for (int a = 0; a <= nl; ++a)
        for (int b = 0; b <= nr; ++b) in(a, b) = left(a) * right(b);
    const auto out = apply_beamsplitter(in, BeamSplitter::fifty_fifty());
    MergeResult r{FockVector::single(nm), 0.0};
    for (int n = 0; n <= nm; ++n) r.state(n) = out(n, 0);
    r.probability = r.state.norm2();
    if (!(r.probability > 0.0)) throw std::domain_error("superposition_merge: vacuum projection has zero probability");
    r.state.normalize();
    return r;
}

double trim_single_click_probability(long k, double theta) {
    if (k < 1) return 0.0;
    const double c = std::cos(theta), s = std::sin(theta);
    return static_cast<double>(k) * std::pow(c, 2.0 * static_cast<double>(k - 1)) * s * s;
}

TrimResult excitation_trim(const FockVector& state, int target_n, double theta) {
    if (state.modes() != 1) throw std::invalid_argument("excitation_trim: single-mode input");
    const int n = state.max_occupied();
    if (target_n < 0 || target_n > n) throw std::invalid_argument("excitation_trim: target outside [0, n]");
    if (theta * theta * n > 0.1 * (1.0 + 1e-12)) throw std::invalid_argument("excitation_trim: need theta^2 n <= 0.1");
    TrimResult r{state, 0.0, {}};
    const double c = std::cos(theta), s = std::sin(theta);
    for (int top = n; top > target_n; --top) {
        // single click on the weakly split mode: |k> -> sqrt(k) cos^{k-1} sin |k-1>
        auto next = FockVector::single(state.n_max());
        for (int k = 1; k <= top; ++k)
            next(k - 1) = r.state(k) * std::sqrt(static_cast<double>(k)) * std::pow(c, k - 1) * s;
        next.normalize();
        r.state = next;
        const double pr = trim_single_click_probability(top, theta);
        r.reduction_probability.push_back(pr);
        r.expected_attempts += 1.0 / pr;
    }
    return r;
}

double trim_attempts(long n, long target) {
    if (target < 0 || target > n) throw std::invalid_argument("trim_attempts: target outside [0, n]");
    double s = 0.0;
    for (long k = target + 1; k <= n; ++k)
        s += 1.0 / trim_single_click_probability(k, std::sqrt(0.1 / static_cast<double>(k)));
    return s;
}

}  // namespace wqed
