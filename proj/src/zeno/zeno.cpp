#include "wqed/zeno.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace wqed {

using std::numbers::pi;

ZenoParams ZenoParams::optimal(long k, long N_b, double P1d, double gamma_star) {
    ZenoParams p;
    p.k = k;
    p.N_b = N_b;
    p.gamma_star = gamma_star;
    p.gamma_1d = P1d * gamma_star;
    p.omega = std::sqrt(static_cast<double>(N_b + k + 1) * p.gamma_1d * gamma_star);
    p.T = pi / (std::sqrt(static_cast<double>(k + 1) / static_cast<double>(N_b + k + 1)) * p.omega);
    p.validate();
    return p;
}

double ZenoParams::dark_weight() const { return static_cast<double>(N_b) / static_cast<double>(N_b + k + 1); }

void ZenoParams::validate() const {
    if (k < 0) throw ConfigError("k", "must be >= 0");
    if (N_b < 1) throw ConfigError("N_b", "must be >= 1");
    if (!(gamma_1d > 0.0)) throw ConfigError("gamma_1d", "must be > 0");
    if (!(gamma_star > 0.0)) throw ConfigError("gamma_star", "must be > 0");
    if (!(omega >= 0.0)) throw ConfigError("omega", "must be >= 0");
    if (!(T >= 0.0)) throw ConfigError("T", "must be >= 0");
}

Mat zeno_hamiltonian(const ZenoParams& p) { return zeno_hamiltonian(p, p.omega); }

Mat zeno_hamiltonian(const ZenoParams& p, double omega) {
    const double G = p.gamma_1d, Gs = p.gamma_star;
    const double kk = static_cast<double>(p.k + 1), nb = static_cast<double>(p.N_b);
    const double c = std::sqrt(kk * nb) * G;
    Mat h(3, 3);
    h << -I * (kk * G + Gs), -I * c, 0.0,
         -I * c, -I * (nb * G + Gs), omega,
         0.0, omega, 0.0;
    return 0.5 * h;
}

Mat zeno_rotation(const ZenoParams& p) {
    const double n = static_cast<double>(p.N_b + p.k + 1);
    const double s = std::sqrt(static_cast<double>(p.k + 1) / n);
    const double d = std::sqrt(static_cast<double>(p.N_b) / n);
    Mat r(3, 3);
    r << s, d, 0.0,
         d, -s, 0.0,
         0.0, 0.0, 1.0;
    return r;
}

Vec ZenoModel::dark() const {
    const double n = static_cast<double>(N_b + k + 1);
    Vec v = Vec::Zero(static_cast<Eigen::Index>(basis.dim()));
    v(static_cast<Eigen::Index>(psi1)) = std::sqrt(static_cast<double>(N_b) / n);
    v(static_cast<Eigen::Index>(psi2)) = -std::sqrt(static_cast<double>(k + 1) / n);
    return v;
}

Vec ZenoModel::superradiant() const {
    const double n = static_cast<double>(N_b + k + 1);
    Vec v = Vec::Zero(static_cast<Eigen::Index>(basis.dim()));
    v(static_cast<Eigen::Index>(psi1)) = std::sqrt(static_cast<double>(k + 1) / n);
    v(static_cast<Eigen::Index>(psi2)) = std::sqrt(static_cast<double>(N_b) / n);
    return v;
}

ZenoModel zeno_model(const ZenoParams& p, double omega, long N_a) {
    p.validate();
    if (N_a < 0) N_a = p.k + 1;
    if (N_a < p.k + 1) throw ConfigError("N_a", "source ensemble must hold k+1 atoms");
    const long n0a = N_a - p.k - 1;
    EnsembleSpec a{N_a, {"0", "1", "2"}, {n0a, p.k + 1, 0}};
    EnsembleSpec b{p.N_b, {"0", "1", "2"}, {0, p.N_b, 0}};

    ZenoModel z;
    z.k = p.k;
    z.N_b = p.N_b;
    z.basis = build_basis({a, b}, 1, [n0a](const BasisState& s) { return s.count(0, 0) == n0a; });
    const auto& B = z.basis;

    BasisState g{{{n0a, p.k + 1, 0}, {0, p.N_b, 0}}};
    BasisState s1{{{n0a, p.k, 1}, {0, p.N_b, 0}}};
    BasisState s2{{{n0a, p.k + 1, 0}, {0, p.N_b - 1, 1}}};
    BasisState s3{{{n0a, p.k + 1, 0}, {1, p.N_b - 1, 0}}};
    z.ground = B.at(g);
    z.psi1 = B.at(s1);
    z.psi2 = B.at(s2);
    z.psi3 = B.at(s3);

    Mat drive = collective(B, 1, "2", "0");
    z.model.H = 0.5 * omega * (drive + drive.adjoint());
    z.model.jumps.push_back(
        {"collective", p.gamma_1d, collective(B, 0, "1", "2") + collective(B, 1, "1", "2"), ChannelKind::collective});
    z.model.losses.push_back({"a:2", p.gamma_star, number(B, 0, "2"), ChannelKind::free_space});
    z.model.losses.push_back({"b:2", p.gamma_star, number(B, 1, "2"), ChannelKind::free_space});
    z.model.validate();
    return z;
}

ZenoPopulations zeno_analytic_populations(const ZenoParams& p, const std::vector<double>& t) {
    p.validate();
    const double n = static_cast<double>(p.N_b + p.k + 1);
    const double A = p.dark_weight();
    const double s = std::sqrt(static_cast<double>(p.k + 1) / n);
    ZenoPopulations out;
    out.t = t;
    for (double ti : t) {
        const double arg = 0.5 * s * p.omega * ti;
        const double damp = std::exp(-p.gamma_star * ti);
        out.dark.push_back(A * damp * std::cos(arg) * std::cos(arg));
        out.target.push_back(A * damp * std::sin(arg) * std::sin(arg));
        out.superradiant.push_back((1.0 - A) * std::exp(-(p.gamma_star + n * p.gamma_1d) * ti));
    }
    return out;
}

ZenoPopulations zeno_numeric_populations(const ZenoParams& p, const std::vector<double>& t, double tol) {
    auto z = zeno_model(p, p.omega);
    const Vec vd = z.dark(), vs = z.superradiant();
    DensityOperator rho = DensityOperator::pure(basis_vector(z.basis, z.basis[z.psi1]), z.model.losses.size());
    ZenoPopulations out;
    double now = 0.0;
    for (double ti : t) {
        if (ti < now) throw std::invalid_argument("time grid must be non-decreasing");
        rho = integrate_lindblad(z.model, rho, ti - now, tol);
        now = ti;
        out.t.push_back(ti);
        out.dark.push_back((vd.adjoint() * rho.rho * vd).value().real());
        out.superradiant.push_back((vs.adjoint() * rho.rho * vs).value().real());
        out.target.push_back(rho.rho(static_cast<Eigen::Index>(z.psi3), static_cast<Eigen::Index>(z.psi3)).real());
    }
    return out;
}

double zeno_success_probability(long k, long N_b, double P1d) {
    if (N_b < 1) throw ConfigError("N_b", "must be >= 1");
    if (k < 0) throw ConfigError("k", "must be >= 0");
    if (!(P1d > 0.0)) throw ConfigError("P1d", "must be > 0");
    const double w = static_cast<double>(N_b) / static_cast<double>(N_b + k + 1);
    return w * std::exp(-pi / std::sqrt(static_cast<double>(k + 1) * P1d));
}

double zeno_numeric_success(const ZenoParams& p) {
    p.validate();
    Vec psi = Vec::Zero(3);
    psi(0) = 1.0;
    psi = evolve_nonhermitian(zeno_hamiltonian(p), psi, p.T);
    return std::norm(psi(2));
}

ZenoJumps zeno_jump_probabilities(const ZenoParams& p) {
    p.validate();
    const Mat h = zeno_hamiltonian(p);
    Vec psi0 = Vec::Zero(3);
    psi0(0) = 1.0;
    const double sk = std::sqrt(static_cast<double>(p.k + 1)), sn = std::sqrt(static_cast<double>(p.N_b));

    // psi(t) = sum_i c_i e^{l_i t} u_i, so int_0^T |w.psi|^2 has a closed form
    Eigen::ComplexEigenSolver<Mat> es(-I * h);
    const Mat& U = es.eigenvectors();
    const Vec lam = es.eigenvalues();
    const Vec c = U.partialPivLu().solve(psi0);
    auto pop = [&](const Vec& w) {
        const Vec a = (w.transpose() * U).transpose().cwiseProduct(c);
        cplx s{0.0, 0.0};
        for (Eigen::Index i = 0; i < a.size(); ++i)
            for (Eigen::Index k = 0; k < a.size(); ++k) {
                const cplx z = std::conj(lam(i)) + lam(k);
                const cplx f = std::abs(z * p.T) < 1e-8 ? cplx(p.T) : (std::exp(z * p.T) - 1.0) / z;
                s += std::conj(a(i)) * a(k) * f;
            }
        return s.real();
    };
    Vec w0 = Vec::Zero(3), w1 = Vec::Zero(3), wc = Vec::Zero(3);
    w0(0) = 1.0;
    w1(1) = 1.0;
    wc(0) = sk;
    wc(1) = sn;

    ZenoJumps j;
    j.a1 = p.gamma_star * pop(w0);
    j.b1 = p.gamma_star * pop(w1);
    const double coll_in = p.gamma_1d * pop(wc);

    const Vec psiT = evolve_nonhermitian(h, psi0, p.T);
    j.success = std::norm(psiT(2));

    // after the pulse: drive off, remaining excitation branches into the channels
    auto z = zeno_model(p, 0.0);
    Vec blk(2);
    blk << psiT(0), psiT(1);
    auto br = relaxation_branching(
        z.model, {static_cast<Eigen::Index>(z.psi1), static_cast<Eigen::Index>(z.psi2)}, blk * blk.adjoint());
    j.a2 = br.probability.at("a:2");
    j.b2 = br.probability.at("b:2");
    j.collective = coll_in + br.probability.at("collective");
    j.closure = 1.0 - (j.success + j.a1 + j.a2 + j.b1 + j.b2 + j.collective);

    const double kk = static_cast<double>(p.k + 1), nb = static_cast<double>(p.N_b);
    const double P = p.purcell();
    const double e = 1.0 - std::exp(-pi / std::sqrt(kk * P));
    j.bound_a1 = 0.5 * e;
    j.bound_b1 = kk / (2.0 * nb) * e;
    const double n = nb + kk;
    const double tail = std::exp(-pi * n / std::sqrt(kk * P));
    j.bound_a2 = kk * kk / (n * n) * tail;
    j.bound_b2 = nb * kk / (n * n) * tail;
    return j;
}

}  // namespace wqed
