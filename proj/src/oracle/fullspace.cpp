#include <algorithm>
#include <cmath>

#include "wqed/oracle.hpp"
#include "wqed/zeno.hpp"

namespace wqed {

namespace {

std::vector<std::vector<double>> place(const SystemSpec& s, double misplaced_z) {
    if (misplaced_z < 0.0) return {};
    std::vector<std::vector<double>> z;
    for (const auto& e : s.ensembles) z.emplace_back(static_cast<std::size_t>(e.atoms), 0.0);
    z.back().back() = misplaced_z;
    return z;
}

// Runs both realizations over the same checkpoints and returns the worst trace distance.
double track(const std::vector<Segment>& reduced, const std::vector<Segment>& full, const Mat& V, const Vec& psi0,
             int checkpoints) {
    DensityOperator r = DensityOperator::pure(psi0, reduced.front().model.losses.size());
    DensityOperator f = DensityOperator::pure(V * psi0, full.front().model.losses.size());
    double worst = compare_with_symmetric(f, r, V);
    for (std::size_t s = 0; s < reduced.size(); ++s) {
        const double dt = reduced[s].duration / checkpoints;
        for (int c = 0; c < checkpoints; ++c) {
            r = integrate_lindblad(reduced[s].model, r, dt, 1e-12);
            f = integrate_lindblad(full[s].model, f, dt, 1e-12);
            worst = std::max(worst, compare_with_symmetric(f, r, V));
        }
    }
    return worst;
}

}  // namespace

OracleCheck oracle_protocol1(long atoms, double x, double P1d, double misplaced_z) {
    if (atoms < 1 || atoms > 3) throw ConfigError("atoms", "must lie in [1,3]");
    if (!(x > 0.0)) throw ConfigError("x", "must be > 0");
    SystemSpec drive, decay;
    drive.ensembles = {EnsembleSpec{atoms, {"g", "e", "s"}, {}}};
    drive.drive = {{{0, "e", "g"}, cplx{x / std::sqrt(static_cast<double>(atoms)), 0.0}}};
    drive.waveguide = {{"coll", 0.0, {{0, "s", "e"}}}};
    drive.losses = {{"star", 0.0, 0, "e"}};
    drive.positions = place(drive, misplaced_z);
    decay = drive;
    decay.drive.clear();
    decay.waveguide[0].rate = P1d;
    decay.losses[0].rate = 1.0;

    const HilbertBasis b = build_basis(drive.ensembles, atoms);
    const Mat V = symmetric_embedding(drive, b);
    const std::vector<Segment> red{{symmetric_model(drive, b), 1.0}, {symmetric_model(decay, b), 5.0}};
    const std::vector<Segment> full{{full_model(drive), 1.0}, {full_model(decay), 5.0}};
    const Vec psi0 = basis_vector(b, BasisState{{{atoms, 0, 0}}});

    OracleCheck c;
    c.name = misplaced_z >= 0.0 ? "protocol1-misplaced" : "protocol1";
    c.atoms = atoms;
    c.full_dim = drive.full_dim();
    c.deviation = track(red, full, V, psi0, 10);
    return c;
}

OracleCheck oracle_zeno(long N_b, double P1d, double misplaced_z) {
    if (N_b < 1 || N_b > 2) throw ConfigError("N_b", "must lie in [1,2]");
    const auto zp = ZenoParams::optimal(0, N_b, P1d, 1.0);
    const auto z = zeno_model(zp, zp.omega);

    SystemSpec s;
    s.ensembles = z.basis.ensembles();
    s.drive = {{{1, "2", "0"}, cplx{0.5 * zp.omega, 0.0}}};
    s.waveguide = {{"collective", zp.gamma_1d, {{0, "1", "2"}, {1, "1", "2"}}}};
    s.losses = {{"a:2", zp.gamma_star, 0, "2"}, {"b:2", zp.gamma_star, 1, "2"}};
    s.positions = place(s, misplaced_z);

    const Mat V = symmetric_embedding(s, z.basis);
    const std::vector<Segment> red{{z.model, zp.T}};
    const std::vector<Segment> full{{full_model(s), zp.T}};

    OracleCheck c;
    c.name = misplaced_z >= 0.0 ? "zeno-misplaced" : "zeno";
    c.atoms = s.atoms();
    c.full_dim = s.full_dim();
    c.deviation = track(red, full, V, basis_vector(z.basis, z.basis[z.psi1]), 20);
    return c;
}

double oracle_antisymmetric_leak(double P1d, double t) {
    SystemSpec s;
    s.ensembles = {EnsembleSpec{2, {"g", "e"}, {}}};
    s.waveguide = {{"coll", P1d, {{0, "g", "e"}}}};
    s.losses = {{"star", 1.0, 0, "e"}};
    const auto m = full_model(s);
    // |eg> = index 2, |ge> = index 1
    Vec sym = Vec::Zero(4), anti = Vec::Zero(4);
    sym(1) = sym(2) = M_SQRT1_2;
    anti(2) = M_SQRT1_2;
    anti(1) = -M_SQRT1_2;
    const auto rho = integrate_lindblad(m, DensityOperator::pure(sym, 1), t, 1e-12);
    return (anti.adjoint() * rho.rho * anti).value().real();
}

}  // namespace wqed
