#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wqed/basis.hpp"
#include "wqed/dynamics.hpp"

namespace wqed {

// |to><from| on every atom of one ensemble.
struct LocalTerm {
    std::size_t ensemble = 0;
    std::string to, from;
};

// H += coefficient * S + h.c.
struct DriveTerm {
    LocalTerm op;
    cplx coefficient{0.0, 0.0};
};

// Emission into the guided mode. Atom n contributes with phase exp(+-2 pi i z_n).
struct WaveguideChannel {
    std::string label;
    double rate = 0.0;
    std::vector<LocalTerm> ops;
};

struct AtomLoss {
    std::string label;
    double rate = 0.0;
    std::size_t ensemble = 0;
    std::string level;
};

// Abstract system that can be realized on the symmetric basis or on the
// full tensor-product space of all atoms.
struct SystemSpec {
    std::vector<EnsembleSpec> ensembles;
    std::vector<DriveTerm> drive;
    std::vector<WaveguideChannel> waveguide;
    std::vector<AtomLoss> losses;
    std::vector<std::vector<double>> positions;  // z / lambda per atom; empty -> all 0

    long atoms() const;
    std::size_t full_dim() const;
    void validate() const;  // throws ConfigError; full_dim() <= 256, atoms <= 3
};

inline constexpr std::size_t kOracleMaxDim = 256;

LindbladModel symmetric_model(const SystemSpec& spec, const HilbertBasis& basis);
LindbladModel full_model(const SystemSpec& spec);
// Isometry (full_dim x basis.dim()) mapping occupation states to symmetrized product states.
Mat symmetric_embedding(const SystemSpec& spec, const HilbertBasis& basis);

DensityOperator full_lindblad(const SystemSpec& spec, const DensityOperator& rho0, double t, double tol = 1e-10);

// Trace distance between the full-space state and the embedded reduced state (sinks included).
double compare_with_symmetric(const DensityOperator& full, const DensityOperator& reduced, const Mat& embedding);

struct OracleCheck {
    std::string name;
    double deviation = 0.0;
    long atoms = 0;
    std::size_t full_dim = 0;
};

// Weak drive on |g> -> |e>, then collective e -> s emission and free-space loss.
// misplaced_z >= 0 puts the last atom at that position (in wavelengths).
OracleCheck oracle_protocol1(long atoms, double x, double P1d, double misplaced_z = -1.0);
// Zeno step with one source atom and N_b detector atoms (N_b <= 2).
OracleCheck oracle_zeno(long N_b, double P1d, double misplaced_z = -1.0);
// Antisymmetric-sector population after collective decay of a symmetric two-atom state.
double oracle_antisymmetric_leak(double P1d, double t);

}  // namespace wqed
