#include <cmath>
#include <numbers>

#include "wqed/oracle.hpp"

namespace wqed {

namespace {

struct Layout {
    std::vector<std::size_t> ensemble;  // per atom
    std::vector<std::size_t> levels;    // per atom
    std::vector<std::size_t> stride;    // per atom
    std::size_t dim = 1;
};

Layout layout(const SystemSpec& s) {
    Layout l;
    for (std::size_t e = 0; e < s.ensembles.size(); ++e)
        for (long a = 0; a < s.ensembles[e].atoms; ++a) {
            l.ensemble.push_back(e);
            l.levels.push_back(s.ensembles[e].levels.size());
        }
    l.stride.assign(l.levels.size(), 1);
    for (std::size_t i = l.levels.size(); i-- > 0;) {
        l.stride[i] = l.dim;
        l.dim *= l.levels[i];
    }
    return l;
}

std::size_t digit(const Layout& l, std::size_t idx, std::size_t atom) { return idx / l.stride[atom] % l.levels[atom]; }

// |to><from| on one atom
Mat local(const Layout& l, std::size_t atom, std::size_t to, std::size_t from) {
    Mat m = Mat::Zero(static_cast<Eigen::Index>(l.dim), static_cast<Eigen::Index>(l.dim));
    for (std::size_t i = 0; i < l.dim; ++i) {
        if (digit(l, i, atom) != from) continue;
        const std::size_t j = i + to * l.stride[atom] - from * l.stride[atom];
        m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return m;
}

double position(const SystemSpec& s, std::size_t e, std::size_t k) {
    if (s.positions.empty()) return 0.0;
    return s.positions[e][k];
}

}  // namespace

long SystemSpec::atoms() const {
    long n = 0;
    for (const auto& e : ensembles) n += e.atoms;
    return n;
}

std::size_t SystemSpec::full_dim() const {
    std::size_t d = 1;
    for (const auto& e : ensembles)
        for (long a = 0; a < e.atoms; ++a) {
            d *= e.levels.size();
            if (d > kOracleMaxDim) return d;
        }
    return d;
}

void SystemSpec::validate() const {
    if (ensembles.empty()) throw ConfigError("ensembles", "empty system");
    if (atoms() > 3) throw ConfigError("atoms", "oracle is limited to 3 atoms");
    if (full_dim() > kOracleMaxDim) throw ConfigError("atoms", "full space exceeds 256 states");
    if (!positions.empty()) {
        if (positions.size() != ensembles.size()) throw ConfigError("positions", "one list per ensemble");
        for (std::size_t e = 0; e < ensembles.size(); ++e)
            if (positions[e].size() != static_cast<std::size_t>(ensembles[e].atoms))
                throw ConfigError("positions", "one position per atom");
    }
    auto check = [&](const LocalTerm& t) {
        if (t.ensemble >= ensembles.size()) throw ConfigError("ensemble", "index out of range");
        (void)ensembles[t.ensemble].level(t.to);
        (void)ensembles[t.ensemble].level(t.from);
    };
    for (const auto& d : drive) check(d.op);
    for (const auto& w : waveguide) {
        if (!(w.rate >= 0.0)) throw ConfigError("rate", "must be >= 0");
        for (const auto& t : w.ops) check(t);
    }
    for (const auto& l : losses) {
        if (!(l.rate >= 0.0)) throw ConfigError("rate", "must be >= 0");
        if (l.ensemble >= ensembles.size()) throw ConfigError("ensemble", "index out of range");
        (void)ensembles[l.ensemble].level(l.level);
    }
}

LindbladModel symmetric_model(const SystemSpec& spec, const HilbertBasis& b) {
    const auto n = static_cast<Eigen::Index>(b.dim());
    LindbladModel m;
    m.H = Mat::Zero(n, n);
    for (const auto& d : spec.drive) {
        const Mat s = d.coefficient * collective(b, d.op.ensemble, d.op.to, d.op.from);
        m.H += s + s.adjoint();
    }
    for (const auto& w : spec.waveguide) {
        Mat o = Mat::Zero(n, n);
        for (const auto& t : w.ops) o += collective(b, t.ensemble, t.to, t.from);
        m.jumps.push_back({w.label, w.rate, o, ChannelKind::collective});
    }
    for (const auto& l : spec.losses)
        m.losses.push_back({l.label, l.rate, number(b, l.ensemble, l.level), ChannelKind::free_space});
    return m;
}

LindbladModel full_model(const SystemSpec& spec) {
    spec.validate();
    const Layout L = layout(spec);
    const auto n = static_cast<Eigen::Index>(L.dim);
    const std::size_t atoms = L.ensemble.size();
    std::vector<std::size_t> within(atoms);
    for (std::size_t a = 0, k = 0; a < atoms; ++a) {
        k = (a > 0 && L.ensemble[a] == L.ensemble[a - 1]) ? k + 1 : 0;
        within[a] = k;
    }
    auto on_atom = [&](std::size_t a, const LocalTerm& t) {
        const auto& e = spec.ensembles[t.ensemble];
        return local(L, a, e.level(t.to), e.level(t.from));
    };

    LindbladModel m;
    m.H = Mat::Zero(n, n);
    for (const auto& d : spec.drive)
        for (std::size_t a = 0; a < atoms; ++a) {
            if (L.ensemble[a] != d.op.ensemble) continue;
            const Mat s = d.coefficient * on_atom(a, d.op);
            m.H += s + s.adjoint();
        }

    constexpr double k2pi = 2.0 * std::numbers::pi;
    for (const auto& w : spec.waveguide) {
        std::vector<Mat> low(atoms, Mat::Zero(n, n));
        std::vector<double> z(atoms);
        for (std::size_t a = 0; a < atoms; ++a) {
            z[a] = position(spec, L.ensemble[a], within[a]);
            for (const auto& t : w.ops)
                if (t.ensemble == L.ensemble[a]) low[a] += on_atom(a, t);
        }
        // right- and left-moving modes, half the rate each
        Mat right = Mat::Zero(n, n), left = Mat::Zero(n, n);
        for (std::size_t a = 0; a < atoms; ++a) {
            right += std::polar(1.0, k2pi * z[a]) * low[a];
            left += std::polar(1.0, -k2pi * z[a]) * low[a];
        }
        m.jumps.push_back({w.label + ":right", 0.5 * w.rate, right, ChannelKind::collective});
        m.jumps.push_back({w.label + ":left", 0.5 * w.rate, left, ChannelKind::collective});
        // guided-mode exchange
        for (std::size_t a = 0; a < atoms; ++a)
            for (std::size_t b = 0; b < atoms; ++b) {
                if (a == b) continue;
                const double s = std::sin(k2pi * std::abs(z[a] - z[b]));
                if (s != 0.0) m.H += 0.5 * w.rate * s * low[a].adjoint() * low[b];
            }
    }
    for (const auto& l : spec.losses) {
        Mat k = Mat::Zero(n, n);
        for (std::size_t a = 0; a < atoms; ++a) {
            if (L.ensemble[a] != l.ensemble) continue;
            const auto lv = spec.ensembles[l.ensemble].level(l.level);
            k += local(L, a, lv, lv);
        }
        m.losses.push_back({l.label, l.rate, k, ChannelKind::free_space});
    }
    m.validate();
    return m;
}

Mat symmetric_embedding(const SystemSpec& spec, const HilbertBasis& b) {
    spec.validate();
    if (b.ensembles().size() != spec.ensembles.size()) throw ConfigError("basis", "ensemble count mismatch");
    const Layout L = layout(spec);
    Mat V = Mat::Zero(static_cast<Eigen::Index>(L.dim), static_cast<Eigen::Index>(b.dim()));
    for (std::size_t col = 0; col < b.dim(); ++col) {
        const auto& st = b[col];
        // multinomial normalisation per ensemble
        double lw = 0.0;
        for (std::size_t e = 0; e < spec.ensembles.size(); ++e) {
            lw += std::lgamma(static_cast<double>(spec.ensembles[e].atoms) + 1.0);
            for (long c : st.occ[e]) lw -= std::lgamma(static_cast<double>(c) + 1.0);
        }
        const double amp = std::exp(-0.5 * lw);
        for (std::size_t i = 0; i < L.dim; ++i) {
            std::vector<std::vector<long>> occ(spec.ensembles.size());
            for (std::size_t e = 0; e < spec.ensembles.size(); ++e) occ[e].assign(spec.ensembles[e].levels.size(), 0);
            for (std::size_t a = 0; a < L.ensemble.size(); ++a) ++occ[L.ensemble[a]][digit(L, i, a)];
            if (occ == st.occ) V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) = amp;
        }
    }
    return V;
}

DensityOperator full_lindblad(const SystemSpec& spec, const DensityOperator& rho0, double t, double tol) {
    return integrate_lindblad(full_model(spec), rho0, t, tol);
}

double compare_with_symmetric(const DensityOperator& full, const DensityOperator& reduced, const Mat& V) {
    if (V.rows() != full.rho.rows() || V.cols() != reduced.rho.rows())
        throw std::invalid_argument("compare_with_symmetric: dimension mismatch");
    if (full.sinks.size() != reduced.sinks.size()) throw std::invalid_argument("compare_with_symmetric: sink mismatch");
    DensityOperator e{V * reduced.rho * V.adjoint(), reduced.sinks};
    return trace_distance(full, e);
}

}  // namespace wqed
