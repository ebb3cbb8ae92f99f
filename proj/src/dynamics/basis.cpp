#include "wqed/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wqed {

std::size_t EnsembleSpec::level(const std::string& name) const {
    auto it = std::find(levels.begin(), levels.end(), name);
    if (it == levels.end()) throw std::invalid_argument("unknown level '" + name + "'");
    return static_cast<std::size_t>(it - levels.begin());
}

std::vector<long> EnsembleSpec::reference_occupation() const {
    if (!reference.empty()) return reference;
    std::vector<long> r(levels.size(), 0);
    r[0] = atoms;
    return r;
}

std::vector<long> BasisState::flat() const {
    std::vector<long> f;
    for (const auto& e : occ) f.insert(f.end(), e.begin(), e.end());
    return f;
}

std::string to_string(const BasisState& s) {
    std::ostringstream os;
    for (std::size_t e = 0; e < s.occ.size(); ++e) {
        if (e) os << '|';
        os << '(';
        for (std::size_t l = 0; l < s.occ[e].size(); ++l) os << (l ? "," : "") << s.occ[e][l];
        os << ')';
    }
    return os.str();
}

HilbertBasis::HilbertBasis(std::vector<EnsembleSpec> ensembles, std::vector<BasisState> states)
    : ensembles_(std::move(ensembles)), states_(std::move(states)) {
    for (std::size_t i = 0; i < states_.size(); ++i) {
        const auto& s = states_[i];
        if (s.occ.size() != ensembles_.size())
            throw std::invalid_argument("basis state has wrong ensemble count");
        for (std::size_t e = 0; e < ensembles_.size(); ++e) {
            if (s.occ[e].size() != ensembles_[e].levels.size())
                throw std::invalid_argument("basis state has wrong level count");
            long sum = std::accumulate(s.occ[e].begin(), s.occ[e].end(), 0L);
            if (sum != ensembles_[e].atoms)
                throw std::invalid_argument("occupations do not sum to atom count: " + to_string(s));
            if (std::any_of(s.occ[e].begin(), s.occ[e].end(), [](long v) { return v < 0; }))
                throw std::invalid_argument("negative occupation");
        }
        if (!lookup_.emplace(s, i).second)
            throw std::invalid_argument("duplicate basis state " + to_string(s));
    }
}

std::optional<std::size_t> HilbertBasis::index(const BasisState& s) const {
    auto it = lookup_.find(s);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::size_t HilbertBasis::at(const BasisState& s) const {
    auto i = index(s);
    if (!i) throw std::out_of_range("state not in basis: " + to_string(s));
    return *i;
}

long HilbertBasis::excitations(const BasisState& s) const {
    long moved = 0;
    for (std::size_t e = 0; e < ensembles_.size(); ++e) {
        auto ref = ensembles_[e].reference_occupation();
        long d = 0;
        for (std::size_t l = 0; l < ref.size(); ++l) d += std::abs(s.occ[e][l] - ref[l]);
        moved += d / 2;
    }
    return moved;
}

namespace {

// Occupations of one ensemble within `budget` moves of its reference.
void compositions(const std::vector<long>& ref, long atoms, std::size_t level, long remaining,
                  std::vector<long>& cur, long budget, std::vector<std::pair<std::vector<long>, long>>& out) {
    if (level + 1 == ref.size()) {
        cur[level] = remaining;
        long d = 0;
        for (std::size_t l = 0; l < ref.size(); ++l) d += std::abs(cur[l] - ref[l]);
        if (d / 2 <= budget) out.emplace_back(cur, d / 2);
        return;
    }
    long lo = std::max(0L, ref[level] - budget);
    long hi = std::min(remaining, ref[level] + budget);
    for (long v = lo; v <= hi; ++v) {
        cur[level] = v;
        compositions(ref, atoms, level + 1, remaining - v, cur, budget, out);
    }
}

}  // namespace

HilbertBasis build_basis(const std::vector<EnsembleSpec>& ensembles, long max_excitations,
                         const StateFilter& keep) {
    if (max_excitations < 0) throw std::invalid_argument("max_excitations must be >= 0");
    long total_atoms = 0;
    std::vector<std::vector<std::pair<std::vector<long>, long>>> per;
    for (const auto& e : ensembles) {
        if (e.levels.empty()) throw std::invalid_argument("ensemble has an empty level list");
        if (e.atoms < 1) throw std::invalid_argument("ensemble needs at least one atom");
        auto ref = e.reference_occupation();
        if (ref.size() != e.levels.size() || std::accumulate(ref.begin(), ref.end(), 0L) != e.atoms)
            throw std::invalid_argument("reference occupation inconsistent with ensemble");
        total_atoms += e.atoms;
        std::vector<long> cur(e.levels.size(), 0);
        std::vector<std::pair<std::vector<long>, long>> opts;
        compositions(ref, e.atoms, 0, e.atoms, cur, std::min(max_excitations, e.atoms), opts);
        per.push_back(std::move(opts));
    }
    const long budget = std::min(max_excitations, total_atoms);

    std::vector<BasisState> states;
    BasisState cur;
    cur.occ.resize(ensembles.size());
    std::function<void(std::size_t, long)> rec = [&](std::size_t e, long used) {
        if (e == ensembles.size()) {
            if (!keep || keep(cur)) states.push_back(cur);
            return;
        }
        for (const auto& [occ, cost] : per[e]) {
            if (used + cost > budget) continue;
            cur.occ[e] = occ;
            rec(e + 1, used + cost);
        }
    };
    rec(0, 0);
    std::sort(states.begin(), states.end(),
              [](const BasisState& a, const BasisState& b) { return a.flat() > b.flat(); });
    return HilbertBasis(ensembles, std::move(states));
}

Mat collective(const HilbertBasis& b, std::size_t ensemble, std::size_t to, std::size_t from) {
    const std::size_t n = b.dim();
    Mat op = Mat::Zero(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const BasisState& s = b[j];
        const long nf = s.occ[ensemble][from];
        if (nf == 0) continue;
        BasisState t = s;
        double amp;
        if (to == from) {
            amp = static_cast<double>(nf);
        } else {
            const long nt = s.occ[ensemble][to];
            t.occ[ensemble][from] -= 1;
            t.occ[ensemble][to] += 1;
            amp = std::sqrt(static_cast<double>(nf) * static_cast<double>(nt + 1));
        }
        if (auto i = b.index(t)) op(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(j)) += amp;
    }
    return op;
}

Mat collective(const HilbertBasis& b, std::size_t ensemble, const std::string& to, const std::string& from) {
    const auto& e = b.ensembles().at(ensemble);
    return collective(b, ensemble, e.level(to), e.level(from));
}

Mat number(const HilbertBasis& b, std::size_t ensemble, std::size_t level) {
    return collective(b, ensemble, level, level);
}

Mat number(const HilbertBasis& b, std::size_t ensemble, const std::string& level) {
    return number(b, ensemble, b.ensembles().at(ensemble).level(level));
}

Vec basis_vector(const HilbertBasis& b, const BasisState& s) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(b.dim()));
    v(static_cast<Eigen::Index>(b.at(s))) = 1.0;
    return v;
}

}  // namespace wqed
