#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wqed/types.hpp"

namespace wqed {

// One ensemble of identical atoms. Level 0 is the reference ("ground") level
// unless an explicit reference occupation is given.
struct EnsembleSpec {
    long atoms = 1;
    std::vector<std::string> levels;
    std::vector<long> reference;  // empty: all atoms in level 0

    std::size_t level(const std::string& name) const;
    std::vector<long> reference_occupation() const;
};

// Occupation numbers per ensemble, per level.
struct BasisState {
    std::vector<std::vector<long>> occ;

    long count(std::size_t ensemble, std::size_t level) const { return occ[ensemble][level]; }
    std::vector<long> flat() const;
    auto operator<=>(const BasisState&) const = default;
    bool operator==(const BasisState&) const = default;
};

std::string to_string(const BasisState& s);

class HilbertBasis {
public:
    HilbertBasis() = default;
    HilbertBasis(std::vector<EnsembleSpec> ensembles, std::vector<BasisState> states);

    std::size_t dim() const { return states_.size(); }
    const BasisState& operator[](std::size_t i) const { return states_[i]; }
    const std::vector<BasisState>& states() const { return states_; }
    const std::vector<EnsembleSpec>& ensembles() const { return ensembles_; }
    std::optional<std::size_t> index(const BasisState& s) const;
    std::size_t at(const BasisState& s) const;  // throws if absent
    long excitations(const BasisState& s) const;

private:
    std::vector<EnsembleSpec> ensembles_;
    std::vector<BasisState> states_;
    std::map<BasisState, std::size_t> lookup_;
};

using StateFilter = std::function<bool(const BasisState&)>;

// All occupation tuples with at most max_excitations atoms moved away from each
// ensemble's reference occupation, optionally restricted by a filter.
// Ordered descending-lexicographically on the flattened occupation tuple.
HilbertBasis build_basis(const std::vector<EnsembleSpec>& ensembles, long max_excitations,
                         const StateFilter& keep = {});

// Collective S_{to,from} = sum_n |to><from|_n on one ensemble. Images outside
// the basis are dropped.
Mat collective(const HilbertBasis& b, std::size_t ensemble, std::size_t to, std::size_t from);
Mat collective(const HilbertBasis& b, std::size_t ensemble, const std::string& to,
               const std::string& from);
// Number operator of one level.
Mat number(const HilbertBasis& b, std::size_t ensemble, std::size_t level);
Mat number(const HilbertBasis& b, std::size_t ensemble, const std::string& level);

Vec basis_vector(const HilbertBasis& b, const BasisState& s);

}  // namespace wqed
