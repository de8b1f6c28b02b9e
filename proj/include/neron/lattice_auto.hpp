#pragma once

#include "neron/linalg.hpp"
#include "neron/poly.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace neron {

// A lattice Z^dim with an automorphism sigma.
class LatticeAuto {
public:
    // Checks det(sigma) = +-1, and sigma^order = I when an order is given.
    explicit LatticeAuto(IntMatrix sigma, std::optional<std::uint64_t> declared_order = std::nullopt);

    std::size_t dim() const { return sigma_.rows(); }
    const IntMatrix& sigma() const { return sigma_; }
    std::optional<std::uint64_t> declared_order() const { return order_; }

private:
    IntMatrix sigma_;
    std::optional<std::uint64_t> order_;
};

// m_i = multiplicity of f_{l,i} in the characteristic polynomial, for
// i = 1, 2, ...; trailing zeros are dropped.
using CycloMultiplicities = std::vector<int>;

CycloMultiplicities cyclotomic_multiplicities(const IntMatrix& sigma, std::int64_t l);
CycloMultiplicities cyclotomic_multiplicities(const ZPoly& charpoly, std::int64_t l);

// Same, for a polynomial known to be a product of f_{l,i}'s and factors
// prime to them (the charpoly of a model block).
CycloMultiplicities multiplicities_of(const ZPoly& poly, std::int64_t l);

// p_j = |{i : m_i >= j}|.
Partition conjugate_counts(const CycloMultiplicities& m);

// sum_i m_i * phi(l^i).
Integer cyclotomic_rank(const CycloMultiplicities& m, std::int64_t l);

struct CoinvariantReport {
    Partition coinv;          // l-part of M/(sigma-1)M
    Partition p;              // conjugate_counts(m)
    CycloMultiplicities m;
    Integer delta_coinv;
    Integer bound;            // delta_l(p)
    Integer cyclo_rank;       // sum m_i phi(l^i)
    std::size_t rank = 0;
    bool rank_bound_ok = false; // delta_coinv <= bound <= cyclo_rank <= rank
    bool equality = false;      // delta_coinv == rank
    bool structure_ok = true;   // only meaningful when equality holds
};

// Throws PreconditionError if 1 is an eigenvalue of sigma.
CoinvariantReport check_coinvariant_bound(const LatticeAuto& a, std::int64_t l);

// Block sum of companion matrices of products of distinct cyclotomic
// polynomials (mostly f_{l,i}, sometimes orders prime to l), conjugated by a
// product of elementary unimodular matrices. Total rank <= max_rank.
LatticeAuto random_lattice_auto(std::int64_t l, std::mt19937_64& rng, std::size_t max_rank = 12);

// Random product of elementary matrices and its inverse.
std::pair<IntMatrix, IntMatrix> random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 0);

} // namespace neron
