#pragma once

#include "neron/matrix.hpp"
#include "neron/partition.hpp"

#include <cstdint>
#include <vector>

namespace neron {

// Smith decomposition: left * m * (some unimodular) = diag(diagonal),
// with diagonal[i] | diagonal[i+1] and zeros last. `left` is only filled
// when requested.
struct SmithDecomposition {
    std::vector<Integer> diagonal; // min(rows, cols) entries
    std::size_t rank = 0;
    IntMatrix left;
};

SmithDecomposition smith_decompose(const IntMatrix& m, bool track_left);

// Elementary divisors d_1 | d_2 | ... of m, length min(rows, cols).
std::vector<Integer> smith_form(const IntMatrix& m);

// l-primary torsion of a finitely generated abelian group, plus free rank.
struct GroupInvariants {
    Partition torsion;
    std::size_t corank = 0;

    bool operator==(const GroupInvariants&) const = default;
};

// coker(m: Z^cols -> Z^rows).
GroupInvariants cokernel_l_part(const IntMatrix& m, std::int64_t l);

// Column-style Hermite form: m * u = h with h in column echelon form.
struct HermiteDecomposition {
    IntMatrix h;
    IntMatrix u;
    std::size_t rank = 0;
};

HermiteDecomposition hermite_decompose(const IntMatrix& m);

// Sub-lattices of Z^n are given by generator columns; results are bases.
IntMatrix lattice_basis(const IntMatrix& gens);
IntMatrix kernel_basis(const IntMatrix& m);
IntMatrix lattice_sum(const IntMatrix& a, const IntMatrix& b);
IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);
bool lattice_contains(const IntMatrix& lattice, const IntMatrix& sub);

// l-part and free rank of L/S; throws InvalidArgument when S is not in L.
GroupInvariants quotient_invariants(const IntMatrix& lattice, const IntMatrix& sub, std::int64_t l);

// Smith form over the chain ring Z/l^N. Exponent e_i means a divisor
// l^{e_i}; e_i == N marks a divisor that is zero at this precision.
struct ModSmithDecomposition {
    std::vector<unsigned> exponents;
    ModMatrix left;
};

ModSmithDecomposition mod_smith_decompose(const ModMatrix& m, bool track_left);
std::vector<unsigned> mod_diagonalize(const ModMatrix& m);

// Invariants of X/Y for submodules Y <= X of (Z/l^N)^n given by generator
// columns. `saturated` counts Z/l^N summands, which cannot be told apart
// from free summands at this precision.
struct ModQuotient {
    Partition invariants; // parts < N only
    std::size_t saturated = 0;
};

ModQuotient mod_quotient_invariants(const ModMatrix& x, const ModMatrix& y);
bool mod_submodule_contains(const ModMatrix& x, const ModMatrix& y);

} // namespace neron
