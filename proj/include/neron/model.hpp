#pragma once

#include "neron/abgroup.hpp"
#include "neron/lattice_auto.hpp"
#include "neron/linalg.hpp"
#include "neron/poly.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace neron {

enum class Arithmetic { exact, modular };

struct Ranks {
    long t = 0;
    long a = 0;
    long u = 0;
    long t_tilde = 0;
    long a_tilde = 0;

    bool operator==(const Ranks&) const = default;
};

// A lattice U = Z^rank with the matrix of an inertia generator tau and the
// filtration V^0 ⊇ V^1 ⊇ V^2 ⊇ V^3, each given by generator
// columns. In modular mode tau holds residues mod l^precision.
struct GaloisLatticeModel {
    std::string name;
    std::int64_t l = 2;
    Arithmetic mode = Arithmetic::exact;
    unsigned precision = 0;         // N, modular mode only
    unsigned working_precision = 0; // precision used while constructing
    IntMatrix tau;
    std::array<IntMatrix, 4> filtration;
    Ranks ranks;
    CycloMultiplicities m_t;
    CycloMultiplicities m_a;
    // Characteristic polynomials of the finite-order action on the toric and
    // abelian parts; they let multiplicities be recomputed at other primes.
    std::optional<ZPoly> charpoly_t;
    std::optional<ZPoly> charpoly_a;
    std::vector<std::string> warnings;
    // False only for Example 5.3 at l = 2, where the rank identities
    // cannot hold.
    bool rank_identities = true;

    std::size_t rank() const { return tau.rows(); }
};

// Checks shapes, nesting, tau-stability, torsion-free quotients with the
// ranks t~-t, 2(a~-a), t~-t, t and t+a+u = t~+a~ = rank/2. Throws ModelError.
void validate_model(const GaloisLatticeModel& m);

struct PhiReport {
    Partition phi;
    std::array<Partition, 4> graded; // Φ/Φ¹, Φ¹/Φ², Φ²/Φ³, Φ³
    // layers[{i,j}] = Φ^i/Φ^j for 0 <= i < j <= 4 (Φ^4 = 0).
    std::map<std::pair<int, int>, Partition> layers;
    std::size_t corank = 0;

    const Partition& layer(int i, int j) const { return layers.at({i, j}); }
    bool operator==(const PhiReport&) const = default;
};

// Φ^i/Φ^j = (V^i + N)/(V^j + N) with N = (tau - 1)U.
// Throws PrecisionError when a divisor reaches l^N in modular mode and
// ModelError on a non-finite Φ.
PhiReport compute_phi(const GaloisLatticeModel& m);

// Same quotients via V^i/(V^{i+1} + V^i ∩ N); exact models only.
std::array<Partition, 4> graded_by_intersection(const GaloisLatticeModel& m);

GaloisLatticeModel model_example51(const std::vector<Integer>& ns, std::int64_t l);
GaloisLatticeModel model_example52(std::int64_t l, unsigned i);
GaloisLatticeModel model_example53(std::int64_t l, unsigned i);
GaloisLatticeModel model_example54(std::int64_t l, unsigned r, unsigned s, unsigned precision);
GaloisLatticeModel model_example55(std::int64_t l, unsigned r, unsigned precision);

enum class EllipticKind { klein, cyclic2 };
GaloisLatticeModel model_unipotent_elliptic(EllipticKind kind, std::int64_t l = 2);

// tau = identity on Z^{2a}; trivial filtration.
GaloisLatticeModel model_abelian_pad(long a, std::int64_t l);
// u copies of the companion matrix of x^2 - x + 1; trivial Φ.
GaloisLatticeModel model_unipotent_pad(long u, std::int64_t l);

// Block sum. Exact summands are reduced into the ring of the modular ones;
// two different precisions are a mode mismatch (InvalidArgument).
GaloisLatticeModel direct_sum(const std::vector<GaloisLatticeModel>& models);

// The same exact model read at another prime, with multiplicities
// recomputed from the stored characteristic polynomials.
GaloisLatticeModel at_prime(const GaloisLatticeModel& m, std::int64_t l);

struct Thm33Part {
    bool ok = false;
    Integer lhs;
    Integer mid;
    Integer rhs;
    std::string text;
};

struct Thm33Verdict {
    std::array<Thm33Part, 6> parts;
    bool all_ok() const;
};

// t_l - t := sum m_t,i phi(l^i), 2(a_l - a) := sum m_a,i phi(l^i).
Thm33Verdict check_thm33(const GaloisLatticeModel& m, const PhiReport& r);

struct PrimeReport {
    std::int64_t l;
    GaloisLatticeModel model;
    PhiReport report;
};

struct Cor34Verdict {
    std::array<bool, 6> ok{};
    std::array<Integer, 6> lhs{};
    std::array<Integer, 6> rhs{};
    bool all_ok() const;
};

// Aggregates over primes with t_t - t and 2(a_t - a) taken from the stored
// characteristic polynomials (degree minus multiplicity of x - 1).
// Throws InvalidArgument on inconsistent declarations.
Cor34Verdict check_cor34(const std::vector<PrimeReport>& reports);
// Reads an exact model at each given prime and checks Cor 3.4.
Cor34Verdict check_cor34_model(const GaloisLatticeModel& m, const std::vector<std::int64_t>& primes);

// Self-check results recorded while building Examples 5.4/5.5.
struct TwistedChecks {
    bool integral = false;
    bool intertwines = false;
    bool sub_block = false;
    bool quotient_block = false;
    std::size_t corank_mod_l = 0;
    unsigned resultant_valuation = 0;
};
TwistedChecks twisted_self_checks(std::int64_t l, unsigned r, unsigned s);

} // namespace neron
