#include "neron/lattice_auto.hpp"

#include "neron/errors.hpp"

#include <numeric>

namespace neron {

LatticeAuto::LatticeAuto(IntMatrix sigma, std::optional<std::uint64_t> declared_order)
    : sigma_(std::move(sigma)), order_(declared_order)
{
    if (sigma_.rows() != sigma_.cols())
        throw InvalidArgument("LatticeAuto: sigma must be square");
    Integer d = determinant(sigma_);
    if (d != 1 && d != -1)
        throw InvalidArgument("LatticeAuto: det(sigma) = " + d.get_str() + " is not a unit");
    if (order_) {
        if (*order_ == 0)
            throw InvalidArgument("LatticeAuto: declared order must be positive");
        if (power(sigma_, *order_) != IntMatrix::identity(dim()))
            throw InvalidArgument("LatticeAuto: sigma^order is not the identity");
    }
}

CycloMultiplicities cyclotomic_multiplicities(const ZPoly& cp, std::int64_t l)
{
    require_prime(l, "cyclotomic_multiplicities");
    CycloMultiplicities m;
    const int deg = degree(cp);
    for (unsigned i = 1; phi_prime_power(l, i) <= deg; ++i)
        m.push_back(static_cast<int>(multiplicity(cp, cyclotomic_poly(l, i))));
    while (!m.empty() && m.back() == 0)
        m.pop_back();
    return m;
}

CycloMultiplicities cyclotomic_multiplicities(const IntMatrix& sigma, std::int64_t l)
{
    return cyclotomic_multiplicities(charpoly(sigma), l);
}

CycloMultiplicities multiplicities_of(const ZPoly& poly, std::int64_t l) { return cyclotomic_multiplicities(poly, l); }

Partition conjugate_counts(const CycloMultiplicities& m)
{
    std::vector<int> q;
    for (int x : m) {
        if (x < 0)
            throw InvalidArgument("conjugate_counts: negative multiplicity");
        q.push_back(x);
    }
    return conjugate(Partition::from_unsorted(std::move(q)));
}

Integer cyclotomic_rank(const CycloMultiplicities& m, std::int64_t l)
{
    Integer s = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        s += phi_prime_power(l, static_cast<unsigned>(i + 1)) * m[i];
    return s;
}

CoinvariantReport check_coinvariant_bound(const LatticeAuto& a, std::int64_t l)
{
    require_prime(l, "check_coinvariant_bound");
    ZPoly cp = charpoly(a.sigma());
    if (evaluate(cp, 1) == 0)
        throw PreconditionError("check_coinvariant_bound: 1 is an eigenvalue of sigma");
    CoinvariantReport r;
    r.rank = a.dim();
    IntMatrix s1 = a.sigma() - IntMatrix::identity(a.dim());
    auto inv = cokernel_l_part(s1, l);
    if (inv.corank != 0)
        throw PreconditionError("check_coinvariant_bound: coinvariants are not finite");
    r.coinv = inv.torsion;
    r.m = cyclotomic_multiplicities(cp, l);
    r.p = conjugate_counts(r.m);
    r.delta_coinv = delta_l(l, r.coinv);
    r.bound = delta_l(l, r.p);
    r.cyclo_rank = cyclotomic_rank(r.m, l);
    r.rank_bound_ok = r.delta_coinv <= r.bound && r.bound <= r.cyclo_rank && r.cyclo_rank <= Integer(static_cast<unsigned long>(r.rank));
    r.equality = r.delta_coinv == Integer(static_cast<unsigned long>(r.rank));
    if (r.equality) {
        // m weakly decreasing without gaps, coinvariants equal to p, and the
        // characteristic polynomial is exactly prod f_{l,i}^{m_i}.
        bool ok = r.coinv == r.p;
        for (std::size_t i = 0; i + 1 < r.m.size(); ++i)
            if (r.m[i] < r.m[i + 1])
                ok = false;
        ZPoly prod{Integer(1)};
        for (std::size_t i = 0; i < r.m.size(); ++i)
            for (int k = 0; k < r.m[i]; ++k)
                prod = prod * cyclotomic_poly(l, static_cast<unsigned>(i + 1));
        if (prod != cp)
            ok = false;
        r.structure_ok = ok;
    }
    return r;
}

std::pair<IntMatrix, IntMatrix> random_unimodular(std::size_t n, std::mt19937_64& rng, int steps)
{
    IntMatrix u = IntMatrix::identity(n);
    IntMatrix uinv = IntMatrix::identity(n);
    if (n < 2)
        return {u, uinv};
    if (steps <= 0)
        steps = static_cast<int>(3 * n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int k = 0; k < steps; ++k) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j)
            continue;
        int c = coef(rng);
        if (c == 0)
            c = 1;
        // E = I + c e_ij: row_i += c row_j on u; col_j -= c col_i on uinv.
        u.add_row_multiple(i, j, c);
        uinv.add_col_multiple(j, i, -c);
    }
    return {u, uinv};
}

namespace {

struct Factor {
    ZPoly poly;
    std::uint64_t order;
};

std::vector<Factor> candidate_factors(std::int64_t l, std::size_t max_rank)
{
    std::vector<Factor> out;
    std::uint64_t lp = static_cast<std::uint64_t>(l);
    for (unsigned i = 1; phi_prime_power(l, i) <= static_cast<long>(max_rank); ++i, lp *= static_cast<std::uint64_t>(l))
        out.push_back({cyclotomic_poly(l, i), lp});
    // Cyclotomic factors whose roots have order prime to l or composite.
    std::vector<Factor> other = {
        {ZPoly{1, 1}, 2},      // Phi_2
        {ZPoly{1, 1, 1}, 3},   // Phi_3
        {ZPoly{1, 0, 1}, 4},   // Phi_4
        {ZPoly{1, -1, 1}, 6},  // Phi_6
    };
    for (auto& f : other) {
        bool is_l_power = false;
        for (const auto& g : out)
            if (g.poly == f.poly)
                is_l_power = true;
        if (!is_l_power)
            out.push_back(f);
    }
    return out;
}

} // namespace

LatticeAuto random_lattice_auto(std::int64_t l, std::mt19937_64& rng, std::size_t max_rank)
{
    require_prime(l, "random_lattice_auto");
    auto cands = candidate_factors(l, max_rank);
    // The f_{l,i} come first in `cands`.
    std::size_t n_lpow = 0;
    for (std::uint64_t o = static_cast<std::uint64_t>(l); n_lpow < cands.size() && cands[n_lpow].order == o;
         o *= static_cast<std::uint64_t>(l))
        ++n_lpow;

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<IntMatrix> blocks;
    std::size_t used = 0;
    std::uint64_t order = 1;
    std::size_t target = 1 + std::uniform_int_distribution<std::size_t>(0, max_rank - 1)(rng);
    int attempts = 0;
    while (used < target && attempts++ < 50) {
        ZPoly block{Integer(1)};
        std::uint64_t block_order = 1;
        double mode = unit(rng);
        if (mode < 0.5 && n_lpow > 0) {
            // Initial segment f_{l,1} ... f_{l,r}, the Lemma 4.7 shape.
            std::size_t r = 1 + std::uniform_int_distribution<std::size_t>(0, n_lpow - 1)(rng);
            for (std::size_t i = 0; i < r; ++i) {
                block = block * cands[i].poly;
                block_order = std::lcm(block_order, cands[i].order);
            }
        } else {
            for (const auto& f : cands)
                if (unit(rng) < 0.35) {
                    block = block * f.poly;
                    block_order = std::lcm(block_order, f.order);
                }
        }
        std::size_t d = static_cast<std::size_t>(degree(block));
        if (d == 0 || used + d > max_rank)
            continue;
        blocks.push_back(companion_matrix(block));
        used += d;
        order = std::lcm(order, block_order);
    }
    if (blocks.empty()) {
        blocks.push_back(companion_matrix(cands[0].poly));
        order = cands[0].order;
    }
    IntMatrix sigma = block_diagonal(blocks);
    auto [u, uinv] = random_unimodular(sigma.rows(), rng);
    return LatticeAuto(u * sigma * uinv, order);
}

} // namespace neron
