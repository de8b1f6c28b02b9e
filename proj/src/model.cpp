#include "neron/model.hpp"

#include "neron/errors.hpp"

#include <algorithm>

namespace neron {

namespace {

bool is_modular(const GaloisLatticeModel& m) { return m.mode == Arithmetic::modular; }

IntMatrix tau_minus_one(const GaloisLatticeModel& m)
{
    return m.tau - IntMatrix::identity(m.rank());
}

ModMatrix as_mod(const GaloisLatticeModel& m, const IntMatrix& x) { return ModMatrix(m.l, m.precision, x); }

// Rank of a sub-lattice, and whether it is a direct summand in modular mode.
std::size_t sub_rank(const GaloisLatticeModel& m, const IntMatrix& gens, bool& summand)
{
    summand = true;
    if (gens.cols() == 0)
        return 0;
    if (!is_modular(m))
        return hermite_decompose(gens).rank;
    std::size_t r = 0;
    for (unsigned e : mod_diagonalize(as_mod(m, gens))) {
        if (e == 0)
            ++r;
        else if (e < m.precision)
            summand = false;
    }
    return r;
}

bool contains(const GaloisLatticeModel& m, const IntMatrix& big, const IntMatrix& small)
{
    if (small.cols() == 0)
        return true;
    if (big.cols() == 0)
        return small.is_zero() || (is_modular(m) && as_mod(m, small).lift().is_zero());
    if (!is_modular(m))
        return lattice_contains(big, small);
    return mod_submodule_contains(as_mod(m, big), as_mod(m, small));
}

IntMatrix empty_cols(std::size_t n) { return IntMatrix(n, 0); }

void check_stable(const GaloisLatticeModel& m)
{
    for (int i = 0; i < 4; ++i)
        if (!contains(m, m.filtration[i], m.tau * m.filtration[i]))
            throw ModelError(m.name + ": filtration step " + std::to_string(i) + " is not tau-stable");
}

} // namespace

void validate_model(const GaloisLatticeModel& m)
{
    const std::size_t n = m.rank();
    if (m.tau.cols() != n)
        throw ModelError(m.name + ": tau is not square");
    require_prime(m.l, "model");
    if (is_modular(m) && m.precision == 0)
        throw ModelError(m.name + ": modular model without precision");
    for (int i = 0; i < 4; ++i)
        if (m.filtration[i].rows() != n)
            throw ModelError(m.name + ": filtration step " + std::to_string(i) + " has the wrong ambient dimension");
    for (int i = 0; i < 3; ++i)
        if (!contains(m, m.filtration[i], m.filtration[i + 1]))
            throw ModelError(m.name + ": filtration is not nested at step " + std::to_string(i + 1));
    check_stable(m);
    if (!is_modular(m) && determinant(m.tau) == 0)
        throw ModelError(m.name + ": tau is singular");

    std::array<std::size_t, 5> r{};
    for (int i = 0; i < 4; ++i) {
        bool summand = true;
        r[i] = sub_rank(m, m.filtration[i], summand);
        if (!summand)
            throw ModelError(m.name + ": filtration step " + std::to_string(i) + " is not a free direct summand");
    }
    // Successive quotients must be torsion free (their l-part, in exact mode).
    for (int i = 0; i < 3; ++i) {
        if (m.filtration[i + 1].cols() == 0 || r[i] == 0)
            continue;
        if (!is_modular(m)) {
            auto q = quotient_invariants(m.filtration[i], m.filtration[i + 1], m.l);
            if (!q.torsion.empty())
                throw ModelError(m.name + ": quotient V^" + std::to_string(i) + "/V^" + std::to_string(i + 1) + " has torsion");
        } else {
            auto q = mod_quotient_invariants(as_mod(m, m.filtration[i]), as_mod(m, m.filtration[i + 1]));
            if (!q.invariants.empty())
                throw ModelError(m.name + ": quotient V^" + std::to_string(i) + "/V^" + std::to_string(i + 1) + " has torsion");
        }
    }
    const Ranks& k = m.ranks;
    if (k.t < 0 || k.a < 0 || k.u < 0 || k.t_tilde < 0 || k.a_tilde < 0)
        throw ModelError(m.name + ": negative rank");
    for (int x : m.m_t)
        if (x < 0)
            throw ModelError(m.name + ": negative multiplicity");
    for (int x : m.m_a)
        if (x < 0)
            throw ModelError(m.name + ": negative multiplicity");
    if (!m.rank_identities)
        return;
    if (n % 2 != 0 || k.t + k.a + k.u != static_cast<long>(n / 2) || k.t_tilde + k.a_tilde != static_cast<long>(n / 2))
        throw ModelError(m.name + ": t+a+u = t~+a~ = rank/2 fails");
    std::array<long, 4> expect{k.t_tilde - k.t, 2 * (k.a_tilde - k.a), k.t_tilde - k.t, k.t};
    for (int i = 0; i < 4; ++i) {
        long got = static_cast<long>(r[i]) - static_cast<long>(r[i + 1]);
        if (got != expect[i])
            throw ModelError(m.name + ": rank of V^" + std::to_string(i) + "/V^" + std::to_string(i + 1) + " is " +
                             std::to_string(got) + ", expected " + std::to_string(expect[i]));
    }
}

PhiReport compute_phi(const GaloisLatticeModel& m)
{
    const std::size_t n = m.rank();
    check_stable(m);
    PhiReport rep;
    IntMatrix nmat = tau_minus_one(m);
    std::array<IntMatrix, 5> x;
    if (!is_modular(m)) {
        IntMatrix nb = lattice_basis(nmat);
        for (int i = 0; i < 4; ++i)
            x[i] = lattice_sum(m.filtration[i], nb);
        x[4] = nb;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j <= 4; ++j) {
                auto q = quotient_invariants(x[i], x[j], m.l);
                if (i == 0 && j == 4)
                    rep.corank = q.corank;
                rep.layers[{i, j}] = q.torsion;
            }
        if (rep.corank != 0)
            throw ModelError(m.name + ": Φ is infinite (corank " + std::to_string(rep.corank) + ")");
    } else {
        for (int i = 0; i < 4; ++i)
            x[i] = hconcat(m.filtration[i].cols() ? m.filtration[i] : empty_cols(n), nmat);
        x[4] = nmat;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j <= 4; ++j) {
                auto q = mod_quotient_invariants(as_mod(m, x[i]), as_mod(m, x[j]));
                if (q.saturated > 0)
                    throw PrecisionError(m.name + ": a divisor reaches l^" + std::to_string(m.precision) +
                                         "; increase the precision");
                rep.layers[{i, j}] = q.invariants;
            }
    }
    rep.phi = rep.layers.at({0, 4});
    for (int i = 0; i < 4; ++i)
        rep.graded[i] = rep.layers.at({i, i + 1});
    int total = 0;
    for (const auto& g : rep.graded)
        total += g.total();
    if (total != rep.phi.total())
        throw ModelError(m.name + ": graded pieces do not multiply up to |Φ|");
    return rep;
}

std::array<Partition, 4> graded_by_intersection(const GaloisLatticeModel& m)
{
    if (is_modular(m))
        throw InvalidArgument("graded_by_intersection: exact models only");
    const std::size_t n = m.rank();
    IntMatrix nb = lattice_basis(tau_minus_one(m));
    std::array<Partition, 4> out;
    for (int i = 0; i < 4; ++i) {
        const IntMatrix& vi = m.filtration[i];
        if (vi.cols() == 0)
            continue;
        IntMatrix next = i < 3 ? m.filtration[i + 1] : empty_cols(n);
        IntMatrix inter = lattice_intersection(vi, nb);
        IntMatrix denom = lattice_sum(next.cols() ? next : empty_cols(n), inter);
        if (denom.cols() == 0) {
            auto q = quotient_invariants(vi, empty_cols(n), m.l);
            out[i] = q.torsion;
            continue;
        }
        out[i] = quotient_invariants(vi, denom, m.l).torsion;
    }
    return out;
}

namespace {

IntMatrix unit_columns(std::size_t n, std::size_t first, std::size_t count)
{
    IntMatrix m(n, count);
    for (std::size_t j = 0; j < count; ++j)
        m(first + j, j) = 1;
    return m;
}

std::vector<int> ones(unsigned k) { return std::vector<int>(k, 1); }

ZPoly x_minus_one_power(unsigned k)
{
    ZPoly p{Integer(1)};
    for (unsigned i = 0; i < k; ++i)
        p = p * ZPoly{-1, 1};
    return p;
}

} // namespace

GaloisLatticeModel model_example51(const std::vector<Integer>& ns, std::int64_t l)
{
    require_prime(l, "model_example51");
    const std::size_t k = ns.size();
    GaloisLatticeModel m;
    m.name = "example51";
    m.l = l;
    m.tau = IntMatrix::identity(2 * k);
    IntMatrix w(2 * k, k);
    for (std::size_t i = 0; i < k; ++i) {
        if (ns[i] <= 0)
            throw InvalidArgument("model_example51: n_i must be positive");
        m.tau(2 * i, 2 * i + 1) = ns[i];
        w(2 * i, i) = 1;
    }
    for (auto& f : m.filtration)
        f = w;
    long t = static_cast<long>(k);
    m.ranks = {t, 0, 0, t, 0};
    m.charpoly_t = x_minus_one_power(static_cast<unsigned>(k));
    m.charpoly_a = ZPoly{Integer(1)};
    return m;
}

GaloisLatticeModel model_example52(std::int64_t l, unsigned i)
{
    IntMatrix x = lambda_mult_matrix(l, 1, i);
    const std::size_t n = x.rows();
    GaloisLatticeModel m;
    m.name = "example52";
    m.l = l;
    m.tau = IntMatrix(2 * n, 2 * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            m.tau(a, b) = x(a, b);
            m.tau(a, n + b) = x(a, b);
            m.tau(n + a, n + b) = x(a, b);
        }
    m.filtration[0] = IntMatrix::identity(2 * n);
    m.filtration[1] = unit_columns(2 * n, 0, n);
    m.filtration[2] = m.filtration[1];
    m.filtration[3] = empty_cols(2 * n);
    long d = static_cast<long>(n);
    m.ranks = {0, 0, d, d, 0};
    m.m_t = ones(i);
    m.charpoly_t = cyclotomic_product(l, 1, i);
    m.charpoly_a = ZPoly{Integer(1)};
    return m;
}

GaloisLatticeModel model_example53(std::int64_t l, unsigned i)
{
    IntMatrix x = lambda_mult_matrix(l, 1, i);
    const std::size_t n = x.rows();
    GaloisLatticeModel m;
    m.name = "example53";
    m.l = l;
    m.tau = x;
    m.filtration[0] = IntMatrix::identity(n);
    m.filtration[1] = m.filtration[0];
    m.filtration[2] = empty_cols(n);
    m.filtration[3] = empty_cols(n);
    long h = static_cast<long>(n / 2);
    m.ranks = {0, 0, h, 0, h};
    m.m_a = ones(i);
    m.charpoly_t = ZPoly{Integer(1)};
    m.charpoly_a = cyclotomic_product(l, 1, i);
    if (l == 2) {
        m.rank_identities = false;
        m.warnings.push_back("example53 at l = 2: odd lattice rank, rank identities not enforced");
    }
    return m;
}

namespace {

Integer rational_mod(const Rational& q, std::int64_t l, const Integer& modulus, bool& integral)
{
    Integer den = q.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(l))) {
        integral = false;
        return 0;
    }
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
    Integer r = q.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

QPoly coeffs(const QPoly& p, std::size_t n)
{
    QPoly c = p;
    c.resize(n);
    return c;
}

// x * b'(x): sends x^i to i x^i.
QPoly x_derivative(const QPoly& b)
{
    QPoly r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        r[i] = b[i] * static_cast<long>(i);
    trim(r);
    return r;
}

struct Twisted {
    std::size_t n1 = 0; // rank of Λ_{l,r+s}
    std::size_t n2 = 0; // rank of Λ_{l,r}
    ZPoly g, h, f;
    std::vector<Rational> tau; // (n1+n2)^2, row-major
    TwistedChecks checks;

    Rational& at(std::size_t i, std::size_t j) { return tau[i * (n1 + n2) + j]; }
};

// Lattice M = β(Λ_{l,r+s} ⊕ Λ_{l,r}) of Example 5.4, with y_1 = 0,
// y_2 = g^{-1} in Λ_{l,r,s}⊗Q and z = (x g')^{-1} in Λ_{l,r}⊗Q. s = 0 is
// the two-step variant of Example 5.5.
Twisted build_twisted(std::int64_t l, unsigned r, unsigned s)
{
    require_prime(l, "twisted model");
    if (r < 1)
        throw InvalidArgument("twisted model: r must be >= 1");
    Twisted tw;
    tw.g = cyclotomic_product(l, 1, r);
    tw.h = cyclotomic_product(l, r + 1, r + s);
    tw.f = tw.g * tw.h;
    tw.n2 = static_cast<std::size_t>(degree(tw.g));
    tw.n1 = static_cast<std::size_t>(degree(tw.f));
    const std::size_t nh = static_cast<std::size_t>(degree(tw.h));
    const std::size_t n = tw.n1 + tw.n2;
    const QPoly gq = to_q(tw.g), hq = to_q(tw.h), fq = to_q(tw.f);
    const QPoly x{Rational(0), Rational(1)};

    QPoly z = invert_mod(mod(x * to_q(derivative(tw.g)), gq), gq);
    QPoly y2, eg{Rational(1)}, eh;
    if (nh > 0) {
        y2 = invert_mod(mod(gq, hq), hq);
        eg = mod(hq * invert_mod(mod(hq, gq), gq), fq);
        eh = mod(gq * y2, fq);
        tw.checks.resultant_valuation = valuation(resultant(tw.g, tw.h), l);
    }
    auto mod_h = [&](const QPoly& p) { return nh > 0 ? mod(p, hq) : QPoly{}; };
    // φ~(b) in V^1 = Λ_{l,r}⊗Q ⊕ Λ_{l,r,s}⊗Q, for b of degree < n2.
    auto phi_tilde = [&](const QPoly& b) -> std::pair<QPoly, QPoly> {
        return {mod(x_derivative(b) * z, gq), mod_h(b * y2)};
    };
    // Λ_{l,r+s}⊗Q from its two CRT components.
    auto to_f = [&](const QPoly& u, const QPoly& w) { return mod(u * eg + w * eh, fq); };

    tw.tau.assign(n * n, Rational(0));
    // First block: multiplication by x on Λ_{l,r+s}.
    IntMatrix xf = companion_matrix(tw.f);
    for (std::size_t i = 0; i < tw.n1; ++i)
        for (std::size_t j = 0; j < tw.n1; ++j)
            tw.at(i, j) = xf(i, j);
    // Columns for b = x^j: (xzb + xφ~(b) - φ~(xb), xb).
    std::vector<QPoly> corrections;
    for (std::size_t j = 0; j < tw.n2; ++j) {
        QPoly b(j + 1, Rational(0));
        b[j] = 1;
        QPoly xb = mod(x * b, gq);
        auto pb = phi_tilde(b);
        auto pxb = phi_tilde(xb);
        QPoly c1 = mod(x * z * b + x * pb.first, gq) - pxb.first;
        QPoly c2 = mod_h(x * pb.second) - pxb.second;
        QPoly c = to_f(mod(c1, gq), mod_h(c2));
        corrections.push_back(c);
        QPoly cc = coeffs(c, tw.n1), xbc = coeffs(xb, tw.n2);
        for (std::size_t i = 0; i < tw.n1; ++i)
            tw.at(i, tw.n1 + j) = cc[i];
        for (std::size_t i = 0; i < tw.n2; ++i)
            tw.at(tw.n1 + i, tw.n1 + j) = xbc[i];
    }

    // (i) integrality.
    tw.checks.integral = true;
    for (const auto& q : tw.tau)
        if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), static_cast<unsigned long>(l)))
            tw.checks.integral = false;

    // β(a, b) = (a mod g + φ~(b)_1, a mod h + φ~(b)_2, z b) must intertwine the
    // action on the source with the block action on V.
    struct VElt {
        QPoly v1, v2, v3;
        bool operator==(const VElt&) const = default;
    };
    auto beta = [&](const QPoly& a, const QPoly& b) {
        auto pb = phi_tilde(b);
        VElt v{mod(a, gq) + pb.first, mod_h(a) + pb.second, mod(z * b, gq)};
        trim(v.v1);
        trim(v.v2);
        trim(v.v3);
        return v;
    };
    auto tau_v = [&](const VElt& v) {
        VElt w{mod(x * v.v1 + x * v.v3, gq), mod_h(x * v.v2), mod(x * v.v3, gq)};
        return w;
    };
    tw.checks.intertwines = true;
    for (std::size_t k = 0; k < n; ++k) {
        QPoly a, b;
        if (k < tw.n1) {
            a.assign(k + 1, Rational(0));
            a[k] = 1;
        } else {
            b.assign(k - tw.n1 + 1, Rational(0));
            b[k - tw.n1] = 1;
        }
        QPoly ta(tw.n1), tb(tw.n2);
        for (std::size_t i = 0; i < tw.n1; ++i)
            ta[i] = tw.at(i, k);
        for (std::size_t i = 0; i < tw.n2; ++i)
            tb[i] = tw.at(tw.n1 + i, k);
        trim(ta);
        trim(tb);
        if (!(tau_v(beta(a, b)) == beta(ta, tb)))
            tw.checks.intertwines = false;
    }

    // (ii)/(iii) block structure.
    tw.checks.sub_block = true;
    for (std::size_t i = tw.n1; i < n; ++i)
        for (std::size_t j = 0; j < tw.n1; ++j)
            if (tw.at(i, j) != 0)
                tw.checks.sub_block = false;
    IntMatrix xg = companion_matrix(tw.g);
    tw.checks.quotient_block = true;
    for (std::size_t i = 0; i < tw.n2; ++i)
        for (std::size_t j = 0; j < tw.n2; ++j)
            if (tw.at(tw.n1 + i, tw.n1 + j) != Rational(xg(i, j)))
                tw.checks.quotient_block = false;

    // (iv) corank of τ-1 mod l on M/M^2 (on M itself when s = 0).
    if (tw.checks.integral) {
        Integer lz(static_cast<long>(l));
        bool integral = true;
        std::size_t q1 = nh > 0 ? nh : 0;
        std::size_t dim = q1 + tw.n2;
        IntMatrix tbar(dim, dim);
        if (nh > 0) {
            IntMatrix xh = companion_matrix(tw.h);
            for (std::size_t i = 0; i < nh; ++i)
                for (std::size_t j = 0; j < nh; ++j)
                    tbar(i, j) = xh(i, j);
            for (std::size_t j = 0; j < tw.n2; ++j) {
                QPoly cj = coeffs(mod(corrections[j], hq), nh);
                for (std::size_t i = 0; i < nh; ++i)
                    tbar(i, q1 + j) = rational_mod(cj[i], l, lz, integral);
            }
            for (std::size_t i = 0; i < tw.n2; ++i)
                for (std::size_t j = 0; j < tw.n2; ++j)
                    tbar(q1 + i, q1 + j) = xg(i, j);
        } else {
            dim = n;
            tbar = IntMatrix(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    tbar(i, j) = rational_mod(tw.at(i, j), l, lz, integral);
        }
        IntMatrix tm1 = tbar - IntMatrix::identity(dim);
        std::size_t rk = 0;
        for (unsigned e : mod_diagonalize(ModMatrix(l, 1, tm1)))
            if (e == 0)
                ++rk;
        tw.checks.corank_mod_l = dim - rk;
    }
    return tw;
}

GaloisLatticeModel twisted_model(std::int64_t l, unsigned r, unsigned s, unsigned precision)
{
    if (precision < 1)
        throw InvalidArgument("precision must be >= 1");
    Twisted tw = build_twisted(l, r, s);
    const auto& c = tw.checks;
    std::string what = s > 0 ? "example54" : "example55";
    if (!c.integral)
        throw ModelError(what + ": tau is not integral");
    if (!c.intertwines)
        throw ModelError(what + ": tau does not intertwine with the action on V");
    if (!c.sub_block || !c.quotient_block)
        throw ModelError(what + ": block structure check failed");
    if (c.corank_mod_l != 1)
        throw ModelError(what + ": tau - 1 mod l has corank " + std::to_string(c.corank_mod_l));

    const std::size_t n = tw.n1 + tw.n2;
    GaloisLatticeModel m;
    m.name = what;
    m.l = l;
    m.mode = Arithmetic::modular;
    m.precision = precision;
    m.working_precision = precision + c.resultant_valuation + 2;
    Integer work = ipow(l, m.working_precision);
    Integer store = ipow(l, precision);
    m.tau = IntMatrix(n, n);
    bool integral = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Integer v = rational_mod(tw.at(i, j), l, work, integral);
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), store.get_mpz_t());
            m.tau(i, j) = v;
        }
    m.filtration[0] = IntMatrix::identity(n);
    m.filtration[1] = unit_columns(n, 0, tw.n1);
    if (s > 0) {
        // M^2 = h Λ_{l,r+s}: generators x^j h, j < deg g.
        IntMatrix v2(n, tw.n2);
        for (std::size_t j = 0; j < tw.n2; ++j)
            for (std::size_t i = 0; i < tw.h.size(); ++i)
                v2(i + j, j) = tw.h[i];
        m.filtration[2] = v2;
    } else {
        m.filtration[2] = m.filtration[1];
    }
    m.filtration[3] = empty_cols(n);
    long tt = static_cast<long>(tw.n2);
    long at = static_cast<long>((tw.n1 - tw.n2) / 2);
    m.ranks = {0, 0, tt + at, tt, at};
    m.m_t = ones(r);
    m.m_a.assign(r, 0);
    for (unsigned k = 0; k < s; ++k)
        m.m_a.push_back(1);
    if (s == 0)
        m.m_a.clear();
    m.charpoly_t = tw.g;
    m.charpoly_a = tw.h;
    return m;
}

} // namespace

TwistedChecks twisted_self_checks(std::int64_t l, unsigned r, unsigned s) { return build_twisted(l, r, s).checks; }

GaloisLatticeModel model_example54(std::int64_t l, unsigned r, unsigned s, unsigned precision)
{
    if (s < 1)
        throw InvalidArgument("model_example54: s must be >= 1");
    return twisted_model(l, r, s, precision);
}

GaloisLatticeModel model_example55(std::int64_t l, unsigned r, unsigned precision)
{
    return twisted_model(l, r, 0, precision);
}

GaloisLatticeModel model_unipotent_elliptic(EllipticKind kind, std::int64_t l)
{
    require_prime(l, "model_unipotent_elliptic");
    GaloisLatticeModel m;
    m.l = l;
    if (kind == EllipticKind::klein) {
        m.name = "klein";
        m.tau = IntMatrix::from_rows({{-1, 0}, {0, -1}});
        m.charpoly_a = ZPoly{1, 2, 1};
    } else {
        m.name = "cyclic2";
        m.tau = IntMatrix::from_rows({{0, -1}, {1, 0}});
        m.charpoly_a = ZPoly{1, 0, 1};
    }
    m.charpoly_t = ZPoly{Integer(1)};
    m.m_a = multiplicities_of(*m.charpoly_a, l);
    m.filtration[0] = IntMatrix::identity(2);
    m.filtration[1] = m.filtration[0];
    m.filtration[2] = empty_cols(2);
    m.filtration[3] = empty_cols(2);
    m.ranks = {0, 0, 1, 0, 1};
    return m;
}

GaloisLatticeModel model_abelian_pad(long a, std::int64_t l)
{
    require_prime(l, "model_abelian_pad");
    if (a < 0)
        throw InvalidArgument("model_abelian_pad: negative dimension");
    const std::size_t n = static_cast<std::size_t>(2 * a);
    GaloisLatticeModel m;
    m.name = "abelian_pad";
    m.l = l;
    m.tau = IntMatrix::identity(n);
    for (auto& f : m.filtration)
        f = empty_cols(n);
    m.ranks = {0, a, 0, 0, a};
    m.charpoly_t = ZPoly{Integer(1)};
    m.charpoly_a = x_minus_one_power(static_cast<unsigned>(n));
    return m;
}

GaloisLatticeModel model_unipotent_pad(long u, std::int64_t l)
{
    require_prime(l, "model_unipotent_pad");
    if (u < 0)
        throw InvalidArgument("model_unipotent_pad: negative dimension");
    ZPoly phi6{1, -1, 1};
    std::vector<IntMatrix> blocks(static_cast<std::size_t>(u), companion_matrix(phi6));
    const std::size_t n = static_cast<std::size_t>(2 * u);
    GaloisLatticeModel m;
    m.name = "unipotent_pad";
    m.l = l;
    m.tau = n ? block_diagonal(blocks) : IntMatrix(0, 0);
    m.filtration[0] = IntMatrix::identity(n);
    m.filtration[1] = m.filtration[0];
    m.filtration[2] = empty_cols(n);
    m.filtration[3] = empty_cols(n);
    m.ranks = {0, 0, u, 0, u};
    m.charpoly_t = ZPoly{Integer(1)};
    ZPoly cp{Integer(1)};
    for (long k = 0; k < u; ++k)
        cp = cp * phi6;
    m.charpoly_a = cp;
    return m;
}

namespace {

IntMatrix block_diag_gens(const std::vector<const IntMatrix*>& parts, const std::vector<std::size_t>& dims)
{
    std::size_t rows = 0, cols = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        rows += dims[k];
        cols += parts[k]->cols();
    }
    IntMatrix out(rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const IntMatrix& p = *parts[k];
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j)
                out(r0 + i, c0 + j) = p(i, j);
        r0 += dims[k];
        c0 += p.cols();
    }
    return out;
}

CycloMultiplicities add_mult(const CycloMultiplicities& a, const CycloMultiplicities& b)
{
    CycloMultiplicities c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        c[i] += b[i];
    return c;
}

} // namespace

GaloisLatticeModel direct_sum(const std::vector<GaloisLatticeModel>& models)
{
    if (models.empty())
        throw InvalidArgument("direct_sum: no summands");
    GaloisLatticeModel out;
    out.name = "sum";
    out.l = models[0].l;
    unsigned prec = 0;
    for (const auto& m : models) {
        if (m.l != out.l)
            throw InvalidArgument("direct_sum: summands live at different primes");
        if (m.mode == Arithmetic::modular) {
            if (prec != 0 && prec != m.precision)
                throw InvalidArgument("direct_sum: modular summands have different precisions");
            prec = m.precision;
            out.working_precision = std::max(out.working_precision, m.working_precision);
        }
    }
    if (prec) {
        out.mode = Arithmetic::modular;
        out.precision = prec;
    }
    std::vector<IntMatrix> taus;
    std::vector<std::size_t> dims;
    bool have_t = true, have_a = true;
    ZPoly ct{Integer(1)}, ca{Integer(1)};
    for (const auto& m : models) {
        taus.push_back(prec ? ModMatrix(out.l, prec, m.tau).lift() : m.tau);
        dims.push_back(m.rank());
        out.ranks.t += m.ranks.t;
        out.ranks.a += m.ranks.a;
        out.ranks.u += m.ranks.u;
        out.ranks.t_tilde += m.ranks.t_tilde;
        out.ranks.a_tilde += m.ranks.a_tilde;
        out.m_t = add_mult(out.m_t, m.m_t);
        out.m_a = add_mult(out.m_a, m.m_a);
        if (m.charpoly_t)
            ct = ct * *m.charpoly_t;
        else
            have_t = false;
        if (m.charpoly_a)
            ca = ca * *m.charpoly_a;
        else
            have_a = false;
        out.rank_identities = out.rank_identities && m.rank_identities;
        out.warnings.insert(out.warnings.end(), m.warnings.begin(), m.warnings.end());
    }
    out.tau = block_diagonal(taus);
    for (int i = 0; i < 4; ++i) {
        std::vector<const IntMatrix*> parts;
        for (const auto& m : models)
            parts.push_back(&m.filtration[i]);
        out.filtration[i] = block_diag_gens(parts, dims);
    }
    if (have_t)
        out.charpoly_t = ct;
    if (have_a)
        out.charpoly_a = ca;
    return out;
}

GaloisLatticeModel at_prime(const GaloisLatticeModel& m, std::int64_t l)
{
    require_prime(l, "at_prime");
    if (m.mode == Arithmetic::modular && l != m.l)
        throw InvalidArgument("at_prime: a modular model is tied to its prime");
    if (!m.charpoly_t || !m.charpoly_a)
        throw InvalidArgument("at_prime: model carries no characteristic polynomials");
    GaloisLatticeModel out = m;
    out.l = l;
    out.m_t = multiplicities_of(*m.charpoly_t, l);
    out.m_a = multiplicities_of(*m.charpoly_a, l);
    return out;
}

bool Thm33Verdict::all_ok() const
{
    for (const auto& p : parts)
        if (!p.ok)
            return false;
    return true;
}

Thm33Verdict check_thm33(const GaloisLatticeModel& m, const PhiReport& r)
{
    const std::int64_t l = m.l;
    Partition pt = conjugate_counts(m.m_t);
    Partition pa = conjugate_counts(m.m_a);
    Partition p = conjugate_counts(add_mult(m.m_t, m.m_a));
    Integer tl = cyclotomic_rank(m.m_t, l);
    Integer al2 = cyclotomic_rank(m.m_a, l);
    Thm33Verdict v;
    auto& p1 = v.parts[0];
    p1.lhs = static_cast<unsigned long>(r.graded[3].length());
    p1.mid = m.ranks.t;
    p1.rhs = m.ranks.t;
    p1.ok = p1.lhs <= p1.rhs;
    p1.text = "Φ³ generated by " + p1.lhs.get_str() + " <= t = " + p1.rhs.get_str() + " elements";

    auto set = [&](int k, const Partition& lhs_group, const Partition& pv, const Integer& rhs, const char* what) {
        auto& part = v.parts[static_cast<std::size_t>(k)];
        part.lhs = delta_l(l, lhs_group);
        part.mid = delta_l(l, pv);
        part.rhs = rhs;
        part.ok = part.lhs <= part.mid && part.mid <= part.rhs;
        part.text = std::string(what) + ": " + part.lhs.get_str() + " <= " + part.mid.get_str() + " <= " + part.rhs.get_str();
    };
    set(1, r.layer(2, 3), pt, tl, "δ(Φ²/Φ³) <= δ(p_t) <= t_l-t");
    set(2, r.layer(1, 2), pa, al2, "δ(Φ¹/Φ²) <= δ(p_a) <= 2(a_l-a)");
    set(3, r.layer(0, 1), pt, tl, "δ(Φ/Φ¹) <= δ(p_t) <= t_l-t");
    set(4, r.layer(0, 2), p, tl + al2, "δ(Φ/Φ²) <= δ(p) <= (t_l-t)+2(a_l-a)");
    set(5, r.layer(1, 3), p, tl + al2, "δ(Φ¹/Φ³) <= δ(p) <= (t_l-t)+2(a_l-a)");
    return v;
}

bool Cor34Verdict::all_ok() const
{
    for (bool b : ok)
        if (!b)
            return false;
    return true;
}

namespace {

Integer non_unipotent_degree(const ZPoly& cp)
{
    long d = degree(cp);
    long k = cp.empty() ? 0 : static_cast<long>(multiplicity(cp, ZPoly{-1, 1}));
    return d - k;
}

} // namespace

Cor34Verdict check_cor34(const std::vector<PrimeReport>& reports)
{
    Cor34Verdict v;
    if (reports.empty()) {
        v.ok.fill(true);
        return v;
    }
    const auto& first = reports[0].model;
    if (!first.charpoly_t || !first.charpoly_a)
        throw InvalidArgument("check_cor34: models must carry characteristic polynomials");
    std::set<std::int64_t> seen;
    Integer sum_t = 0, sum_a = 0;
    for (const auto& pr : reports) {
        const auto& m = pr.model;
        if (pr.l != m.l || !seen.insert(pr.l).second)
            throw InvalidArgument("check_cor34: primes must be distinct and match their models");
        if (!(m.ranks == first.ranks) || m.charpoly_t != first.charpoly_t || m.charpoly_a != first.charpoly_a)
            throw InvalidArgument("check_cor34: inconsistent rank declarations across primes");
        sum_t += cyclotomic_rank(m.m_t, pr.l);
        sum_a += cyclotomic_rank(m.m_a, pr.l);
    }
    Integer tt = non_unipotent_degree(*first.charpoly_t);
    Integer at2 = non_unipotent_degree(*first.charpoly_a);
    if (sum_t > tt || sum_a > at2)
        throw InvalidArgument("check_cor34: per-prime ranks exceed the tame ranks");

    std::array<Integer, 6> lhs{};
    std::size_t gens3 = 0;
    for (const auto& pr : reports) {
        const auto& r = pr.report;
        gens3 = std::max(gens3, r.graded[3].length());
        lhs[1] += delta_l(pr.l, r.layer(2, 3));
        lhs[2] += delta_l(pr.l, r.layer(1, 2));
        lhs[3] += delta_l(pr.l, r.layer(0, 1));
        lhs[4] += delta_l(pr.l, r.layer(0, 2));
        lhs[5] += delta_l(pr.l, r.layer(1, 3));
    }
    // A finite abelian group needs max over l of the l-part generator counts.
    lhs[0] = static_cast<unsigned long>(gens3);
    std::array<Integer, 6> rhs{Integer(first.ranks.t), tt, at2, tt, tt + at2, tt + at2};
    for (int k = 0; k < 6; ++k) {
        v.lhs[static_cast<std::size_t>(k)] = lhs[static_cast<std::size_t>(k)];
        v.rhs[static_cast<std::size_t>(k)] = rhs[static_cast<std::size_t>(k)];
        v.ok[static_cast<std::size_t>(k)] = lhs[static_cast<std::size_t>(k)] <= rhs[static_cast<std::size_t>(k)];
    }
    return v;
}

Cor34Verdict check_cor34_model(const GaloisLatticeModel& m, const std::vector<std::int64_t>& primes)
{
    std::vector<PrimeReport> reports;
    for (std::int64_t l : primes) {
        GaloisLatticeModel ml = (l == m.l && !(m.charpoly_t && m.charpoly_a)) ? m : at_prime(m, l);
        reports.push_back({l, ml, compute_phi(ml)});
    }
    return check_cor34(reports);
}

} // namespace neron
