#include "neron/poly.hpp"

#include "neron/errors.hpp"

#include <algorithm>

namespace neron {

void trim(ZPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

void trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

int degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }
int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

namespace {

template <class P>
P poly_mul(const P& a, const P& b)
{
    if (a.empty() || b.empty())
        return {};
    P c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

template <class P>
P poly_add(const P& a, const P& b, int sign)
{
    P c(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (sign > 0)
            c[i] += b[i];
        else
            c[i] -= b[i];
    }
    trim(c);
    return c;
}

void reduce_coeffs(ZPoly& p, const Integer& m)
{
    for (auto& c : p)
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    trim(p);
}

// Remainder of a modulo monic f with coefficients reduced mod m.
ZPoly rem_monic_mod(ZPoly a, const ZPoly& f, const Integer& m)
{
    const std::size_t n = f.size() - 1;
    for (std::size_t k = a.size(); k-- > n;) {
        Integer c = a[k];
        if (c == 0)
            continue;
        for (std::size_t j = 0; j <= n; ++j)
            a[k - n + j] -= c * f[j];
    }
    if (a.size() > n)
        a.resize(n);
    reduce_coeffs(a, m);
    return a;
}

// Polynomials over F_l with coefficients in [0, l).
struct FlPoly {
    std::int64_t l;
    Integer lz;

    Integer inv(const Integer& c) const
    {
        Integer r;
        if (!mpz_invert(r.get_mpz_t(), c.get_mpz_t(), lz.get_mpz_t()))
            throw InvalidArgument("F_l: zero has no inverse");
        return r;
    }

    std::pair<ZPoly, ZPoly> divmod(ZPoly a, const ZPoly& b) const
    {
        ZPoly q;
        if (a.size() >= b.size())
            q.assign(a.size() - b.size() + 1, 0);
        Integer lead_inv = inv(b.back());
        while (a.size() >= b.size() && !a.empty()) {
            std::size_t shift = a.size() - b.size();
            Integer c = a.back() * lead_inv;
            mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), lz.get_mpz_t());
            q[shift] = c;
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] -= c * b[j];
            reduce_coeffs(a, lz);
        }
        reduce_coeffs(q, lz);
        return {q, a};
    }
};

} // namespace

ZPoly operator*(const ZPoly& a, const ZPoly& b) { return poly_mul(a, b); }
ZPoly operator+(const ZPoly& a, const ZPoly& b) { return poly_add(a, b, 1); }
ZPoly operator-(const ZPoly& a, const ZPoly& b) { return poly_add(a, b, -1); }
QPoly operator*(const QPoly& a, const QPoly& b) { return poly_mul(a, b); }
QPoly operator+(const QPoly& a, const QPoly& b) { return poly_add(a, b, 1); }
QPoly operator-(const QPoly& a, const QPoly& b) { return poly_add(a, b, -1); }

QPoly scale(const QPoly& a, const Rational& c)
{
    QPoly r = a;
    for (auto& x : r)
        x *= c;
    trim(r);
    return r;
}

QPoly to_q(const ZPoly& p)
{
    QPoly q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        q[i] = Rational(p[i]);
    return q;
}

Integer evaluate(const ZPoly& p, const Integer& x)
{
    Integer r = 0;
    for (std::size_t i = p.size(); i-- > 0;)
        r = r * x + p[i];
    return r;
}

ZPoly derivative(const ZPoly& p)
{
    ZPoly d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

std::pair<ZPoly, ZPoly> divmod_monic(const ZPoly& a, const ZPoly& b)
{
    if (b.empty() || b.back() != 1)
        throw InvalidArgument("divmod_monic: divisor must be monic");
    ZPoly r = a;
    ZPoly q;
    const std::size_t n = b.size() - 1;
    if (r.size() > n)
        q.assign(r.size() - n, 0);
    for (std::size_t k = r.size(); k-- > n;) {
        Integer c = r[k];
        if (c == 0)
            continue;
        q[k - n] = c;
        for (std::size_t j = 0; j <= n; ++j)
            r[k - n + j] -= c * b[j];
    }
    trim(r);
    trim(q);
    return {q, r};
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b)
{
    if (b.empty())
        throw InvalidArgument("divmod: division by zero polynomial");
    QPoly r = a;
    trim(r);
    QPoly q;
    const std::size_t n = b.size() - 1;
    if (r.size() > n)
        q.assign(r.size() - n, 0);
    for (std::size_t k = r.size(); k-- > n;) {
        if (r[k] == 0)
            continue;
        Rational c = r[k] / b.back();
        q[k - n] = c;
        for (std::size_t j = 0; j <= n; ++j)
            r[k - n + j] -= c * b[j];
    }
    trim(r);
    trim(q);
    return {q, r};
}

QPoly mod(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

QPoly invert_mod(const QPoly& a, const QPoly& m)
{
    // Extended Euclid tracking the coefficient of a.
    QPoly r0 = m, r1 = mod(a, m);
    QPoly s0, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        QPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (degree(r0) != 0)
        throw InvalidArgument("invert_mod: element is not invertible");
    return mod(scale(s0, 1 / r0[0]), m);
}

ZPoly cyclotomic_poly(std::int64_t l, unsigned i)
{
    require_prime(l, "cyclotomic_poly");
    if (i == 0)
        throw InvalidArgument("cyclotomic_poly: i must be >= 1");
    Integer step = ipow(l, i - 1);
    if (!step.fits_ulong_p() || step.get_ui() * static_cast<unsigned long>(l) > (1UL << 24))
        throw InvalidArgument("cyclotomic_poly: degree too large");
    std::size_t s = step.get_ui();
    ZPoly p((static_cast<std::size_t>(l) - 1) * s + 1);
    for (std::size_t j = 0; j < static_cast<std::size_t>(l); ++j)
        p[j * s] = 1;
    return p;
}

ZPoly cyclotomic_product(std::int64_t l, unsigned lo, unsigned hi)
{
    ZPoly p{Integer(1)};
    for (unsigned i = lo; i <= hi; ++i)
        p = p * cyclotomic_poly(l, i);
    return p;
}

IntMatrix companion_matrix(const ZPoly& f)
{
    if (f.empty() || f.back() != 1)
        throw InvalidArgument("companion_matrix: polynomial must be monic");
    const std::size_t n = f.size() - 1;
    IntMatrix m(n, n);
    for (std::size_t j = 0; j + 1 < n; ++j)
        m(j + 1, j) = 1;
    for (std::size_t i = 0; i < n; ++i)
        m(i, n - 1) = -f[i];
    return m;
}

IntMatrix lambda_mult_matrix(std::int64_t l, unsigned lo, unsigned hi)
{
    require_prime(l, "lambda_mult_matrix");
    if (lo < 1 || hi < lo)
        throw InvalidArgument("lambda_mult_matrix: need 1 <= lo <= hi");
    return companion_matrix(cyclotomic_product(l, lo, hi));
}

IntMatrix mult_matrix(const ZPoly& a, const ZPoly& f)
{
    const std::size_t n = f.size() - 1;
    IntMatrix m(n, n);
    ZPoly col = divmod_monic(a, f).second;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < col.size(); ++i)
            m(i, j) = col[i];
        col = divmod_monic(ZPoly{0, 1} * col, f).second;
    }
    return m;
}

ZPoly charpoly(const IntMatrix& a)
{
    if (a.rows() != a.cols())
        throw InvalidArgument("charpoly: matrix not square");
    const std::size_t n = a.rows();
    // Faddeev-LeVerrier; every division below is exact.
    ZPoly c(n + 1);
    c[n] = 1;
    IntMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = a * mk;
        for (std::size_t i = 0; i < n; ++i)
            mk(i, i) += c[n - k + 1];
        IntMatrix am = a * mk;
        Integer tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += am(i, i);
        Integer q;
        mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), k);
        c[n - k] = -q;
    }
    return c;
}

unsigned multiplicity(ZPoly p, const ZPoly& f)
{
    if (p.empty())
        throw InvalidArgument("multiplicity: zero polynomial");
    if (degree(f) < 1)
        throw InvalidArgument("multiplicity: divisor must have positive degree");
    unsigned k = 0;
    for (;;) {
        if (degree(p) < degree(f))
            return k;
        auto [q, r] = divmod_monic(p, f);
        if (!r.empty())
            return k;
        p = std::move(q);
        ++k;
    }
}

Integer resultant(const ZPoly& a, const ZPoly& b)
{
    const int m = degree(a);
    const int n = degree(b);
    if (m < 0 || n < 0)
        return 0;
    const std::size_t size = static_cast<std::size_t>(m + n);
    if (size == 0)
        return 1;
    IntMatrix s(size, size);
    // Rows hold shifted coefficient vectors, highest degree first.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = a[static_cast<std::size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + j)) = b[static_cast<std::size_t>(n - j)];
    return determinant(s);
}

ZPoly mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& f, const Integer& modulus)
{
    return rem_monic_mod(a * b, f, modulus);
}

ZPoly mod_invert(const ZPoly& u, const ZPoly& f, std::int64_t l, unsigned precision)
{
    require_prime(l, "mod_invert");
    if (f.empty() || f.back() != 1 || degree(f) < 1)
        throw InvalidArgument("mod_invert: modulus must be monic of positive degree");
    if (precision == 0)
        throw InvalidArgument("mod_invert: precision must be >= 1");
    FlPoly fl{l, Integer(static_cast<long>(l))};
    ZPoly fbar = f;
    reduce_coeffs(fbar, fl.lz);
    ZPoly ubar = rem_monic_mod(u, f, fl.lz);
    if (ubar.empty())
        throw InvalidArgument("mod_invert: element is not a unit");

    ZPoly r0 = fbar, r1 = ubar, s0, s1{Integer(1)};
    while (!r1.empty()) {
        auto [q, r] = fl.divmod(r0, r1);
        ZPoly s = s0 - q * s1;
        reduce_coeffs(s, fl.lz);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (degree(r0) != 0)
        throw InvalidArgument("mod_invert: element is not a unit");
    ZPoly v = s0;
    for (auto& c : v)
        c *= fl.inv(r0[0]);
    reduce_coeffs(v, fl.lz);

    // Newton: v <- v (2 - u v), doubling the l-adic precision.
    unsigned have = 1;
    while (have < precision) {
        have = std::min(precision, 2 * have);
        Integer m = ipow(l, have);
        ZPoly uv = mulmod(u, v, f, m);
        ZPoly two_minus = ZPoly{Integer(2)} - uv;
        v = mulmod(v, two_minus, f, m);
    }
    Integer m = ipow(l, precision);
    ZPoly check = mulmod(u, v, f, m);
    if (check != ZPoly{Integer(1)})
        throw InvalidArgument("mod_invert: lifting failed");
    return v;
}

} // namespace neron
