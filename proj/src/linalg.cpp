#include "neron/linalg.hpp"

#include "neron/errors.hpp"

#include <algorithm>
#include <utility>

namespace neron {

namespace {

int cmpabs(const Integer& a, const Integer& b);

// Finds the nonzero entry of smallest absolute value in the lower-right
// block starting at (t, t). Returns false if the block is zero.
bool find_min_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj)
{
    bool found = false;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            if (a(i, j) == 0)
                continue;
            if (!found || cmpabs(a(i, j), a(pi, pj)) < 0) {
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

Integer tdiv(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer fdiv(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

SmithDecomposition smith_decompose(const IntMatrix& m, bool track_left)
{
    IntMatrix a = m;
    const std::size_t r = a.rows();
    const std::size_t c = a.cols();
    const std::size_t n = std::min(r, c);
    SmithDecomposition out;
    if (track_left)
        out.left = IntMatrix::identity(r);
    IntMatrix& left = out.left;

    auto row_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
        a.add_row_multiple(dst, src, k);
        if (track_left)
            left.add_row_multiple(dst, src, k);
    };
    auto row_swap = [&](std::size_t x, std::size_t y) {
        a.swap_rows(x, y);
        if (track_left)
            left.swap_rows(x, y);
    };

    std::size_t t = 0;
    for (; t < n; ++t) {
        std::size_t pi = t, pj = t;
        if (!find_min_pivot(a, t, pi, pj))
            break;
        row_swap(t, pi);
        a.swap_cols(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a(i, t) == 0)
                    continue;
                row_op(i, t, -tdiv(a(i, t), a(t, t)));
                if (a(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a(t, j) == 0)
                    continue;
                a.add_col_multiple(j, t, -tdiv(a(t, j), a(t, t)));
                if (a(t, j) != 0)
                    clean = false;
            }
            if (!clean) {
                // Move the smallest remainder in row/column t to the pivot.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < r; ++i)
                    if (a(i, t) != 0 && cmpabs(a(i, t), a(bi, bj)) < 0) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < c; ++j)
                    if (a(t, j) != 0 && cmpabs(a(t, j), a(bi, bj)) < 0) {
                        bi = t;
                        bj = j;
                    }
                row_swap(t, bi);
                a.swap_cols(t, bj);
                continue;
            }
            // Enforce the divisibility chain on the remaining block.
            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        row_op(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < c; ++j)
                a(t, j) = -a(t, j);
            if (track_left)
                for (std::size_t j = 0; j < r; ++j)
                    left(t, j) = -left(t, j);
        }
    }
    out.rank = t;
    out.diagonal.resize(n);
    for (std::size_t i = 0; i < t; ++i)
        out.diagonal[i] = a(i, i);
    return out;
}

std::vector<Integer> smith_form(const IntMatrix& m) { return smith_decompose(m, false).diagonal; }

GroupInvariants cokernel_l_part(const IntMatrix& m, std::int64_t l)
{
    require_prime(l, "cokernel_l_part");
    auto d = smith_form(m);
    GroupInvariants g;
    std::vector<int> parts;
    std::size_t nonzero = 0;
    for (const auto& x : d) {
        if (x == 0)
            continue;
        ++nonzero;
        unsigned v = valuation(x, l);
        if (v)
            parts.push_back(static_cast<int>(v));
    }
    g.torsion = Partition::from_unsorted(std::move(parts));
    g.corank = m.rows() - nonzero;
    return g;
}

HermiteDecomposition hermite_decompose(const IntMatrix& m)
{
    IntMatrix h = m;
    const std::size_t r = h.rows();
    const std::size_t c = h.cols();
    IntMatrix u = IntMatrix::identity(c);
    auto col_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
        h.add_col_multiple(dst, src, k);
        u.add_col_multiple(dst, src, k);
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        h.swap_cols(x, y);
        u.swap_cols(x, y);
    };

    std::size_t piv = 0;
    for (std::size_t i = 0; i < r && piv < c; ++i) {
        for (;;) {
            std::size_t best = c;
            for (std::size_t j = piv; j < c; ++j)
                if (h(i, j) != 0 && (best == c || cmpabs(h(i, j), h(i, best)) < 0))
                    best = j;
            if (best == c)
                break;
            col_swap(piv, best);
            bool clean = true;
            for (std::size_t j = piv + 1; j < c; ++j) {
                if (h(i, j) == 0)
                    continue;
                col_op(j, piv, -tdiv(h(i, j), h(i, piv)));
                if (h(i, j) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (h(i, piv) == 0)
            continue;
        if (h(i, piv) < 0) {
            for (std::size_t k = 0; k < r; ++k)
                h(k, piv) = -h(k, piv);
            for (std::size_t k = 0; k < c; ++k)
                u(k, piv) = -u(k, piv);
        }
        // Reduce earlier pivot columns in this row into [0, pivot).
        for (std::size_t j = 0; j < piv; ++j)
            if (h(i, j) != 0)
                col_op(j, piv, -fdiv(h(i, j), h(i, piv)));
        ++piv;
    }
    return {std::move(h), std::move(u), piv};
}

IntMatrix lattice_basis(const IntMatrix& gens)
{
    auto hd = hermite_decompose(gens);
    return hd.h.columns(0, hd.rank);
}

IntMatrix kernel_basis(const IntMatrix& m)
{
    auto hd = hermite_decompose(m);
    return hd.u.columns(hd.rank, m.cols() - hd.rank);
}

IntMatrix lattice_sum(const IntMatrix& a, const IntMatrix& b) { return lattice_basis(hconcat(a, b)); }

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows())
        throw InvalidArgument("lattice_intersection: ambient dimensions differ");
    if (a.cols() == 0 || b.cols() == 0)
        return IntMatrix(a.rows(), 0);
    IntMatrix neg_b = b;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            neg_b(i, j) = -b(i, j);
    IntMatrix k = kernel_basis(hconcat(a, neg_b));
    if (k.cols() == 0)
        return IntMatrix(a.rows(), 0);
    return lattice_basis(a * k.block(0, 0, a.cols(), k.cols()));
}

namespace {

// Coordinates of the columns of `sub` with respect to the generators
// L^{-1} d_i e_i of the lattice spanned by `lattice`; nullopt-like flag
// when some column is not in the lattice.
bool smith_coordinates(const SmithDecomposition& sd, const IntMatrix& sub, IntMatrix& coords)
{
    IntMatrix w = sd.left * sub;
    coords = IntMatrix(sd.rank, sub.cols());
    for (std::size_t j = 0; j < sub.cols(); ++j) {
        for (std::size_t i = 0; i < w.rows(); ++i) {
            if (i < sd.rank) {
                if (!mpz_divisible_p(w(i, j).get_mpz_t(), sd.diagonal[i].get_mpz_t()))
                    return false;
                mpz_divexact(coords(i, j).get_mpz_t(), w(i, j).get_mpz_t(), sd.diagonal[i].get_mpz_t());
            } else if (w(i, j) != 0) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

bool lattice_contains(const IntMatrix& lattice, const IntMatrix& sub)
{
    if (lattice.rows() != sub.rows())
        throw InvalidArgument("lattice_contains: ambient dimensions differ");
    auto sd = smith_decompose(lattice, true);
    IntMatrix coords;
    return smith_coordinates(sd, sub, coords);
}

GroupInvariants quotient_invariants(const IntMatrix& lattice, const IntMatrix& sub, std::int64_t l)
{
    require_prime(l, "quotient_invariants");
    if (lattice.rows() != sub.rows())
        throw InvalidArgument("quotient_invariants: ambient dimensions differ");
    auto sd = smith_decompose(lattice, true);
    IntMatrix coords;
    if (!smith_coordinates(sd, sub, coords))
        throw InvalidArgument("quotient_invariants: sub-lattice is not contained in the lattice");
    if (sd.rank == 0)
        return {};
    if (coords.cols() == 0)
        return {Partition{}, sd.rank};
    return cokernel_l_part(coords, l);
}

ModSmithDecomposition mod_smith_decompose(const ModMatrix& m, bool track_left)
{
    const std::int64_t l = m.prime();
    const unsigned prec = m.precision();
    const Integer& mod = m.modulus();
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    const std::size_t n = std::min(r, c);
    IntMatrix a = m.lift();
    IntMatrix left = track_left ? IntMatrix::identity(r) : IntMatrix();
    Integer lp(static_cast<long>(l));

    auto val = [&](const Integer& x) -> unsigned {
        if (x == 0)
            return prec;
        return std::min(prec, valuation(x, l));
    };
    auto reduce_row = [&](IntMatrix& mat, std::size_t i) {
        for (std::size_t j = 0; j < mat.cols(); ++j)
            mpz_fdiv_r(mat(i, j).get_mpz_t(), mat(i, j).get_mpz_t(), mod.get_mpz_t());
    };
    auto reduce_col = [&](IntMatrix& mat, std::size_t j) {
        for (std::size_t i = 0; i < mat.rows(); ++i)
            mpz_fdiv_r(mat(i, j).get_mpz_t(), mat(i, j).get_mpz_t(), mod.get_mpz_t());
    };

    ModSmithDecomposition out;
    std::size_t t = 0;
    for (; t < n; ++t) {
        unsigned best = prec;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < r && best > 0; ++i)
            for (std::size_t j = t; j < c; ++j) {
                unsigned v = val(a(i, j));
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                    if (v == 0)
                        break;
                }
            }
        if (best == prec)
            break;
        a.swap_rows(t, pi);
        if (track_left)
            left.swap_rows(t, pi);
        a.swap_cols(t, pj);

        Integer lv = ipow(l, best);
        Integer unit;
        mpz_divexact(unit.get_mpz_t(), a(t, t).get_mpz_t(), lv.get_mpz_t());
        Integer inv;
        mpz_invert(inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
        for (std::size_t j = 0; j < c; ++j)
            a(t, j) *= inv;
        reduce_row(a, t);
        if (track_left) {
            for (std::size_t j = 0; j < r; ++j)
                left(t, j) *= inv;
            reduce_row(left, t);
        }
        for (std::size_t i = t + 1; i < r; ++i) {
            if (a(i, t) == 0)
                continue;
            Integer q;
            mpz_divexact(q.get_mpz_t(), a(i, t).get_mpz_t(), lv.get_mpz_t());
            a.add_row_multiple(i, t, -q);
            reduce_row(a, i);
            if (track_left) {
                left.add_row_multiple(i, t, -q);
                reduce_row(left, i);
            }
        }
        for (std::size_t j = t + 1; j < c; ++j) {
            if (a(t, j) == 0)
                continue;
            Integer q;
            mpz_divexact(q.get_mpz_t(), a(t, j).get_mpz_t(), lv.get_mpz_t());
            a.add_col_multiple(j, t, -q);
            reduce_col(a, j);
        }
        out.exponents.push_back(best);
    }
    for (; t < n; ++t)
        out.exponents.push_back(prec);
    if (track_left)
        out.left = ModMatrix(l, prec, left);
    return out;
}

std::vector<unsigned> mod_diagonalize(const ModMatrix& m) { return mod_smith_decompose(m, false).exponents; }

namespace {

// Coordinates of y's columns in the cyclic decomposition of X; returns the
// relation matrix of X/Y over Z, or false when Y is not inside X.
bool mod_relations(const ModMatrix& x, const ModMatrix& y, IntMatrix& relations)
{
    require_same_ring(x, y);
    if (x.rows() != y.rows())
        throw InvalidArgument("mod submodules live in different ambient spaces");
    const std::int64_t l = x.prime();
    const unsigned prec = x.precision();
    auto sd = mod_smith_decompose(x, true);
    IntMatrix w = (sd.left * y).lift();
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < sd.exponents.size(); ++i)
        if (sd.exponents[i] < prec)
            live.push_back(i);
    for (std::size_t j = 0; j < w.cols(); ++j)
        for (std::size_t i = 0; i < w.rows(); ++i) {
            unsigned need = i < sd.exponents.size() ? sd.exponents[i] : prec;
            if (need == 0 || w(i, j) == 0)
                continue;
            if (valuation(w(i, j), l) < need)
                return false;
        }
    relations = IntMatrix(live.size(), live.size() + w.cols());
    for (std::size_t k = 0; k < live.size(); ++k) {
        std::size_t i = live[k];
        unsigned e = sd.exponents[i];
        relations(k, k) = ipow(l, prec - e);
        Integer le = ipow(l, e);
        for (std::size_t j = 0; j < w.cols(); ++j)
            mpz_divexact(relations(k, live.size() + j).get_mpz_t(), w(i, j).get_mpz_t(), le.get_mpz_t());
    }
    return true;
}

} // namespace

ModQuotient mod_quotient_invariants(const ModMatrix& x, const ModMatrix& y)
{
    IntMatrix rel;
    if (!mod_relations(x, y, rel))
        throw InvalidArgument("mod_quotient_invariants: Y is not contained in X");
    ModQuotient q;
    if (rel.rows() == 0)
        return q;
    auto inv = cokernel_l_part(rel, x.prime());
    std::vector<int> parts;
    for (int e : inv.torsion.parts()) {
        if (e >= static_cast<int>(x.precision()))
            ++q.saturated;
        else
            parts.push_back(e);
    }
    q.invariants = Partition(std::move(parts));
    return q;
}

bool mod_submodule_contains(const ModMatrix& x, const ModMatrix& y)
{
    IntMatrix rel;
    return mod_relations(x, y, rel);
}

} // namespace neron
