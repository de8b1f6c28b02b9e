#include "neron/matrix.hpp"

#include "neron/errors.hpp"

#include <utility>

namespace neron {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (data_.size() != rows * cols)
        throw InvalidArgument("IntMatrix: entry count does not match dimensions");
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows)
{
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw InvalidArgument("IntMatrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& d)
{
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::column(std::size_t j) const { return columns(j, 1); }

IntMatrix IntMatrix::columns(std::size_t first, std::size_t count) const
{
    return block(0, first, rows_, count);
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw InvalidArgument("IntMatrix::block out of range");
    IntMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

bool IntMatrix::is_zero() const
{
    for (const auto& x : data_)
        if (x != 0)
            return false;
    return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& c)
{
    if (c == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(src, j) != 0)
            (*this)(dst, j) += c * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& c)
{
    if (c == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)(i, src) != 0)
            (*this)(i, dst) += c * (*this)(i, src);
}

std::string IntMatrix::str() const
{
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j)
                out += ",";
            out += (*this)(i, j).get_str();
        }
        out += "]";
    }
    return out + "]";
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw InvalidArgument("IntMatrix product: dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Integer& aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0)
                    c(i, j) += aik * b(k, j);
        }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidArgument("IntMatrix sum: dimension mismatch");
    IntMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) += b(i, j);
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidArgument("IntMatrix difference: dimension mismatch");
    IntMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) -= b(i, j);
    return c;
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() == 0 && a.cols() == 0)
        return b;
    if (b.rows() == 0 && b.cols() == 0)
        return a;
    if (a.rows() != b.rows())
        throw InvalidArgument("hconcat: row mismatch");
    IntMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks)
{
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    IntMatrix m(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                m(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

IntMatrix power(const IntMatrix& m, std::uint64_t e)
{
    if (m.rows() != m.cols())
        throw InvalidArgument("power: matrix not square");
    IntMatrix result = IntMatrix::identity(m.rows());
    IntMatrix base = m;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

Integer determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        throw InvalidArgument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

ModMatrix::ModMatrix(std::int64_t l, unsigned precision, std::size_t rows, std::size_t cols)
    : l_(l), n_(precision), modulus_(ipow(l, precision)), rows_(rows), cols_(cols), data_(rows * cols)
{
    require_prime(l, "ModMatrix");
    if (precision == 0)
        throw InvalidArgument("ModMatrix: precision must be >= 1");
}

ModMatrix::ModMatrix(std::int64_t l, unsigned precision, const IntMatrix& m)
    : ModMatrix(l, precision, m.rows(), m.cols())
{
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            set(i, j, m(i, j));
}

void ModMatrix::set(std::size_t i, std::size_t j, const Integer& v)
{
    Integer& x = data_[i * cols_ + j];
    mpz_fdiv_r(x.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
}

IntMatrix ModMatrix::lift() const { return IntMatrix(rows_, cols_, data_); }

ModMatrix ModMatrix::reduce_to(unsigned precision) const
{
    if (precision > n_)
        throw PrecisionError("reduce_to: cannot raise precision");
    return ModMatrix(l_, precision, lift());
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b)
{
    require_same_ring(a, b);
    return ModMatrix(a.prime(), a.precision(), a.lift() * b.lift());
}

void require_same_ring(const ModMatrix& a, const ModMatrix& b)
{
    if (a.prime() != b.prime() || a.precision() != b.precision())
        throw PrecisionError("operands live over different rings Z/l^N");
}

} // namespace neron
