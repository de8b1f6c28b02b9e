#pragma once

#include "neron/integer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace neron {

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
    // Convenience for literals in tests: one inner list per row.
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(const std::vector<Integer>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<Integer>& entries() const { return data_; }

    bool operator==(const IntMatrix&) const = default;

    IntMatrix transpose() const;
    IntMatrix column(std::size_t j) const;
    IntMatrix columns(std::size_t first, std::size_t count) const;
    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    bool is_zero() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row[dst] += c * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& c);
    // col[dst] += c * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& c);

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);
IntMatrix power(const IntMatrix& m, std::uint64_t e);

// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

// Matrix over Z/l^N. Entries are kept reduced into [0, l^N).
class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(std::int64_t l, unsigned precision, std::size_t rows, std::size_t cols);
    // Reduces every entry of m modulo l^precision.
    ModMatrix(std::int64_t l, unsigned precision, const IntMatrix& m);

    std::int64_t prime() const { return l_; }
    unsigned precision() const { return n_; }
    const Integer& modulus() const { return modulus_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const Integer& v);

    // Representatives in [0, l^N) as an integer matrix.
    IntMatrix lift() const;
    // Same residues at a lower precision.
    ModMatrix reduce_to(unsigned precision) const;

    bool operator==(const ModMatrix&) const = default;

private:
    std::int64_t l_ = 2;
    unsigned n_ = 1;
    Integer modulus_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);
// Throws PrecisionError unless prime and precision agree.
void require_same_ring(const ModMatrix& a, const ModMatrix& b);

} // namespace neron
