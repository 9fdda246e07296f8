#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "mdpcc/field.hpp"

namespace mdpcc {

/// Dense matrix over a finite field. Entries are stored row-major as element
/// codes (see Field). Degenerate shapes (0 rows and/or 0 columns) are legal
/// and behave like the corresponding empty linear maps.
///
/// Entry accessors are 0-based. The submatrix/minor interfaces take 1-based
/// strictly increasing index lists; that convention is converted exactly once,
/// inside submatrix().
class FieldMatrix {
  public:
    FieldMatrix(Field f, std::uint32_t rows, std::uint32_t cols); // zero matrix
    FieldMatrix(Field f, std::uint32_t rows, std::uint32_t cols, std::vector<std::uint32_t> codes);
    FieldMatrix(Field f, std::uint32_t rows, std::uint32_t cols,
                std::initializer_list<std::uint32_t> codes);

    static FieldMatrix identity(const Field& f, std::uint32_t nn);

    const Field& field() const { return f_; }
    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }

    std::uint32_t code_at(std::uint32_t r, std::uint32_t c) const { return codes_[idx(r, c)]; }
    void set_code(std::uint32_t r, std::uint32_t c, std::uint32_t code);
    FieldElement at(std::uint32_t r, std::uint32_t c) const { return {f_, code_at(r, c)}; }
    const std::vector<std::uint32_t>& codes() const { return codes_; }

    bool is_zero() const;
    bool operator==(const FieldMatrix& o) const;
    bool operator!=(const FieldMatrix& o) const { return !(*this == o); }

    FieldMatrix operator+(const FieldMatrix& o) const;
    FieldMatrix operator-(const FieldMatrix& o) const;
    FieldMatrix operator*(const FieldMatrix& o) const;
    FieldMatrix operator-() const;
    FieldMatrix scaled(std::uint32_t scalar_code) const;
    FieldMatrix transpose() const;

    std::string describe() const; // small human-readable dump for diagnostics

  private:
    Field f_;
    std::uint32_t rows_, cols_;
    std::vector<std::uint32_t> codes_;

    std::size_t idx(std::uint32_t r, std::uint32_t c) const;
    void check_same_shape(const FieldMatrix& o) const;
};

/// Exact determinant by Gaussian elimination with pivoting (first nonzero
/// pivot in each column, row swaps tracked through the sign). The 0x0
/// determinant is 1. Throws NotSquareError on non-square input.
FieldElement determinant(const FieldMatrix& M);

/// Rank by forward elimination.
std::uint32_t rank(const FieldMatrix& M);

/// Basis of { v : M v = 0 }, returned as the columns of a cols(M) x nullity
/// matrix. Free columns are taken in ascending order, so the result is
/// deterministic; each basis vector has a 1 in its free coordinate.
FieldMatrix right_kernel_basis(const FieldMatrix& M);

/// Submatrix at 1-based, strictly increasing row/column index lists.
/// Throws IndexOutOfRangeError / NotStrictlyIncreasingError.
FieldMatrix submatrix(const FieldMatrix& M, const std::vector<std::uint32_t>& rows1,
                      const std::vector<std::uint32_t>& cols1);

/// One solution X of A X = B with every free variable set to zero, or nullopt
/// if the system is inconsistent.
std::optional<FieldMatrix> solve_linear(const FieldMatrix& A, const FieldMatrix& B);

/// [A | B] and [A ; B].
FieldMatrix hstack(const FieldMatrix& A, const FieldMatrix& B);
FieldMatrix vstack(const FieldMatrix& A, const FieldMatrix& B);

/// Hamming weight of all entries (number of nonzero codes).
std::uint32_t weight(const FieldMatrix& M);

} // namespace mdpcc
