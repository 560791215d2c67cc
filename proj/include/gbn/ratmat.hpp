#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace gbn {

struct MatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact rational number helper: n/d in lowest terms, positive denominator.
mpq_class rat(long n, long d = 1);

/// Dense matrix of arbitrary-precision rationals, 0-based indexing.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols);
    static RationalMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpq_class& at(int r, int c);
    const mpq_class& at(int r, int c) const;

    /// Fraction-free (Bareiss) determinant.
    mpq_class det() const;
    /// Cofactor-expansion determinant; independent route for cross-checks.
    mpq_class det_cofactor() const;
    int rank() const;
    RationalMatrix inverse() const;
    /// Submatrix with rows/cols taken in the given order.
    RationalMatrix submatrix(const std::vector<int>& rows,
                             const std::vector<int>& cols) const;
    /// Determinant of submatrix(rows, cols); sign fixed by the given order.
    mpq_class minor(const std::vector<int>& rows,
                    const std::vector<int>& cols) const;

    RationalMatrix operator*(const RationalMatrix& o) const;
    bool operator==(const RationalMatrix&) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<mpq_class> e_;
};

} // namespace gbn
