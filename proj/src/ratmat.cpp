#include "gbn/ratmat.hpp"

namespace gbn {

mpq_class rat(long n, long d) {
    if (d == 0) throw MatrixError("zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), e_((size_t)rows * cols, mpq_class(0)) {
    if (rows < 0 || cols < 0) throw MatrixError("negative dimension");
}

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

mpq_class& RationalMatrix::at(int r, int c) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw MatrixError("index out of range");
    return e_[(size_t)r * cols_ + c];
}

const mpq_class& RationalMatrix::at(int r, int c) const {
    return const_cast<RationalMatrix*>(this)->at(r, c);
}

namespace {

// Scale each row to integers; returns the product of the scaling factors so
// callers can undo it on the determinant.
std::vector<std::vector<mpz_class>> to_integer_rows(const RationalMatrix& m,
                                                    mpq_class& scale) {
    scale = 1;
    std::vector<std::vector<mpz_class>> rows(m.rows(),
                                             std::vector<mpz_class>(m.cols()));
    for (int r = 0; r < m.rows(); ++r) {
        mpz_class l = 1;
        for (int c = 0; c < m.cols(); ++c)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
                    m.at(r, c).get_den().get_mpz_t());
        scale *= mpq_class(l);
        for (int c = 0; c < m.cols(); ++c) {
            const mpq_class& q = m.at(r, c);
            rows[r][c] = q.get_num() * (l / q.get_den());
        }
    }
    return rows;
}

// Bareiss fraction-free elimination.  Returns the rank; if the matrix is
// square and of full rank, det receives the determinant of the integer rows.
int bareiss(std::vector<std::vector<mpz_class>>& a, mpz_class& det) {
    int nr = (int)a.size();
    int nc = nr ? (int)a[0].size() : 0;
    mpz_class prev = 1;
    int sign = 1, row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int piv = -1;
        for (int r = row; r < nr; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row) {
            std::swap(a[piv], a[row]);
            sign = -sign;
        }
        for (int r = row + 1; r < nr; ++r) {
            for (int c = col + 1; c < nc; ++c) {
                a[r][c] = (a[row][col] * a[r][c] - a[r][col] * a[row][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[row][col];
        ++row;
    }
    det = (row == nr && nr == nc) ? mpz_class(sign * prev) : mpz_class(0);
    return row;
}

} // namespace

mpq_class RationalMatrix::det() const {
    if (rows_ != cols_) throw MatrixError("determinant of non-square matrix");
    if (rows_ == 0) return 1;
    mpq_class scale;
    auto a = to_integer_rows(*this, scale);
    mpz_class d;
    bareiss(a, d);
    return mpq_class(d) / scale;
}

mpq_class RationalMatrix::det_cofactor() const {
    if (rows_ != cols_) throw MatrixError("determinant of non-square matrix");
    if (rows_ == 0) return 1;
    if (rows_ == 1) return at(0, 0);
    mpq_class sum = 0;
    std::vector<int> cols;
    for (int c = 1; c < cols_; ++c) cols.push_back(c);
    for (int r = 0; r < rows_; ++r) {
        if (at(r, 0) == 0) continue;
        std::vector<int> rows;
        for (int i = 0; i < rows_; ++i)
            if (i != r) rows.push_back(i);
        mpq_class cof = submatrix(rows, cols).det_cofactor();
        if (r % 2) cof = -cof;
        sum += at(r, 0) * cof;
    }
    return sum;
}

int RationalMatrix::rank() const {
    if (rows_ == 0 || cols_ == 0) return 0;
    mpq_class scale;
    auto a = to_integer_rows(*this, scale);
    mpz_class d;
    return bareiss(a, d);
}

RationalMatrix RationalMatrix::inverse() const {
    if (rows_ != cols_) throw MatrixError("inverse of non-square matrix");
    int n = rows_;
    RationalMatrix a = *this, inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw MatrixError("singular matrix");
        for (int c = 0; c < n; ++c) {
            std::swap(a.at(piv, c), a.at(col, c));
            std::swap(inv.at(piv, c), inv.at(col, c));
        }
        mpq_class p = a.at(col, col);
        for (int c = 0; c < n; ++c) {
            a.at(col, c) /= p;
            inv.at(col, c) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a.at(r, col) == 0) continue;
            mpq_class f = a.at(r, col);
            for (int c = 0; c < n; ++c) {
                a.at(r, c) -= f * a.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

RationalMatrix RationalMatrix::submatrix(const std::vector<int>& rows,
                                         const std::vector<int>& cols) const {
    RationalMatrix out((int)rows.size(), (int)cols.size());
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c)
            out.at((int)r, (int)c) = at(rows[r], cols[c]);
    return out;
}

mpq_class RationalMatrix::minor(const std::vector<int>& rows,
                                const std::vector<int>& cols) const {
    if (rows.size() != cols.size())
        throw MatrixError("minor needs equal-cardinality index lists");
    RationalMatrix sub = submatrix(rows, cols);
    return sub.rows() < 5 ? sub.det_cofactor() : sub.det();
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw MatrixError("dimension mismatch");
    RationalMatrix out(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            if (at(r, k) == 0) continue;
            for (int c = 0; c < o.cols_; ++c)
                out.at(r, c) += at(r, k) * o.at(k, c);
        }
    return out;
}

} // namespace gbn
