#include "mdpcc/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace mdpcc {

FieldMatrix::FieldMatrix(Field f, std::uint32_t rows, std::uint32_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), codes_(static_cast<std::size_t>(rows) * cols, 0) {}

FieldMatrix::FieldMatrix(Field f, std::uint32_t rows, std::uint32_t cols,
                         std::vector<std::uint32_t> codes)
    : f_(std::move(f)), rows_(rows), cols_(cols), codes_(std::move(codes)) {
    if (codes_.size() != static_cast<std::size_t>(rows_) * cols_)
        throw DimensionMismatchError("entry count does not match rows*cols");
    for (std::uint32_t c : codes_) {
        if (c >= f_.order()) throw IndexOutOfRangeError("matrix entry code out of range for field");
    }
}

FieldMatrix::FieldMatrix(Field f, std::uint32_t rows, std::uint32_t cols,
                         std::initializer_list<std::uint32_t> codes)
    : FieldMatrix(std::move(f), rows, cols, std::vector<std::uint32_t>(codes)) {}

FieldMatrix FieldMatrix::identity(const Field& f, std::uint32_t nn) {
    FieldMatrix I(f, nn, nn);
    for (std::uint32_t i = 0; i < nn; ++i) I.set_code(i, i, 1);
    return I;
}

std::size_t FieldMatrix::idx(std::uint32_t r, std::uint32_t c) const {
    if (r >= rows_ || c >= cols_) throw IndexOutOfRangeError("matrix index out of range");
    return static_cast<std::size_t>(r) * cols_ + c;
}

void FieldMatrix::set_code(std::uint32_t r, std::uint32_t c, std::uint32_t code) {
    if (code >= f_.order()) throw IndexOutOfRangeError("matrix entry code out of range for field");
    codes_[idx(r, c)] = code;
}

bool FieldMatrix::is_zero() const {
    return std::all_of(codes_.begin(), codes_.end(), [](std::uint32_t c) { return c == 0; });
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && codes_ == o.codes_;
}

void FieldMatrix::check_same_shape(const FieldMatrix& o) const {
    if (f_ != o.f_) throw FieldMismatchError("matrices live over different fields");
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("matrix shapes differ");
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& o) const {
    check_same_shape(o);
    FieldMatrix out(f_, rows_, cols_);
    for (std::size_t i = 0; i < codes_.size(); ++i) out.codes_[i] = f_.add(codes_[i], o.codes_[i]);
    return out;
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& o) const {
    check_same_shape(o);
    FieldMatrix out(f_, rows_, cols_);
    for (std::size_t i = 0; i < codes_.size(); ++i) out.codes_[i] = f_.sub(codes_[i], o.codes_[i]);
    return out;
}

FieldMatrix FieldMatrix::operator-() const {
    FieldMatrix out(f_, rows_, cols_);
    for (std::size_t i = 0; i < codes_.size(); ++i) out.codes_[i] = f_.neg(codes_[i]);
    return out;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
    if (f_ != o.f_) throw FieldMismatchError("matrices live over different fields");
    if (cols_ != o.rows_)
        throw DimensionMismatchError("inner dimensions differ: " + std::to_string(cols_) + " vs " +
                                     std::to_string(o.rows_));
    FieldMatrix out(f_, rows_, o.cols_);
    for (std::uint32_t i = 0; i < rows_; ++i) {
        for (std::uint32_t t = 0; t < cols_; ++t) {
            const std::uint32_t a = codes_[static_cast<std::size_t>(i) * cols_ + t];
            if (a == 0) continue;
            for (std::uint32_t j = 0; j < o.cols_; ++j) {
                const std::uint32_t b = o.codes_[static_cast<std::size_t>(t) * o.cols_ + j];
                if (b == 0) continue;
                std::uint32_t& c = out.codes_[static_cast<std::size_t>(i) * o.cols_ + j];
                c = f_.add(c, f_.mul(a, b));
            }
        }
    }
    return out;
}

FieldMatrix FieldMatrix::scaled(std::uint32_t scalar_code) const {
    FieldMatrix out(f_, rows_, cols_);
    for (std::size_t i = 0; i < codes_.size(); ++i) out.codes_[i] = f_.mul(codes_[i], scalar_code);
    return out;
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix out(f_, cols_, rows_);
    for (std::uint32_t r = 0; r < rows_; ++r)
        for (std::uint32_t c = 0; c < cols_; ++c)
            out.codes_[static_cast<std::size_t>(c) * rows_ + r] =
                codes_[static_cast<std::size_t>(r) * cols_ + c];
    return out;
}

std::string FieldMatrix::describe() const {
    std::ostringstream ss;
    ss << rows_ << "x" << cols_ << " over " << f_.describe() << "\n";
    for (std::uint32_t r = 0; r < rows_; ++r) {
        ss << "[";
        for (std::uint32_t c = 0; c < cols_; ++c) {
            if (c) ss << " ";
            ss << code_at(r, c);
        }
        ss << "]\n";
    }
    return ss.str();
}

namespace {

// In-place forward elimination on a row-major code buffer; returns the list of
// pivot columns and multiplies *det_sign by -1 for every row swap (when asked).
struct Elim {
    std::vector<std::uint32_t> data;
    std::uint32_t rows, cols;
    const Field* f;

    std::uint32_t& at(std::uint32_t r, std::uint32_t c) {
        return data[static_cast<std::size_t>(r) * cols + c];
    }

    // reduced = true produces RREF (pivots normalized to 1, cleared upward)
    std::vector<std::uint32_t> eliminate(bool reduced, bool* swapped_odd = nullptr) {
        std::vector<std::uint32_t> pivots;
        bool odd = false;
        std::uint32_t row = 0;
        for (std::uint32_t col = 0; col < cols && row < rows; ++col) {
            std::uint32_t pr = row;
            while (pr < rows && at(pr, col) == 0) ++pr;
            if (pr == rows) continue;
            if (pr != row) {
                for (std::uint32_t c = 0; c < cols; ++c) std::swap(at(pr, c), at(row, c));
                odd = !odd;
            }
            const std::uint32_t pivot = at(row, col);
            if (reduced && pivot != 1) {
                const std::uint32_t pinv = f->inv(pivot);
                for (std::uint32_t c = col; c < cols; ++c) at(row, c) = f->mul(at(row, c), pinv);
            }
            const std::uint32_t pval = at(row, col);
            const std::uint32_t start = reduced ? 0 : row + 1;
            for (std::uint32_t r = start; r < rows; ++r) {
                if (r == row) continue;
                const std::uint32_t v = at(r, col);
                if (v == 0) continue;
                const std::uint32_t factor = f->mul(v, f->inv(pval));
                for (std::uint32_t c = col; c < cols; ++c)
                    at(r, c) = f->sub(at(r, c), f->mul(factor, at(row, c)));
            }
            pivots.push_back(col);
            ++row;
        }
        if (swapped_odd) *swapped_odd = odd;
        return pivots;
    }
};

Elim make_elim(const FieldMatrix& M) {
    return Elim{M.codes(), M.rows(), M.cols(), &M.field()};
}

} // namespace

FieldElement determinant(const FieldMatrix& M) {
    if (M.rows() != M.cols()) throw NotSquareError("determinant of a non-square matrix");
    const Field& f = M.field();
    if (M.rows() == 0) return {f, 1};
    Elim e = make_elim(M);
    bool odd = false;
    const std::vector<std::uint32_t> pivots = e.eliminate(false, &odd);
    if (pivots.size() < M.rows()) return {f, 0};
    std::uint32_t det = 1;
    for (std::uint32_t i = 0; i < M.rows(); ++i) det = f.mul(det, e.at(i, pivots[i]));
    if (odd) det = f.neg(det);
    return {f, det};
}

std::uint32_t rank(const FieldMatrix& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0;
    Elim e = make_elim(M);
    return static_cast<std::uint32_t>(e.eliminate(false).size());
}

FieldMatrix right_kernel_basis(const FieldMatrix& M) {
    const Field& f = M.field();
    const std::uint32_t n = M.cols();
    if (n == 0) return FieldMatrix(f, 0, 0);
    if (M.rows() == 0) return FieldMatrix::identity(f, n);
    Elim e = make_elim(M);
    const std::vector<std::uint32_t> pivots = e.eliminate(true);
    std::vector<bool> is_pivot(n, false);
    for (std::uint32_t c : pivots) is_pivot[c] = true;

    const std::uint32_t nullity = n - static_cast<std::uint32_t>(pivots.size());
    FieldMatrix K(f, n, nullity);
    std::uint32_t out_col = 0;
    for (std::uint32_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        K.set_code(free_col, out_col, 1);
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
            const std::uint32_t v = e.at(static_cast<std::uint32_t>(pr), free_col);
            if (v != 0) K.set_code(pivots[pr], out_col, f.neg(v));
        }
        ++out_col;
    }
    return K;
}

FieldMatrix submatrix(const FieldMatrix& M, const std::vector<std::uint32_t>& rows1,
                      const std::vector<std::uint32_t>& cols1) {
    auto check = [](const std::vector<std::uint32_t>& v, std::uint32_t bound, const char* what) {
        std::uint32_t prev = 0;
        for (std::uint32_t x : v) {
            if (x < 1 || x > bound)
                throw IndexOutOfRangeError(std::string(what) + " index out of range [1, " +
                                           std::to_string(bound) + "]");
            if (x <= prev) throw NotStrictlyIncreasingError(std::string(what) + " indices must be strictly increasing");
            prev = x;
        }
    };
    check(rows1, M.rows(), "row");
    check(cols1, M.cols(), "column");
    FieldMatrix out(M.field(), static_cast<std::uint32_t>(rows1.size()),
                    static_cast<std::uint32_t>(cols1.size()));
    for (std::size_t r = 0; r < rows1.size(); ++r)
        for (std::size_t c = 0; c < cols1.size(); ++c)
            out.set_code(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
                         M.code_at(rows1[r] - 1, cols1[c] - 1));
    return out;
}

std::optional<FieldMatrix> solve_linear(const FieldMatrix& A, const FieldMatrix& B) {
    if (A.field() != B.field()) throw FieldMismatchError("solve over different fields");
    if (A.rows() != B.rows()) throw DimensionMismatchError("A and B row counts differ");
    const Field& f = A.field();
    const std::uint32_t n = A.cols(), m = B.cols();
    FieldMatrix aug = hstack(A, B);
    Elim e = make_elim(aug);
    const std::vector<std::uint32_t> pivots = e.eliminate(true);
    // any pivot in the B part means inconsistency
    for (std::uint32_t c : pivots)
        if (c >= n) return std::nullopt;
    FieldMatrix X(f, n, m);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
        for (std::uint32_t j = 0; j < m; ++j)
            X.set_code(pivots[pr], j, e.at(static_cast<std::uint32_t>(pr), n + j));
    return X;
}

FieldMatrix hstack(const FieldMatrix& A, const FieldMatrix& B) {
    if (A.field() != B.field()) throw FieldMismatchError("hstack over different fields");
    if (A.rows() != B.rows()) throw DimensionMismatchError("hstack row counts differ");
    FieldMatrix out(A.field(), A.rows(), A.cols() + B.cols());
    for (std::uint32_t r = 0; r < A.rows(); ++r) {
        for (std::uint32_t c = 0; c < A.cols(); ++c) out.set_code(r, c, A.code_at(r, c));
        for (std::uint32_t c = 0; c < B.cols(); ++c) out.set_code(r, A.cols() + c, B.code_at(r, c));
    }
    return out;
}

FieldMatrix vstack(const FieldMatrix& A, const FieldMatrix& B) {
    if (A.field() != B.field()) throw FieldMismatchError("vstack over different fields");
    if (A.cols() != B.cols()) throw DimensionMismatchError("vstack column counts differ");
    FieldMatrix out(A.field(), A.rows() + B.rows(), A.cols());
    for (std::uint32_t r = 0; r < A.rows(); ++r)
        for (std::uint32_t c = 0; c < A.cols(); ++c) out.set_code(r, c, A.code_at(r, c));
    for (std::uint32_t r = 0; r < B.rows(); ++r)
        for (std::uint32_t c = 0; c < B.cols(); ++c) out.set_code(A.rows() + r, c, B.code_at(r, c));
    return out;
}

std::uint32_t weight(const FieldMatrix& M) {
    std::uint32_t w = 0;
    for (std::uint32_t c : M.codes()) w += (c != 0);
    return w;
}

} // namespace mdpcc
