#include "mdpcc/minor_criterion.hpp"

#include <algorithm>
#include <map>

namespace mdpcc {

namespace {

inline std::uint32_t ceil_div(std::uint32_t a, std::uint32_t b) { return (a + b - 1) / b; }

void check_params(std::uint32_t n, std::uint32_t k) {
    if (k < 1 || k >= n) throw DimensionMismatchError("need 1 <= k < n");
}

} // namespace

bool structural_zero(std::uint32_t i, std::uint32_t j, std::uint32_t n, std::uint32_t k) {
    check_params(n, k);
    if (i < 1 || j < 1) throw IndexOutOfRangeError("positions are 1-based");
    return j > ceil_div(i, n - k) * k;
}

void validate_minor_index(const MinorIndex& idx, std::uint32_t max_row, std::uint32_t max_col) {
    if (idx.rows.empty() || idx.rows.size() != idx.cols.size())
        throw DimensionMismatchError("minor index needs equally many rows and columns (at least one)");
    auto check = [](const std::vector<std::uint32_t>& v, std::uint32_t bound, const char* what) {
        std::uint32_t prev = 0;
        for (std::uint32_t x : v) {
            if (x < 1 || x > bound)
                throw IndexOutOfRangeError(std::string(what) + " index out of range [1, " +
                                           std::to_string(bound) + "]");
            if (x <= prev)
                throw NotStrictlyIncreasingError(std::string(what) + " indices must be strictly increasing");
            prev = x;
        }
    };
    check(idx.rows, max_row, "minor row");
    check(idx.cols, max_col, "minor column");
}

bool is_trivially_zero(const MinorIndex& idx, std::uint32_t n, std::uint32_t k) {
    check_params(n, k);
    if (idx.rows.size() != idx.cols.size() || idx.rows.empty())
        throw DimensionMismatchError("minor index needs equally many rows and columns (at least one)");
    // Vanishes identically iff some diagonal position falls above the block
    // diagonal; equivalently the index condition j_t <= ceil(i_t/(n-k))k fails.
    for (std::size_t t = 0; t < idx.rows.size(); ++t) {
        if (structural_zero(idx.rows[t], idx.cols[t], n, k)) return true;
    }
    return false;
}

NontrivialMinorStream::NontrivialMinorStream(std::uint32_t j, std::uint32_t n, std::uint32_t k,
                                             std::uint32_t r)
    : n_(n), k_(k), r_(r), R_((j + 1) * (n - k)), C_((j + 1) * k), rows_(r), cols_(r), caps_(r),
      done_(false), need_first_cols_(true) {
    check_params(n, k);
    if (r < 1 || r > R_ || r > C_) {
        done_ = true;
        return;
    }
    for (std::uint32_t t = 0; t < r_; ++t) rows_[t] = t + 1;
    // the initial row set may already violate the diagonal condition; jump to
    // the first admissible one
    bool ok = true;
    for (std::uint32_t t = 0; t < r_; ++t) {
        caps_[t] = cap_of_row(rows_[t]);
        if (caps_[t] < t + 1) {
            ok = advance_rows(t);
            break;
        }
    }
    if (!ok) done_ = true;
}

std::uint32_t NontrivialMinorStream::cap_of_row(std::uint32_t i) const {
    return std::min(C_, ceil_div(i, n_ - k_) * k_);
}

// Advance the row combination, starting by incrementing position `from`
// (everything after `from` is discarded). Maintains caps_ and returns false
// when the row space is exhausted. A returned combination always satisfies
// caps_[t] >= t+1 for every t, so it admits at least one column choice.
bool NontrivialMinorStream::advance_rows(std::uint32_t from) {
    std::int64_t t = from;
    while (t >= 0) {
        ++rows_[t];
        if (rows_[t] > R_ - (r_ - 1 - t)) {
            --t;
            continue;
        }
        // fill the suffix with the minimal increasing values, then find the
        // first position violating the diagonal condition (if any)
        for (std::uint32_t s = static_cast<std::uint32_t>(t) + 1; s < r_; ++s)
            rows_[s] = rows_[s - 1] + 1;
        std::int64_t violation = -1;
        for (std::uint32_t s = static_cast<std::uint32_t>(t); s < r_; ++s) {
            caps_[s] = cap_of_row(rows_[s]);
            if (caps_[s] < s + 1) {
                violation = s;
                break;
            }
        }
        if (violation < 0) return true;
        // raising the row index at the violating position is the only way to
        // raise its cap; restart the increment there (prunes the whole prefix)
        t = violation;
    }
    return false;
}

bool NontrivialMinorStream::first_cols() {
    for (std::uint32_t t = 0; t < r_; ++t) {
        cols_[t] = t + 1;
        if (cols_[t] > caps_[t]) return false; // cannot happen for admissible rows
    }
    return true;
}

bool NontrivialMinorStream::advance_cols() {
    std::int64_t t = r_ - 1;
    while (t >= 0) {
        ++cols_[t];
        if (cols_[t] > caps_[t]) {
            --t;
            continue;
        }
        bool ok = true;
        for (std::uint32_t s = static_cast<std::uint32_t>(t) + 1; s < r_; ++s) {
            cols_[s] = cols_[s - 1] + 1;
            if (cols_[s] > caps_[s]) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
        --t; // minimal suffix already overflows: position t cannot grow further
    }
    return false;
}

std::optional<MinorIndex> NontrivialMinorStream::next() {
    while (!done_) {
        if (need_first_cols_) {
            need_first_cols_ = false;
            if (first_cols()) return MinorIndex{rows_, cols_};
        } else if (advance_cols()) {
            return MinorIndex{rows_, cols_};
        }
        if (!advance_rows(r_ - 1)) {
            done_ = true;
            break;
        }
        need_first_cols_ = true;
    }
    return std::nullopt;
}

std::vector<MinorIndex> enumerate_nontrivial_minors(std::uint32_t j, std::uint32_t n,
                                                    std::uint32_t k, std::uint32_t r) {
    NontrivialMinorStream stream(j, n, k, r);
    std::vector<MinorIndex> out;
    while (auto idx = stream.next()) out.push_back(std::move(*idx));
    return out;
}

namespace {

void check_toeplitz_shape(const FieldMatrix& T, std::uint32_t n, std::uint32_t k, std::uint32_t j) {
    check_params(n, k);
    const std::uint32_t R = (j + 1) * (n - k), C = (j + 1) * k;
    if (T.rows() != R || T.cols() != C)
        throw ShapeMismatchError("matrix is not shaped like T_j: expected " + std::to_string(R) +
                                 "x" + std::to_string(C));
    for (std::uint32_t i = 1; i <= R; ++i) {
        for (std::uint32_t c = ceil_div(i, n - k) * k + 1; c <= C; ++c) {
            if (T.code_at(i - 1, c - 1) != 0)
                throw ShapeMismatchError("matrix has a nonzero entry above the block diagonal at (" +
                                         std::to_string(i) + ", " + std::to_string(c) + ")");
        }
    }
}

} // namespace

std::optional<MinorIndex> first_vanishing_minor(const FieldMatrix& T, std::uint32_t n,
                                                std::uint32_t k, std::uint32_t j,
                                                std::uint64_t budget) {
    check_toeplitz_shape(T, n, k, j);
    std::uint64_t evaluated = 0;
    const std::uint32_t rmax = std::min(T.rows(), T.cols());
    for (std::uint32_t r = 1; r <= rmax; ++r) {
        NontrivialMinorStream stream(j, n, k, r);
        while (auto idx = stream.next()) {
            if (evaluated == budget)
                throw BudgetExceededError("minor evaluation budget exhausted after " +
                                              std::to_string(evaluated) + " determinants",
                                          evaluated + 1, budget);
            ++evaluated;
            if (determinant(submatrix(T, idx->rows, idx->cols)).is_zero()) return idx;
        }
    }
    return std::nullopt;
}

bool all_nontrivial_minors_nonzero(const FieldMatrix& T, std::uint32_t n, std::uint32_t k,
                                   std::uint32_t j, std::uint64_t budget) {
    return !first_vanishing_minor(T, n, k, j, budget).has_value();
}

namespace {

// Sparse multivariate polynomial with integer coefficients: exponent vector
// (dense over the variables actually present) -> coefficient.
using Monomial = std::vector<std::uint32_t>;
using Poly = std::map<Monomial, long long>;

void det_expand(const std::vector<std::vector<std::int64_t>>& vars, std::uint32_t row,
                std::uint32_t used_cols, Monomial& exps, long long sign, Poly& acc,
                std::uint64_t characteristic) {
    const std::uint32_t r = static_cast<std::uint32_t>(vars.size());
    if (row == r) {
        long long& c = acc[exps];
        c += sign;
        if (characteristic != 0) c %= static_cast<long long>(characteristic);
        if (c == 0) acc.erase(exps);
        return;
    }
    std::uint32_t skipped = 0;
    for (std::uint32_t col = 0; col < r; ++col) {
        if (used_cols & (1u << col)) continue;
        const std::int64_t v = vars[row][col];
        if (v >= 0) {
            ++exps[static_cast<std::size_t>(v)];
            det_expand(vars, row + 1, used_cols | (1u << col), exps,
                       (skipped % 2 == 0) ? sign : -sign, acc, characteristic);
            --exps[static_cast<std::size_t>(v)];
        }
        ++skipped;
    }
}

} // namespace

bool symbolic_trivially_zero_oracle(const MinorIndex& idx, std::uint32_t j, std::uint32_t n,
                                    std::uint32_t k, std::uint32_t characteristic) {
    check_params(n, k);
    validate_minor_index(idx, (j + 1) * (n - k), (j + 1) * k);
    if (characteristic != 0 && !Field::is_prime(characteristic))
        throw NonPrimeCharacteristicError("oracle characteristic must be 0 or a prime");

    const std::uint32_t r = static_cast<std::uint32_t>(idx.rows.size());
    if (r > 16) throw BudgetExceededError("symbolic oracle supports minors up to order 16", r, 16);

    // one indeterminate per structurally nonzero entry of T_j, repeated
    // wherever the same block entry recurs; ids then compress to dense slots
    std::vector<std::vector<std::int64_t>> vars(r, std::vector<std::int64_t>(r, -1));
    std::map<std::uint64_t, std::int64_t> slot_of;
    for (std::uint32_t a = 0; a < r; ++a) {
        for (std::uint32_t b = 0; b < r; ++b) {
            const std::uint32_t i = idx.rows[a], jc = idx.cols[b];
            if (structural_zero(i, jc, n, k)) continue;
            const std::uint32_t br = ceil_div(i, n - k), bc = ceil_div(jc, k);
            const std::uint32_t f = br - bc; // block F_f, guaranteed br >= bc here
            const std::uint32_t s = i - (br - 1) * (n - k), t = jc - (bc - 1) * k;
            const std::uint64_t var_id =
                static_cast<std::uint64_t>(f) * (n - k) * k + static_cast<std::uint64_t>(s - 1) * k + t;
            auto [it, inserted] = slot_of.try_emplace(var_id, static_cast<std::int64_t>(slot_of.size()));
            vars[a][b] = it->second;
        }
    }

    Poly acc;
    Monomial exps(slot_of.size(), 0);
    det_expand(vars, 0, 0, exps, 1, acc, characteristic);
    return acc.empty();
}

} // namespace mdpcc
