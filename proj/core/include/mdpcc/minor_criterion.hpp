#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mdpcc/matrix.hpp"

namespace mdpcc {

/// A minor of the lower block triangular Toeplitz matrix T_j, identified by
/// 1-based strictly increasing row and column index lists of equal size.
struct MinorIndex {
    std::vector<std::uint32_t> rows;
    std::vector<std::uint32_t> cols;

    bool operator==(const MinorIndex& o) const { return rows == o.rows && cols == o.cols; }
};

inline constexpr std::uint64_t kDefaultMinorBudget = 1ull << 24;

/// True iff position (i, j) of T (1-based) lies above the block diagonal,
/// i.e. j > ceil(i/(n-k)) * k. Such entries are zero for every code.
bool structural_zero(std::uint32_t i, std::uint32_t j, std::uint32_t n, std::uint32_t k);

/// Validates an index against a concrete matrix shape: both lists nonempty
/// and of equal size, entries 1-based strictly increasing, rows within
/// [1, max_row], columns within [1, max_col]. Throws on violation.
void validate_minor_index(const MinorIndex& idx, std::uint32_t max_row, std::uint32_t max_col);

/// True iff the minor vanishes for every choice of Markov blocks, which
/// happens exactly when some diagonal position (i_t, j_t) of the minor is a
/// structural zero of T: j_t > ceil(i_t/(n-k)) * k for some t.
bool is_trivially_zero(const MinorIndex& idx, std::uint32_t n, std::uint32_t k);

/// Lazy stream over all non-trivially-zero minors of T_j of a fixed size r,
/// in lexicographic order on (rows, cols). Generation prunes index prefixes
/// that already violate the diagonal condition, so trivially-zero regions of
/// the (rows, cols) space are skipped wholesale, never visited and filtered.
class NontrivialMinorStream {
  public:
    NontrivialMinorStream(std::uint32_t j, std::uint32_t n, std::uint32_t k, std::uint32_t r);

    /// Next index, or nullopt when exhausted.
    std::optional<MinorIndex> next();

  private:
    std::uint32_t n_, k_, r_, R_, C_;
    std::vector<std::uint32_t> rows_, cols_, caps_;
    bool done_, need_first_cols_;

    std::uint32_t cap_of_row(std::uint32_t i) const; // min(C, ceil(i/(n-k))*k)
    bool advance_rows(std::uint32_t from);
    bool first_cols();
    bool advance_cols();
};

/// Eager variant of the stream above.
std::vector<MinorIndex> enumerate_nontrivial_minors(std::uint32_t j, std::uint32_t n,
                                                    std::uint32_t k, std::uint32_t r);

/// Scans every non-trivially-zero minor of T (all sizes 1..min(rows, cols),
/// sizes ascending, stream order within a size) and reports the first one
/// whose determinant vanishes, or nullopt if none does. T must have the exact
/// T_j shape for (j, n, k) and zero entries above the block diagonal
/// (ShapeMismatchError otherwise). Throws BudgetExceededError once more than
/// `budget` determinants would have to be evaluated.
std::optional<MinorIndex> first_vanishing_minor(const FieldMatrix& T, std::uint32_t n,
                                                std::uint32_t k, std::uint32_t j,
                                                std::uint64_t budget = kDefaultMinorBudget);

/// True iff no non-trivially-zero minor of T vanishes (same scan/budget
/// contract as first_vanishing_minor).
bool all_nontrivial_minors_nonzero(const FieldMatrix& T, std::uint32_t n, std::uint32_t k,
                                   std::uint32_t j, std::uint64_t budget = kDefaultMinorBudget);

/// Independent test oracle for is_trivially_zero: builds the minor over the
/// polynomial ring with one indeterminate per structurally-nonzero entry of
/// T_j (entry (s, t) of block F_i gets x_{i(n-k)k + (s-1)k + t}, repeated
/// wherever F_i appears) and expands the determinant exactly. Returns true
/// iff the determinant is the zero polynomial. `characteristic` = 0 works
/// over the integers; a prime reduces coefficients mod p first.
bool symbolic_trivially_zero_oracle(const MinorIndex& idx, std::uint32_t j, std::uint32_t n,
                                    std::uint32_t k, std::uint32_t characteristic = 0);

} // namespace mdpcc
