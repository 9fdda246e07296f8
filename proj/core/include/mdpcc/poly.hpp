#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdpcc/minor_criterion.hpp"
#include "mdpcc/state_space.hpp"

namespace mdpcc {

/// Matrix over the polynomial ring F[z], stored as coefficient matrices in
/// ascending degree. Trailing zero coefficients are trimmed on construction;
/// at least one coefficient is always kept, so the zero matrix has degree 0.
class PolyMatrix {
  public:
    PolyMatrix(Field f, std::uint32_t rows, std::uint32_t cols); // zero matrix
    explicit PolyMatrix(std::vector<FieldMatrix> coeffs);        // must be nonempty, equal shapes

    const Field& field() const { return f_; }
    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }
    std::uint32_t degree() const { return static_cast<std::uint32_t>(coeffs_.size()) - 1; }
    bool is_zero() const;

    /// Coefficient of z^i (the zero matrix beyond the stored degree).
    FieldMatrix coeff(std::uint32_t i) const;
    const std::vector<FieldMatrix>& coeffs() const { return coeffs_; }

    bool operator==(const PolyMatrix& o) const;
    bool operator!=(const PolyMatrix& o) const { return !(*this == o); }
    PolyMatrix operator+(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix transpose() const;
    FieldMatrix evaluate(std::uint32_t code) const;

    std::string describe() const;

  private:
    Field f_;
    std::uint32_t rows_, cols_;
    std::vector<FieldMatrix> coeffs_;

    void trim();
};

/// The (delta + n-k) x (delta + n) pencil
///
///   M(z) = [ zI - A   0   -B ]
///          [   -C     I   -D ]
///
/// whose right kernel over F[z] consists of the triples (x(z), y(z), u(z))
/// satisfying both state equations. Column groups: state (delta), parity
/// outputs (n-k), inputs (k). M has full row rank over F(z) since det(zI - A)
/// is nonzero.
PolyMatrix system_polynomial_matrix(const StateSpace& sys);

/// Minimal basis of { v(z) : M(z) v(z) = 0 }, returned as the columns of one
/// PolyMatrix, ordered by ascending degree (ties by discovery order). Built
/// degree by degree from linearized constant kernels; every element of the
/// kernel module is an F[z] combination of the result. Each column is scaled
/// so the first nonzero entry of its top-degree coefficient is 1.
PolyMatrix poly_right_kernel_basis(const PolyMatrix& M);

/// n x k polynomial generator matrix of the code: the input/output parts of a
/// minimal kernel basis of the system pencil (rows are parity-first, matching
/// v_t = (y_t; u_t)). Requires a controllable and observable system
/// (NotControllableError / NotObservableError); the result always has full
/// column rank over F(z), checked defensively (RankDeficientError).
PolyMatrix generator_matrix(const StateSpace& sys);

/// (n-k) x n polynomial parity check matrix: a minimal left kernel basis of
/// G, so H G = 0 (verified). Throws RankDeficientError unless the left kernel
/// has the expected rank n - k.
PolyMatrix parity_check_matrix(const PolyMatrix& G);

/// Sliding parity matrix of H(z) = sum H_i z^i at window j: the block lower
/// triangular Toeplitz matrix of shape (j+1)(n-k) x (j+1)n with block (r, c)
/// equal to H_{r-c} (zero outside 0..deg H).
FieldMatrix sliding_parity_matrix(const PolyMatrix& H, std::uint32_t j);

/// Dual distance-profile criterion on the parity side: every full-size minor
/// of the sliding parity matrix at window j whose ordered column indices
/// satisfy i_{s(n-k)} <= s n for s = 1..j is nonzero. Each determinant counts
/// against the budget (BudgetExceededError).
bool all_parity_minors_nonzero(const PolyMatrix& H, std::uint32_t j,
                               std::uint64_t budget = kDefaultMinorBudget);

/// Maximum distance profile test through the parity-side criterion at j = L.
/// Requires a controllable and observable system.
bool is_mdp_via_parity(const StateSpace& sys, std::uint64_t budget = kDefaultMinorBudget);

/// Cross-checks of the four descriptions of the same code on sampled
/// codewords (polynomial message w, codeword v = G w, time blocks read off
/// the coefficients highest power first, so time 0 is the top coefficient):
///   terminated:     driving the state equations with the input blocks of v
///                   returns the state to zero one step past the end
///   toeplitz_ok:    the sliding Toeplitz encoding of the input blocks equals
///                   the output blocks of v
///   polynomial_identity_ok: H(z) v(z) = 0 exactly
///   parity_ok:      the coefficient blocks of v, stacked in ascending degree
///                   (time order reversed), lie in the kernel of the sliding
///                   parity matrix at window deg v
///   parity_split_ok: on an unconstrained random polynomial vector r, the
///                   time blocks of H(z) r(z) equal the time convolution with
///                   the degree-reversed coefficient blocks of H (consistency
///                   of the time/degree reversal convention)
struct EquivalenceReport {
    bool terminated = true;
    bool toeplitz_ok = true;
    bool polynomial_identity_ok = true;
    bool parity_ok = true;
    bool parity_split_ok = true;
    bool all() const {
        return terminated && toeplitz_ok && polynomial_identity_ok && parity_ok && parity_split_ok;
    }
};

EquivalenceReport check_equivalences(const StateSpace& sys, std::uint32_t trials = 16,
                                     std::uint64_t seed = 0);

} // namespace mdpcc
