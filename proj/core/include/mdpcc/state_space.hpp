#pragma once

#include <cstdint>
#include <vector>

#include "mdpcc/matrix.hpp"

namespace mdpcc {

/// Rate and degree parameters of a convolutional code: length n, dimension k,
/// degree delta, with 1 <= k < n.
struct CodeParams {
    std::uint32_t n;
    std::uint32_t k;
    std::uint32_t delta;

    CodeParams(std::uint32_t n_, std::uint32_t k_, std::uint32_t delta_) : n(n_), k(k_), delta(delta_) {
        if (k < 1) throw DimensionMismatchError("k must be at least 1");
        if (k >= n) throw DimensionMismatchError("k must be smaller than n");
    }
    bool operator==(const CodeParams& o) const { return n == o.n && k == o.k && delta == o.delta; }
};

/// Input-state-output representation of a rate k/n convolutional code of
/// degree delta:
///
///   x_{t+1} = A x_t + B u_t,   y_t = C x_t + D u_t,   x_0 = 0,
///
/// with A delta x delta, B delta x k, C (n-k) x delta, D (n-k) x k. The code
/// vector at time t is v_t = (y_t; u_t), parity part first.
class StateSpace {
  public:
    StateSpace(CodeParams params, Field field, FieldMatrix A, FieldMatrix B, FieldMatrix C,
               FieldMatrix D);

    const CodeParams& params() const { return params_; }
    const Field& field() const { return field_; }
    const FieldMatrix& A() const { return A_; }
    const FieldMatrix& B() const { return B_; }
    const FieldMatrix& C() const { return C_; }
    const FieldMatrix& D() const { return D_; }

  private:
    CodeParams params_;
    Field field_;
    FieldMatrix A_, B_, C_, D_;
};

/// Markov (impulse response) blocks of a code. Each block is (n-k) x k over
/// the same field. Depending on context the blocks are F_0..F_j (the output
/// of markov_parameters, input of toeplitz_matrix / hankel_matrix) or
/// F_1..F_j (the realization interfaces say so explicitly).
struct MarkovSequence {
    Field field;
    std::uint32_t n_minus_k;
    std::uint32_t k;
    std::vector<FieldMatrix> blocks;

    MarkovSequence(Field field_, std::uint32_t n_minus_k_, std::uint32_t k_,
                   std::vector<FieldMatrix> blocks_);
};

/// F_0 = D, F_i = C A^{i-1} B for i = 1..j.
MarkovSequence markov_parameters(const StateSpace& sys, std::uint32_t j);

/// Lower block triangular Toeplitz matrix T_j of shape (j+1)(n-k) x (j+1)k:
/// block (r, c) is F_{r-c} for r >= c and zero above the block diagonal.
/// Blocks of ms are F_0..F_j.
FieldMatrix toeplitz_matrix(const MarkovSequence& ms);

/// Block Hankel matrix of shape x(n-k) x yk with block (r, c) = F_{r+c-1},
/// 1-based block indices. Blocks of ms are F_0..F_j and F_0 is not used;
/// throws InsufficientBlocksError unless j >= x+y-1.
FieldMatrix hankel_matrix(const MarkovSequence& ms, std::uint32_t x, std::uint32_t y);

/// Drive the system with the input columns of U (k x (j+1), column t = u_t)
/// from x_0 = 0; returns the n x (j+1) matrix whose column t is v_t = (y_t; u_t).
FieldMatrix encode(const StateSpace& sys, const FieldMatrix& U);

/// rank [B, AB, ..., A^{delta-1} B] == delta (vacuously true for delta = 0).
bool is_controllable(const StateSpace& sys);

/// rank [C; CA; ...; C A^{delta-1}] == delta (vacuously true for delta = 0).
bool is_observable(const StateSpace& sys);

/// Degree-padding that preserves every Markov parameter: prepend r zero state
/// dimensions, A' = diag(0_r, A), B' = [0; B], C' = [0, C], D' = D. For r >= 1
/// the result is neither controllable nor observable.
StateSpace pad_realization(const StateSpace& sys, std::uint32_t r);

/// Uniformly random system with the given parameters; entries are drawn
/// row-major through A, B, C, D from SplitMix64(seed). Identical seeds give
/// identical systems on every platform.
StateSpace random_system(const CodeParams& params, const Field& field, std::uint64_t seed);

} // namespace mdpcc
