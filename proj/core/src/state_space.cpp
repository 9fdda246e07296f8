#include "mdpcc/state_space.hpp"

#include "mdpcc/rng.hpp"

namespace mdpcc {

namespace {

void check_dims(const char* name, const FieldMatrix& M, std::uint32_t rows, std::uint32_t cols) {
    if (M.rows() != rows || M.cols() != cols)
        throw DimensionMismatchError(std::string(name) + " must be " + std::to_string(rows) + "x" +
                                     std::to_string(cols) + ", got " + std::to_string(M.rows()) +
                                     "x" + std::to_string(M.cols()));
}

} // namespace

StateSpace::StateSpace(CodeParams params, Field field, FieldMatrix A, FieldMatrix B, FieldMatrix C,
                       FieldMatrix D)
    : params_(params), field_(std::move(field)), A_(std::move(A)), B_(std::move(B)),
      C_(std::move(C)), D_(std::move(D)) {
    const std::uint32_t d = params_.delta, k = params_.k, p = params_.n - params_.k;
    check_dims("A", A_, d, d);
    check_dims("B", B_, d, k);
    check_dims("C", C_, p, d);
    check_dims("D", D_, p, k);
    for (const FieldMatrix* M : {&A_, &B_, &C_, &D_}) {
        if (M->field() != field_) throw FieldMismatchError("system matrices must share the system field");
    }
}

MarkovSequence::MarkovSequence(Field field_, std::uint32_t n_minus_k_, std::uint32_t k_,
                               std::vector<FieldMatrix> blocks_)
    : field(std::move(field_)), n_minus_k(n_minus_k_), k(k_), blocks(std::move(blocks_)) {
    if (n_minus_k < 1 || k < 1) throw DimensionMismatchError("block shape must be positive");
    for (const FieldMatrix& b : blocks) {
        if (b.field() != field) throw FieldMismatchError("Markov blocks must share one field");
        if (b.rows() != n_minus_k || b.cols() != k)
            throw DimensionMismatchError("Markov blocks must all be (n-k) x k");
    }
}

MarkovSequence markov_parameters(const StateSpace& sys, std::uint32_t j) {
    std::vector<FieldMatrix> blocks;
    blocks.reserve(j + 1);
    blocks.push_back(sys.D());
    // F_i = C A^{i-1} B, computed with a running A^{i-1} B
    FieldMatrix AB = sys.B();
    for (std::uint32_t i = 1; i <= j; ++i) {
        blocks.push_back(sys.C() * AB);
        if (i < j) AB = sys.A() * AB;
    }
    return {sys.field(), sys.params().n - sys.params().k, sys.params().k, std::move(blocks)};
}

FieldMatrix toeplitz_matrix(const MarkovSequence& ms) {
    if (ms.blocks.empty()) throw InsufficientBlocksError("Toeplitz matrix needs at least F_0");
    const std::uint32_t j = static_cast<std::uint32_t>(ms.blocks.size()) - 1;
    const std::uint32_t p = ms.n_minus_k, k = ms.k;
    FieldMatrix T(ms.field, (j + 1) * p, (j + 1) * k);
    for (std::uint32_t br = 0; br <= j; ++br) {
        for (std::uint32_t bc = 0; bc <= br; ++bc) {
            const FieldMatrix& F = ms.blocks[br - bc];
            for (std::uint32_t r = 0; r < p; ++r)
                for (std::uint32_t c = 0; c < k; ++c)
                    T.set_code(br * p + r, bc * k + c, F.code_at(r, c));
        }
    }
    return T;
}

FieldMatrix hankel_matrix(const MarkovSequence& ms, std::uint32_t x, std::uint32_t y) {
    if (x < 1 || y < 1) throw DimensionMismatchError("Hankel block counts must be positive");
    if (ms.blocks.size() < static_cast<std::size_t>(x) + y)
        throw InsufficientBlocksError("Hankel matrix of shape (" + std::to_string(x) + "," +
                                      std::to_string(y) + ") needs blocks F_1..F_" +
                                      std::to_string(x + y - 1));
    const std::uint32_t p = ms.n_minus_k, k = ms.k;
    FieldMatrix H(ms.field, x * p, y * k);
    for (std::uint32_t br = 1; br <= x; ++br) {
        for (std::uint32_t bc = 1; bc <= y; ++bc) {
            const FieldMatrix& F = ms.blocks[br + bc - 1];
            for (std::uint32_t r = 0; r < p; ++r)
                for (std::uint32_t c = 0; c < k; ++c)
                    H.set_code((br - 1) * p + r, (bc - 1) * k + c, F.code_at(r, c));
        }
    }
    return H;
}

FieldMatrix encode(const StateSpace& sys, const FieldMatrix& U) {
    if (U.field() != sys.field()) throw FieldMismatchError("inputs live over a different field");
    if (U.rows() != sys.params().k) throw DimensionMismatchError("input columns must have k entries");
    const std::uint32_t steps = U.cols();
    const std::uint32_t p = sys.params().n - sys.params().k, k = sys.params().k;
    FieldMatrix V(sys.field(), sys.params().n, steps);
    FieldMatrix x(sys.field(), sys.params().delta, 1);
    for (std::uint32_t t = 0; t < steps; ++t) {
        FieldMatrix u(sys.field(), k, 1);
        for (std::uint32_t r = 0; r < k; ++r) u.set_code(r, 0, U.code_at(r, t));
        FieldMatrix y = sys.C() * x + sys.D() * u;
        for (std::uint32_t r = 0; r < p; ++r) V.set_code(r, t, y.code_at(r, 0));
        for (std::uint32_t r = 0; r < k; ++r) V.set_code(p + r, t, u.code_at(r, 0));
        x = sys.A() * x + sys.B() * u;
    }
    return V;
}

bool is_controllable(const StateSpace& sys) {
    const std::uint32_t d = sys.params().delta;
    if (d == 0) return true;
    FieldMatrix reach = sys.B();
    FieldMatrix AB = sys.B();
    for (std::uint32_t i = 1; i < d; ++i) {
        AB = sys.A() * AB;
        reach = hstack(reach, AB);
    }
    return rank(reach) == d;
}

bool is_observable(const StateSpace& sys) {
    const std::uint32_t d = sys.params().delta;
    if (d == 0) return true;
    FieldMatrix obs = sys.C();
    FieldMatrix CA = sys.C();
    for (std::uint32_t i = 1; i < d; ++i) {
        CA = CA * sys.A();
        obs = vstack(obs, CA);
    }
    return rank(obs) == d;
}

StateSpace pad_realization(const StateSpace& sys, std::uint32_t r) {
    const Field& f = sys.field();
    const CodeParams& p = sys.params();
    const std::uint32_t d = p.delta;
    FieldMatrix A(f, d + r, d + r), B(f, d + r, p.k), C(f, p.n - p.k, d + r);
    for (std::uint32_t i = 0; i < d; ++i)
        for (std::uint32_t jj = 0; jj < d; ++jj) A.set_code(r + i, r + jj, sys.A().code_at(i, jj));
    for (std::uint32_t i = 0; i < d; ++i)
        for (std::uint32_t jj = 0; jj < p.k; ++jj) B.set_code(r + i, jj, sys.B().code_at(i, jj));
    for (std::uint32_t i = 0; i < p.n - p.k; ++i)
        for (std::uint32_t jj = 0; jj < d; ++jj) C.set_code(i, r + jj, sys.C().code_at(i, jj));
    return {CodeParams(p.n, p.k, d + r), f, std::move(A), std::move(B), std::move(C), sys.D()};
}

StateSpace random_system(const CodeParams& params, const Field& field, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const std::uint64_t q = field.order();
    auto draw = [&](std::uint32_t rows, std::uint32_t cols) {
        FieldMatrix M(field, rows, cols);
        for (std::uint32_t r = 0; r < rows; ++r)
            for (std::uint32_t c = 0; c < cols; ++c)
                M.set_code(r, c, static_cast<std::uint32_t>(rng.below(q)));
        return M;
    };
    const std::uint32_t d = params.delta, k = params.k, p = params.n - params.k;
    FieldMatrix A = draw(d, d), B = draw(d, k), C = draw(p, d), D = draw(p, k);
    return {params, field, std::move(A), std::move(B), std::move(C), std::move(D)};
}

} // namespace mdpcc
