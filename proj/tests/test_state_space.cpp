#include "doctest.h"

#include "mdpcc/errors.hpp"
#include "mdpcc/rng.hpp"
#include "mdpcc/state_space.hpp"

#include <cstdint>
#include <vector>

using namespace mdpcc;

namespace {

// Degree-1 rate-1/2 code over GF(3) used as the running example everywhere:
// A=2, B=1, C=1, D=1.
StateSpace example_code() {
    Field f3(3);
    FieldMatrix A(f3, 1, 1), B(f3, 1, 1), C(f3, 1, 1), D(f3, 1, 1);
    A.set_code(0, 0, 2);
    B.set_code(0, 0, 1);
    C.set_code(0, 0, 1);
    D.set_code(0, 0, 1);
    return StateSpace(CodeParams(2, 1, 1), f3, A, B, C, D);
}

std::vector<std::uint32_t> scalar_blocks(const MarkovSequence& ms) {
    std::vector<std::uint32_t> out;
    for (const FieldMatrix& b : ms.blocks) out.push_back(b.code_at(0, 0));
    return out;
}

} // namespace

TEST_CASE("code parameters enforce 1 <= k < n") {
    CHECK_THROWS_AS(CodeParams(2, 2, 1), DimensionMismatchError);
    CHECK_THROWS_AS(CodeParams(2, 0, 1), DimensionMismatchError);
    CodeParams ok(3, 2, 0);
    CHECK(ok.n == 3);
}

TEST_CASE("system matrices are shape- and field-checked") {
    Field f3(3);
    FieldMatrix A(f3, 1, 1), B(f3, 1, 1), C(f3, 1, 1), D(f3, 1, 1);
    CHECK_THROWS_AS(StateSpace(CodeParams(2, 1, 1), f3, FieldMatrix(f3, 2, 2), B, C, D),
                    DimensionMismatchError);
    CHECK_THROWS_AS(StateSpace(CodeParams(2, 1, 1), f3, A, B, C, FieldMatrix(Field(5), 1, 1)),
                    FieldMismatchError);
}

TEST_CASE("markov parameters of the example are 1,1,2,1") {
    StateSpace sys = example_code();
    MarkovSequence ms = markov_parameters(sys, 3);
    CHECK(ms.n_minus_k == 1);
    CHECK(ms.k == 1);
    CHECK(scalar_blocks(ms) == std::vector<std::uint32_t>{1, 1, 2, 1});
}

TEST_CASE("toeplitz matrix is lower block triangular with constant diagonals") {
    StateSpace sys = example_code();
    FieldMatrix T = toeplitz_matrix(markov_parameters(sys, 2));
    REQUIRE(T.rows() == 3);
    REQUIRE(T.cols() == 3);
    const std::uint32_t expect[3][3] = {{1, 0, 0}, {1, 1, 0}, {2, 1, 1}};
    for (std::uint32_t r = 0; r < 3; ++r)
        for (std::uint32_t c = 0; c < 3; ++c) CHECK(T.code_at(r, c) == expect[r][c]);
}

TEST_CASE("hankel matrix stacks shifted blocks and checks supply") {
    StateSpace sys = example_code();
    MarkovSequence ms = markov_parameters(sys, 3);
    FieldMatrix H = hankel_matrix(ms, 2, 2);  // [[F1,F2],[F2,F3]]
    CHECK(H.code_at(0, 0) == 1);
    CHECK(H.code_at(0, 1) == 2);
    CHECK(H.code_at(1, 0) == 2);
    CHECK(H.code_at(1, 1) == 1);
    CHECK_THROWS_AS(hankel_matrix(ms, 3, 2), InsufficientBlocksError);
    CHECK_THROWS_AS(hankel_matrix(ms, 0, 2), DimensionMismatchError);
}

TEST_CASE("encoding the example input (1,0,2) gives the expected trajectory") {
    StateSpace sys = example_code();
    Field f3(3);
    FieldMatrix U(f3, 1, 3);
    U.set_code(0, 0, 1);
    U.set_code(0, 2, 2);
    FieldMatrix V = encode(sys, U);
    REQUIRE(V.rows() == 2);
    REQUIRE(V.cols() == 3);
    // v_t = (y_t; u_t): y = (1, 1, 1), u = (1, 0, 2)
    const std::uint32_t expect[2][3] = {{1, 1, 1}, {1, 0, 2}};
    for (std::uint32_t r = 0; r < 2; ++r)
        for (std::uint32_t c = 0; c < 3; ++c) CHECK(V.code_at(r, c) == expect[r][c]);
    CHECK(weight(V) == 5);
    CHECK_THROWS_AS(encode(sys, FieldMatrix(f3, 2, 3)), DimensionMismatchError);
    CHECK_THROWS_AS(encode(sys, FieldMatrix(Field(5), 1, 3)), FieldMismatchError);
}

TEST_CASE("encoding is linear and shift covariant") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Field f5(5);
        CodeParams params(3, 2, 2);
        StateSpace sys = random_system(params, f5, seed);
        SplitMix64 g = SplitMix64::stream(0x656e63u, seed);
        FieldMatrix U1(f5, 2, 4), U2(f5, 2, 4);
        for (std::uint32_t r = 0; r < 2; ++r)
            for (std::uint32_t c = 0; c < 4; ++c) {
                U1.set_code(r, c, static_cast<std::uint32_t>(g.below(5)));
                U2.set_code(r, c, static_cast<std::uint32_t>(g.below(5)));
            }
        CHECK(encode(sys, U1 + U2) == encode(sys, U1) + encode(sys, U2));
        CHECK(encode(sys, U1.scaled(3)) == encode(sys, U1).scaled(3));

        // delaying the input by one step delays the output by one step
        FieldMatrix Ud(f5, 2, 5);
        for (std::uint32_t r = 0; r < 2; ++r)
            for (std::uint32_t c = 0; c < 4; ++c) Ud.set_code(r, c + 1, U1.code_at(r, c));
        FieldMatrix V = encode(sys, U1);
        FieldMatrix Vd = encode(sys, Ud);
        for (std::uint32_t r = 0; r < 3; ++r) {
            CHECK(Vd.code_at(r, 0) == 0);
            for (std::uint32_t c = 0; c < 4; ++c) CHECK(Vd.code_at(r, c + 1) == V.code_at(r, c));
        }
    }
}

TEST_CASE("the example is controllable and observable, padding destroys both") {
    StateSpace sys = example_code();
    CHECK(is_controllable(sys));
    CHECK(is_observable(sys));

    StateSpace padded = pad_realization(sys, 1);
    CHECK(padded.params().delta == 2);
    CHECK(padded.A().code_at(0, 0) == 0);
    CHECK(padded.A().code_at(1, 1) == 2);
    CHECK(padded.A().code_at(0, 1) == 0);
    CHECK(padded.B().code_at(0, 0) == 0);
    CHECK(padded.B().code_at(1, 0) == 1);
    CHECK(padded.C().code_at(0, 0) == 0);
    CHECK(padded.C().code_at(0, 1) == 1);
    CHECK_FALSE(is_controllable(padded));
    CHECK_FALSE(is_observable(padded));

    // padding by zero is the identity
    StateSpace same = pad_realization(sys, 0);
    CHECK(same.A() == sys.A());
    CHECK(is_controllable(same));
}

TEST_CASE("padding preserves the full markov sequence") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        StateSpace sys = random_system(CodeParams(3, 1, 2), Field(7), seed);
        StateSpace padded = pad_realization(sys, 2);
        MarkovSequence a = markov_parameters(sys, 6);
        MarkovSequence b = markov_parameters(padded, 6);
        REQUIRE(a.blocks.size() == b.blocks.size());
        for (std::size_t i = 0; i < a.blocks.size(); ++i) CHECK(a.blocks[i] == b.blocks[i]);
    }
}

TEST_CASE("delta-0 systems are vacuously minimal and memoryless") {
    Field f5(5);
    FieldMatrix D(f5, 2, 1);
    D.set_code(0, 0, 2);
    D.set_code(1, 0, 3);
    StateSpace sys(CodeParams(3, 1, 0), f5, FieldMatrix(f5, 0, 0), FieldMatrix(f5, 0, 1),
                   FieldMatrix(f5, 2, 0), D);
    CHECK(is_controllable(sys));
    CHECK(is_observable(sys));
    MarkovSequence ms = markov_parameters(sys, 2);
    CHECK(ms.blocks[0] == D);
    CHECK(ms.blocks[1].is_zero());
    CHECK(ms.blocks[2].is_zero());
}

TEST_CASE("random systems are seed-deterministic") {
    CodeParams params(3, 2, 2);
    Field f9(3, 2);
    StateSpace a = random_system(params, f9, 42);
    StateSpace b = random_system(params, f9, 42);
    CHECK(a.A() == b.A());
    CHECK(a.B() == b.B());
    CHECK(a.C() == b.C());
    CHECK(a.D() == b.D());
    StateSpace c = random_system(params, f9, 43);
    const bool all_equal = a.A() == c.A() && a.B() == c.B() && a.C() == c.C() && a.D() == c.D();
    CHECK_FALSE(all_equal);
}
