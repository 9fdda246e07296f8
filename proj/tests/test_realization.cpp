#include "doctest.h"

#include "mdpcc/distance.hpp"
#include "mdpcc/errors.hpp"
#include "mdpcc/minor_criterion.hpp"
#include "mdpcc/realization.hpp"
#include "mdpcc/rng.hpp"
#include "mdpcc/state_space.hpp"

#include <cstdint>
#include <vector>

using namespace mdpcc;

namespace {

MarkovSequence scalar_sequence(const Field& f, const std::vector<std::uint32_t>& codes) {
    std::vector<FieldMatrix> blocks;
    for (std::uint32_t c : codes) {
        FieldMatrix b(f, 1, 1);
        b.set_code(0, 0, c);
        blocks.push_back(b);
    }
    return MarkovSequence(f, 1, 1, std::move(blocks));
}

MarkovSequence random_sequence(const Field& f, std::uint32_t p, std::uint32_t k, std::uint32_t j,
                               SplitMix64& g) {
    std::vector<FieldMatrix> blocks;
    for (std::uint32_t i = 0; i < j; ++i) {
        FieldMatrix b(f, p, k);
        for (std::uint32_t r = 0; r < p; ++r)
            for (std::uint32_t c = 0; c < k; ++c)
                b.set_code(r, c, static_cast<std::uint32_t>(g.below(f.order())));
        blocks.push_back(b);
    }
    return MarkovSequence(f, p, k, std::move(blocks));
}

bool reproduces(const StateSpace& sys, const MarkovSequence& impulse) {
    MarkovSequence got = markov_parameters(sys, static_cast<std::uint32_t>(impulse.blocks.size()));
    for (std::size_t i = 0; i < impulse.blocks.size(); ++i)
        if (!(got.blocks[i + 1] == impulse.blocks[i])) return false;
    return true;
}

} // namespace

TEST_CASE("realization degrees of pinned scalar sequences") {
    Field f3(3);
    CHECK(minimal_realization_degree(scalar_sequence(f3, {1, 2})) == 1);
    CHECK(minimal_realization_degree(scalar_sequence(f3, {0, 0, 0})) == 0);
    CHECK(minimal_realization_degree(scalar_sequence(f3, {1, 0})) == 1);
    CHECK(minimal_realization_degree(scalar_sequence(f3, {0, 0, 0, 1})) == 4);
    CHECK(minimal_realization_degree(scalar_sequence(f3, {})) == 0);
    // geometric sequence 2^i over GF(5) comes from the 1-dim system A=2
    Field f5(5);
    CHECK(minimal_realization_degree(scalar_sequence(f5, {2, 4, 3, 1})) == 1);
}

TEST_CASE("a two-block impulse with independent directions needs degree 2") {
    Field f3(3);
    std::vector<FieldMatrix> blocks;
    FieldMatrix F1(f3, 2, 1), F2(f3, 2, 1), F3(f3, 2, 1);
    F1.set_code(0, 0, 1);
    F2.set_code(1, 0, 1);
    blocks = {F1, F2, F3};
    MarkovSequence impulse(f3, 2, 1, blocks);
    CHECK(minimal_realization_degree(impulse) == 2);
    RealizationResult re = minimal_partial_realization(impulse);
    CHECK(re.degree == 2);
    CHECK(re.verified);
    CHECK(reproduces(re.system, impulse));
}

TEST_CASE("the pinned example realizes to the canonical degree-1 system") {
    Field f3(3);
    MarkovSequence impulse = scalar_sequence(f3, {1, 2});  // F_1, F_2
    FieldMatrix D(f3, 1, 1);
    D.set_code(0, 0, 1);
    RealizationResult re = minimal_partial_realization(impulse, D);
    CHECK(re.degree == 1);
    CHECK(re.verified);
    CHECK(re.system.A().code_at(0, 0) == 2);
    CHECK(re.system.D().code_at(0, 0) == 1);
    CHECK(reproduces(re.system, impulse));
    CHECK(is_controllable(re.system));
    CHECK(is_observable(re.system));
}

TEST_CASE("realizations of random sequences are minimal, faithful, and verified") {
    SplitMix64 g(0x7265616cu);
    struct Shape { std::uint32_t p, k; };
    const Field fields[] = {Field(2), Field(3), Field(5)};
    int done = 0;
    while (done < 120) {
        for (const Field& f : fields)
            for (Shape s : {Shape{1, 1}, Shape{1, 2}, Shape{2, 1}, Shape{2, 2}}) {
                const std::uint32_t j = 1 + static_cast<std::uint32_t>(g.below(4));
                MarkovSequence impulse = random_sequence(f, s.p, s.k, j, g);
                RealizationResult re = minimal_partial_realization(impulse);
                CHECK(re.verified);
                CHECK(re.degree == minimal_realization_degree(impulse));
                CHECK(reproduces(re.system, impulse));
                CHECK(re.system.D().is_zero());  // default D
                ++done;
            }
    }
}

TEST_CASE("impulses taken from a system realize with degree at most delta") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        StateSpace sys = random_system(CodeParams(3, 2, 2), Field(3), seed);
        MarkovSequence full = markov_parameters(sys, 4);
        MarkovSequence impulse(full.field, full.n_minus_k, full.k,
                               {full.blocks.begin() + 1, full.blocks.end()});
        RealizationResult re = minimal_partial_realization(impulse, full.blocks.front());
        CHECK(re.degree <= 2);
        CHECK(re.verified);
        CHECK(reproduces(re.system, impulse));
        CHECK(re.system.D() == full.blocks.front());
    }
}

TEST_CASE("the provided D block is shape- and field-checked") {
    Field f3(3);
    MarkovSequence impulse = scalar_sequence(f3, {1, 2});
    CHECK_THROWS_AS(minimal_partial_realization(impulse, FieldMatrix(f3, 2, 1)),
                    DimensionMismatchError);
    CHECK_THROWS_AS(minimal_partial_realization(impulse, FieldMatrix(Field(5), 1, 1)),
                    FieldMismatchError);
}

TEST_CASE("exhaustive sequence search finds the lexicographically first hit") {
    SearchConfig cfg;
    cfg.strategy = SearchStrategy::exhaustive;
    MarkovSearchResult r = search_superregular_markov(Field(3), 2, 1, 2, cfg);
    CHECK(r.attempts == 15);
    REQUIRE(r.sequence.blocks.size() == 3);
    CHECK(r.sequence.blocks[0].code_at(0, 0) == 1);
    CHECK(r.sequence.blocks[1].code_at(0, 0) == 1);
    CHECK(r.sequence.blocks[2].code_at(0, 0) == 2);
    CHECK(all_nontrivial_minors_nonzero(toeplitz_matrix(r.sequence), 2, 1, 2));
}

TEST_CASE("exhaustive search certifies nonexistence over GF(2)") {
    SearchConfig cfg;
    cfg.strategy = SearchStrategy::exhaustive;
    try {
        search_superregular_markov(Field(2), 2, 1, 2, cfg);
        FAIL("expected NotFoundError");
    } catch (const NotFoundError& e) {
        CHECK(e.certified);
        CHECK(e.attempts == 8);
    }
}

TEST_CASE("exhaustive search refuses candidate spaces beyond its ceiling") {
    SearchConfig cfg;
    cfg.strategy = SearchStrategy::exhaustive;
    cfg.exhaustive_ceiling = 4;
    CHECK_THROWS_AS(search_superregular_markov(Field(2), 2, 1, 2, cfg), BudgetExceededError);
}

TEST_CASE("random sequence search is seeded and self-checking") {
    SearchConfig cfg;
    cfg.seed = 7;
    MarkovSearchResult a = search_superregular_markov(Field(5), 2, 1, 2, cfg);
    MarkovSearchResult b = search_superregular_markov(Field(5), 2, 1, 2, cfg);
    CHECK(a.attempts == b.attempts);
    for (std::size_t i = 0; i < a.sequence.blocks.size(); ++i)
        CHECK(a.sequence.blocks[i] == b.sequence.blocks[i]);
    CHECK(all_nontrivial_minors_nonzero(toeplitz_matrix(a.sequence), 2, 1, 2));
    cfg.max_attempts = 2;  // not enough over GF(2), and not certified
    try {
        search_superregular_markov(Field(2), 2, 1, 2, cfg);
        FAIL("expected NotFoundError");
    } catch (const NotFoundError& e) {
        CHECK_FALSE(e.certified);
        CHECK(e.attempts == 2);
    }
}

TEST_CASE("building an MDP code over GF(3) succeeds and is fully verified") {
    SearchConfig cfg;
    cfg.strategy = SearchStrategy::exhaustive;
    MdpSearchResult r = build_mdp_code(CodeParams(2, 1, 1), Field(3), cfg);
    CHECK(r.route == "constructive");
    CHECK(r.controllable);
    CHECK(r.observable);
    CHECK(is_mdp(r.system));
    CHECK(is_mdp_bruteforce(r.system));
    CHECK(r.system.params().delta == 1);

    SearchConfig rnd;
    rnd.seed = 3;
    MdpSearchResult r2 = build_mdp_code(CodeParams(2, 1, 1), Field(3), rnd);
    CHECK(is_mdp(r2.system));
    CHECK(r2.controllable);
    CHECK(r2.observable);
}

TEST_CASE("building over GF(2) fails with a certificate") {
    SearchConfig cfg;
    cfg.strategy = SearchStrategy::exhaustive;
    try {
        build_mdp_code(CodeParams(2, 1, 1), Field(2), cfg);
        FAIL("expected NotFoundError");
    } catch (const NotFoundError& e) {
        CHECK(e.certified);
    }
}

TEST_CASE("a rate-2/3 build exercises the non-scalar path") {
    SearchConfig cfg;
    cfg.seed = 5;
    MdpSearchResult r = build_mdp_code(CodeParams(3, 2, 1), Field(7), cfg);
    CHECK(is_mdp(r.system));
    CHECK(is_mdp_bruteforce(r.system));
    CHECK(r.controllable);
    CHECK(r.observable);
}

TEST_CASE("field size sweep pins the smallest working field") {
    SearchConfig cfg;
    SweepReport rep = field_size_sweep(CodeParams(2, 1, 1), {2, 3, 4, 5}, cfg);
    REQUIRE(rep.entries.size() == 4);
    CHECK(rep.entries[0].outcome == "not_found");
    CHECK(rep.entries[0].certified);
    CHECK(rep.entries[1].outcome == "found");
    CHECK(rep.entries[2].outcome == "found");
    CHECK(rep.entries[3].outcome == "found");
    REQUIRE(rep.smallest_q.has_value());
    CHECK(*rep.smallest_q == 3);
    for (const SweepEntry& e : rep.entries)
        if (e.outcome == "found") CHECK(is_mdp(e.system.value()));
}

TEST_CASE("sweep marks budget-starved fields as skipped") {
    SearchConfig cfg;
    cfg.minor_budget = 1;
    SweepReport rep = field_size_sweep(CodeParams(2, 1, 1), {2, 3}, cfg);
    REQUIRE(rep.entries.size() == 2);
    CHECK(rep.entries[0].outcome == "skipped");
    CHECK(rep.entries[1].outcome == "skipped");
    CHECK_FALSE(rep.smallest_q.has_value());
}

TEST_CASE("empty sweep is empty") {
    SweepReport rep = field_size_sweep(CodeParams(2, 1, 1), {}, SearchConfig{});
    CHECK(rep.entries.empty());
    CHECK_FALSE(rep.smallest_q.has_value());
}

TEST_CASE("prime power factorization") {
    CHECK(factor_prime_power(9) == std::pair<std::uint32_t, std::uint32_t>{3, 2});
    CHECK(factor_prime_power(13) == std::pair<std::uint32_t, std::uint32_t>{13, 1});
    CHECK(factor_prime_power(64) == std::pair<std::uint32_t, std::uint32_t>{2, 6});
    CHECK_THROWS_AS(factor_prime_power(12), NonPrimeCharacteristicError);
    CHECK_THROWS_AS(factor_prime_power(1), NonPrimeCharacteristicError);
    CHECK_THROWS_AS(factor_prime_power(0), NonPrimeCharacteristicError);
}
