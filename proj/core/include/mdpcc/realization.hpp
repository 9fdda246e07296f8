#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdpcc/distance.hpp"
#include "mdpcc/state_space.hpp"

namespace mdpcc {

/// Minimal state dimension of any system reproducing the impulse response
/// blocks F_1..F_j, from the Hankel rank formula
///
///   d = sum_{i=1..j} rank Hank(i, j+1-i)  -  sum_{i=1..j-1} rank Hank(i, j-i).
///
/// The blocks of `impulse` are F_1..F_j (F_0 = D never enters realization).
std::uint32_t minimal_realization_degree(const MarkovSequence& impulse);

struct RealizationResult {
    StateSpace system;   // D is the supplied feedthrough (zero when omitted)
    std::uint32_t degree; // == system.params().delta
    bool verified;        // C A^{i-1} B reproduced every F_i exactly
};

/// Minimal partial realization of F_1..F_j (blocks of `impulse`):
///  1. d := minimal_realization_degree.
///  2. Greedy degree-preserving extension to F_{j+1}..F_{2d} when j < 2d:
///     each new block is the lexicographically smallest one keeping the
///     degree formula at d (ExtensionFailedError when no block does).
///  3. Ho-Kalman: full-rank factorization Hank = O R through the pivot
///     columns, A from the shift equation O_up A = O_down (free entries zero),
///     B = first k columns of R, C = first n-k rows of O.
/// The result is self-verified; on verification failure a seeded randomized
/// re-run of the extension is attempted before giving up.
RealizationResult minimal_partial_realization(const MarkovSequence& impulse,
                                              std::optional<FieldMatrix> D = std::nullopt);

enum class SearchStrategy { random, exhaustive };

struct SearchConfig {
    std::uint64_t seed = 0;
    std::uint64_t max_attempts = 1ull << 20;
    SearchStrategy strategy = SearchStrategy::random;
    std::uint64_t exhaustive_ceiling = 1ull << 24; // exhaustive scans larger than this refuse to run
    std::uint64_t minor_budget = kDefaultMinorBudget;
    std::uint32_t jobs = 1;
};

struct MarkovSearchResult {
    MarkovSequence sequence; // blocks F_0..F_j
    std::uint64_t attempts;
};

/// Finds Markov blocks F_0..F_j whose T_j has every non-trivially-zero minor
/// nonzero. random: seeded i.i.d. draws, attempt i derives its own SplitMix64
/// substream, so the outcome is independent of `jobs`. exhaustive: scans all
/// q^{(j+1)(n-k)k} sequences in lexicographic order (first block entry most
/// significant) and returns the smallest hit; a completed empty scan throws
/// NotFoundError with certified = true.
MarkovSearchResult search_superregular_markov(const Field& field, std::uint32_t n, std::uint32_t k,
                                              std::uint32_t j, const SearchConfig& cfg);

struct MdpSearchResult {
    StateSpace system;
    std::uint64_t attempts;
    bool controllable;
    bool observable;
    std::string route; // "direct", "constructive", "constructive+perturbation"
};

/// Produces a system with the exact parameters whose code is MDP, or throws
/// NotFoundError. Random strategy: direct randomized (A,B,C,D) search first
/// (controllable+observable hits returned immediately), then the constructive
/// route: superregular Markov search at j = L, minimal partial realization,
/// zero-padding up to delta, and randomized perturbation restarts looking for
/// a controllable+observable representative. Exhaustive strategy: exhaustive
/// Markov-space scan at j = L; since the predicate depends on F_0..F_L only,
/// an empty scan certifies that no such code exists over this field.
MdpSearchResult build_mdp_code(const CodeParams& params, const Field& field,
                               const SearchConfig& cfg);

struct SweepEntry {
    std::uint64_t q;
    std::string outcome; // "found", "not_found", "skipped"
    bool certified;      // outcome "not_found" proven by a complete scan
    std::uint64_t attempts;
    std::optional<StateSpace> system;
};

struct SweepReport {
    CodeParams params;
    std::vector<SweepEntry> entries;
    std::optional<std::uint64_t> smallest_q;
};

/// Runs build_mdp_code over each field order in q_list (orders must be prime
/// powers) and reports the smallest order where a code was found. Per order
/// the scan is exhaustive when the Markov candidate space fits the ceiling,
/// randomized otherwise; budget refusals are recorded as "skipped".
SweepReport field_size_sweep(const CodeParams& params, const std::vector<std::uint64_t>& q_list,
                             const SearchConfig& cfg);

/// Splits a prime power q into (p, m); throws NonPrimeCharacteristicError
/// when q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q);

} // namespace mdpcc
