#pragma once

#include <cstdint>
#include <vector>

#include "mdpcc/minor_criterion.hpp"
#include "mdpcc/state_space.hpp"

namespace mdpcc {

inline constexpr std::uint64_t kDefaultEncodingBudget = 1ull << 24;

/// L = floor(delta/k) + floor(delta/(n-k)), M = floor(delta/k) + ceil(delta/(n-k)),
/// singleton = (n-k)(floor(delta/k) + 1) + delta + 1. Always L <= M <= L+1,
/// with equality on the left iff (n-k) divides delta.
struct CodeIndices {
    std::uint32_t L;
    std::uint32_t M;
    std::uint32_t singleton;
};

CodeIndices code_indices(const CodeParams& params);

/// Upper bound (n-k)(j+1) + 1 on the j-th column distance.
std::uint32_t column_bound(std::uint32_t j, const CodeParams& params);

/// d_j by exhaustive enumeration: minimum over all inputs u_0..u_j with
/// u_0 != 0 of the weight of the truncated codeword v_0..v_j produced by the
/// state space equations. Throws BudgetExceededError when q^{k(j+1)} exceeds
/// the budget. `jobs` parallelizes over the leading input symbol; the result
/// does not depend on it.
std::uint32_t column_distance_bruteforce(const StateSpace& sys, std::uint32_t j,
                                         std::uint64_t budget = kDefaultEncodingBudget,
                                         std::uint32_t jobs = 1);

/// Column distances d_0..d_jmax with per-j maximality flags. Checks the
/// profile invariants (non-decreasing, d_j <= column_bound) and throws Error
/// on violation; they hold for every code, so a throw means a defect here.
struct DistanceProfile {
    CodeParams params;
    std::vector<std::uint32_t> d;
    std::vector<bool> maximal;
};

DistanceProfile distance_profile(const StateSpace& sys, std::uint32_t jmax,
                                 std::uint64_t budget = kDefaultEncodingBudget,
                                 std::uint32_t jobs = 1);

/// Maximum distance profile test through the minor criterion: every
/// non-trivially-zero minor of T_L is nonzero.
bool is_mdp(const StateSpace& sys, std::uint64_t minor_budget = kDefaultMinorBudget);

/// Same predicate established the slow way: d_j equals the column bound for
/// every j <= L, each d_j by exhaustive enumeration.
bool is_mdp_bruteforce(const StateSpace& sys, std::uint64_t budget = kDefaultEncodingBudget,
                       std::uint32_t jobs = 1);

/// Free distance: minimum weight of a nonzero codeword that starts with
/// u_0 != 0 and drives the state back to zero, computed as a shortest-path
/// problem on the state transition graph (Dijkstra toward state zero over
/// reversed edges). Requires an observable system (NotObservableError) so
/// that no nonzero trajectory carries zero weight; requires q^delta within
/// the budget.
std::uint32_t free_distance(const StateSpace& sys, std::uint64_t budget = kDefaultEncodingBudget);

/// free_distance == generalized Singleton bound.
bool is_mds(const StateSpace& sys, std::uint64_t budget = kDefaultEncodingBudget);

/// d_M == generalized Singleton bound (column distance at index M by
/// exhaustive enumeration).
bool is_strongly_mds(const StateSpace& sys, std::uint64_t budget = kDefaultEncodingBudget,
                     std::uint32_t jobs = 1);

} // namespace mdpcc
