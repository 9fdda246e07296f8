#include "mdpcc/realization.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>

#include "mdpcc/errors.hpp"
#include "mdpcc/minor_criterion.hpp"
#include "mdpcc/rng.hpp"

namespace mdpcc {

namespace {

constexpr std::uint64_t kNoHit = ~0ull;

// Largest candidate space the per-block extension scan enumerates in full.
constexpr std::uint64_t kExtensionScanLimit = 1ull << 16;

// q^e, saturating at cap+1 so callers can compare against cap without overflow.
std::uint64_t pow_saturating(std::uint64_t q, std::uint64_t e, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (v > cap / q) return cap + 1;
        v *= q;
    }
    return v;
}

// Hankel over tail blocks F_1..F_T (tail[i] = F_{i+1}), block (r, c) = F_{r+c-1}.
FieldMatrix tail_hankel(const Field& f, std::uint32_t p, std::uint32_t k,
                        const std::vector<FieldMatrix>& tail, std::uint32_t x, std::uint32_t y) {
    if (tail.size() < std::size_t(x) + y - 1)
        throw InsufficientBlocksError("Hankel needs blocks F_1..F_" + std::to_string(x + y - 1) +
                                      " but only " + std::to_string(tail.size()) + " are present");
    FieldMatrix H(f, x * p, y * k);
    for (std::uint32_t r = 0; r < x; ++r)
        for (std::uint32_t c = 0; c < y; ++c) {
            const FieldMatrix& blk = tail[std::size_t(r) + c];
            for (std::uint32_t s = 0; s < p; ++s)
                for (std::uint32_t t = 0; t < k; ++t)
                    H.set_code(r * p + s, c * k + t, blk.code_at(s, t));
        }
    return H;
}

std::uint32_t degree_of_tail(const Field& f, std::uint32_t p, std::uint32_t k,
                             const std::vector<FieldMatrix>& tail) {
    const auto j = static_cast<std::uint32_t>(tail.size());
    if (j == 0) return 0;
    std::uint64_t plus = 0, minus = 0;
    for (std::uint32_t i = 1; i <= j; ++i) plus += rank(tail_hankel(f, p, k, tail, i, j + 1 - i));
    for (std::uint32_t i = 1; i < j; ++i) minus += rank(tail_hankel(f, p, k, tail, i, j - i));
    return static_cast<std::uint32_t>(plus - minus);
}

// Decodes a packed base-q counter into a p x k block, first entry most
// significant, so counter order is lexicographic order on the entry tuple.
FieldMatrix decode_block(const Field& f, std::uint32_t p, std::uint32_t k, std::uint64_t code) {
    const std::uint64_t q = f.order();
    std::vector<std::uint32_t> codes(std::size_t(p) * k);
    for (std::size_t i = codes.size(); i-- > 0;) {
        codes[i] = static_cast<std::uint32_t>(code % q);
        code /= q;
    }
    return FieldMatrix(f, p, k, std::move(codes));
}

bool keeps_degree(const Field& f, std::uint32_t p, std::uint32_t k,
                  std::vector<FieldMatrix>& tail, FieldMatrix candidate, std::uint32_t d) {
    tail.push_back(std::move(candidate));
    const bool ok = degree_of_tail(f, p, k, tail) == d;
    if (!ok) tail.pop_back();
    return ok;
}

// Candidate for the next block by linear propagation: pick a Hankel split
// whose bottom block row depends linearly on the rows above through the known
// columns, and apply the same dependence to the final block column. Used when
// the entry space is too large to scan; correctness is re-checked by the
// degree test either way.
bool try_linear_candidate(const Field& f, std::uint32_t p, std::uint32_t k,
                          std::vector<FieldMatrix>& tail, std::uint32_t d) {
    const auto t = static_cast<std::uint32_t>(tail.size()) + 1; // index of the block being added
    for (std::uint32_t a = t; a >= 2; --a) {
        const std::uint32_t b = t + 1 - a;
        if (b < 2) continue; // no known columns to anchor the dependence
        FieldMatrix U = tail_hankel(f, p, k, tail, a - 1, b);
        std::vector<std::uint32_t> all_rows(U.rows());
        for (std::uint32_t i = 0; i < U.rows(); ++i) all_rows[i] = i + 1;
        std::vector<std::uint32_t> left_cols((b - 1) * k), right_cols(k);
        for (std::uint32_t i = 0; i < (b - 1) * k; ++i) left_cols[i] = i + 1;
        for (std::uint32_t i = 0; i < k; ++i) right_cols[i] = (b - 1) * k + i + 1;
        FieldMatrix Uleft = submatrix(U, all_rows, left_cols);
        FieldMatrix Uright = submatrix(U, all_rows, right_cols);
        // bottom block row, known part: [F_a .. F_{t-1}]
        FieldMatrix W(f, p, (b - 1) * k);
        for (std::uint32_t c = 0; c + 1 < b; ++c) {
            const FieldMatrix& blk = tail[std::size_t(a) + c - 1];
            for (std::uint32_t s = 0; s < p; ++s)
                for (std::uint32_t u = 0; u < k; ++u) W.set_code(s, c * k + u, blk.code_at(s, u));
        }
        auto lamT = solve_linear(Uleft.transpose(), W.transpose());
        if (!lamT) continue;
        FieldMatrix X = lamT->transpose() * Uright;
        if (keeps_degree(f, p, k, tail, std::move(X), d)) return true;
    }
    return false;
}

// Appends one block keeping the degree formula at d. Deterministic mode
// (rng == nullptr): lexicographically smallest block from a full scan when
// the space fits, otherwise the zero block and the linear-propagation
// candidate. Randomized mode: seeded random draws.
bool extend_once(const Field& f, std::uint32_t p, std::uint32_t k,
                 std::vector<FieldMatrix>& tail, std::uint32_t d, SplitMix64* rng) {
    const std::uint64_t q = f.order();
    const std::uint64_t space = pow_saturating(q, std::uint64_t(p) * k, kExtensionScanLimit);
    if (rng) {
        for (std::uint32_t i = 0; i < 4096; ++i) {
            FieldMatrix X(f, p, k);
            for (std::uint32_t r = 0; r < p; ++r)
                for (std::uint32_t c = 0; c < k; ++c)
                    X.set_code(r, c, static_cast<std::uint32_t>(rng->below(q)));
            if (keeps_degree(f, p, k, tail, std::move(X), d)) return true;
        }
        return false;
    }
    if (space <= kExtensionScanLimit) {
        for (std::uint64_t code = 0; code < space; ++code)
            if (keeps_degree(f, p, k, tail, decode_block(f, p, k, code), d)) return true;
        return false;
    }
    if (keeps_degree(f, p, k, tail, FieldMatrix(f, p, k), d)) return true;
    return try_linear_candidate(f, p, k, tail, d);
}

// One Ho-Kalman pass over an extended tail. Returns nullopt when the shift
// equation is unsolvable; the caller verifies the Markov parameters.
std::optional<StateSpace> ho_kalman(const Field& f, std::uint32_t p, std::uint32_t k,
                                    const std::vector<FieldMatrix>& given, std::uint32_t d,
                                    const FieldMatrix& D, SplitMix64* rng) {
    if (d == 0) {
        CodeParams prm(p + k, k, 0);
        return StateSpace(prm, f, FieldMatrix(f, 0, 0), FieldMatrix(f, 0, k), FieldMatrix(f, p, 0),
                          D);
    }
    std::vector<FieldMatrix> tail = given;
    const auto T = std::max<std::uint32_t>(static_cast<std::uint32_t>(given.size()), 2 * d);
    while (tail.size() < T)
        if (!extend_once(f, p, k, tail, d, rng)) return std::nullopt;

    const std::uint32_t x = T + 1 - d, y = d;
    FieldMatrix H = tail_hankel(f, p, k, tail, x, y);

    // Pivot columns by greedy leftmost rank growth (equals the RREF pivot set).
    std::vector<std::uint32_t> pivots;
    std::uint32_t r = 0;
    for (std::uint32_t c = 1; c <= H.cols() && r < std::min(H.rows(), H.cols()); ++c) {
        std::vector<std::uint32_t> trial = pivots;
        trial.push_back(c);
        std::vector<std::uint32_t> all_rows(H.rows());
        for (std::uint32_t i = 0; i < H.rows(); ++i) all_rows[i] = i + 1;
        if (rank(submatrix(H, all_rows, trial)) == r + 1) {
            pivots = std::move(trial);
            ++r;
        }
    }
    if (r != d) return std::nullopt; // extension undershot the factorization rank

    std::vector<std::uint32_t> all_rows(H.rows());
    for (std::uint32_t i = 0; i < H.rows(); ++i) all_rows[i] = i + 1;
    FieldMatrix O = submatrix(H, all_rows, pivots); // xp x d, full column rank
    auto R = solve_linear(O, H);                    // unique: O R = H
    if (!R) return std::nullopt;

    std::vector<std::uint32_t> up_rows((std::size_t(x) - 1) * p), down_rows((std::size_t(x) - 1) * p);
    for (std::uint32_t i = 0; i < (x - 1) * p; ++i) {
        up_rows[i] = i + 1;
        down_rows[i] = p + i + 1;
    }
    std::vector<std::uint32_t> o_cols(d);
    for (std::uint32_t i = 0; i < d; ++i) o_cols[i] = i + 1;
    FieldMatrix Oup = submatrix(O, up_rows, o_cols);
    FieldMatrix Odown = submatrix(O, down_rows, o_cols);
    auto A = solve_linear(Oup, Odown);
    if (!A) return std::nullopt;
    if (rng) {
        // explore the affine solution set of the shift equation
        FieldMatrix N = right_kernel_basis(Oup);
        if (N.cols() > 0) {
            FieldMatrix Mu(f, N.cols(), d);
            for (std::uint32_t rr = 0; rr < Mu.rows(); ++rr)
                for (std::uint32_t cc = 0; cc < Mu.cols(); ++cc)
                    Mu.set_code(rr, cc, static_cast<std::uint32_t>(rng->below(f.order())));
            *A = *A + N * Mu;
        }
    }

    std::vector<std::uint32_t> b_cols(k), c_rows(p), r_rows(d);
    for (std::uint32_t i = 0; i < k; ++i) b_cols[i] = i + 1;
    for (std::uint32_t i = 0; i < p; ++i) c_rows[i] = i + 1;
    for (std::uint32_t i = 0; i < d; ++i) r_rows[i] = i + 1;
    FieldMatrix B = submatrix(*R, r_rows, b_cols);
    FieldMatrix C = submatrix(O, c_rows, o_cols);

    CodeParams prm(p + k, k, d);
    return StateSpace(prm, f, *A, B, C, D);
}

bool reproduces(const StateSpace& sys, const std::vector<FieldMatrix>& given) {
    const auto j = static_cast<std::uint32_t>(given.size());
    MarkovSequence got = markov_parameters(sys, j); // F_0..F_j
    for (std::uint32_t i = 1; i <= j; ++i)
        if (got.blocks[i] != given[i - 1]) return false;
    return true;
}

// Runs pred(i) for i in [first, first + count) over `jobs` threads, returning
// the smallest index where pred is true (kNoHit if none). pred must be pure;
// workers past an established smaller hit stop early, so the result does not
// depend on jobs. Exceptions from pred are rethrown here.
std::uint64_t parallel_first_hit(std::uint64_t first, std::uint64_t count, std::uint32_t jobs,
                                 const std::function<bool(std::uint64_t)>& pred) {
    if (count == 0) return kNoHit;
    const std::uint64_t end = (count > kNoHit - first) ? kNoHit : first + count;
    jobs = std::max<std::uint32_t>(1, jobs);
    std::atomic<std::uint64_t> best{kNoHit};
    std::exception_ptr eptr = nullptr;
    std::mutex emu;
    auto work = [&](std::uint32_t w) {
        try {
            for (std::uint64_t i = first + w; i < end; i += jobs) {
                if (i >= best.load(std::memory_order_relaxed)) break;
                if (pred(i)) {
                    std::uint64_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                    break;
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(emu);
            if (!eptr) eptr = std::current_exception();
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> ts;
        ts.reserve(jobs);
        for (std::uint32_t w = 0; w < jobs; ++w) ts.emplace_back(work, w);
        for (auto& t : ts) t.join();
    }
    if (eptr) std::rethrow_exception(eptr);
    return best.load();
}

} // namespace

std::uint32_t minimal_realization_degree(const MarkovSequence& impulse) {
    return degree_of_tail(impulse.field, impulse.n_minus_k, impulse.k, impulse.blocks);
}

RealizationResult minimal_partial_realization(const MarkovSequence& impulse,
                                              std::optional<FieldMatrix> D) {
    const Field& f = impulse.field;
    const std::uint32_t p = impulse.n_minus_k, k = impulse.k;
    FieldMatrix Dm = D ? std::move(*D) : FieldMatrix(f, p, k);
    if (!(Dm.field() == f)) throw FieldMismatchError("feedthrough block is over a different field");
    if (Dm.rows() != p || Dm.cols() != k)
        throw DimensionMismatchError("feedthrough block must be (n-k) x k");

    const std::uint32_t d = degree_of_tail(f, p, k, impulse.blocks);

    constexpr std::uint32_t kRetries = 64;
    for (std::uint32_t round = 0; round <= kRetries; ++round) {
        std::optional<SplitMix64> rng;
        if (round > 0) rng.emplace(SplitMix64::stream(0x7265616c697a65ull, round));
        auto sys = ho_kalman(f, p, k, impulse.blocks, d, Dm, rng ? &*rng : nullptr);
        if (!sys) continue;
        if (reproduces(*sys, impulse.blocks)) return {std::move(*sys), d, true};
    }
    throw ExtensionFailedError("no rank-preserving extension produced a verified realization of degree " +
                               std::to_string(d));
}

MarkovSearchResult search_superregular_markov(const Field& field, std::uint32_t n, std::uint32_t k,
                                              std::uint32_t j, const SearchConfig& cfg) {
    if (k < 1 || k >= n) throw DimensionMismatchError("need 1 <= k < n");
    const std::uint32_t p = n - k;
    const std::uint64_t q = field.order();
    const std::uint64_t cells = std::uint64_t(j + 1) * p * k;

    auto draw_random = [&](std::uint64_t attempt) {
        SplitMix64 g = SplitMix64::stream(cfg.seed, attempt);
        std::vector<FieldMatrix> blocks;
        blocks.reserve(j + 1);
        for (std::uint32_t b = 0; b <= j; ++b) {
            std::vector<std::uint32_t> codes(std::size_t(p) * k);
            for (auto& c : codes) c = static_cast<std::uint32_t>(g.below(q));
            blocks.emplace_back(field, p, k, std::move(codes));
        }
        return blocks;
    };
    // Packed base-q counter over all (j+1) p k entries, F_0 entry (1,1) most
    // significant, so scan order is lexicographic on the concatenated blocks.
    auto decode_seq = [&](std::uint64_t code) {
        std::vector<std::uint32_t> digits(cells);
        for (std::size_t i = digits.size(); i-- > 0;) {
            digits[i] = static_cast<std::uint32_t>(code % q);
            code /= q;
        }
        std::vector<FieldMatrix> blocks;
        blocks.reserve(j + 1);
        for (std::uint32_t b = 0; b <= j; ++b) {
            std::vector<std::uint32_t> codes(digits.begin() + std::size_t(b) * p * k,
                                             digits.begin() + std::size_t(b + 1) * p * k);
            blocks.emplace_back(field, p, k, std::move(codes));
        }
        return blocks;
    };
    auto passes = [&](std::vector<FieldMatrix> blocks) {
        MarkovSequence ms(field, p, k, std::move(blocks));
        return all_nontrivial_minors_nonzero(toeplitz_matrix(ms), n, k, j, cfg.minor_budget);
    };

    if (cfg.strategy == SearchStrategy::exhaustive) {
        const std::uint64_t total = pow_saturating(q, cells, cfg.exhaustive_ceiling);
        if (total > cfg.exhaustive_ceiling)
            throw BudgetExceededError("exhaustive Markov scan over q^" + std::to_string(cells) +
                                          " sequences exceeds the ceiling",
                                      total, cfg.exhaustive_ceiling);
        const std::uint64_t hit = parallel_first_hit(
            0, total, cfg.jobs, [&](std::uint64_t idx) { return passes(decode_seq(idx)); });
        if (hit == kNoHit)
            throw NotFoundError("complete scan: no sequence with all admissible minors nonzero",
                                total, true);
        return {MarkovSequence(field, p, k, decode_seq(hit)), hit + 1};
    }

    const std::uint64_t hit = parallel_first_hit(
        1, cfg.max_attempts, cfg.jobs, [&](std::uint64_t a) { return passes(draw_random(a)); });
    if (hit == kNoHit)
        throw NotFoundError("no sequence with all admissible minors nonzero in " +
                                std::to_string(cfg.max_attempts) + " attempts",
                            cfg.max_attempts, false);
    return {MarkovSequence(field, p, k, draw_random(hit)), hit};
}

MdpSearchResult build_mdp_code(const CodeParams& params, const Field& field,
                               const SearchConfig& cfg) {
    const CodeIndices ci = code_indices(params);
    const std::uint32_t p = params.n - params.k;

    if (cfg.strategy == SearchStrategy::random) {
        // Direct randomized pass. Two tiers: a controllable+observable MDP hit
        // wins outright; a plain MDP hit is kept as fallback.
        auto system_at = [&](std::uint64_t a) {
            return random_system(params, field, SplitMix64::stream(cfg.seed, a).next());
        };
        std::atomic<std::uint64_t> best_any{kNoHit};
        const std::uint64_t hit_min =
            parallel_first_hit(1, cfg.max_attempts, cfg.jobs, [&](std::uint64_t a) {
                StateSpace sys = system_at(a);
                if (!is_mdp(sys, cfg.minor_budget)) return false;
                if (is_controllable(sys) && is_observable(sys)) return true;
                std::uint64_t cur = best_any.load();
                while (a < cur && !best_any.compare_exchange_weak(cur, a)) {
                }
                return false;
            });
        if (hit_min != kNoHit)
            return {system_at(hit_min), hit_min, true, true, "direct"};
        const std::uint64_t hit_any = best_any.load();
        if (hit_any != kNoHit) {
            StateSpace sys = system_at(hit_any);
            return {sys, hit_any, is_controllable(sys), is_observable(sys), "direct"};
        }
    }

    // Constructive route: superregular Markov blocks at j = L, minimal partial
    // realization, zero-padding to degree delta. For the exhaustive strategy a
    // NotFoundError from the scan is a certificate and propagates as is.
    MarkovSearchResult mk = search_superregular_markov(field, params.n, params.k, ci.L, cfg);
    FieldMatrix D0 = mk.sequence.blocks.front();
    std::vector<FieldMatrix> tail(mk.sequence.blocks.begin() + 1, mk.sequence.blocks.end());
    RealizationResult re = minimal_partial_realization(MarkovSequence(field, p, params.k, tail), D0);
    if (re.degree > params.delta)
        throw Error("internal: minimal degree " + std::to_string(re.degree) +
                    " of the found sequence exceeds delta " + std::to_string(params.delta));
    StateSpace sys = pad_realization(re.system, params.delta - re.degree);
    if (!is_mdp(sys, cfg.minor_budget))
        throw Error("internal: padded realization lost the distance profile");
    bool ctrb = is_controllable(sys), obs = is_observable(sys);
    if (ctrb && obs) return {std::move(sys), mk.attempts, true, true, "constructive"};

    // Bounded randomized restarts looking for a controllable+observable
    // representative with the same parameters.
    const std::uint64_t restarts = std::min<std::uint64_t>(cfg.max_attempts, 2048);
    for (std::uint64_t i = 1; i <= restarts; ++i) {
        StateSpace cand =
            random_system(params, field, SplitMix64::stream(cfg.seed ^ 0x70657274ull, i).next());
        if (!is_controllable(cand) || !is_observable(cand)) continue;
        if (!is_mdp(cand, cfg.minor_budget)) continue;
        return {std::move(cand), mk.attempts + i, true, true, "constructive+perturbation"};
    }
    return {std::move(sys), mk.attempts, ctrb, obs, "constructive"};
}

std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
    if (q < 2) throw NonPrimeCharacteristicError("field order must be at least 2");
    std::uint64_t base = q;
    for (std::uint64_t dvs = 2; dvs * dvs <= q; ++dvs)
        if (q % dvs == 0) {
            base = dvs;
            break;
        }
    std::uint32_t m = 0;
    std::uint64_t rest = q;
    while (rest % base == 0) {
        rest /= base;
        ++m;
    }
    if (rest != 1)
        throw NonPrimeCharacteristicError(std::to_string(q) + " is not a prime power");
    return {static_cast<std::uint32_t>(base), m};
}

SweepReport field_size_sweep(const CodeParams& params, const std::vector<std::uint64_t>& q_list,
                             const SearchConfig& cfg) {
    SweepReport rep{params, {}, std::nullopt};
    const CodeIndices ci = code_indices(params);
    const std::uint64_t cells = std::uint64_t(ci.L + 1) * (params.n - params.k) * params.k;
    for (const std::uint64_t q : q_list) {
        auto [chr, deg] = factor_prime_power(q);
        Field f = (deg == 1) ? Field(chr) : Field(chr, deg);
        SearchConfig local = cfg;
        local.strategy = (pow_saturating(q, cells, cfg.exhaustive_ceiling) <= cfg.exhaustive_ceiling)
                             ? SearchStrategy::exhaustive
                             : SearchStrategy::random;
        SweepEntry e{q, "", false, 0, std::nullopt};
        try {
            MdpSearchResult r = build_mdp_code(params, f, local);
            e.outcome = "found";
            e.attempts = r.attempts;
            e.system = std::move(r.system);
        } catch (const NotFoundError& nf) {
            e.outcome = "not_found";
            e.certified = nf.certified;
            e.attempts = nf.attempts;
        } catch (const BudgetExceededError&) {
            e.outcome = "skipped";
        }
        rep.entries.push_back(std::move(e));
    }
    for (const SweepEntry& e : rep.entries)
        if (e.outcome == "found" && (!rep.smallest_q || e.q < *rep.smallest_q)) rep.smallest_q = e.q;
    return rep;
}

} // namespace mdpcc
