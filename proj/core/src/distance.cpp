#include "mdpcc/distance.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <thread>

namespace mdpcc {

CodeIndices code_indices(const CodeParams& params) {
    const std::uint32_t k = params.k, p = params.n - params.k, d = params.delta;
    CodeIndices ci;
    ci.L = d / k + d / p;
    ci.M = d / k + (d + p - 1) / p;
    ci.singleton = p * (d / k + 1) + d + 1;
    return ci;
}

std::uint32_t column_bound(std::uint32_t j, const CodeParams& params) {
    return (params.n - params.k) * (j + 1) + 1;
}

namespace {

std::uint64_t checked_pow_u64(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (out > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        out *= base;
    }
    return out;
}

// Raw-code view of a system for the hot enumeration loops.
struct RawSys {
    const Field& f;
    std::uint32_t delta, k, p; // p = n-k
    const std::vector<std::uint32_t>&A, &B, &C, &D;

    explicit RawSys(const StateSpace& sys)
        : f(sys.field()), delta(sys.params().delta), k(sys.params().k),
          p(sys.params().n - sys.params().k), A(sys.A().codes()), B(sys.B().codes()),
          C(sys.C().codes()), D(sys.D().codes()) {}

    // y = C x + D u, returns weight of y
    std::uint32_t output_weight(const std::uint32_t* x, const std::uint32_t* u) const {
        std::uint32_t w = 0;
        for (std::uint32_t r = 0; r < p; ++r) {
            std::uint32_t acc = 0;
            for (std::uint32_t c = 0; c < delta; ++c) acc = f.add(acc, f.mul(C[r * delta + c], x[c]));
            for (std::uint32_t c = 0; c < k; ++c) acc = f.add(acc, f.mul(D[r * k + c], u[c]));
            w += (acc != 0);
        }
        return w;
    }

    // xn = A x + B u
    void step(const std::uint32_t* x, const std::uint32_t* u, std::uint32_t* xn) const {
        for (std::uint32_t r = 0; r < delta; ++r) {
            std::uint32_t acc = 0;
            for (std::uint32_t c = 0; c < delta; ++c) acc = f.add(acc, f.mul(A[r * delta + c], x[c]));
            for (std::uint32_t c = 0; c < k; ++c) acc = f.add(acc, f.mul(B[r * k + c], u[c]));
            xn[r] = acc;
        }
    }
};

std::uint32_t input_weight(const std::uint32_t* u, std::uint32_t k) {
    std::uint32_t w = 0;
    for (std::uint32_t i = 0; i < k; ++i) w += (u[i] != 0);
    return w;
}

// Depth-first scan over u_{depth}..u_j extending the given state, with sound
// weight pruning against *best (weights only grow along a branch).
void scan_column(const RawSys& rs, std::uint32_t j, std::uint32_t depth,
                 const std::vector<std::uint32_t>& x, std::uint32_t wpartial, std::uint64_t qk,
                 std::uint32_t* best) {
    const std::uint64_t q = rs.f.order();
    std::vector<std::uint32_t> u(rs.k, 0), xn(rs.delta, 0);
    for (std::uint64_t code = 0; code < qk; ++code) {
        std::uint64_t v = code;
        for (std::uint32_t i = 0; i < rs.k; ++i) {
            u[i] = static_cast<std::uint32_t>(v % q);
            v /= q;
        }
        const std::uint32_t w =
            wpartial + input_weight(u.data(), rs.k) + rs.output_weight(x.data(), u.data());
        if (w >= *best) continue;
        if (depth == j) {
            *best = w;
            continue;
        }
        rs.step(x.data(), u.data(), xn.data());
        scan_column(rs, j, depth + 1, xn, w, qk, best);
    }
}

} // namespace

std::uint32_t column_distance_bruteforce(const StateSpace& sys, std::uint32_t j,
                                         std::uint64_t budget, std::uint32_t jobs) {
    const RawSys rs(sys);
    const std::uint64_t q = sys.field().order();
    const std::uint64_t total = checked_pow_u64(q, rs.k * (j + 1));
    if (total > budget)
        throw BudgetExceededError("column distance enumeration needs " + std::to_string(total) +
                                      " encodings, budget is " + std::to_string(budget),
                                  total, budget);
    const std::uint64_t qk = checked_pow_u64(q, rs.k);

    // leading symbols u_0 != 0, distributed round-robin over workers
    const std::uint32_t nworkers = std::max<std::uint32_t>(1, std::min<std::uint64_t>(jobs, qk - 1));
    std::vector<std::uint32_t> results(nworkers, std::numeric_limits<std::uint32_t>::max());
    auto run = [&](std::uint32_t worker) {
        std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
        std::vector<std::uint32_t> u(rs.k, 0), x0(rs.delta, 0), x1(rs.delta, 0);
        for (std::uint64_t code = 1 + worker; code < qk; code += nworkers) {
            std::uint64_t v = code;
            for (std::uint32_t i = 0; i < rs.k; ++i) {
                u[i] = static_cast<std::uint32_t>(v % q);
                v /= q;
            }
            const std::uint32_t w = input_weight(u.data(), rs.k) + rs.output_weight(x0.data(), u.data());
            if (w >= best) continue;
            if (j == 0) {
                best = w;
                continue;
            }
            rs.step(x0.data(), u.data(), x1.data());
            scan_column(rs, j, 1, x1, w, qk, &best);
        }
        results[worker] = best;
    };
    if (nworkers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(nworkers);
        for (std::uint32_t wkr = 0; wkr < nworkers; ++wkr) threads.emplace_back(run, wkr);
        for (auto& t : threads) t.join();
    }
    return *std::min_element(results.begin(), results.end());
}

DistanceProfile distance_profile(const StateSpace& sys, std::uint32_t jmax, std::uint64_t budget,
                                 std::uint32_t jobs) {
    DistanceProfile prof{sys.params(), {}, {}};
    for (std::uint32_t j = 0; j <= jmax; ++j) {
        const std::uint32_t dj = column_distance_bruteforce(sys, j, budget, jobs);
        const std::uint32_t bound = column_bound(j, sys.params());
        if (dj > bound) throw Error("column distance exceeds its bound; internal defect");
        if (j > 0 && dj < prof.d.back()) throw Error("column distances decreased; internal defect");
        prof.d.push_back(dj);
        prof.maximal.push_back(dj == bound);
    }
    return prof;
}

bool is_mdp(const StateSpace& sys, std::uint64_t minor_budget) {
    const CodeIndices ci = code_indices(sys.params());
    const MarkovSequence ms = markov_parameters(sys, ci.L);
    const FieldMatrix T = toeplitz_matrix(ms);
    return all_nontrivial_minors_nonzero(T, sys.params().n, sys.params().k, ci.L, minor_budget);
}

bool is_mdp_bruteforce(const StateSpace& sys, std::uint64_t budget, std::uint32_t jobs) {
    const CodeIndices ci = code_indices(sys.params());
    for (std::uint32_t j = 0; j <= ci.L; ++j) {
        if (column_distance_bruteforce(sys, j, budget, jobs) != column_bound(j, sys.params()))
            return false;
    }
    return true;
}

std::uint32_t free_distance(const StateSpace& sys, std::uint64_t budget) {
    if (!is_observable(sys)) throw NotObservableError("free distance needs an observable system");
    const RawSys rs(sys);
    const std::uint64_t q = sys.field().order();
    const std::uint64_t nstates = checked_pow_u64(q, rs.delta);
    if (nstates > budget)
        throw BudgetExceededError("free distance needs " + std::to_string(nstates) +
                                      " trellis states, budget is " + std::to_string(budget),
                                  nstates, budget);
    const std::uint64_t qk = checked_pow_u64(q, rs.k);

    // per-input tables: B u, D u, wt(u)
    std::vector<std::vector<std::uint32_t>> Bu(qk, std::vector<std::uint32_t>(rs.delta, 0));
    std::vector<std::vector<std::uint32_t>> Du(qk, std::vector<std::uint32_t>(rs.p, 0));
    std::vector<std::uint32_t> wu(qk, 0);
    {
        std::vector<std::uint32_t> u(rs.k, 0);
        for (std::uint64_t code = 0; code < qk; ++code) {
            std::uint64_t v = code;
            for (std::uint32_t i = 0; i < rs.k; ++i) {
                u[i] = static_cast<std::uint32_t>(v % q);
                v /= q;
            }
            wu[code] = input_weight(u.data(), rs.k);
            for (std::uint32_t r = 0; r < rs.delta; ++r) {
                std::uint32_t acc = 0;
                for (std::uint32_t c = 0; c < rs.k; ++c)
                    acc = rs.f.add(acc, rs.f.mul(rs.B[r * rs.k + c], u[c]));
                Bu[code][r] = acc;
            }
            for (std::uint32_t r = 0; r < rs.p; ++r) {
                std::uint32_t acc = 0;
                for (std::uint32_t c = 0; c < rs.k; ++c)
                    acc = rs.f.add(acc, rs.f.mul(rs.D[r * rs.k + c], u[c]));
                Du[code][r] = acc;
            }
        }
    }

    if (rs.delta == 0) {
        // single-state trellis: every nonzero input is already a codeword
        std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
        for (std::uint64_t code = 1; code < qk; ++code) {
            std::uint32_t w = wu[code];
            for (std::uint32_t r = 0; r < rs.p; ++r) w += (Du[code][r] != 0);
            best = std::min(best, w);
        }
        return best;
    }

    auto pack = [&](const std::uint32_t* x) {
        std::uint64_t s = 0;
        for (std::uint32_t i = rs.delta; i-- > 0;) s = s * q + x[i];
        return s;
    };

    // reversed transition graph: rev[next] holds (prev, weight)
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> rev(nstates);
    {
        std::vector<std::uint32_t> x(rs.delta, 0), Ax(rs.delta, 0), xn(rs.delta, 0);
        for (std::uint64_t s = 0; s < nstates; ++s) {
            std::uint64_t v = s;
            for (std::uint32_t i = 0; i < rs.delta; ++i) {
                x[i] = static_cast<std::uint32_t>(v % q);
                v /= q;
            }
            for (std::uint32_t r = 0; r < rs.delta; ++r) {
                std::uint32_t acc = 0;
                for (std::uint32_t c = 0; c < rs.delta; ++c)
                    acc = rs.f.add(acc, rs.f.mul(rs.A[r * rs.delta + c], x[c]));
                Ax[r] = acc;
            }
            std::vector<std::uint32_t> Cx(rs.p, 0);
            for (std::uint32_t r = 0; r < rs.p; ++r) {
                std::uint32_t acc = 0;
                for (std::uint32_t c = 0; c < rs.delta; ++c)
                    acc = rs.f.add(acc, rs.f.mul(rs.C[r * rs.delta + c], x[c]));
                Cx[r] = acc;
            }
            for (std::uint64_t code = 0; code < qk; ++code) {
                for (std::uint32_t r = 0; r < rs.delta; ++r) xn[r] = rs.f.add(Ax[r], Bu[code][r]);
                std::uint32_t w = wu[code];
                for (std::uint32_t r = 0; r < rs.p; ++r) w += (rs.f.add(Cx[r], Du[code][r]) != 0);
                rev[pack(xn.data())].emplace_back(static_cast<std::uint32_t>(s), w);
            }
        }
    }

    // Dijkstra from state 0 over reversed edges: dist[s] = cheapest s -> 0
    constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(nstates, kInf);
    using QE = std::pair<std::uint32_t, std::uint32_t>; // (dist, state)
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    dist[0] = 0;
    pq.emplace(0, 0);
    while (!pq.empty()) {
        const auto [dcur, s] = pq.top();
        pq.pop();
        if (dcur > dist[s]) continue;
        for (const auto& [prev, w] : rev[s]) {
            if (dist[s] != kInf && dist[s] + w < dist[prev]) {
                dist[prev] = dist[s] + w;
                pq.emplace(dist[prev], prev);
            }
        }
    }

    // first step from the zero state with u_0 != 0
    std::uint32_t best = kInf;
    for (std::uint64_t code = 1; code < qk; ++code) {
        std::uint32_t w = wu[code];
        for (std::uint32_t r = 0; r < rs.p; ++r) w += (Du[code][r] != 0);
        const std::uint64_t s1 = pack(Bu[code].data());
        if (dist[s1] == kInf) continue; // outside the reachable subspace; cannot happen
        best = std::min(best, w + dist[s1]);
    }
    if (best == kInf) throw Error("no terminating nonzero trajectory found; internal defect");
    return best;
}

bool is_mds(const StateSpace& sys, std::uint64_t budget) {
    return free_distance(sys, budget) == code_indices(sys.params()).singleton;
}

bool is_strongly_mds(const StateSpace& sys, std::uint64_t budget, std::uint32_t jobs) {
    const CodeIndices ci = code_indices(sys.params());
    return column_distance_bruteforce(sys, ci.M, budget, jobs) == ci.singleton;
}

} // namespace mdpcc
