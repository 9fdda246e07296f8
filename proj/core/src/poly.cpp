#include "mdpcc/poly.hpp"

#include <algorithm>
#include <utility>

#include "mdpcc/distance.hpp"
#include "mdpcc/errors.hpp"
#include "mdpcc/rng.hpp"

namespace mdpcc {

namespace {

const FieldMatrix& front_checked(const std::vector<FieldMatrix>& v) {
    if (v.empty()) throw DimensionMismatchError("polynomial matrix needs at least one coefficient");
    return v.front();
}

// In-place Gauss-Jordan with leftmost pivots: rows end up in reduced echelon
// form, pivot entries scaled to 1, deterministic order.
void rref_rows(FieldMatrix& W) {
    const Field& f = W.field();
    std::uint32_t row = 0;
    for (std::uint32_t col = 0; col < W.cols() && row < W.rows(); ++col) {
        std::uint32_t pivot = row;
        while (pivot < W.rows() && W.code_at(pivot, col) == 0) ++pivot;
        if (pivot == W.rows()) continue;
        if (pivot != row) {
            for (std::uint32_t c = col; c < W.cols(); ++c) {
                const std::uint32_t tmp = W.code_at(row, c);
                W.set_code(row, c, W.code_at(pivot, c));
                W.set_code(pivot, c, tmp);
            }
        }
        const std::uint32_t il = f.inv(W.code_at(row, col));
        for (std::uint32_t c = col; c < W.cols(); ++c)
            W.set_code(row, c, f.mul(il, W.code_at(row, c)));
        for (std::uint32_t r = 0; r < W.rows(); ++r) {
            if (r == row) continue;
            const std::uint32_t factor = W.code_at(r, col);
            if (factor == 0) continue;
            for (std::uint32_t c = col; c < W.cols(); ++c)
                W.set_code(r, c, f.sub(W.code_at(r, c), f.mul(factor, W.code_at(row, c))));
        }
        ++row;
    }
}

} // namespace

PolyMatrix::PolyMatrix(Field f, std::uint32_t rows, std::uint32_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols) {
    coeffs_.emplace_back(f_, rows_, cols_);
}

PolyMatrix::PolyMatrix(std::vector<FieldMatrix> coeffs)
    : f_(front_checked(coeffs).field()), rows_(coeffs.front().rows()),
      cols_(coeffs.front().cols()), coeffs_(std::move(coeffs)) {
    for (const FieldMatrix& c : coeffs_) {
        if (!(c.field() == f_)) throw FieldMismatchError("polynomial coefficients over different fields");
        if (c.rows() != rows_ || c.cols() != cols_)
            throw ShapeMismatchError("polynomial coefficients have different shapes");
    }
    trim();
}

void PolyMatrix::trim() {
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool PolyMatrix::is_zero() const { return coeffs_.size() == 1 && coeffs_.front().is_zero(); }

FieldMatrix PolyMatrix::coeff(std::uint32_t i) const {
    if (i < coeffs_.size()) return coeffs_[i];
    return FieldMatrix(f_, rows_, cols_);
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
    return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && coeffs_ == o.coeffs_;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    if (!(f_ == o.f_)) throw FieldMismatchError("polynomial sum over different fields");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatchError("polynomial sum shape mismatch");
    std::vector<FieldMatrix> out;
    const std::uint32_t d = std::max(degree(), o.degree());
    out.reserve(d + 1);
    for (std::uint32_t i = 0; i <= d; ++i) out.push_back(coeff(i) + o.coeff(i));
    return PolyMatrix(std::move(out));
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
    if (!(f_ == o.f_)) throw FieldMismatchError("polynomial difference over different fields");
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ShapeMismatchError("polynomial difference shape mismatch");
    std::vector<FieldMatrix> out;
    const std::uint32_t d = std::max(degree(), o.degree());
    out.reserve(d + 1);
    for (std::uint32_t i = 0; i <= d; ++i) out.push_back(coeff(i) - o.coeff(i));
    return PolyMatrix(std::move(out));
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    if (!(f_ == o.f_)) throw FieldMismatchError("polynomial product over different fields");
    if (cols_ != o.rows_) throw DimensionMismatchError("polynomial product shape mismatch");
    const std::uint32_t d = degree() + o.degree();
    std::vector<FieldMatrix> out;
    out.reserve(d + 1);
    for (std::uint32_t t = 0; t <= d; ++t) {
        FieldMatrix acc(f_, rows_, o.cols_);
        for (std::uint32_t i = 0; i <= t; ++i) {
            if (i > degree() || t - i > o.degree()) continue;
            acc = acc + coeffs_[i] * o.coeffs_[t - i];
        }
        out.push_back(std::move(acc));
    }
    return PolyMatrix(std::move(out));
}

PolyMatrix PolyMatrix::transpose() const {
    std::vector<FieldMatrix> out;
    out.reserve(coeffs_.size());
    for (const FieldMatrix& c : coeffs_) out.push_back(c.transpose());
    return PolyMatrix(std::move(out));
}

FieldMatrix PolyMatrix::evaluate(std::uint32_t code) const {
    FieldMatrix acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc.scaled(code) + coeffs_[i];
    return acc;
}

std::string PolyMatrix::describe() const {
    std::string s = std::to_string(rows_) + "x" + std::to_string(cols_) + " over " +
                    f_.describe() + ", degree " + std::to_string(degree());
    for (std::uint32_t i = 0; i < coeffs_.size(); ++i)
        s += "\nz^" + std::to_string(i) + ":\n" + coeffs_[i].describe();
    return s;
}

PolyMatrix system_polynomial_matrix(const StateSpace& sys) {
    const CodeParams& prm = sys.params();
    const Field& f = sys.field();
    const std::uint32_t dl = prm.delta, p = prm.n - prm.k, k = prm.k;
    FieldMatrix c0(f, dl + p, dl + p + k), c1(f, dl + p, dl + p + k);
    for (std::uint32_t r = 0; r < dl; ++r) {
        c1.set_code(r, r, 1);
        for (std::uint32_t c = 0; c < dl; ++c) c0.set_code(r, c, f.neg(sys.A().code_at(r, c)));
        for (std::uint32_t c = 0; c < k; ++c)
            c0.set_code(r, dl + p + c, f.neg(sys.B().code_at(r, c)));
    }
    for (std::uint32_t r = 0; r < p; ++r) {
        c0.set_code(dl + r, dl + r, 1);
        for (std::uint32_t c = 0; c < dl; ++c) c0.set_code(dl + r, c, f.neg(sys.C().code_at(r, c)));
        for (std::uint32_t c = 0; c < k; ++c)
            c0.set_code(dl + r, dl + p + c, f.neg(sys.D().code_at(r, c)));
    }
    std::vector<FieldMatrix> coeffs;
    coeffs.push_back(std::move(c0));
    coeffs.push_back(std::move(c1));
    return PolyMatrix(std::move(coeffs));
}

PolyMatrix poly_right_kernel_basis(const PolyMatrix& M) {
    const Field& f = M.field();
    const std::uint32_t R = M.rows(), C = M.cols(), D = M.degree();
    if (C == 0) return PolyMatrix(f, 0, 0);

    // Kernel minimal indices are bounded by rank(M) * deg(M): scanning degrees
    // up to that cap finds a complete minimal basis.
    const std::uint32_t cap = std::min(R, C) * D;

    struct Chosen {
        std::uint32_t deg;
        std::vector<std::uint32_t> lin; // C*(deg+1) codes, ascending degree
    };
    std::vector<Chosen> chosen;

    for (std::uint32_t e = 0; e <= cap; ++e) {
        // Linearization of v -> M v on coefficient vectors of degree <= e.
        FieldMatrix S(f, R * (D + e + 1), C * (e + 1));
        for (std::uint32_t i = 0; i <= e; ++i)
            for (std::uint32_t t = i; t <= i + D; ++t) {
                const FieldMatrix blk = M.coeff(t - i);
                for (std::uint32_t r = 0; r < R; ++r)
                    for (std::uint32_t c = 0; c < C; ++c)
                        S.set_code(t * R + r, i * C + c, blk.code_at(r, c));
            }
        FieldMatrix K = right_kernel_basis(S);
        if (K.cols() == 0) continue;

        // Shifts of the already chosen elements span the known part of the
        // degree <= e kernel; new basis elements are kernel columns that grow
        // the span. Every element picked here has exact degree e: anything of
        // lower degree is already covered by the invariant.
        const std::uint32_t dim = C * (e + 1);
        std::vector<std::vector<std::uint32_t>> span;
        for (const Chosen& ch : chosen)
            for (std::uint32_t s = 0; s + ch.deg <= e; ++s) {
                std::vector<std::uint32_t> v(std::size_t(dim), 0);
                std::copy(ch.lin.begin(), ch.lin.end(), v.begin() + std::size_t(s) * C);
                span.push_back(std::move(v));
            }
        auto pack = [&](const std::vector<std::vector<std::uint32_t>>& cols) {
            FieldMatrix W(f, dim, static_cast<std::uint32_t>(cols.size()));
            for (std::uint32_t c = 0; c < W.cols(); ++c)
                for (std::uint32_t r = 0; r < dim; ++r) W.set_code(r, c, cols[c][r]);
            return W;
        };
        std::uint32_t base = rank(pack(span));
        for (std::uint32_t c = 0; c < K.cols(); ++c) {
            std::vector<std::uint32_t> v(dim);
            for (std::uint32_t r = 0; r < dim; ++r) v[r] = K.code_at(r, c);
            span.push_back(v);
            const std::uint32_t grown = rank(pack(span));
            if (grown == base) {
                span.pop_back();
                continue;
            }
            base = grown;
            chosen.push_back({e, std::move(v)});
        }
    }

    if (chosen.empty()) return PolyMatrix(f, C, 0);

    // Canonical form: per degree group, reduce the top-coefficient-first
    // concatenated rows to reduced echelon form. Leading coefficients of a
    // minimal basis are independent, so every pivot lands inside the leading
    // coefficient block and degrees survive the reduction.
    std::size_t lo = 0;
    while (lo < chosen.size()) {
        std::size_t hi = lo;
        while (hi < chosen.size() && chosen[hi].deg == chosen[lo].deg) ++hi;
        const std::uint32_t d = chosen[lo].deg;
        const std::uint32_t g = static_cast<std::uint32_t>(hi - lo);
        FieldMatrix W(f, g, C * (d + 1));
        for (std::uint32_t r = 0; r < g; ++r)
            for (std::uint32_t dc = 0; dc <= d; ++dc)
                for (std::uint32_t c = 0; c < C; ++c)
                    W.set_code(r, dc * C + c, chosen[lo + r].lin[std::size_t(d - dc) * C + c]);
        rref_rows(W);
        for (std::uint32_t r = 0; r < g; ++r)
            for (std::uint32_t dc = 0; dc <= d; ++dc)
                for (std::uint32_t c = 0; c < C; ++c)
                    chosen[lo + r].lin[std::size_t(d - dc) * C + c] = W.code_at(r, dc * C + c);
        lo = hi;
    }

    std::uint32_t maxdeg = 0;
    for (const Chosen& ch : chosen) maxdeg = std::max(maxdeg, ch.deg);
    std::vector<FieldMatrix> out;
    for (std::uint32_t i = 0; i <= maxdeg; ++i) out.emplace_back(f, C, static_cast<std::uint32_t>(chosen.size()));
    for (std::uint32_t idx = 0; idx < chosen.size(); ++idx) {
        const Chosen& ch = chosen[idx];
        for (std::uint32_t dc = 0; dc <= ch.deg; ++dc)
            for (std::uint32_t r = 0; r < C; ++r)
                out[dc].set_code(r, idx, ch.lin[std::size_t(dc) * C + r]);
    }
    return PolyMatrix(std::move(out));
}

PolyMatrix generator_matrix(const StateSpace& sys) {
    if (!is_controllable(sys))
        throw NotControllableError("generator conversion needs a controllable realization");
    if (!is_observable(sys))
        throw NotObservableError("generator conversion needs an observable realization");
    const CodeParams& prm = sys.params();
    const Field& f = sys.field();
    PolyMatrix kern = poly_right_kernel_basis(system_polynomial_matrix(sys));
    if (kern.cols() != prm.k)
        throw RankDeficientError("system pencil kernel has rank " + std::to_string(kern.cols()) +
                                 ", expected " + std::to_string(prm.k));
    std::vector<FieldMatrix> g;
    for (std::uint32_t i = 0; i <= kern.degree(); ++i) {
        const FieldMatrix cf = kern.coeff(i);
        FieldMatrix gi(f, prm.n, prm.k);
        for (std::uint32_t r = 0; r < prm.n; ++r)
            for (std::uint32_t c = 0; c < prm.k; ++c)
                gi.set_code(r, c, cf.code_at(prm.delta + r, c));
        g.push_back(std::move(gi));
    }
    PolyMatrix G(std::move(g));
    FieldMatrix stacked(f, 0, prm.k);
    for (std::uint32_t i = 0; i <= G.degree(); ++i) stacked = vstack(stacked, G.coeff(i));
    if (rank(stacked) != prm.k)
        throw RankDeficientError("generator columns are linearly dependent");
    return G;
}

PolyMatrix parity_check_matrix(const PolyMatrix& G) {
    const std::uint32_t n = G.rows(), k = G.cols();
    if (k >= n) throw DimensionMismatchError("generator must be tall (k < n)");
    PolyMatrix kern = poly_right_kernel_basis(G.transpose());
    if (kern.cols() != n - k)
        throw RankDeficientError("left kernel of the generator has rank " +
                                 std::to_string(kern.cols()) + ", expected " +
                                 std::to_string(n - k));
    PolyMatrix H = kern.transpose();
    if (!(H * G).is_zero()) throw Error("internal: parity times generator is nonzero");
    return H;
}

FieldMatrix sliding_parity_matrix(const PolyMatrix& H, std::uint32_t j) {
    const Field& f = H.field();
    const std::uint32_t rh = H.rows(), n = H.cols(), nu = H.degree();
    FieldMatrix S(f, (j + 1) * rh, (j + 1) * n);
    for (std::uint32_t r = 0; r <= j; ++r)
        for (std::uint32_t c = 0; c <= r; ++c) {
            if (r - c > nu) continue;
            const FieldMatrix blk = H.coeff(r - c);
            for (std::uint32_t s = 0; s < rh; ++s)
                for (std::uint32_t t = 0; t < n; ++t)
                    S.set_code(r * rh + s, c * n + t, blk.code_at(s, t));
        }
    return S;
}

bool all_parity_minors_nonzero(const PolyMatrix& H, std::uint32_t j, std::uint64_t budget) {
    const std::uint32_t rh = H.rows(), n = H.cols();
    if (rh == 0 || rh >= n) throw DimensionMismatchError("parity matrix must have 1 <= rows < cols");
    const FieldMatrix S = sliding_parity_matrix(H, j);
    const std::uint32_t m = (j + 1) * rh;
    const std::uint32_t N = (j + 1) * n;

    std::vector<std::uint32_t> rows(m);
    for (std::uint32_t i = 0; i < m; ++i) rows[i] = i + 1;

    // Position limits: room for the remaining entries, plus the criterion's
    // anchor constraint i_{s rh} <= s n at positions s rh, s = 1..j.
    std::vector<std::uint32_t> limit(m);
    for (std::uint32_t pos = 0; pos < m; ++pos) {
        std::uint32_t lim = N - (m - 1 - pos);
        const std::uint32_t pos1 = pos + 1;
        if (pos1 % rh == 0 && pos1 / rh <= j) lim = std::min(lim, (pos1 / rh) * n);
        limit[pos] = lim;
    }

    std::vector<std::uint32_t> cols(m);
    for (std::uint32_t i = 0; i < m; ++i) cols[i] = i + 1; // smallest tuple, always admissible
    auto advance = [&]() {
        for (std::uint32_t pos = m; pos-- > 0;) {
            if (cols[pos] >= limit[pos]) continue;
            ++cols[pos];
            bool ok = true;
            for (std::uint32_t t = pos + 1; t < m; ++t) {
                cols[t] = cols[t - 1] + 1;
                if (cols[t] > limit[t]) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
            // a violated refill cannot be fixed by pushing this position
            // further right; fall through to the next position to the left
        }
        return false;
    };

    std::uint64_t evaluated = 0;
    do {
        if (evaluated == budget)
            throw BudgetExceededError("parity minor evaluation budget exhausted after " +
                                          std::to_string(evaluated),
                                      evaluated + 1, budget);
        ++evaluated;
        if (determinant(submatrix(S, rows, cols)).code() == 0) return false;
    } while (advance());
    return true;
}

bool is_mdp_via_parity(const StateSpace& sys, std::uint64_t budget) {
    PolyMatrix H = parity_check_matrix(generator_matrix(sys));
    return all_parity_minors_nonzero(H, code_indices(sys.params()).L, budget);
}

EquivalenceReport check_equivalences(const StateSpace& sys, std::uint32_t trials,
                                     std::uint64_t seed) {
    EquivalenceReport rep;
    const CodeParams& prm = sys.params();
    const Field& f = sys.field();
    const std::uint32_t n = prm.n, k = prm.k, p = n - k;
    const std::uint64_t q = f.order();
    const PolyMatrix G = generator_matrix(sys);
    const PolyMatrix H = parity_check_matrix(G);
    const std::uint32_t nu = H.degree();

    for (std::uint32_t trial = 1; trial <= trials; ++trial) {
        SplitMix64 g = SplitMix64::stream(seed, trial);

        // random nonzero message polynomial of degree <= 3
        const auto wd = static_cast<std::uint32_t>(g.below(4));
        std::vector<FieldMatrix> wc;
        bool nz = false;
        for (std::uint32_t i = 0; i <= wd; ++i) {
            FieldMatrix c(f, k, 1);
            for (std::uint32_t r = 0; r < k; ++r) {
                const auto val = static_cast<std::uint32_t>(g.below(q));
                if (val != 0) nz = true;
                c.set_code(r, 0, val);
            }
            wc.push_back(std::move(c));
        }
        if (!nz) wc[0].set_code(0, 0, 1);
        const PolyMatrix v = G * PolyMatrix(std::move(wc));
        const std::uint32_t gamma = v.degree();

        // time blocks: time t is the coefficient of z^{gamma-t}
        std::vector<FieldMatrix> vt;
        vt.reserve(gamma + 1);
        for (std::uint32_t t = 0; t <= gamma; ++t) vt.push_back(v.coeff(gamma - t));

        // (1) state equations terminate and reproduce the outputs
        FieldMatrix x(f, prm.delta, 1);
        bool outputs_match = true;
        FieldMatrix U(f, (gamma + 1) * k, 1), Y(f, (gamma + 1) * p, 1);
        for (std::uint32_t t = 0; t <= gamma; ++t) {
            FieldMatrix ut(f, k, 1), yt(f, p, 1);
            for (std::uint32_t r = 0; r < k; ++r) {
                ut.set_code(r, 0, vt[t].code_at(p + r, 0));
                U.set_code(t * k + r, 0, vt[t].code_at(p + r, 0));
            }
            for (std::uint32_t r = 0; r < p; ++r) {
                yt.set_code(r, 0, vt[t].code_at(r, 0));
                Y.set_code(t * p + r, 0, vt[t].code_at(r, 0));
            }
            if (sys.C() * x + sys.D() * ut != yt) outputs_match = false;
            x = sys.A() * x + sys.B() * ut;
        }
        if (!x.is_zero() || !outputs_match) rep.terminated = false;

        // (2) sliding Toeplitz encoding of the same inputs
        const FieldMatrix T = toeplitz_matrix(markov_parameters(sys, gamma));
        if (T * U != Y) rep.toeplitz_ok = false;

        // (3) exact polynomial identity
        if (!(H * v).is_zero()) rep.polynomial_identity_ok = false;

        // (4) sliding parity annihilates the coefficient blocks, ascending
        // degree (time order reversed)
        FieldMatrix V(f, (gamma + 1) * n, 1);
        for (std::uint32_t s = 0; s <= gamma; ++s) {
            const FieldMatrix cf = v.coeff(s);
            for (std::uint32_t r = 0; r < n; ++r) V.set_code(s * n + r, 0, cf.code_at(r, 0));
        }
        if (!(sliding_parity_matrix(H, gamma) * V).is_zero()) rep.parity_ok = false;

        // (5) reversal bookkeeping on an unconstrained polynomial vector: the
        // time blocks of H(z) r(z) equal the time convolution with the
        // degree-reversed coefficient blocks of H
        const auto rd = static_cast<std::uint32_t>(g.below(3));
        std::vector<FieldMatrix> rc;
        for (std::uint32_t i = 0; i <= rd; ++i) {
            FieldMatrix c(f, n, 1);
            for (std::uint32_t r = 0; r < n; ++r)
                c.set_code(r, 0, static_cast<std::uint32_t>(g.below(q)));
            rc.push_back(std::move(c));
        }
        const PolyMatrix rv(std::move(rc));
        const PolyMatrix prod = H * rv;
        for (std::uint32_t t = 0; t <= rd + nu; ++t) {
            FieldMatrix acc(f, p, 1);
            for (std::uint32_t i = 0; i <= nu; ++i) {
                if (t < i || t - i > rd) continue;
                acc = acc + H.coeff(nu - i) * rv.coeff(rd - (t - i));
            }
            if (acc != prod.coeff(rd + nu - t)) rep.parity_split_ok = false;
        }
    }
    return rep;
}

} // namespace mdpcc
