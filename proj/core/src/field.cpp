#include "mdpcc/field.hpp"

#include <algorithm>
#include <sstream>

namespace mdpcc {

namespace {

// polynomial helpers over GF(p), coefficients low to high, no leading-zero trim guarantees

std::uint32_t mod_p(std::uint64_t v, std::uint32_t p) { return static_cast<std::uint32_t>(v % p); }

// remainder of a mod b over GF(p); b monic of degree db
std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b,
                                    std::uint32_t p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        if (lead != 0) {
            for (std::size_t i = 0; i <= db; ++i) {
                std::uint64_t t = static_cast<std::uint64_t>(lead) * b[i] % p;
                std::uint32_t& c = a[shift + i];
                c = static_cast<std::uint32_t>((c + p - t) % p);
            }
        }
        a.pop_back();
    }
    return a;
}

std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t>& a,
                                       const std::vector<std::uint32_t>& b,
                                       const std::vector<std::uint32_t>& mod, std::uint32_t p) {
    std::vector<std::uint32_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = mod_p(prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j], p);
        }
    }
    return poly_rem(std::move(prod), mod, p);
}

std::uint64_t checked_pow(std::uint32_t p, std::uint32_t m, std::uint64_t limit) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        if (q > limit / p) throw Error("field order p^m exceeds the supported limit");
        q *= p;
    }
    return q;
}

} // namespace

bool Field::is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

bool Field::is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
    const std::size_t m = poly.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    // trial division by every monic polynomial of degree 1..m/2
    for (std::size_t d = 1; 2 * d <= m; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t packed = 0; packed < count; ++packed) {
            std::vector<std::uint32_t> div(d + 1, 0);
            std::uint64_t v = packed;
            for (std::size_t i = 0; i < d; ++i) {
                div[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            div[d] = 1;
            std::vector<std::uint32_t> r = poly_rem(poly, div, p);
            if (std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; })) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> Field::default_modulus(std::uint32_t p, std::uint32_t m) {
    if (m == 1) return {0, 1}; // placeholder x; never used in arithmetic
    const std::uint64_t count = checked_pow(p, m, kOrderLimit);
    for (std::uint64_t packed = 0; packed < count; ++packed) {
        std::vector<std::uint32_t> cand(m + 1, 0);
        std::uint64_t v = packed;
        for (std::uint32_t i = 0; i < m; ++i) {
            cand[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        cand[m] = 1;
        if (is_irreducible(p, cand)) return cand;
    }
    throw Error("no irreducible modulus found (unreachable for prime p)");
}

Field::Field(std::uint32_t p) : Field(p, 1) {}

Field::Field(std::uint32_t p, std::uint32_t m) : Field(p, m, default_modulus(p, m), true) {}

Field::Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : Field(p, m, std::move(modulus), false) {}

Field::Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus, bool trust_modulus)
    : d_(make_data(p, m, std::move(modulus), trust_modulus)) {}

std::shared_ptr<const Field::Data> Field::make_data(std::uint32_t p, std::uint32_t m,
                                                    std::vector<std::uint32_t> modulus,
                                                    bool trust_modulus) {
    if (!is_prime(p)) throw NonPrimeCharacteristicError("characteristic " + std::to_string(p) + " is not prime");
    if (m < 1) throw Error("extension degree must be at least 1");
    auto d = std::make_shared<Data>();
    d->p = p;
    d->m = m;
    d->q = checked_pow(p, m, kOrderLimit);
    if (modulus.size() != static_cast<std::size_t>(m) + 1)
        throw ReducibleModulusError("modulus must have length m+1 (coefficients low to high)");
    for (std::uint32_t c : modulus) {
        if (c >= p) throw ReducibleModulusError("modulus coefficients must lie in [0, p)");
    }
    if (modulus.back() != 1) throw ReducibleModulusError("modulus must be monic");
    if (!trust_modulus && m > 1 && !is_irreducible(p, modulus))
        throw ReducibleModulusError("modulus is reducible over GF(" + std::to_string(p) + ")");
    d->modulus = std::move(modulus);

    if (d->q <= kTableLimit) {
        const std::uint32_t q = static_cast<std::uint32_t>(d->q);
        d->add_tab.resize(static_cast<std::size_t>(q) * q);
        d->mul_tab.resize(static_cast<std::size_t>(q) * q);
        d->neg_tab.resize(q);
        d->inv_tab.assign(q, 0);
        for (std::uint32_t a = 0; a < q; ++a) {
            d->neg_tab[a] = neg_raw(*d, a);
            for (std::uint32_t b = 0; b < q; ++b) {
                d->add_tab[static_cast<std::size_t>(a) * q + b] = add_raw(*d, a, b);
                const std::uint32_t prod = mul_raw(*d, a, b);
                d->mul_tab[static_cast<std::size_t>(a) * q + b] = prod;
                if (prod == 1) d->inv_tab[a] = b;
            }
        }
        d->tabled = true;
    }
    return d;
}

std::uint32_t Field::add_raw(const Data& d, std::uint32_t a, std::uint32_t b) {
    const std::uint32_t p = d.p;
    if (d.m == 1) return (a + b) % p;
    std::uint32_t out = 0, mult = 1;
    // digit-wise addition mod p
    while (a != 0 || b != 0) {
        out += ((a % p + b % p) % p) * mult;
        a /= p;
        b /= p;
        mult *= p;
    }
    return out;
}

std::uint32_t Field::neg_raw(const Data& d, std::uint32_t a) {
    const std::uint32_t p = d.p;
    if (d.m == 1) return a == 0 ? 0 : p - a;
    std::uint32_t out = 0, mult = 1;
    while (a != 0) {
        const std::uint32_t digit = a % p;
        out += (digit == 0 ? 0 : p - digit) * mult;
        a /= p;
        mult *= p;
    }
    return out;
}

std::uint32_t Field::mul_raw(const Data& d, std::uint32_t a, std::uint32_t b) {
    const std::uint32_t p = d.p;
    if (d.m == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
    std::vector<std::uint32_t> va = coeffs_raw(d, a), vb = coeffs_raw(d, b);
    std::vector<std::uint32_t> r = poly_mulmod(va, vb, d.modulus, p);
    std::uint32_t out = 0, mult = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
        out += r[i] * mult;
        mult *= p;
    }
    return out;
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
    if (d_->tabled) return d_->add_tab[static_cast<std::size_t>(a) * d_->q + b];
    return add_raw(*d_, a, b);
}

std::uint32_t Field::neg(std::uint32_t a) const {
    if (d_->tabled) return d_->neg_tab[a];
    return neg_raw(*d_, a);
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
    if (d_->tabled) return d_->mul_tab[static_cast<std::size_t>(a) * d_->q + b];
    return mul_raw(*d_, a, b);
}

std::uint32_t Field::inv(std::uint32_t a) const {
    if (a == 0) throw Error("zero has no multiplicative inverse");
    if (d_->tabled) return d_->inv_tab[a];
    return pow(a, d_->q - 2);
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t base = a, out = 1;
    while (e != 0) {
        if (e & 1) out = mul(out, base);
        base = mul(base, base);
        e >>= 1;
    }
    return out;
}

std::vector<std::uint32_t> Field::coeffs_raw(const Data& d, std::uint32_t code) {
    std::vector<std::uint32_t> c(d.m, 0);
    for (std::uint32_t i = 0; i < d.m; ++i) {
        c[i] = code % d.p;
        code /= d.p;
    }
    return c;
}

std::vector<std::uint32_t> Field::coeffs(std::uint32_t code) const { return coeffs_raw(*d_, code); }

std::uint32_t Field::element_from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() != d_->m) throw ParseError("coefficient vector must have length m");
    std::uint32_t out = 0, mult = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= d_->p) throw ParseError("coefficient out of range [0, p)");
        out += c[i] * mult;
        mult *= d_->p;
    }
    return out;
}

bool Field::operator==(const Field& o) const {
    if (d_ == o.d_) return true;
    return d_->p == o.d_->p && d_->m == o.d_->m && d_->modulus == o.d_->modulus;
}

std::string Field::describe() const {
    std::ostringstream ss;
    ss << "GF(" << d_->q << ")";
    if (d_->m > 1) {
        ss << " = GF(" << d_->p << "^" << d_->m << ") mod ";
        bool first = true;
        for (std::size_t i = d_->modulus.size(); i-- > 0;) {
            const std::uint32_t c = d_->modulus[i];
            if (c == 0) continue;
            if (!first) ss << "+";
            first = false;
            if (i == 0) {
                ss << c;
            } else {
                if (c != 1) ss << c << "*";
                ss << "x";
                if (i > 1) ss << "^" << i;
            }
        }
    }
    return ss.str();
}

} // namespace mdpcc
