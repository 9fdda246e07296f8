#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mdpcc/errors.hpp"

namespace mdpcc {

/// A finite field GF(p^m) with exact arithmetic.
///
/// Elements are handled as integer codes in [0, p^m). The base-p digits of a
/// code, low to high, are the coefficients of the element as a polynomial in
/// the generator: code 0 is the zero element, code 1 the one element, and for
/// prime fields the code is simply the residue. Arithmetic is coefficient-
/// vector arithmetic modulo an irreducible modulus polynomial; small fields
/// additionally get full add/mul lookup tables at construction (an internal
/// optimization, the digit arithmetic stays the ground truth).
///
/// Field is a cheap value type (shared immutable payload). Two fields compare
/// equal iff they have the same characteristic, extension degree and modulus.
class Field {
  public:
    /// Prime field GF(p). Throws NonPrimeCharacteristicError if p is not prime.
    explicit Field(std::uint32_t p);

    /// GF(p^m) with the deterministic default modulus: the monic irreducible
    /// of degree m whose packed base-p coefficient value is smallest (the
    /// coefficient vectors compare degree-major). For m = 1 the modulus is the
    /// placeholder x.
    Field(std::uint32_t p, std::uint32_t m);

    /// GF(p^m) with an explicit monic modulus, coefficients low to high,
    /// length m+1. Throws ReducibleModulusError if it is not irreducible
    /// (or not monic / wrong length).
    Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);

    std::uint32_t characteristic() const { return d_->p; }
    std::uint32_t extension_degree() const { return d_->m; }
    std::uint64_t order() const { return d_->q; }
    const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }

    bool is_prime_field() const { return d_->m == 1; }

    // -- arithmetic on element codes ------------------------------------
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const; // a != 0, else Error
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    /// Coefficient vector of an element, low to high, length m.
    std::vector<std::uint32_t> coeffs(std::uint32_t code) const;
    /// Inverse of coeffs(); entries must lie in [0, p).
    std::uint32_t element_from_coeffs(const std::vector<std::uint32_t>& c) const;

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    /// e.g. "GF(3)" or "GF(9) = GF(3^2) mod x^2+1"
    std::string describe() const;

    /// Deterministic default modulus for GF(p^m) (see the two-arg constructor).
    static std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t m);
    /// Irreducibility over GF(p) by trial division against every monic
    /// polynomial of degree 1..deg/2.
    static bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);
    static bool is_prime(std::uint32_t p);

  private:
    struct Data {
        std::uint32_t p = 0;
        std::uint32_t m = 0;
        std::uint64_t q = 0;
        std::vector<std::uint32_t> modulus; // monic, low to high, length m+1
        // lookup tables, built when q <= kTableLimit
        std::vector<std::uint32_t> add_tab, mul_tab, neg_tab, inv_tab;
        bool tabled = false;
    };

    static constexpr std::uint64_t kTableLimit = 512;
    static constexpr std::uint64_t kOrderLimit = 1ull << 26;

    std::shared_ptr<const Data> d_;

    Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus, bool trust_modulus);
    static std::shared_ptr<const Data> make_data(std::uint32_t p, std::uint32_t m,
                                                 std::vector<std::uint32_t> modulus,
                                                 bool trust_modulus);
    static std::uint32_t add_raw(const Data& d, std::uint32_t a, std::uint32_t b);
    static std::uint32_t neg_raw(const Data& d, std::uint32_t a);
    static std::uint32_t mul_raw(const Data& d, std::uint32_t a, std::uint32_t b);
    static std::vector<std::uint32_t> coeffs_raw(const Data& d, std::uint32_t code);
};

/// One element bound to its field; a convenience wrapper over (Field, code)
/// with operator arithmetic. Mixed-field operations throw FieldMismatchError.
class FieldElement {
  public:
    FieldElement(Field f, std::uint32_t code) : f_(std::move(f)), code_(code) {
        if (code_ >= f_.order()) throw IndexOutOfRangeError("element code out of range for field");
    }

    const Field& field() const { return f_; }
    std::uint32_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }
    std::vector<std::uint32_t> coeffs() const { return f_.coeffs(code_); }

    FieldElement operator+(const FieldElement& o) const { return with(f_.add(code_, same(o))); }
    FieldElement operator-(const FieldElement& o) const { return with(f_.sub(code_, same(o))); }
    FieldElement operator*(const FieldElement& o) const { return with(f_.mul(code_, same(o))); }
    FieldElement operator/(const FieldElement& o) const { return with(f_.div(code_, same(o))); }
    FieldElement operator-() const { return with(f_.neg(code_)); }
    FieldElement inverse() const { return with(f_.inv(code_)); }

    bool operator==(const FieldElement& o) const { return f_ == o.f_ && code_ == o.code_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

  private:
    Field f_;
    std::uint32_t code_;

    FieldElement with(std::uint32_t c) const { return FieldElement(f_, c); }
    std::uint32_t same(const FieldElement& o) const {
        if (f_ != o.f_) throw FieldMismatchError("field elements live in different fields");
        return o.code_;
    }
};

} // namespace mdpcc
