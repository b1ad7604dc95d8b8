#pragma once

#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "gp/errors.hpp"

namespace gp {

using Prec = mpfr_prec_t;

/// Working precision and escalation policy shared by all certified
/// computations. Escalation multiplies `bits` by `escalation_factor`
/// until `max_bits`; past that, verdicts surface as Undecided or
/// PrecisionExhausted rather than being guessed.
struct PrecisionContext {
    long bits;
    long max_bits;
    int escalation_factor;

    PrecisionContext(long bits_, long max_bits_, int factor = 2)
        : bits(bits_), max_bits(max_bits_), escalation_factor(factor) {
        if (bits < MPFR_PREC_MIN || bits > max_bits)
            throw DomainError("PrecisionContext: need MPFR_PREC_MIN <= bits <= max_bits");
        if (escalation_factor < 2)
            throw DomainError("PrecisionContext: escalation_factor must be >= 2");
    }

    static PrecisionContext standard() { return PrecisionContext(256, 4096, 2); }

    /// Next context in the escalation schedule, or nullopt when exhausted.
    std::optional<PrecisionContext> escalated() const {
        if (bits >= max_bits) return std::nullopt;
        long next = bits;
        if (max_bits / escalation_factor < bits)
            next = max_bits;
        else
            next = bits * escalation_factor;
        return PrecisionContext(next, max_bits, escalation_factor);
    }

    PrecisionContext with_bits(long b) const { return PrecisionContext(b, max_bits < b ? b : max_bits, escalation_factor); }
};

/// RAII wrapper around a single mpfr_t. Value semantics; the precision is
/// fixed per object and preserved by copies.
class Mpfr {
  public:
    explicit Mpfr(Prec prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Mpfr(const Mpfr& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN); // same precision: exact
    }
    Mpfr(Mpfr&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Mpfr& operator=(const Mpfr& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    Prec prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Hex significand/exponent form; exact and locale-independent, used
    /// for bit-for-bit reproducible serialization.
    std::string to_hex_string() const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%Ra", v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    std::string to_decimal_string(size_t digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

  private:
    mpfr_t v_;
};

} // namespace gp
