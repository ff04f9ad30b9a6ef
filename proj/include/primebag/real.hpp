// Thin RAII wrapper over MPFR reals plus a two-endpoint interval. Just enough
// for directed-rounding log sums and the analytic estimates; not a general
// numerics layer.
#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace primebag {

class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    Real(Real&& other) noexcept {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_swap(v_, other.v_);
    }
    Real& operator=(Real other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string to_string(int digits = 17) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    mpfr_t v_;
};

// A closed enclosure [lo, hi]; endpoints may be infinite.
struct RealInterval {
    Real lo;
    Real hi;

    double width() const {
        Real d(mpfr_get_prec(hi.get()));
        mpfr_sub(d.get(), hi.get(), lo.get(), MPFR_RNDU);
        return d.to_double();
    }
    double midpoint() const {
        Real m(mpfr_get_prec(hi.get()));
        mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
        mpfr_div_ui(m.get(), m.get(), 2, MPFR_RNDN);
        return m.to_double();
    }
};

} // namespace primebag
