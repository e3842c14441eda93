// interval.cpp — MPFR-backed directed-rounding interval arithmetic.

#include "ptam/interval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ptam {

void IntervalReal::init(int prec) {
    prec_ = prec;
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

IntervalReal::IntervalReal() { init(kDefaultPrec); }
IntervalReal::IntervalReal(int prec) { init(prec); }

IntervalReal::IntervalReal(const IntervalReal& o) {
    init(o.prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

IntervalReal::IntervalReal(IntervalReal&& o) noexcept {
    prec_ = o.prec_;
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

IntervalReal& IntervalReal::operator=(const IntervalReal& o) {
    if (this != &o) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

IntervalReal& IntervalReal::operator=(IntervalReal&& o) noexcept {
    if (this != &o) {
        prec_ = o.prec_;
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    return *this;
}

IntervalReal::~IntervalReal() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

IntervalReal IntervalReal::from_int(long long v, int prec) {
    IntervalReal r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::from_double(double v, int prec) {
    IntervalReal r(prec);
    mpfr_set_d(r.lo_, v, MPFR_RNDD);
    mpfr_set_d(r.hi_, v, MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::pi(int prec) {
    IntervalReal r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

double IntervalReal::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double IntervalReal::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double IntervalReal::midpoint() const {
    return 0.5 * (lo_double() + hi_double());
}

double IntervalReal::width() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

bool IntervalReal::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

IntervalReal IntervalReal::operator+(const IntervalReal& o) const {
    IntervalReal r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::operator-(const IntervalReal& o) const {
    IntervalReal r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::operator-() const {
    IntervalReal r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::operator*(const IntervalReal& o) const {
    // Four-corner product with directed rounding.
    IntervalReal r(std::max(prec_, o.prec_));
    mpfr_t c[8];
    for (auto& m : c) mpfr_init2(m, r.prec_);
    mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDD);
    mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDD);
    mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDD);
    mpfr_mul(c[4], lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(c[5], lo_, o.hi_, MPFR_RNDU);
    mpfr_mul(c[6], hi_, o.lo_, MPFR_RNDU);
    mpfr_mul(c[7], hi_, o.hi_, MPFR_RNDU);
    mpfr_min(r.lo_, c[0], c[1], MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, c[2], MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, c[3], MPFR_RNDD);
    mpfr_max(r.hi_, c[4], c[5], MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, c[6], MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, c[7], MPFR_RNDU);
    for (auto& m : c) mpfr_clear(m);
    return r;
}

IntervalReal IntervalReal::operator/(const IntervalReal& o) const {
    if (o.contains_zero())
        throw std::domain_error("IntervalReal: division by interval containing zero");
    IntervalReal r(std::max(prec_, o.prec_));
    mpfr_t c[8];
    for (auto& m : c) mpfr_init2(m, r.prec_);
    mpfr_div(c[0], lo_, o.lo_, MPFR_RNDD);
    mpfr_div(c[1], lo_, o.hi_, MPFR_RNDD);
    mpfr_div(c[2], hi_, o.lo_, MPFR_RNDD);
    mpfr_div(c[3], hi_, o.hi_, MPFR_RNDD);
    mpfr_div(c[4], lo_, o.lo_, MPFR_RNDU);
    mpfr_div(c[5], lo_, o.hi_, MPFR_RNDU);
    mpfr_div(c[6], hi_, o.lo_, MPFR_RNDU);
    mpfr_div(c[7], hi_, o.hi_, MPFR_RNDU);
    mpfr_min(r.lo_, c[0], c[1], MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, c[2], MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, c[3], MPFR_RNDD);
    mpfr_max(r.hi_, c[4], c[5], MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, c[6], MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, c[7], MPFR_RNDU);
    for (auto& m : c) mpfr_clear(m);
    return r;
}

IntervalReal IntervalReal::scaled(long long k) const {
    IntervalReal r(prec_);
    if (k >= 0) {
        mpfr_mul_si(r.lo_, lo_, k, MPFR_RNDD);
        mpfr_mul_si(r.hi_, hi_, k, MPFR_RNDU);
    } else {
        mpfr_mul_si(r.lo_, hi_, k, MPFR_RNDD);
        mpfr_mul_si(r.hi_, lo_, k, MPFR_RNDU);
    }
    return r;
}

// cos/sin via midpoint evaluation widened by the radius (|f'| <= 1).
static void trig_widen(const mpfr_t lo, const mpfr_t hi, int prec, bool is_cos,
                       mpfr_t out_lo, mpfr_t out_hi) {
    mpfr_t mid, rad, v_lo, v_hi;
    mpfr_init2(mid, prec);
    mpfr_init2(rad, prec);
    mpfr_init2(v_lo, prec);
    mpfr_init2(v_hi, prec);
    mpfr_add(mid, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    // radius, rounded up, plus slack for the midpoint rounding
    mpfr_sub(rad, hi, lo, MPFR_RNDU);
    mpfr_div_2ui(rad, rad, 1, MPFR_RNDU);
    mpfr_nextabove(rad);
    if (is_cos) {
        mpfr_cos(v_lo, mid, MPFR_RNDD);
        mpfr_cos(v_hi, mid, MPFR_RNDU);
    } else {
        mpfr_sin(v_lo, mid, MPFR_RNDD);
        mpfr_sin(v_hi, mid, MPFR_RNDU);
    }
    mpfr_sub(out_lo, v_lo, rad, MPFR_RNDD);
    mpfr_add(out_hi, v_hi, rad, MPFR_RNDU);
    // clamp to [-1, 1]
    if (mpfr_cmp_si(out_lo, -1) < 0) mpfr_set_si(out_lo, -1, MPFR_RNDD);
    if (mpfr_cmp_si(out_hi, 1) > 0) mpfr_set_si(out_hi, 1, MPFR_RNDU);
    mpfr_clear(mid);
    mpfr_clear(rad);
    mpfr_clear(v_lo);
    mpfr_clear(v_hi);
}

IntervalReal IntervalReal::cos() const {
    IntervalReal r(prec_);
    trig_widen(lo_, hi_, prec_, true, r.lo_, r.hi_);
    return r;
}

IntervalReal IntervalReal::sin() const {
    IntervalReal r(prec_);
    trig_widen(lo_, hi_, prec_, false, r.lo_, r.hi_);
    return r;
}

IntervalReal IntervalReal::sqrt() const {
    if (mpfr_sgn(lo_) < 0)
        throw std::domain_error("IntervalReal: sqrt of interval with negative part");
    IntervalReal r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

std::string IntervalReal::str() const {
    std::ostringstream os;
    os.precision(17);
    os << "[" << lo_double() << ", " << hi_double() << "]";
    return os.str();
}

Ordering compare(const IntervalReal& a, const IntervalReal& b) {
    if (mpfr_cmp(a.hi_, b.lo_) < 0) return Ordering::less;
    if (mpfr_cmp(a.lo_, b.hi_) > 0) return Ordering::greater;
    return Ordering::undecided;
}

IntervalReal cos_pi_frac(long long num, long long den, int prec) {
    IntervalReal angle = IntervalReal::pi(prec).scaled(num) / IntervalReal::from_int(den, prec);
    return angle.cos();
}

IntervalReal sin_pi_frac(long long num, long long den, int prec) {
    IntervalReal angle = IntervalReal::pi(prec).scaled(num) / IntervalReal::from_int(den, prec);
    return angle.sin();
}

}  // namespace ptam
