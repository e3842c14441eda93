// interval.hpp — rigorous real intervals with MPFR endpoints.
//
// Every operation rounds the lower endpoint down and the upper endpoint up,
// so the true real value is always contained in the interval.  Precision is
// carried per-interval (bits); binary operations promote to the larger
// operand precision.

#pragma once

#include <mpfr.h>

#include <string>

namespace ptam {

enum class Ordering { less, greater, undecided };

class IntervalReal {
public:
    static constexpr int kDefaultPrec = 128;

    IntervalReal();                       // [0, 0] at default precision
    explicit IntervalReal(int prec);      // [0, 0] at given precision
    IntervalReal(const IntervalReal& o);
    IntervalReal(IntervalReal&& o) noexcept;
    IntervalReal& operator=(const IntervalReal& o);
    IntervalReal& operator=(IntervalReal&& o) noexcept;
    ~IntervalReal();

    static IntervalReal from_int(long long v, int prec = kDefaultPrec);
    // The double is taken as an exact binary rational.
    static IntervalReal from_double(double v, int prec = kDefaultPrec);
    // Enclosure of pi.
    static IntervalReal pi(int prec = kDefaultPrec);

    int precision() const { return prec_; }
    double lo_double() const;   // rounded down
    double hi_double() const;   // rounded up
    double midpoint() const;
    double width() const;
    bool contains_zero() const;

    IntervalReal operator+(const IntervalReal& o) const;
    IntervalReal operator-(const IntervalReal& o) const;
    IntervalReal operator*(const IntervalReal& o) const;
    // Throws std::domain_error if the divisor interval straddles zero.
    IntervalReal operator/(const IntervalReal& o) const;
    IntervalReal operator-() const;
    IntervalReal scaled(long long k) const;

    // Enclosures of cos/sin over the whole interval (derivative-bounded
    // widening of the midpoint value; adequate for narrow intervals).
    IntervalReal cos() const;
    IntervalReal sin() const;
    // Throws std::domain_error if any part of the interval is negative.
    IntervalReal sqrt() const;

    std::string str() const;

private:
    mpfr_t lo_;
    mpfr_t hi_;
    int prec_;

    void init(int prec);

    friend Ordering compare(const IntervalReal& a, const IntervalReal& b);
};

// less/greater when the intervals are disjoint, undecided on overlap.
Ordering compare(const IntervalReal& a, const IntervalReal& b);

// Enclosure of cos(pi * num / den) and sin(pi * num / den).
IntervalReal cos_pi_frac(long long num, long long den, int prec = IntervalReal::kDefaultPrec);
IntervalReal sin_pi_frac(long long num, long long den, int prec = IntervalReal::kDefaultPrec);

}  // namespace ptam
