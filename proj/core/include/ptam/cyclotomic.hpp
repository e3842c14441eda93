// cyclotomic.hpp — exact arithmetic in Z[omega], omega = e^{2*pi*i/n}.
//
// A CycloNum is an integer-coefficient polynomial in omega of degree < n,
// stored as a length-n coefficient vector (coeff[j] multiplies omega^j).
// Equality and zero tests reduce modulo the n-th cyclotomic polynomial
// Phi_n, never through floating point.  Numeric enclosures of the real and
// imaginary parts are produced as rigorous intervals.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ptam/interval.hpp"

namespace ptam {

class CycloNum {
public:
    // Zero in Z[omega_n]; throws std::invalid_argument if n < 3.
    explicit CycloNum(int n);
    // Coefficient vector of length n (coeffs[j] multiplies omega^j).
    CycloNum(int n, std::vector<long long> coeffs);

    // omega^j (j taken mod n).
    static CycloNum root_power(int n, long long j);
    static CycloNum integer(int n, long long v);

    int order() const { return n_; }
    const std::vector<long long>& coeffs() const { return c_; }
    long long coeff(int j) const { return c_[j]; }

    CycloNum operator+(const CycloNum& o) const;
    CycloNum operator-(const CycloNum& o) const;
    CycloNum operator-() const;
    CycloNum operator*(const CycloNum& o) const;
    CycloNum scaled(long long k) const;
    // Multiplication by omega^m (cyclic coefficient shift).
    CycloNum mul_by_root(long long m) const;
    // Complex conjugate: omega^j -> omega^{n-j}.
    CycloNum conj() const;
    // Reinterpret in Z[omega_m] for n | m (coefficient j -> j*m/n).
    CycloNum lift(int m) const;

    // Exact zero test: reduction modulo Phi_n.
    std::vector<long long> reduced_coeffs() const;
    bool is_zero() const;
    bool operator==(const CycloNum& o) const;

    // Exact test Re(value) == num/den with den in {1, 2}.
    bool is_real_equal(long long num, long long den) const;
    // Exact test Im(value) == num/den (den in {1, 2}); requires 4 | n so
    // that i = omega^{n/4} is in the ring.  Throws otherwise.
    bool is_imag_equal(long long num, long long den) const;

    // Rigorous enclosures.
    IntervalReal real_part(int prec = IntervalReal::kDefaultPrec) const;
    IntervalReal imag_part(int prec = IntervalReal::kDefaultPrec) const;
    IntervalReal abs_squared(int prec = IntervalReal::kDefaultPrec) const;

    // Non-rigorous double evaluation (for rendering / routing heuristics).
    std::complex<double> to_complex() const;

    // Human-readable omega-polynomial, e.g. "1 + w - 2w^6".
    std::string str() const;

private:
    int n_;
    std::vector<long long> c_;

    void check_same_order(const CycloNum& o) const;
};

// Coefficients of the n-th cyclotomic polynomial (degree phi(n)),
// lowest-degree first; memoized.
const std::vector<long long>& cyclotomic_poly(int n);

// Adaptive comparison: evaluates the two intervals at doubling precisions
// (start_prec, 2x, ... up to max_prec) until they separate; undecided if
// they still overlap at max_prec.
template <typename FnA, typename FnB>
Ordering adaptive_compare(FnA make_a, FnB make_b, int start_prec = 128, int max_prec = 1024) {
    for (int p = start_prec; p <= max_prec; p *= 2) {
        Ordering o = compare(make_a(p), make_b(p));
        if (o != Ordering::undecided) return o;
    }
    return Ordering::undecided;
}

}  // namespace ptam
