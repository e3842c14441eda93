// cyclotomic.cpp — exact arithmetic in Z[omega_n].

#include "ptam/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ptam {

namespace {

// Exact division of integer polynomials (a / b, b monic-leading, division
// known to be exact).  Coefficients lowest-first.
std::vector<long long> poly_div_exact(std::vector<long long> a,
                                      const std::vector<long long>& b) {
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(a.size()) - 1;
    if (da < db) throw std::logic_error("poly_div_exact: degree underflow");
    std::vector<long long> q(da - db + 1, 0);
    for (int i = da; i >= db; --i) {
        long long lead = a[i];
        if (lead == 0) continue;
        if (b[db] == 0 || lead % b[db] != 0)
            throw std::logic_error("poly_div_exact: inexact division");
        long long f = lead / b[db];
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) a[i - db + j] -= f * b[j];
    }
    for (int i = 0; i < db; ++i)
        if (a[i] != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    return q;
}

std::vector<long long> compute_cyclotomic(int n);

std::map<int, std::vector<long long>> g_phi_cache;
std::mutex g_phi_mutex;

std::vector<long long> compute_cyclotomic(int n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<long long> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = poly_div_exact(num, cyclotomic_poly(d));
    }
    return num;
}

}  // namespace

const std::vector<long long>& cyclotomic_poly(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be >= 1");
    {
        std::lock_guard<std::mutex> lock(g_phi_mutex);
        auto it = g_phi_cache.find(n);
        if (it != g_phi_cache.end()) return it->second;
    }
    if (n == 1) {
        std::lock_guard<std::mutex> lock(g_phi_mutex);
        return g_phi_cache.emplace(1, std::vector<long long>{-1, 1}).first->second;
    }
    std::vector<long long> phi = compute_cyclotomic(n);
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    return g_phi_cache.emplace(n, std::move(phi)).first->second;
}

CycloNum::CycloNum(int n) : n_(n), c_(static_cast<size_t>(n), 0) {
    if (n < 3) throw std::invalid_argument("CycloNum: order must be >= 3");
}

CycloNum::CycloNum(int n, std::vector<long long> coeffs) : n_(n), c_(std::move(coeffs)) {
    if (n < 3) throw std::invalid_argument("CycloNum: order must be >= 3");
    if (c_.size() != static_cast<size_t>(n))
        throw std::invalid_argument("CycloNum: coefficient vector must have length n");
}

CycloNum CycloNum::root_power(int n, long long j) {
    CycloNum r(n);
    long long m = ((j % n) + n) % n;
    r.c_[static_cast<size_t>(m)] = 1;
    return r;
}

CycloNum CycloNum::integer(int n, long long v) {
    CycloNum r(n);
    r.c_[0] = v;
    return r;
}

void CycloNum::check_same_order(const CycloNum& o) const {
    if (n_ != o.n_) throw std::invalid_argument("CycloNum: mixed root orders");
}

CycloNum CycloNum::operator+(const CycloNum& o) const {
    check_same_order(o);
    CycloNum r(n_);
    for (int j = 0; j < n_; ++j) r.c_[j] = c_[j] + o.c_[j];
    return r;
}

CycloNum CycloNum::operator-(const CycloNum& o) const {
    check_same_order(o);
    CycloNum r(n_);
    for (int j = 0; j < n_; ++j) r.c_[j] = c_[j] - o.c_[j];
    return r;
}

CycloNum CycloNum::operator-() const {
    CycloNum r(n_);
    for (int j = 0; j < n_; ++j) r.c_[j] = -c_[j];
    return r;
}

CycloNum CycloNum::operator*(const CycloNum& o) const {
    check_same_order(o);
    CycloNum r(n_);
    for (int i = 0; i < n_; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (o.c_[j] == 0) continue;
            r.c_[(i + j) % n_] += c_[i] * o.c_[j];
        }
    }
    return r;
}

CycloNum CycloNum::scaled(long long k) const {
    CycloNum r(n_);
    for (int j = 0; j < n_; ++j) r.c_[j] = c_[j] * k;
    return r;
}

CycloNum CycloNum::mul_by_root(long long m) const {
    CycloNum r(n_);
    long long s = ((m % n_) + n_) % n_;
    for (int j = 0; j < n_; ++j) r.c_[(j + s) % n_] = c_[j];
    return r;
}

CycloNum CycloNum::conj() const {
    CycloNum r(n_);
    r.c_[0] = c_[0];
    for (int j = 1; j < n_; ++j) r.c_[n_ - j] = c_[j];
    return r;
}

CycloNum CycloNum::lift(int m) const {
    if (m % n_ != 0) throw std::invalid_argument("CycloNum::lift: order must be a multiple");
    int k = m / n_;
    CycloNum r(m);
    for (int j = 0; j < n_; ++j) r.c_[static_cast<size_t>(j) * k] = c_[j];
    return r;
}

std::vector<long long> CycloNum::reduced_coeffs() const {
    // Remainder of the coefficient polynomial modulo Phi_n: the unique
    // degree < phi(n) representative, suitable for equality keys.
    const std::vector<long long>& phi = cyclotomic_poly(n_);
    int dp = static_cast<int>(phi.size()) - 1;  // = phi(n), Phi_n is monic
    std::vector<long long> rem = c_;
    for (int i = n_ - 1; i >= dp; --i) {
        long long f = rem[i];
        if (f == 0) continue;
        for (int j = 0; j <= dp; ++j) rem[i - dp + j] -= f * phi[j];
    }
    rem.resize(static_cast<size_t>(dp));
    return rem;
}

bool CycloNum::is_zero() const {
    for (long long v : reduced_coeffs())
        if (v != 0) return false;
    return true;
}

bool CycloNum::operator==(const CycloNum& o) const {
    return (*this - o).is_zero();
}

bool CycloNum::is_real_equal(long long num, long long den) const {
    if (den != 1 && den != 2)
        throw std::invalid_argument("is_real_equal: denominator must be 1 or 2");
    // Re(a) == q  <=>  a + conj(a) - 2q == 0; 2q is an integer for den <= 2.
    long long two_q = (den == 1) ? 2 * num : num;
    CycloNum t = *this + conj();
    t.c_[0] -= two_q;
    return t.is_zero();
}

bool CycloNum::is_imag_equal(long long num, long long den) const {
    if (den != 1 && den != 2)
        throw std::invalid_argument("is_imag_equal: denominator must be 1 or 2");
    if (n_ % 4 != 0)
        throw std::invalid_argument("is_imag_equal: requires 4 | n (i must be in the ring)");
    // Im(a) == q  <=>  a - conj(a) - 2q*i == 0, with i = omega^{n/4}.
    long long two_q = (den == 1) ? 2 * num : num;
    CycloNum t = *this - conj();
    t.c_[static_cast<size_t>(n_) / 4] -= two_q;
    return t.is_zero();
}

IntervalReal CycloNum::real_part(int prec) const {
    IntervalReal sum = IntervalReal::from_int(0, prec);
    for (int j = 0; j < n_; ++j) {
        if (c_[j] == 0) continue;
        sum = sum + cos_pi_frac(2LL * j, n_, prec).scaled(c_[j]);
    }
    return sum;
}

IntervalReal CycloNum::imag_part(int prec) const {
    IntervalReal sum = IntervalReal::from_int(0, prec);
    for (int j = 0; j < n_; ++j) {
        if (c_[j] == 0) continue;
        sum = sum + sin_pi_frac(2LL * j, n_, prec).scaled(c_[j]);
    }
    return sum;
}

IntervalReal CycloNum::abs_squared(int prec) const {
    // a * conj(a) is exact in the ring and real-valued; enclose its
    // real part (the imaginary part is identically zero).
    CycloNum m = *this * conj();
    return m.real_part(prec);
}

std::complex<double> CycloNum::to_complex() const {
    std::complex<double> s(0.0, 0.0);
    const double two_pi = 6.283185307179586476925286766559;
    for (int j = 0; j < n_; ++j) {
        if (c_[j] == 0) continue;
        double ang = two_pi * j / n_;
        s += static_cast<double>(c_[j]) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

std::string CycloNum::str() const {
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < n_; ++j) {
        long long v = c_[j];
        if (v == 0) continue;
        if (first) {
            if (v < 0) os << "-";
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        long long a = v < 0 ? -v : v;
        if (a != 1 || j == 0) os << a;
        if (j == 1) os << "w";
        else if (j > 1) os << "w^" << j;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace ptam
