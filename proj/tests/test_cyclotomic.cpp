// test_cyclotomic.cpp — exact ring arithmetic and interval enclosures.

#include "doctest.h"
#include "ptam/cyclotomic.hpp"

#include <cmath>

using namespace ptam;

namespace {

CycloNum poly(int n, std::initializer_list<std::pair<long long, long long>> terms) {
    CycloNum a(n);
    for (auto [coeff, power] : terms)
        a = a + CycloNum::root_power(n, power).scaled(coeff);
    return a;
}

bool abs_less(const CycloNum& a, double bound, int prec = 256) {
    return compare(a.abs_squared(prec),
                   IntervalReal::from_double(bound * bound, prec)) == Ordering::less;
}

bool abs_greater(const CycloNum& a, double bound, int prec = 256) {
    return compare(a.abs_squared(prec),
                   IntervalReal::from_double(bound * bound, prec)) == Ordering::greater;
}

}  // namespace

TEST_CASE("cyclotomic polynomials match known small cases") {
    CHECK(cyclotomic_poly(1) == std::vector<long long>{-1, 1});
    CHECK(cyclotomic_poly(2) == std::vector<long long>{1, 1});
    CHECK(cyclotomic_poly(4) == std::vector<long long>{1, 0, 1});
    CHECK(cyclotomic_poly(6) == std::vector<long long>{1, -1, 1});
    CHECK(cyclotomic_poly(7) == std::vector<long long>{1, 1, 1, 1, 1, 1, 1});
    CHECK(cyclotomic_poly(12) == std::vector<long long>{1, 0, -1, 0, 1});
}

TEST_CASE("ring basics: roots of unity relations") {
    for (int n : {3, 4, 5, 6, 7, 8, 12, 14, 50}) {
        // 1 + w + ... + w^{n-1} == 0
        CycloNum s(n);
        for (int j = 0; j < n; ++j) s = s + CycloNum::root_power(n, j);
        CHECK(s.is_zero());
        // w^k * w^{n-k} == 1
        CycloNum p = CycloNum::root_power(n, 2) * CycloNum::root_power(n, n - 2);
        CHECK((p - CycloNum::integer(n, 1)).is_zero());
        // conj is an involution
        CycloNum a = poly(n, {{3, 1}, {-2, 2}, {1, 0}});
        CHECK((a.conj().conj() - a).is_zero());
    }
    // even-order half rotation: w^{n/2} == -1
    for (int n : {4, 8, 14}) {
        CycloNum h = CycloNum::root_power(n, n / 2) + CycloNum::integer(n, 1);
        CHECK(h.is_zero());
    }
    CHECK_THROWS(CycloNum(2));
}

TEST_CASE("interval enclosures are tight and rigorous") {
    // Re(w_12) == cos(pi/6) == sqrt(3)/2
    CycloNum w = CycloNum::root_power(12, 1);
    IntervalReal re = w.real_part(128);
    CHECK(re.width() < 1e-30);
    CHECK(re.lo_double() <= std::sqrt(3.0) / 2.0);
    CHECK(re.hi_double() >= std::sqrt(3.0) / 2.0 - 1e-15);
    // |1 + w_8|^2 == 2 + sqrt(2)
    CycloNum a = CycloNum::integer(8, 1) + CycloNum::root_power(8, 1);
    double expect = 2.0 + std::sqrt(2.0);
    CHECK(a.abs_squared(128).midpoint() == doctest::Approx(expect).epsilon(1e-14));
    // compare separates clearly distinct values and not exact ties
    CHECK(compare(a.abs_squared(), IntervalReal::from_int(3)) == Ordering::greater);
    CHECK(compare(a.abs_squared(), IntervalReal::from_int(4)) == Ordering::less);
    CycloNum one = CycloNum::integer(8, 1);
    CHECK(compare(one.real_part(), IntervalReal::from_int(1)) == Ordering::undecided);
}

TEST_CASE("heptagon: closed loop sums to zero") {
    CycloNum loop = poly(7, {{1, 6}, {-1, 3}, {1, 5}, {-1, 0}, {1, 4},
                             {-1, 6}, {1, 3}, {-1, 5}, {1, 0}, {-1, 4}});
    CHECK(loop.is_zero());
}

TEST_CASE("heptagon: path sum simplification and exact real part") {
    // Unsimplified step sum of the c1 path.
    CycloNum raw = poly(7, {{1, 6}, {-1, 3}, {1, 1}, {-1, 4}, {1, 0}, {-1, 4},
                            {1, 1}, {-1, 3}, {1, 0}, {-1, 2}, {1, 5}, {-1, 2},
                            {1, 4}, {-1, 6}, {1, 4}, {-1, 6}, {1, 4}, {-1, 1},
                            {1, 4}, {-1, 0}, {1, 3}, {-1, 6}, {1, 2}});
    CycloNum c1 = poly(7, {{1, 0}, {1, 1}, {-1, 2}, {-1, 3}, {2, 4}, {1, 5}, {-2, 6}});
    CHECK((raw - c1).is_zero());
    // Re(w^2 c1) == 1 exactly.
    CHECK(c1.mul_by_root(2).is_real_equal(1, 1));
    // |c2| > 1.11 where c2 = c1 - w^6.
    CycloNum c2 = c1 - CycloNum::root_power(7, 6);
    CHECK(abs_greater(c2, 1.11));
    // overlap witness |b| < 1
    CycloNum b = poly(7, {{1, 1}, {-1, 2}, {-1, 3}, {2, 4}, {-1, 6}});
    CHECK(abs_less(b, 1.0));
}

TEST_CASE("heptagon: exact algebraic identity Re(c1') = 1/2 + 1/(2 cos(pi/7))") {
    // In Z[w_14]: (2 Re(c1') - 1)(z + z^13) - 2 == 0 with z = w_14.
    CycloNum c1p = poly(7, {{1, 0}, {-1, 4}, {1, 5}, {-1, 6}});
    CycloNum t = (c1p + c1p.conj() - CycloNum::integer(7, 1)).lift(14);
    CycloNum z = CycloNum::root_power(14, 1) + CycloNum::root_power(14, 13);
    CHECK((t * z - CycloNum::integer(14, 2)).is_zero());
}

TEST_CASE("octagon: exact axis values and strict inequalities") {
    CycloNum c1 = poly(8, {{8, 2}, {2, 3}, {8, 4}, {1, 5}, {13, 7}});
    CHECK(c1.mul_by_root(1).is_imag_equal(-1, 1));
    CycloNum b1 = poly(8, {{1, 0}, {1, 1}, {7, 2}, {3, 3}, {2, 4}, {8, 6}, {2, 7}});
    CHECK(b1.is_real_equal(-1, 1));
    // Re(w c2) < -1 with c2 = c1 + w^2.
    CycloNum wc2 = (c1 + CycloNum::root_power(8, 2)).mul_by_root(1);
    CHECK(compare(wc2.real_part(256), IntervalReal::from_int(-1)) == Ordering::less);
    CycloNum b = poly(8, {{2, 0}, {1, 1}, {7, 2}, {3, 3}, {10, 4}, {1, 5}, {13, 7}});
    CHECK(abs_less(b, 1.0));
}

TEST_CASE("nonagon: exact identities and overlap witness") {
    // Re(w^{-1} c1) == -1/2 - 1/(2 cos(pi/9)) via Z[w_18].
    CycloNum c1 = poly(9, {{-1, 0}, {1, 8}, {1, 6}, {-1, 7}});
    CycloNum a = c1.mul_by_root(-1);
    CycloNum t = (a + a.conj() + CycloNum::integer(9, 1)).lift(18);
    CycloNum z = CycloNum::root_power(18, 1) + CycloNum::root_power(18, 17);
    CHECK((t * z + CycloNum::integer(18, 2)).is_zero());
    // Re(b2) == -1 exactly.
    CycloNum b2 = poly(9, {{-1, 3}, {1, 6}, {-1, 0}, {1, 2}, {-1, 7}});
    CHECK(b2.is_real_equal(-1, 1));
    CycloNum b = poly(9, {{-1, 0}, {1, 2}, {-1, 3}, {2, 6}, {-2, 7}, {1, 8}});
    CHECK(abs_less(b, 1.0));
}

TEST_CASE("decagon: blocking distances") {
    // top: |-1 - (w^4 + w^6)| < 0.62
    CycloNum t = poly(10, {{-1, 0}, {-1, 4}, {-1, 6}});
    CHECK(abs_less(t, 0.62));
    // bottom: |-2 + w^2 + w^9|^2 < 0.91
    CycloNum bcase = poly(10, {{-2, 0}, {1, 2}, {1, 9}});
    CHECK(compare(bcase.abs_squared(256), IntervalReal::from_double(0.91)) ==
          Ordering::less);
}

TEST_CASE("hendecagon: blocking and clearance") {
    CycloNum top = poly(11, {{1, 0}, {-1, 10}, {1, 6}});
    CHECK(compare(top.abs_squared(256), IntervalReal::from_double(0.71)) ==
          Ordering::less);
    // bottom clearance: |-1 + w^2| exceeds the tile diameter 1/cos(pi/11)
    CycloNum bot = poly(11, {{-1, 0}, {1, 2}});
    IntervalReal sec = IntervalReal::from_int(1, 256) / cos_pi_frac(1, 11, 256);
    CHECK(compare(bot.abs_squared(256), sec * sec) == Ordering::greater);
}

TEST_CASE("dodecagon: exact unit abutment and blocking") {
    // w^2 c2 == -1 exactly with c2 = -1 + w^2.
    CycloNum c2 = poly(12, {{-1, 0}, {1, 2}});
    CHECK((c2.mul_by_root(2) + CycloNum::integer(12, 1)).is_zero());
    CycloNum top = poly(12, {{1, 0}, {1, 5}, {1, 7}});
    CHECK(compare(top.abs_squared(256), IntervalReal::from_double(0.54)) ==
          Ordering::less);
}

TEST_CASE("tridecagon: landmark inequalities (incl. the 6e-5 margin)") {
    CycloNum c1 = poly(13, {{-2, 12}, {2, 11}, {-1, 9}, {1, 6}, {-1, 1}, {1, 0}});
    CHECK(abs_greater(c1, 1.13));
    CycloNum c2 = c1 - CycloNum::root_power(13, 9);
    CHECK(abs_greater(c2, 1.21));
    CycloNum a = poly(13, {{-1, 0}, {2, 1}, {-2, 2}, {1, 3}, {1, 5}, {-2, 6},
                           {2, 10}, {-2, 11}, {1, 12}});
    CHECK(abs_less(a, 1.0));  // |a| = 0.99994...
}

TEST_CASE("tetradecagon: exact collapse c2 == -1 and inequalities") {
    CycloNum c1 = poly(14, {{3, 12}, {1, 10}, {1, 8}, {1, 6}, {2, 5}, {1, 2}});
    CHECK(abs_greater(c1, 1.2));
    CycloNum c2 = c1 + CycloNum::root_power(14, 4);
    CHECK((c2 + CycloNum::integer(14, 1)).is_zero());
    CHECK(c2.is_real_equal(-1, 1));
    CycloNum a = poly(14, {{-1, 0}, {3, 1}, {1, 3}, {1, 5}, {1, 8}, {2, 9}, {2, 13}});
    CHECK(abs_less(a, 1.0));
}

TEST_CASE("adaptive compare reports undecided for exact ties") {
    CycloNum c2 = poly(12, {{-1, 0}, {1, 2}});  // |c2| == 1 exactly
    Ordering o = adaptive_compare(
        [&](int p) { return c2.abs_squared(p); },
        [&](int p) { return IntervalReal::from_int(1, p); });
    CHECK(o == Ordering::undecided);
}

TEST_CASE("pretty printer emits omega polynomials") {
    CycloNum c1 = poly(7, {{1, 0}, {1, 1}, {-1, 2}, {-1, 3}, {2, 4}, {1, 5}, {-2, 6}});
    CHECK(c1.str() == "1 + w - w^2 - w^3 + 2w^4 + w^5 - 2w^6");
    CHECK(CycloNum(7).str() == "0");
    CHECK((-CycloNum::root_power(5, 2)).str() == "-w^2");
}

TEST_CASE("lift preserves value") {
    CycloNum a = poly(7, {{1, 1}, {-2, 3}});
    CycloNum b = a.lift(14);
    CHECK(b.real_part().midpoint() == doctest::Approx(a.real_part().midpoint()));
    CHECK(b.imag_part().midpoint() == doctest::Approx(a.imag_part().midpoint()));
}
