// Exercises the exact-arithmetic substrate: rationals, 256-bit floats,
// sparse multivariate polynomials, and truncated series with Newton root
// extraction. Oracles here are closed-form (binomial identities, Lagrange
// inversion, Fibonacci) so nothing downstream is trusted yet.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "tamarilab/bigfloat.hpp"
#include "tamarilab/multipoly.hpp"
#include "tamarilab/rational.hpp"
#include "tamarilab/series.hpp"

using namespace tamarilab;

namespace {

// Deterministic little generator; enough to vary the ring-axiom inputs.
std::uint64_t rng_state = 0x9e3779b97f4a7c15ull;
std::uint64_t next_u64() {
    rng_state = rng_state * 6364136223846793005ull + 1442695040888963407ull;
    return rng_state >> 11;
}
int rnd_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

MultiPoly rnd_poly(const VarTable& vt, int terms) {
    MultiPoly p(vt);
    for (int t = 0; t < terms; ++t) {
        MultiPoly mono = MultiPoly::constant(vt, make_rat(rnd_int(-9, 9), rnd_int(1, 5)));
        for (std::size_t i = 0; i < vt.size(); ++i) {
            int lo = vt.laurent(i) ? -3 : 0;
            mono = mono * MultiPoly::variable(vt, vt.name(i), rnd_int(lo, 3));
        }
        p += mono;
    }
    return p;
}

}  // namespace

TEST_CASE("rational helpers") {
    CHECK(binomial(9, 3) == 84);
    CHECK(binomial(33, 7) == BigInt(4272048));
    CHECK(binomial(BigInt(33), 7) == BigInt(4272048));
    CHECK(factorial(10) == 3628800);
    CHECK(make_rat(4, -6) == make_rat(-2, 3));
    CHECK_THROWS_AS(make_rat(1, 0), std::invalid_argument);
    CHECK(pow_rat(make_rat(2, 3), -2) == make_rat(9, 4));
    CHECK(pow_int(BigInt(3), 5) == 243);
    CHECK(is_integer(make_rat(8, 4)));
    CHECK(!is_integer(make_rat(8, 3)));
    CHECK(rat_string(make_rat(-5, 10)) == "-1/2");
    CHECK(parse_rat("-7/9") == make_rat(7, -9));
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
}

TEST_CASE("bigfloat basics") {
    BigFloat half(make_rat(1, 2));
    BigFloat g = half.gamma();
    // Gamma(1/2)^2 = pi.
    CHECK(BigFloat::agree_digits(g * g, BigFloat::pi(), 60));
    CHECK(BigFloat::agree_digits(BigFloat(6).gamma(), BigFloat(120), 60));
    CHECK(BigFloat::agree_digits(BigFloat(2).sqrt() * BigFloat(2).sqrt(), BigFloat(2), 60));

    BigFloat a(1);
    BigFloat b = BigFloat(1) + BigFloat(make_rat(BigInt(1), pow_int(BigInt(10), 31)));
    CHECK(BigFloat::agree_digits(a, b, 30));
    CHECK(!BigFloat::agree_digits(a, b, 32));
    CHECK(BigFloat::agree_digits(BigFloat(0), BigFloat(0), 30));
    CHECK(BigFloat(-3).abs().to_double() == 3.0);
    CHECK(BigFloat(make_rat(1, 3)).str(10).size() > 0);
}

TEST_CASE("polynomial ring axioms") {
    VarTable vt = VarTable::with_laurent({"x", "y", "w"}, {"w"});
    for (int trial = 0; trial < 20; ++trial) {
        MultiPoly a = rnd_poly(vt, 5), b = rnd_poly(vt, 5), c = rnd_poly(vt, 4);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a - a).is_zero());
        MultiPoly scaled = a;
        scaled.scale(make_rat(3, 7));
        CHECK(scaled == MultiPoly::constant(vt, make_rat(3, 7)) * a);
    }
}

TEST_CASE("divided difference and exact division") {
    VarTable vt = VarTable::with_laurent({"x", "y", "w"}, {"w"});
    MultiPoly xm1 = MultiPoly::parse(vt, "x - 1");

    // x^k |-> x + x^2 + ... + x^k, other variables untouched.
    MultiPoly p = MultiPoly::parse(vt, "x^3*y - 2*w^-1*x");
    CHECK(p.divided_difference("x") ==
          MultiPoly::parse(vt, "x*y + x^2*y + x^3*y - 2*w^-1*x"));

    for (int trial = 0; trial < 12; ++trial) {
        MultiPoly q = rnd_poly(vt, 5);
        // Defining identity: (Delta q) * (x - 1) = x * (q - q|_{x=1}).
        CHECK(q.divided_difference("x") * xm1 == (q - q.subst_one("x")).shift_var("x", 1));
        // Synthetic division inverts multiplication by (x - 1).
        CHECK((q * xm1).div_var_minus_one_exact("x") == q);
    }
    MultiPoly not_divisible = rnd_poly(vt, 4) * xm1 + MultiPoly::constant(vt, BigRat(1));
    CHECK_THROWS_AS(not_divisible.div_var_minus_one_exact("x"), std::logic_error);
    CHECK_THROWS_AS(MultiPoly::parse(vt, "w^-1").divided_difference("w"), std::logic_error);
}

TEST_CASE("laurent shifts and inverses") {
    VarTable vt = VarTable::with_laurent({"x", "w"}, {"w"});
    MultiPoly p = MultiPoly::parse(vt, "2*x^2*w - x*w^2");
    CHECK(p.shift_var("w", -3) == MultiPoly::parse(vt, "2*x^2*w^-2 - x*w^-1"));
    CHECK(p.shift_var("x", -1) == MultiPoly::parse(vt, "2*x*w - w^2"));
    CHECK_THROWS_AS(p.shift_var("x", -2), std::logic_error);

    CHECK(*MultiPoly::parse(vt, "-4/3").try_inverse() == MultiPoly::parse(vt, "-3/4"));
    CHECK(*MultiPoly::parse(vt, "2*w^-3").try_inverse() == MultiPoly::parse(vt, "1/2*w^3"));
    CHECK(!MultiPoly::parse(vt, "x").try_inverse().has_value());
    CHECK(!MultiPoly::parse(vt, "1 + w").try_inverse().has_value());
    CHECK(!MultiPoly(vt).try_inverse().has_value());

    CHECK(p.coeff({{"x", 2}, {"w", 1}}) == 2);
    CHECK(p.coeff({{"x", 5}}) == 0);
    CHECK(p.exp_range("w") == std::pair<int, int>(1, 2));
    CHECK(p.subst_rat("x", make_rat(1, 2)) == MultiPoly::parse(vt, "1/2*w - 1/2*w^2"));
    CHECK(p.truncate_var("x", 1) == MultiPoly::parse(vt, "-1*x*w^2"));
    CHECK(p.derivative("x") == MultiPoly::parse(vt, "4*x*w - w^2"));
}

TEST_CASE("parse and print round trip") {
    VarTable vt = VarTable::with_laurent({"x", "y", "w"}, {"w"});
    for (int trial = 0; trial < 15; ++trial) {
        MultiPoly p = rnd_poly(vt, 6);
        CHECK(MultiPoly::parse(vt, p.str()) == p);
    }
    CHECK(MultiPoly::parse(vt, "  - x + 3/2 * y^2*w^-2 ") ==
          MultiPoly::parse(vt, "3/2*w^-2*y^2 - x"));
    CHECK_THROWS_AS(MultiPoly::parse(vt, "x + q"), std::invalid_argument);
    CHECK_THROWS_AS(MultiPoly::parse(vt, "y^-1"), std::invalid_argument);
    CHECK_THROWS_AS(MultiPoly::parse(vt, "1/0"), std::invalid_argument);
}

TEST_CASE("series arithmetic against binomial expansions") {
    RatSeries one_minus_z("z", 40, BigRat(0));
    one_minus_z.set(0, BigRat(1));
    one_minus_z.set(1, BigRat(-1));

    RatSeries geom = one_minus_z.inverse();
    for (int k = 0; k <= 40; ++k) CHECK(geom.at(k) == 1);

    RatSeries cube = geom * geom * geom;  // 1/(1-z)^3
    for (int k = 0; k <= 40; ++k) CHECK(cube.at(k) == BigRat(binomial(k + 2, 2)));
    CHECK((cube * one_minus_z * one_minus_z * one_minus_z - geom * one_minus_z).is_zero());

    // Order bookkeeping: sums and products stop at the weaker operand.
    RatSeries shorter = geom.truncated(7);
    CHECK((geom + shorter).order() == 7);
    CHECK((geom * shorter).order() == 7);
    CHECK(geom.shifted(3).order() == 43);
    CHECK(geom.shifted(3).valuation() == 3);
    CHECK(geom.shifted(3).shifted(-3) == geom);
    CHECK_THROWS_AS(geom.shifted(-1), std::logic_error);

    RatSeries d = cube.derivative();  // 3/(1-z)^4
    for (int k = 0; k <= 39; ++k) CHECK(d.at(k) == BigRat(3 * binomial(k + 3, 3)));
}

TEST_CASE("series compose") {
    // 1/(1 - (z + z^2)) generates Fibonacci numbers.
    RatSeries outer("t", 20, BigRat(0));
    outer.set(0, BigRat(1));
    outer.set(1, BigRat(-1));
    RatSeries inner("z", 20, BigRat(0));
    inner.set(1, BigRat(1));
    inner.set(2, BigRat(1));
    RatSeries fib = outer.compose(inner).inverse();
    BigInt f0 = 1, f1 = 1;
    for (int k = 0; k <= 20; ++k) {
        CHECK(fib.at(k) == BigRat(f0));
        BigInt f2 = f0 + f1;
        f0 = f1;
        f1 = f2;
    }

    // Associativity on random data.
    for (int trial = 0; trial < 6; ++trial) {
        RatSeries f("a", 10, BigRat(0)), g("b", 10, BigRat(0)), h("c", 10, BigRat(0));
        for (int k = 0; k <= 10; ++k) f.set(k, make_rat(rnd_int(-5, 5), rnd_int(1, 4)));
        for (int k = 1; k <= 10; ++k) g.set(k, make_rat(rnd_int(-5, 5), rnd_int(1, 4)));
        for (int k = 1; k <= 10; ++k) h.set(k, make_rat(rnd_int(-5, 5), rnd_int(1, 4)));
        g.set(1, BigRat(1));
        h.set(1, BigRat(1));
        CHECK(f.compose(g).compose(h) == f.compose(g.compose(h)));
    }

    RatSeries bad("z", 5, BigRat(0));
    bad.set(0, BigRat(2));
    CHECK_THROWS_AS(outer.compose(bad), std::logic_error);
}

TEST_CASE("newton root reverts t = z*(1-z)^3") {
    VarTable vt({"Z", "T"});
    MultiPoly phi = MultiPoly::parse(vt, "Z - 3*Z^2 + 3*Z^3 - Z^4 - T");
    PolySeries germ("T", 60, MultiPoly(vt));
    germ.set(1, MultiPoly::constant(vt, BigRat(1)));

    RatSeries z_of_t = demote_series(series_newton_root(phi, "Z", germ));
    CHECK(z_of_t.at(0) == 0);
    // Lagrange inversion: [t^n] z = C(4n-2, n-1) / n.
    for (int n = 1; n <= 60; ++n)
        CHECK(z_of_t.at(n) == make_rat(binomial(4ul * n - 2, static_cast<unsigned long>(n - 1)), BigInt(n)));
}

TEST_CASE("newton root rejects bad germs") {
    VarTable vt({"Z", "T"});
    MultiPoly phi = MultiPoly::parse(vt, "Z - 3*Z^2 + 3*Z^3 - Z^4 - T");
    PolySeries wrong("T", 10, MultiPoly(vt));
    wrong.set(1, MultiPoly::constant(vt, BigRat(2)));
    CHECK_THROWS_AS(series_newton_root(phi, "Z", wrong), std::logic_error);

    MultiPoly dbl = MultiPoly::parse(vt, "Z^2 - 2*Z*T + T^2");
    PolySeries germ("T", 10, MultiPoly(vt));
    germ.set(1, MultiPoly::constant(vt, BigRat(1)));
    CHECK_THROWS_AS(series_newton_root(dbl, "Z", germ), std::logic_error);

    MultiPoly no_root = MultiPoly::parse(vt, "T - T^2");
    CHECK_THROWS_AS(series_newton_root(no_root, "Z", germ), std::logic_error);
}

TEST_CASE("poly series bridge") {
    VarTable vt = VarTable::with_laurent({"z", "w"}, {"w"});
    MultiPoly p = MultiPoly::parse(vt, "1 + z*w + 3*z^2 - z^2*w^-1 + z^9");
    PolySeries s = poly_as_series(p, "z", 5);
    CHECK(s.at(0) == MultiPoly::parse(vt, "1"));
    CHECK(s.at(1) == MultiPoly::parse(vt, "w"));
    CHECK(s.at(2) == MultiPoly::parse(vt, "3 - w^-1"));
    CHECK(s.at(3).is_zero());

    RatSeries plain("z", 4, BigRat(0));
    plain.set(2, make_rat(5, 3));
    CHECK(demote_series(lift_series(plain, vt)) == plain);
    CHECK_THROWS_AS(demote_series(s), std::logic_error);
}
