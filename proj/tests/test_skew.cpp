#include <doctest.h>

#include <map>

#include <mnseries/crossed_product.hpp>
#include <mnseries/error.hpp>
#include <mnseries/io.hpp>
#include <mnseries/mn_series.hpp>
#include <mnseries/skew.hpp>

#include "support.hpp"

using namespace mns;

namespace
{

const Field qt = Field::ratfunc();

Scalar c(long n)
{
    return Scalar(RatFunc(Rational(n)));
}

Scalar t()
{
    return Scalar(RatFunc::t());
}

SkewRing weyl()
{
    return weyl_ring();
}

SkewRing shift_ring()
{
    return SkewRing::make(qt, EndoSpec::shift(), DerivSpec::zero());
}

SkewRing plain_ring()
{
    return SkewRing::make(qt, EndoSpec::identity(), DerivSpec::zero());
}

SkewLaurent y(const SkewRing &r, long i = 1)
{
    return SkewLaurent::monomial(r, c(1), i);
}

// Right action of K[x; sigma, delta] on K: f.a = f a, f.x = delta(f) when
// delta != 0 and sigma(f) otherwise. (f.p).q = f.(p q).
Scalar act(const SkewPoly &p, const Scalar &f)
{
    const SkewRing &r = p.ring();
    Scalar out = Scalar::zero(r.field), cur = f;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        out += cur * p.coeffs()[i];
        cur = r.delta.is_zero() ? r.sigma.apply(cur) : r.delta.apply(cur);
    }
    return out;
}

std::vector<Scalar> test_functions()
{
    std::vector<Scalar> out;
    Scalar p = c(1);
    for (int k = 0; k <= 6; ++k) {
        out.push_back(p);
        p = p * t();
    }
    out.push_back((t() + c(1)).inverse());
    out.push_back(t() * t() - c(3) * t() + c(2));
    return out;
}

// Dense convolution over sigma = id, delta = 0.
std::map<long, Scalar> convolve(const SkewLaurent &a, const SkewLaurent &b)
{
    std::map<long, Scalar> out;
    for (const auto &[i, x] : a.terms())
        for (const auto &[j, z] : b.terms()) {
            auto [it, fresh] = out.try_emplace(i + j, x * z);
            if (!fresh) it->second += x * z;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

bool agree_with_one_below(const SkewLaurent &p, long target)
{
    const SkewLaurent one = SkewLaurent::constant(p.ring(), c(1));
    if (p.cutoff() && *p.cutoff() < target) return false;
    return p.truncated(target) == one.truncated(target);
}

} // namespace

TEST_CASE("skew polynomial examples")
{
    const SkewPoly x = SkewPoly::x(weyl());
    const SkewPoly tt = SkewPoly::constant(weyl(), t());
    // t x = x t + 1
    CHECK(tt * x == SkewPoly(weyl(), {c(1), t()}));
    CHECK(x * tt == SkewPoly(weyl(), {Scalar::zero(qt), t()}));

    const SkewPoly xs = SkewPoly::x(shift_ring());
    const SkewPoly ts = SkewPoly::constant(shift_ring(), t());
    // t x = x (t + 1)
    CHECK(ts * xs == SkewPoly(shift_ring(), {Scalar::zero(qt), t() + c(1)}));
    CHECK((xs * xs).degree() == 2);
    CHECK(SkewPoly(weyl(), {}).degree() == -1);
    CHECK(SkewPoly(weyl(), {Scalar::zero(qt), Scalar::zero(qt)}).is_zero());
    CHECK(SkewPoly(weyl(), {Scalar::zero(qt), c(2), c(1)}).order() == 1);
    CHECK((tt * x).to_string() == "x*t + 1");
    CHECK_THROWS_AS(x * xs, Error);
}

TEST_CASE("skew polynomial products agree with the operator action")
{
    std::mt19937_64 rng(5);
    for (const SkewRing &r : testing::shipped_rings()) {
        CAPTURE(r.to_string());
        for (int n = 0; n < 40; ++n) {
            const SkewPoly p = testing::random_poly(r, rng), q = testing::random_poly(r, rng);
            const SkewPoly pq = p * q;
            for (const Scalar &f : test_functions()) CHECK(act(pq, f) == act(q, act(p, f)));
        }
    }
}

TEST_CASE("skew polynomial ring laws")
{
    std::mt19937_64 rng(9);
    for (const SkewRing &r : testing::shipped_rings()) {
        CAPTURE(r.to_string());
        for (int n = 0; n < 40; ++n) {
            const SkewPoly a = testing::random_poly(r, rng), b = testing::random_poly(r, rng), d = testing::random_poly(r, rng);
            CHECK((a * b) * d == a * (b * d));
            CHECK(a * (b + d) == a * b + a * d);
            CHECK((a + b) * d == a * d + b * d);
            CHECK(a - a == SkewPoly(r, {}));
            CHECK(a * SkewPoly::constant(r, c(1)) == a);
            if (!a.is_zero() && !b.is_zero()) {
                CHECK((a * b).degree() == a.degree() + b.degree());
                if (r.delta.is_zero()) CHECK((a * b).order() == a.order() + b.order());
            }
        }
    }
}

TEST_CASE("moving y past coefficients")
{
    // y t = t y + y^2 in the Weyl ring; the expansion stops.
    const SkewLaurent yt = commute_y_past(weyl(), t(), 5);
    CHECK(yt == SkewLaurent(weyl(), {{1, t()}, {2, c(1)}}));
    CHECK(commute_y_past(weyl(), t() * t(), 5) == SkewLaurent(weyl(), {{1, t() * t()}, {2, c(2) * t()}, {3, c(2)}}));
    CHECK(commute_y_past(shift_ring(), t(), 3) == SkewLaurent(shift_ring(), {{1, t() + c(1)}}));

    // 1/t has infinitely many derivatives.
    const SkewLaurent yinv_t = commute_y_past(weyl(), t().inverse(), 3);
    CHECK(yinv_t.cutoff() == IndexBound(4));
    CHECK(yinv_t.coeff(2) == -(t() * t()).inverse());

    // y^-1 t = t y^-1 - 1
    const SkewLaurent back = commute_yinv_past(weyl(), t(), 4);
    CHECK(back.truncated(4) == SkewLaurent(weyl(), {{-1, t()}, {0, c(-1)}}, 4));
    CHECK(commute_yinv_past(shift_ring(), t(), 2) == SkewLaurent(shift_ring(), {{-1, t() - c(1)}}, 2));
    CHECK_THROWS_AS(commute_yinv_past(weyl(), t(), -1), Error);
}

TEST_CASE("y and y^-1 expansions invert each other")
{
    std::mt19937_64 rng(3);
    for (const SkewRing &r : testing::shipped_rings()) {
        CAPTURE(r.to_string());
        for (int n = 0; n < 30; ++n) {
            const Scalar a = testing::random_scalar(r.field, rng);
            const long len = testing::uniform(rng, 1, 6);
            const SkewLaurent a_const = SkewLaurent::constant(r, a);
            CHECK(agree_below_common_cutoff(laurent_mul(y(r), commute_yinv_past(r, a, len)), a_const.truncated(len)));
            CHECK(agree_below_common_cutoff(laurent_mul(y(r, -1), commute_y_past(r, a, len)), a_const.truncated(len)));
            CHECK(agree_below_common_cutoff(laurent_mul(y(r), a_const, len + 1), commute_y_past(r, a, len)));
        }
    }
}

TEST_CASE("laurent products agree with convolution in the commutative case")
{
    std::mt19937_64 rng(21);
    const SkewRing r = plain_ring();
    for (int n = 0; n < 300; ++n) {
        const SkewLaurent a = testing::random_laurent(r, rng, -3, 3, false), b = testing::random_laurent(r, rng, -3, 3, false);
        const SkewLaurent p = a * b;
        CHECK(p.is_exact());
        const auto dense = convolve(a, b);
        CHECK(p.terms() == std::vector<std::pair<long, Scalar>>(dense.begin(), dense.end()));
    }
}

TEST_CASE("laurent ring laws")
{
    std::mt19937_64 rng(33);
    for (const SkewRing &r : testing::shipped_rings()) {
        CAPTURE(r.to_string());
        for (int n = 0; n < 40; ++n) {
            const SkewLaurent a = testing::random_laurent(r, rng), b = testing::random_laurent(r, rng), d = testing::random_laurent(r, rng);
            CHECK(agree_below_common_cutoff((a * b) * d, a * (b * d)));
            CHECK(agree_below_common_cutoff(a * (b + d), a * b + a * d));
            CHECK(agree_below_common_cutoff((a + b) * d, a * d + b * d));
            CHECK(agree_below_common_cutoff(a + b, b + a));
        }
    }
}

TEST_CASE("laurent products respect the formal cutoff")
{
    const SkewRing r = weyl();
    const SkewLaurent f(r, {{-1, t()}, {1, c(1)}}, 3);
    const SkewLaurent g(r, {{0, c(2)}}, 2);
    // min(-1 + 2, 3 + 0)
    CHECK((f * g).cutoff() == IndexBound(1));
    const SkewLaurent e = SkewLaurent::constant(r, t().inverse());
    CHECK((y(r) * e).cutoff() == IndexBound(1 + r.precision));
    CHECK(laurent_mul(y(r), e, 4).cutoff() == IndexBound(4));
    CHECK((SkewLaurent::zero(r, 5) * g).cutoff() == IndexBound(5));
}

TEST_CASE("laurent valuation is additive")
{
    std::mt19937_64 rng(8);
    for (const SkewRing &r : testing::shipped_rings()) {
        for (int n = 0; n < 50; ++n) {
            const SkewLaurent a = testing::random_nonzero_laurent(r, rng, -3, 3, false), b = testing::random_nonzero_laurent(r, rng, -3, 3, false);
            const auto wa = laurent_omega(a), wb = laurent_omega(b), wp = laurent_omega(a * b);
            REQUIRE(wp);
            CHECK(*wp == *wa + *wb);
        }
    }
    CHECK_FALSE(laurent_omega(SkewLaurent::zero(weyl(), 4)));
}

TEST_CASE("laurent inversion examples")
{
    const SkewRing r = weyl();
    const SkewLaurent one = SkewLaurent::constant(r, c(1));
    const SkewLaurent geo = laurent_invert(one - y(r), 4);
    CHECK(geo == SkewLaurent(r, {{0, c(1)}, {1, c(1)}, {2, c(1)}, {3, c(1)}}, 4));

    const SkewLaurent yinv = laurent_invert(y(r), 10);
    CHECK(yinv.is_exact());
    CHECK(yinv * y(r) == one);

    const SkewLaurent u = laurent_invert(SkewLaurent::constant(r, t()) - y(r), 5);
    CHECK(u.coeff(0) == t().inverse());
    CHECK(u.coeff(1) == (t() * t()).inverse());
    CHECK(agree_with_one_below((SkewLaurent::constant(r, t()) - y(r)) * u, 5));

    try {
        laurent_invert(SkewLaurent::zero(r, 3), 5);
        FAIL("zero inverted");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::NoLeadingTerm);
    }
    try {
        laurent_invert(SkewLaurent(r, {{0, c(1)}, {1, c(1)}}, 2), 5);
        FAIL("precision ignored");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::InsufficientPrecision);
    }
}

TEST_CASE("laurent inverses round-trip below the target")
{
    std::mt19937_64 rng(44);
    for (const SkewRing &r : testing::shipped_rings()) {
        CAPTURE(r.to_string());
        int inverted = 0;
        for (int n = 0; n < 60; ++n) {
            const SkewLaurent f = testing::random_nonzero_laurent(r, rng, -2, 3, false);
            const long target = testing::uniform(rng, -1, 5);
            const SkewLaurent u = laurent_invert(f, target);
            CHECK(agree_with_one_below(laurent_mul(f, u), target));
            CHECK(agree_with_one_below(laurent_mul(u, f), target));
            ++inverted;
        }
        CHECK(inverted == 60);
    }
}

TEST_CASE("polynomials embed homomorphically")
{
    std::mt19937_64 rng(13);
    for (const SkewRing &r : testing::shipped_rings()) {
        CAPTURE(r.to_string());
        for (int n = 0; n < 40; ++n) {
            const SkewPoly p = testing::random_poly(r, rng), q = testing::random_poly(r, rng);
            CHECK(agree_below_common_cutoff(embed_poly(p * q), embed_poly(p) * embed_poly(q)));
            CHECK(embed_poly(p + q) == embed_poly(p) + embed_poly(q));
            if (!p.is_zero()) CHECK(laurent_omega(embed_poly(p)) == std::optional<long>(-p.degree()));
        }
    }
    CHECK(embed_poly(SkewPoly::x(weyl())) == y(weyl(), -1));
}

TEST_CASE("x-series agree with the twisted crossed product over Z")
{
    std::mt19937_64 rng(17);
    for (const EndoSpec &sigma : {EndoSpec::shift(), EndoSpec::q_dilation(Rational(2))}) {
        const SkewRing r = SkewRing::make(qt, sigma, DerivSpec::zero());
        const SpecPtr spec = twisted_spec(Group::lex(1), qt, sigma);
        auto to_mn = [&](const XSeries &s) {
            std::vector<Term> ts;
            for (const auto &[i, a] : s.terms()) ts.push_back({GroupElement(Group::lex(1), {Integer(i)}), a});
            return MNSeries(spec, ts);
        };
        for (int n = 0; n < 200; ++n) {
            std::vector<std::pair<long, Scalar>> ta, tb;
            for (int k = 0; k < 3; ++k) {
                ta.emplace_back(testing::uniform(rng, -2, 3), testing::random_scalar(qt, rng));
                tb.emplace_back(testing::uniform(rng, -2, 3), testing::random_scalar(qt, rng));
            }
            const XSeries a(r, ta), b(r, tb);
            CHECK(to_mn(a * b) == to_mn(a) * to_mn(b));
        }
    }
}

TEST_CASE("x-series inversion and the zeta valuation")
{
    std::mt19937_64 rng(29);
    const SkewRing r = shift_ring();
    const XSeries x = XSeries::monomial(r, 1, c(1));
    const XSeries one = XSeries::monomial(r, 0, c(1));
    CHECK(x * XSeries::monomial(r, 0, t()) == XSeries::monomial(r, 1, t()));
    CHECK(XSeries::monomial(r, 0, t()) * x == XSeries::monomial(r, 1, t() + c(1)));
    CHECK(xseries_invert(one - x, 3) == XSeries(r, {{0, c(1)}, {1, c(1)}, {2, c(1)}}, 3));

    for (int n = 0; n < 40; ++n) {
        SkewPoly f = testing::random_poly(r, rng), g = testing::random_poly(r, rng);
        if (g.is_zero()) continue;
        const auto e = eta(f, g);
        if (f.is_zero()) {
            CHECK_FALSE(e);
            continue;
        }
        const XSeries ginv = xseries_invert(to_xseries(g), 6);
        CHECK(agree_below_common_cutoff(to_xseries(g) * ginv, one.truncated(6)));
        CHECK(zeta(to_xseries(f) * ginv) == e);
        CHECK(*e == *zeta(to_xseries(f)) - *zeta(to_xseries(g)));
    }
    CHECK_FALSE(zeta(XSeries(r, {})));
    try {
        eta(SkewPoly::x(r), SkewPoly(r, {}));
        FAIL("division by zero");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::DivisionByZero);
    }
    try {
        XSeries(weyl(), {{0, c(1)}});
        FAIL("delta accepted");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::DeltaNotZero);
    }
    CHECK_THROWS_AS(eta(weyl_x2(), weyl_x2()), Error);
}

TEST_CASE("weyl algebra identities")
{
    const SkewPoly x1 = weyl_x1(), x2 = weyl_x2();
    const SkewPoly one = SkewPoly::constant(weyl(), c(1));
    CHECK(commutator(x1, x2) == one);
    CHECK(commutator(x2, x1) == -one);
    CHECK(x2 * x1 * x1 - x1 * x1 * x2 == SkewPoly::constant(weyl(), c(-2) * t()));
    CHECK(commutator(x1, x2 * x2) == SkewPoly(weyl(), {Scalar::zero(qt), c(2)}));
    for (int n = 1; n <= 5; ++n) {
        SkewPoly x1n = one;
        for (int k = 0; k < n; ++k) x1n = x1n * x1;
        SkewPoly x1m = one;
        for (int k = 0; k < n - 1; ++k) x1m = x1m * x1;
        CHECK(commutator(x1n, x2) == SkewPoly::constant(weyl(), c(n)) * x1m);
    }
}

TEST_CASE("laurent cauchy limits")
{
    const SkewRing r = weyl();
    auto geometric = [&](std::size_t n) {
        std::vector<std::pair<long, Scalar>> ts;
        for (std::size_t i = 0; i < n; ++i) ts.emplace_back(static_cast<long>(i), c(1));
        return SkewLaurent(r, ts, static_cast<long>(n));
    };
    const SkewLaurent lim = laurent_cauchy_limit(geometric, [](std::size_t k) { return k + 1; }, 5);
    CHECK(lim == SkewLaurent(r, {{0, c(1)}, {1, c(1)}, {2, c(1)}, {3, c(1)}, {4, c(1)}}, 5));

    const SkewLaurent k(r, {{-2, t()}, {1, c(3)}});
    const SkewLaurent cst = laurent_cauchy_limit([&](std::size_t) { return k; }, [](std::size_t i) { return i; }, 4);
    CHECK(cst == k.truncated(4));

    try {
        laurent_cauchy_limit([&](std::size_t n) { return SkewLaurent::constant(r, c(static_cast<long>(n))); }, [](std::size_t i) { return i; }, 3);
        FAIL("not Cauchy");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::NotCauchy);
    }
    try {
        laurent_cauchy_limit(geometric, [](std::size_t) { return 3; }, 3);
        FAIL("constant modulus");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::PreconditionViolated);
    }
}

TEST_CASE("laurent text and serialization")
{
    const SkewRing r = weyl();
    CHECK(SkewLaurent(r, {{2, t()}, {5, c(1)}}, 7).to_string() == "t*y^2 + y^5 cutoff 7");
    CHECK(SkewLaurent::zero(r).to_string() == "0 exact");
    CHECK(SkewLaurent(r, {{-1, c(-2)}}).to_string() == "-2*y^-1 exact");
    CHECK(parse_skew_ring("skewpoly sigma=id delta=ddt", qt).same(r));
    CHECK(parse_skew_ring("sigma=shift", qt).same(shift_ring()));
    CHECK_THROWS_AS(parse_skew_ring("sigma=id bogus", qt), Error);
    CHECK_THROWS_AS(SkewRing::make(qt, EndoSpec::shift(), DerivSpec::ddt()), Error);

    std::mt19937_64 rng(61);
    for (const SkewRing &ring : testing::shipped_rings())
        for (int n = 0; n < 20; ++n) {
            const SkewLaurent f = testing::random_laurent(ring, rng);
            CHECK(read_laurent(write_laurent(f)) == f);
        }
    try {
        read_laurent("skewlaurent 1\nring sigma=id delta=ddt\nfield qt\ncutoff exact\n0 1\n");
        FAIL("missing end");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::ParseError);
    }
}
