#include <doctest.h>

#include <mnseries/crossed_product.hpp>
#include <mnseries/error.hpp>

#include "support.hpp"

using namespace mns;

namespace
{

GroupElement g2(long a, long b)
{
    return GroupElement(Group::lex(2), {Integer(a), Integer(b)});
}

std::vector<SpecPtr> shipped_specs()
{
    std::vector<SpecPtr> out;
    for (const Group &g : {Group::lex(1), Group::lex(2), Group::heisenberg()})
        for (const Field &f : {Field::rational(), Field::prime(7), Field::quaternion()}) {
            out.push_back(trivial_spec(g, f));
            out.push_back(sign_cocycle_spec(g, f));
        }
    out.push_back(twisted_spec(Group::lex(1), Field::ratfunc(), EndoSpec::shift()));
    out.push_back(twisted_spec(Group::lex(2), Field::ratfunc(), EndoSpec::q_dilation(Rational(3))));
    out.push_back(twisted_spec(Group::heisenberg(), Field::quaternion(), EndoSpec::quaternion_conj(Quaternion{1, 1, 0, 0})));
    return out;
}

} // namespace

TEST_CASE("basis term products")
{
    const SpecPtr triv = trivial_spec(Group::lex(2), Field::rational());
    const Term p = basis_term_mul(*triv, {g2(1, 0), Scalar(2)}, {g2(0, 1), Scalar(3)});
    CHECK(p.element == g2(1, 1));
    CHECK(p.coeff == Scalar(6));

    const SpecPtr sign = sign_cocycle_spec(Group::lex(2), Field::rational());
    const Term e2e1 = basis_term_mul(*sign, {g2(0, 1), Scalar(1)}, {g2(1, 0), Scalar(1)});
    const Term e1e2 = basis_term_mul(*sign, {g2(1, 0), Scalar(1)}, {g2(0, 1), Scalar(1)});
    CHECK(e2e1.element == g2(1, 1));
    CHECK(e2e1.coeff == Scalar(-1));
    CHECK(e1e2.coeff == Scalar(1));

    const SpecPtr quat = trivial_spec(Group::lex(2), Field::quaternion());
    const Term ij = basis_term_mul(*quat, {g2(1, 0), Scalar(Quaternion{0, 1, 0, 0})}, {g2(0, 1), Scalar(Quaternion{0, 0, 1, 0})});
    CHECK(ij.coeff == Scalar(Quaternion{0, 0, 0, 1}));

    try {
        basis_term_mul(*triv, {GroupElement::identity(Group::lex(1)), Scalar(1)}, {g2(0, 1), Scalar(1)});
        FAIL("foreign element accepted");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::KindMismatch);
    }
}

TEST_CASE("twisted spec moves coefficients past basis elements")
{
    const SpecPtr s = twisted_spec(Group::lex(1), Field::ratfunc(), EndoSpec::shift());
    const GroupElement x(Group::lex(1), {Integer(1)});
    const Scalar t = RatFunc::t();
    // (xbar t)(xbar 1) = x^2bar sigma(x)(t) = x^2bar (t + 1)
    const Term p = basis_term_mul(*s, {x, t}, {x, Scalar(RatFunc(Rational(1)))});
    CHECK(p.coeff == t + Scalar(RatFunc(Rational(1))));
    CHECK(s->sigma(power(x, -2)).apply(t) == t - Scalar(RatFunc(Rational(2))));
}

TEST_CASE("shipped specs validate")
{
    for (const SpecPtr &s : shipped_specs()) {
        CAPTURE(s->describe());
        const auto report = validate_spec(*s, SpecSamples{random_triples(s->group(), 100, 3), sample_scalars(s->field())});
        CHECK(report.empty());
        CHECK(validate_spec(*s, SpecSamples{box_triples(s->group(), 1), sample_scalars(s->field())}).empty());
    }
}

TEST_CASE("sign cocycle on an exhaustive box")
{
    const SpecPtr s = sign_cocycle_spec(Group::lex(2), Field::rational());
    CHECK(validate_spec(*s, SpecSamples{box_triples(Group::lex(2), 3), {Scalar(1), Scalar(make_rational(-2, 5))}}).empty());
}

TEST_CASE("corrupted spec is caught")
{
    const SpecPtr bad = corrupted_spec(Group::lex(2), Field::rational());
    CHECK(bad->tau(g2(1, 0), g2(0, 1)) == Scalar(2));
    CHECK(bad->tau(g2(0, 1), g2(1, 0)) == Scalar(1));
    const ElementTriple witness{g2(1, 0), g2(0, 1), g2(1, 0)};
    const auto report = validate_spec(*bad, SpecSamples{{witness}, {Scalar(1)}});
    REQUIRE_FALSE(report.empty());
    CHECK(report.front().law == "cocycle");
    CHECK_THROWS_AS(corrupted_spec(Group::lex(1), Field::rational()), Error);
    CHECK(make_spec("corrupt", Group::heisenberg(), Field::rational())->name() == "corrupt");
}

TEST_CASE("spec selectors")
{
    const Group g = Group::lex(2);
    CHECK(make_spec("trivial", g, Field::rational())->name() == "trivial");
    CHECK(make_spec("sign2", g, Field::rational())->name() == "sign2");
    CHECK(make_spec("twist:shift", g, Field::ratfunc())->name() == "twist:shift");
    CHECK_THROWS_AS(make_spec("other", g, Field::rational()), Error);
    CHECK_THROWS_AS(make_spec("twist:shift", g, Field::rational()), Error);
    CHECK(make_spec("trivial", g, Field::rational())->same_ring(*trivial_spec(g, Field::rational())));
    CHECK_FALSE(make_spec("trivial", g, Field::rational())->same_ring(*sign_cocycle_spec(g, Field::rational())));
}

TEST_CASE("basis term products are associative")
{
    std::mt19937_64 rng(12);
    for (const SpecPtr &s : shipped_specs()) {
        CAPTURE(s->describe());
        for (int n = 0; n < 60; ++n) {
            const Term a{testing::random_element(s->group(), rng, 3), testing::random_nonzero(s->field(), rng)};
            const Term b{testing::random_element(s->group(), rng, 3), testing::random_nonzero(s->field(), rng)};
            const Term c{testing::random_element(s->group(), rng, 3), testing::random_nonzero(s->field(), rng)};
            const Term l = basis_term_mul(*s, basis_term_mul(*s, a, b), c);
            const Term r = basis_term_mul(*s, a, basis_term_mul(*s, b, c));
            CHECK(l.element == r.element);
            CHECK(l.coeff == r.coeff);
        }
    }
}

TEST_CASE("trivial spec degenerates to the plain product")
{
    std::mt19937_64 rng(2);
    const SpecPtr s = trivial_spec(Group::heisenberg(), Field::rational());
    for (int n = 0; n < 100; ++n) {
        const Term a{testing::random_element(s->group(), rng, 3), testing::random_nonzero(s->field(), rng)};
        const Term b{testing::random_element(s->group(), rng, 3), testing::random_nonzero(s->field(), rng)};
        const Term p = basis_term_mul(*s, a, b);
        CHECK(p.element == a.element * b.element);
        CHECK(p.coeff == a.coeff * b.coeff);
    }
}
