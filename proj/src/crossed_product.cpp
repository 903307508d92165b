#include <mnseries/crossed_product.hpp>

#include <algorithm>

#include <mnseries/error.hpp>

namespace mns
{

CrossedProductSpec::CrossedProductSpec(std::string name, Group group, Field field, SigmaRule sigma, TauRule tau)
    : name_(std::move(name)), group_(group), field_(field), sigma_(std::move(sigma)), tau_(std::move(tau))
{
}

bool CrossedProductSpec::same_ring(const CrossedProductSpec &other) const
{
    return name_ == other.name_ && group_ == other.group_ && field_ == other.field_;
}

std::string CrossedProductSpec::describe() const
{
    return name_ + " over " + field_.to_string() + " on " + group_.to_string();
}

SpecPtr trivial_spec(const Group &g, const Field &f)
{
    const Scalar one = Scalar::one(f);
    return std::make_shared<const CrossedProductSpec>(
        "trivial", g, f, [](const GroupElement &) { return EndoSpec::identity(); },
        [one](const GroupElement &, const GroupElement &) { return one; });
}

SpecPtr sign_cocycle_spec(const Group &g, const Field &f)
{
    const Scalar one = Scalar::one(f);
    const Scalar minus_one = -one;
    auto exponent = [g](const GroupElement &x, const GroupElement &y) -> Integer {
        if (g.kind == Group::Kind::Heisenberg) return x[1] * y[0];
        if (g.rank == 1) return x[0] * y[0];
        return x[1] * y[0];
    };
    return std::make_shared<const CrossedProductSpec>(
        "sign2", g, f, [](const GroupElement &) { return EndoSpec::identity(); },
        [=](const GroupElement &x, const GroupElement &y) { return mpz_odd_p(exponent(x, y).get_mpz_t()) ? minus_one : one; });
}

SpecPtr twisted_spec(const Group &g, const Field &f, const EndoSpec &base)
{
    // The automorphism must act on the coefficient field.
    base.apply(Scalar::one(f));
    const std::size_t outer = g.kind == Group::Kind::LexZn ? static_cast<std::size_t>(g.rank - 1) : 0;
    const Scalar one = Scalar::one(f);
    return std::make_shared<const CrossedProductSpec>(
        "twist:" + base.to_string(), g, f,
        [base, outer](const GroupElement &x) {
            if (!x[outer].fits_slong_p()) fail(Errc::InvalidArgument, "twist exponent out of range");
            return base.power(x[outer].get_si());
        },
        [one](const GroupElement &, const GroupElement &) { return one; });
}

SpecPtr corrupted_spec(const Group &g, const Field &f)
{
    if (g.kind == Group::Kind::LexZn && g.rank < 2) fail(Errc::InvalidArgument, "corrupt spec needs two generators");
    const GroupElement e1 = GroupElement::basis(g, 1), e2 = GroupElement::basis(g, 2);
    const Scalar one = Scalar::one(f), two = Scalar::from_rational(f, Rational(2));
    return std::make_shared<const CrossedProductSpec>(
        "corrupt", g, f, [](const GroupElement &) { return EndoSpec::identity(); },
        [=](const GroupElement &x, const GroupElement &y) { return x == e1 && y == e2 ? two : one; });
}

SpecPtr make_spec(std::string_view selector, const Group &g, const Field &f)
{
    if (selector == "trivial") return trivial_spec(g, f);
    if (selector == "sign2") return sign_cocycle_spec(g, f);
    if (selector == "corrupt") return corrupted_spec(g, f);
    if (selector.substr(0, 6) == "twist:") return twisted_spec(g, f, parse_endo(selector.substr(6)));
    fail(Errc::InvalidArgument, "unknown crossed-product spec '" + std::string(selector) + "' (expected trivial, sign2, twist:<sigma>)");
}

Term basis_term_mul(const CrossedProductSpec &spec, const Term &lhs, const Term &rhs)
{
    if (!(lhs.element.group() == spec.group()) || !(rhs.element.group() == spec.group()))
        fail(Errc::KindMismatch, "term outside " + spec.group().to_string());
    return {lhs.element * rhs.element, spec.tau(lhs.element, rhs.element) * spec.sigma(rhs.element).apply(lhs.coeff) * rhs.coeff};
}

std::vector<SpecViolation> validate_spec(const CrossedProductSpec &spec, const SpecSamples &samples)
{
    std::vector<SpecViolation> out;
    const Group &g = spec.group();
    const GroupElement e = GroupElement::identity(g);
    const Scalar one = Scalar::one(spec.field());

    if (!spec.sigma(e).is_identity()) {
        for (const Scalar &a : samples.scalars)
            if (!(spec.sigma(e).apply(a) == a)) {
                out.push_back({"normalization", "sigma(1) moves " + a.to_string()});
                break;
            }
    }
    for (const auto &[x, y, z] : samples.triples) {
        for (const GroupElement *w : {&x, &y, &z}) {
            if (!(spec.tau(e, *w) == one) || !(spec.tau(*w, e) == one)) {
                out.push_back({"normalization", "tau(1, " + w->to_string() + ") or tau(" + w->to_string() + ", 1) != 1"});
            }
            if (spec.tau(x, *w).is_zero()) out.push_back({"nonzero", "tau(" + x.to_string() + ", " + w->to_string() + ") = 0"});
        }

        const Scalar lhs = spec.tau(x * y, z) * spec.sigma(z).apply(spec.tau(x, y));
        const Scalar rhs = spec.tau(x, y * z) * spec.tau(y, z);
        if (!(lhs == rhs)) {
            out.push_back({"cocycle", "(" + x.to_string() + ", " + y.to_string() + ", " + z.to_string() + "): " + lhs.to_string() +
                                          " != " + rhs.to_string()});
        }

        const Scalar t = spec.tau(x, y);
        const EndoSpec sx = spec.sigma(x), sy = spec.sigma(y), sxy = spec.sigma(x * y);
        for (const Scalar &a : samples.scalars) {
            const Scalar left = sy.apply(sx.apply(a));
            const Scalar right = t.inverse() * sxy.apply(a) * t;
            if (!(left == right)) {
                out.push_back({"compatibility", "a = " + a.to_string() + " at (" + x.to_string() + ", " + y.to_string() + ")"});
                break;
            }
        }
    }
    return out;
}

std::vector<ElementTriple> box_triples(const Group &g, long bound)
{
    std::vector<GroupElement> elems;
    std::vector<Integer> c(static_cast<std::size_t>(g.rank), Integer(-bound));
    while (true) {
        elems.emplace_back(g, c);
        std::size_t i = 0;
        while (i < c.size() && c[i] == bound) c[i++] = -bound;
        if (i == c.size()) break;
        c[i] += 1;
    }
    std::vector<ElementTriple> out;
    out.reserve(elems.size() * elems.size() * elems.size());
    for (const auto &a : elems)
        for (const auto &b : elems)
            for (const auto &d : elems) out.push_back({a, b, d});
    return out;
}

std::vector<Scalar> sample_scalars(const Field &f)
{
    std::vector<Scalar> out;
    switch (f.kind) {
        case Field::Kind::Rational:
            for (int n : {1, -2, 3}) out.emplace_back(Rational(n));
            out.emplace_back(make_rational(2, 3));
            break;
        case Field::Kind::Prime:
            for (std::uint64_t v = 1; v < std::min<std::uint64_t>(f.modulus, 5); ++v) out.push_back(Scalar::from_rational(f, Rational(static_cast<long>(v))));
            break;
        case Field::Kind::RatFunc: {
            const RatFunc t = RatFunc::t();
            out.emplace_back(t);
            out.emplace_back(t * t + RatFunc(Rational(1)));
            out.emplace_back((t + RatFunc(Rational(1))).inverse());
            out.emplace_back(RatFunc(make_rational(3, 2)));
            break;
        }
        case Field::Kind::Quaternion:
            out.emplace_back(Quaternion{1, 0, 0, 0});
            out.emplace_back(Quaternion{0, 1, 0, 0});
            out.emplace_back(Quaternion{0, 0, 1, 0});
            out.emplace_back(Quaternion{1, 2, -1, make_rational(1, 2)});
            break;
    }
    return out;
}

} // namespace mns
