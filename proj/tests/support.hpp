#ifndef MNS_TEST_SUPPORT_HPP
#define MNS_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include <mnseries/crossed_product.hpp>
#include <mnseries/mn_series.hpp>
#include <mnseries/skew.hpp>

namespace testing
{

using namespace mns;

inline long uniform(std::mt19937_64 &rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rational small_rational(std::mt19937_64 &rng, long bound = 5)
{
    const long den = uniform(rng, 1, 3);
    return make_rational(Integer(uniform(rng, -bound, bound)), Integer(den));
}

inline Scalar random_scalar(const Field &f, std::mt19937_64 &rng)
{
    switch (f.kind) {
        case Field::Kind::Rational:
            return small_rational(rng);
        case Field::Kind::Prime:
            return Scalar::from_rational(f, Rational(uniform(rng, 0, static_cast<long>(f.modulus) - 1)));
        case Field::Kind::Quaternion:
            return Quaternion{small_rational(rng, 3), small_rational(rng, 3), small_rational(rng, 3), small_rational(rng, 3)};
        case Field::Kind::RatFunc: {
            std::vector<Rational> num, den;
            const long dn = uniform(rng, 0, 2), dd = uniform(rng, 0, 1);
            for (long i = 0; i <= dn; ++i) num.push_back(Rational(uniform(rng, -3, 3)));
            for (long i = 0; i < dd; ++i) den.push_back(Rational(uniform(rng, -2, 2)));
            den.push_back(Rational(1));
            return RatFunc(QPoly(num), QPoly(den));
        }
    }
    return Scalar(0);
}

inline Scalar random_nonzero(const Field &f, std::mt19937_64 &rng)
{
    for (;;) {
        Scalar s = random_scalar(f, rng);
        if (!s.is_zero()) return s;
    }
}

// Up to `terms` terms with coordinates in [-bound, bound]; cutoff either exact
// or a random element above the support when `truncate` is set.
inline MNSeries random_series(const SpecPtr &spec, std::mt19937_64 &rng, std::size_t terms = 3, long bound = 2, bool truncate = true)
{
    std::vector<Term> ts;
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(terms)));
    for (std::size_t i = 0; i < n; ++i) ts.push_back({random_element(spec->group(), rng, bound), random_nonzero(spec->field(), rng)});
    Bound cutoff;
    if (truncate && uniform(rng, 0, 1) == 1) {
        GroupElement c = random_element(spec->group(), rng, bound + 1);
        cutoff = c;
    }
    return MNSeries(spec, ts, cutoff);
}

// Series whose least term is exact: used where omega must be defined.
inline MNSeries random_leading_series(const SpecPtr &spec, std::mt19937_64 &rng, std::size_t terms = 3, long bound = 2)
{
    for (;;) {
        MNSeries f = random_series(spec, rng, terms, bound);
        if (!f.is_zero()) return f;
    }
}

// Result of multiplying several Laurent factors is exact only if the ring is;
// keep inputs exact or truncated at a random index above the support.
inline SkewLaurent random_laurent(const SkewRing &ring, std::mt19937_64 &rng, long lo = -2, long hi = 3, bool truncate = true)
{
    std::vector<std::pair<long, Scalar>> ts;
    const long n = uniform(rng, 1, 3);
    for (long i = 0; i < n; ++i) ts.emplace_back(uniform(rng, lo, hi), random_nonzero(ring.field, rng));
    IndexBound cutoff;
    if (truncate && uniform(rng, 0, 1) == 1) cutoff = uniform(rng, hi, hi + 4);
    return SkewLaurent(ring, ts, cutoff);
}

inline SkewLaurent random_nonzero_laurent(const SkewRing &ring, std::mt19937_64 &rng, long lo = -2, long hi = 3, bool truncate = true)
{
    for (;;) {
        SkewLaurent f = random_laurent(ring, rng, lo, hi, truncate);
        if (!f.is_zero()) return f;
    }
}

inline SkewPoly random_poly(const SkewRing &ring, std::mt19937_64 &rng, long max_degree = 3)
{
    std::vector<Scalar> cs;
    const long d = uniform(rng, 0, max_degree);
    for (long i = 0; i <= d; ++i) cs.push_back(random_scalar(ring.field, rng));
    return SkewPoly(ring, cs);
}

// The four (sigma, delta) configurations exercised by the property tests.
inline std::vector<SkewRing> shipped_rings()
{
    const Field qt = Field::ratfunc();
    return {SkewRing::make(qt, EndoSpec::identity(), DerivSpec::ddt()), SkewRing::make(qt, EndoSpec::shift(), DerivSpec::zero()),
            SkewRing::make(qt, EndoSpec::q_dilation(Rational(2)), DerivSpec::zero()), SkewRing::make(qt, EndoSpec::identity(), DerivSpec::zero())};
}

} // namespace testing

#endif
