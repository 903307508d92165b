// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <tuple>

#include <mnseries/crossed_product.hpp>
#include <mnseries/error.hpp>
#include <mnseries/freeness.hpp>
#include <mnseries/mn_series.hpp>
#include <mnseries/skew.hpp>

#include "support.hpp"

using namespace mns;

namespace
{

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

const Group z1 = Group::lex(1);
const Group z2 = Group::lex(2);
const Group heis = Group::heisenberg();

GroupElement e1(long a)
{
    return GroupElement(z1, {Integer(a)});
}

GroupElement g2(long a, long b)
{
    return GroupElement(z2, {Integer(a), Integer(b)});
}

std::vector<SpecPtr> law_configs()
{
    std::vector<SpecPtr> out;
    for (const Group &g : {z1, z2, heis})
        for (const Field &f : {Field::rational(), Field::prime(7), Field::quaternion()}) {
            out.push_back(trivial_spec(g, f));
            out.push_back(sign_cocycle_spec(g, f));
        }
    return out;
}

Outcome ring_laws()
{
    Outcome o;
    std::mt19937_64 rng(1001);
    for (const SpecPtr &s : law_configs()) {
        for (int n = 0; n < 500 && o.ok; ++n) {
            const MNSeries f = testing::random_series(s, rng), g = testing::random_series(s, rng), h = testing::random_series(s, rng);
            const std::string where = s->describe() + " triple " + std::to_string(n);
            o.require(agree_below_common_cutoff((f * g) * h, f * (g * h)), "associativity: " + where);
            o.require(agree_below_common_cutoff(f * (g + h), f * g + f * h), "left distributivity: " + where);
            o.require(agree_below_common_cutoff((f + g) * h, f * h + g * h), "right distributivity: " + where);
            o.require(agree_below_common_cutoff((f + g) + h, f + (g + h)), "additive associativity: " + where);
        }
    }
    return o;
}

Outcome valuations()
{
    Outcome o;
    std::mt19937_64 rng(1002);
    const Rational half = make_rational(1, 2);
    for (const Group &grp : {z1, z2, heis}) {
        const SpecPtr s = sign_cocycle_spec(grp, Field::rational());
        const ConvexJump outer = jump_at(grp, grp.num_jumps());
        for (int n = 0; n < 500 && o.ok; ++n) {
            const MNSeries f = testing::random_series(s, rng, 3, 2, false), g = testing::random_series(s, rng, 3, 2, false);
            const MNSeries h = testing::random_series(s, rng, 3, 2, false);
            const std::string where = grp.to_string() + " sample " + std::to_string(n);
            const auto wf = omega(f), wg = omega(g), wfg = omega(f * g);
            if (wf && wg) {
                o.require(wfg && *wfg == *wf * *wg, "omega(fg) = omega(f) omega(g): " + where);
                o.require(*nu(f * g, outer) == *nu(f, outer) + *nu(g, outer), "nu(fg) = nu(f) + nu(g): " + where);
                if (const auto vs = nu(f + g, outer)) o.require(*vs >= std::min(*nu(f, outer), *nu(g, outer)), "nu(f+g) >= min: " + where);
            }
            // d(a, b) = (1/2)^nu(a - b) on the outer jump, where H = G.
            const Rational dfg = distance(f, g, outer), dgh = distance(g, h, outer), dfh = distance(f, h, outer);
            o.require(dfh <= std::max(dfg, dgh), "ultrametric: " + where);
            o.require(dfg == distance(g, f, outer), "symmetry: " + where);
            if (const auto v = nu(f - g, outer)) {
                Rational want = 1;
                const long k = v->get_si();
                for (long i = 0; i < (k < 0 ? -k : k); ++i) want = k < 0 ? Rational(want / half) : Rational(want * half);
                o.require(dfg == want, "d = c^nu with c = 1/2: " + where);
            } else {
                o.require(dfg == 0, "d(f, f) = 0: " + where);
            }
        }
    }
    return o;
}

bool is_one_below(const MNSeries &p, const GroupElement &target)
{
    return !bound_less(p.cutoff(), target) && p.truncated(target) == MNSeries::one(p.spec_ptr()).truncated(target);
}

bool is_one_below(const SkewLaurent &p, long target)
{
    return (!p.cutoff() || *p.cutoff() >= target) && p.truncated(target) == SkewLaurent::constant(p.ring(), Scalar::one(p.ring().field)).truncated(target);
}

Outcome inversion()
{
    Outcome o;
    std::mt19937_64 rng(1003);
    const auto specs = law_configs();
    int mn = 0;
    for (int n = 0; mn < 200 && o.ok; ++n) {
        const SpecPtr &s = specs[static_cast<std::size_t>(n) % specs.size()];
        const MNSeries f = testing::random_series(s, rng, 3, 2, false);
        if (f.is_zero()) continue;
        ++mn;
        const GroupElement x0 = *omega(f);
        const MNSeries g = MNSeries::monomial(s, inverse(x0), Scalar::one(s->field())) * f - MNSeries::one(s);
        const std::string where = s->describe() + " series " + f.to_string();
        if (!omega(g)) {
            const MNSeries inv = invert(f, std::nullopt);
            o.require(f * inv == MNSeries::one(s) && inv * f == MNSeries::one(s), "monomial inverse: " + where);
            continue;
        }
        const GroupElement w3 = power(*omega(g), 3);
        const GroupElement target = std::min(w3 * inverse(x0), x0 * w3 * inverse(x0));
        const MNSeries inv = invert(f, target);
        o.require(is_one_below(f * inv, target), "f f^-1 = 1 below " + target.to_string() + ": " + where);
    }

    int laurent = 0;
    const auto rings = testing::shipped_rings();
    for (int n = 0; laurent < 200 && o.ok; ++n) {
        const SkewRing &r = rings[static_cast<std::size_t>(n) % rings.size()];
        const SkewLaurent f = testing::random_nonzero_laurent(r, rng, -2, 3, false);
        const long target = testing::uniform(rng, -1, 5);
        ++laurent;
        const SkewLaurent inv = laurent_invert(f, target);
        o.require(is_one_below(laurent_mul(f, inv), target), "laurent f f^-1 = 1 below " + std::to_string(target) + ": " + f.to_string());
    }

    const SpecPtr hs = trivial_spec(heis, Field::rational());
    const MNSeries one_z = MNSeries::one(hs) + MNSeries::monomial(hs, GroupElement::basis(heis, 3), Scalar(1));
    bool no_convergence = false;
    try {
        invert(one_z, GroupElement::basis(heis, 1));
    } catch (const Error &e) {
        no_convergence = e.code() == Errc::NoConvergence;
    }
    o.require(no_convergence, "1 + z against cutoff x must raise NoConvergence");
    if (o.ok) o.detail = std::to_string(mn) + " MN and " + std::to_string(laurent) + " Laurent inverses";
    return o;
}

Outcome weyl()
{
    Outcome o;
    const SkewPoly x1 = weyl_x1(), x2 = weyl_x2();
    const SkewPoly one = SkewPoly::constant(weyl_ring(), Scalar::one(Field::ratfunc()));
    o.require(x1 * x2 - x2 * x1 == one, "x1 x2 - x2 x1 != 1");
    SkewPoly x1n = one, x1m = one;
    for (int n = 1; n <= 4; ++n) {
        x1m = x1n;
        x1n = x1n * x1;
        const SkewPoly want = SkewPoly::constant(weyl_ring(), Scalar(RatFunc(Rational(-n)))) * x1m;
        o.require(x2 * x1n - x1n * x2 == want, "x2 x1^n - x1^n x2 != -n x1^(n-1) for n = " + std::to_string(n));
    }
    return o;
}

Outcome completeness()
{
    Outcome o;
    const SpecPtr s = trivial_spec(z1, Field::rational());
    const MNSeries t = MNSeries::monomial(s, e1(1), Scalar(1));
    const SeriesSequence partial = [&](std::size_t n) {
        MNSeries acc = MNSeries::zero(s), p = MNSeries::one(s);
        for (std::size_t j = 0; j < n; ++j) {
            acc = acc + p;
            p = p * t;
        }
        return acc;
    };
    const MNSeries lim = cauchy_limit(partial, [](std::size_t k) { return k + 1; }, jump_at(z1, 1), e1(8));
    o.require(lim == invert(MNSeries::one(s) - t, e1(8)).truncated(e1(8)), "zn:1 geometric limit differs from (1 - t)^-1");

    const SpecPtr hs = sign_cocycle_spec(heis, Field::rational());
    const MNSeries z = MNSeries::monomial(hs, GroupElement::basis(heis, 3), Scalar(3));
    const GroupElement z6 = power(GroupElement::basis(heis, 3), 6);
    const SeriesSequence hpartial = [&](std::size_t n) {
        MNSeries acc = MNSeries::zero(hs), p = MNSeries::one(hs);
        for (std::size_t j = 0; j < n; ++j) {
            acc = acc + p;
            p = p * z;
        }
        return acc;
    };
    const MNSeries hlim = cauchy_limit(hpartial, [](std::size_t k) { return k + 1; }, jump_at(heis, 1), z6);
    o.require(hlim == invert(MNSeries::one(hs) - z, z6).truncated(z6), "heis centre limit differs from (1 - 3z)^-1");

    for (const SkewRing &r : testing::shipped_rings()) {
        const SkewLaurent ty = SkewLaurent::monomial(r, Scalar(RatFunc::t()), 1);
        const LaurentSequence lpartial = [&](std::size_t n) {
            SkewLaurent acc = SkewLaurent::zero(r), p = SkewLaurent::constant(r, Scalar::one(r.field));
            for (std::size_t j = 0; j < n; ++j) {
                acc = acc + p;
                p = laurent_mul(p, ty, 7);
            }
            return acc;
        };
        const SkewLaurent llim = laurent_cauchy_limit(lpartial, [](std::size_t k) { return k + 1; }, 6);
        const SkewLaurent inv = laurent_invert(SkewLaurent::constant(r, Scalar::one(r.field)) - ty, 6);
        o.require(llim == inv.truncated(6), "laurent limit differs from (1 - t y)^-1 over " + r.to_string());
    }
    return o;
}

std::tuple<long, long, long> heis_normal_form(const Word &w)
{
    long a = 0, b = 0, c = 0;
    for (std::size_t letter : w) {
        if (letter == 0) {
            c -= b;
            ++a;
        } else {
            ++b;
        }
    }
    return {a, b, c};
}

Outcome freeness()
{
    Outcome o;
    // Oracle: the number of distinct normal forms and the colliding pair.
    std::set<std::tuple<long, long, long>> d3, d4;
    for (const Word &w : enumerate_words(2, 3)) d3.insert(heis_normal_form(w));
    for (const Word &w : enumerate_words(2, 4)) d4.insert(heis_normal_form(w));
    o.require(d3.size() == 15 && d4.size() == 30, "normal-form oracle disagrees with the expected counts");
    o.require(heis_normal_form({0, 1, 1, 0}) == heis_normal_form({1, 0, 0, 1}), "oracle: xyyx and yxxy must collide");

    const SpecPtr hq = trivial_spec(heis, Field::rational());
    const std::vector<MNSeries> gens = {MNSeries::monomial(hq, GroupElement::basis(heis, 1), Scalar(1)),
                                        MNSeries::monomial(hq, GroupElement::basis(heis, 2), Scalar(1))};
    const IndependenceReport r3 = independence_check(gens, 3, {"x", "y"});
    o.require(r3.verdict == Verdict::IndependentCertified && r3.rank == d3.size(), "D=3: " + render_report(r3));
    const IndependenceReport r4 = independence_check(gens, 4, {"x", "y"});
    o.require(r4.verdict == Verdict::DependentWithRelation && r4.rank == d4.size() && r4.words == 31, "D=4: " + render_report(r4));
    o.require(render_relation(r4.relation) == "xyyx - yxxy", "D=4 relation: " + render_relation(r4.relation));

    const SpecPtr zq = trivial_spec(z2, Field::rational());
    const IndependenceReport ab = independence_check(
        {MNSeries::monomial(zq, g2(1, 0), Scalar(1)), MNSeries::monomial(zq, g2(0, 1), Scalar(1))}, 2, {"x", "y"});
    o.require(ab.verdict == Verdict::DependentWithRelation && render_relation(ab.relation) == "xy - yx", "abelian: " + render_report(ab));
    return o;
}

Outcome cross_construction()
{
    Outcome o;
    std::mt19937_64 rng(1007);
    const Field qt = Field::ratfunc();
    int pairs = 0;
    for (const EndoSpec &sigma : {EndoSpec::shift(), EndoSpec::q_dilation(Rational(3))}) {
        const SkewRing r = SkewRing::make(qt, sigma, DerivSpec::zero());
        const SpecPtr spec = twisted_spec(z1, qt, sigma);
        auto to_mn = [&](const XSeries &x) {
            std::vector<Term> ts;
            for (const auto &[i, a] : x.terms()) ts.push_back({e1(i), a});
            return MNSeries(spec, ts);
        };
        for (int n = 0; n < 100; ++n, ++pairs) {
            std::vector<std::pair<long, Scalar>> ta, tb;
            for (int k = 0; k < 3; ++k) {
                ta.emplace_back(testing::uniform(rng, -3, 3), testing::random_scalar(qt, rng));
                tb.emplace_back(testing::uniform(rng, -3, 3), testing::random_scalar(qt, rng));
            }
            const XSeries a(r, ta), b(r, tb);
            o.require(to_mn(a * b) == to_mn(a) * to_mn(b), "product differs for " + a.to_string() + " and " + b.to_string());
        }
    }
    if (o.ok) o.detail = std::to_string(pairs) + " pairs";
    return o;
}

MNSeries tpow(const SpecPtr &s, const GroupElement &t, long b)
{
    MNSeries out = MNSeries::one(s);
    for (long i = 0; i < (b < 0 ? -b : b); ++i) out = out * MNSeries::monomial(s, t, Scalar::one(s->field()));
    return b < 0 ? invert(out, std::nullopt) : out;
}

bool neumann_round_trip(const SeriesMatrix &m, const SpecPtr &s, const GroupElement &t, long b, const GroupElement &target)
{
    const SeriesMatrix inv = neumann_matrix_inverse(m, t, b, target);
    const MNSeries tb = tpow(s, t, b);
    SeriesMatrix a = identity_matrix(s, m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) a[i][j] = tb * (a[i][j] - m[i][j]);
    return is_identity_below(matmul(a, inv), target) && is_identity_below(matmul(inv, a), target);
}

Outcome neumann()
{
    Outcome o;
    const SpecPtr s = trivial_spec(z1, Field::rational());
    const MNSeries zero = MNSeries::zero(s);
    const SeriesMatrix m = {{zero, MNSeries::monomial(s, e1(1), Scalar(1))}, {MNSeries::monomial(s, e1(2), Scalar(1)), zero}};
    o.require(neumann_round_trip(m, s, e1(1), 1, e1(5)), "2x2 example");

    std::mt19937_64 rng(1008);
    const SpecPtr s2 = sign_cocycle_spec(z2, Field::rational());
    for (int n = 0; n < 50 && o.ok; ++n) {
        const std::size_t size = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
        SeriesMatrix r(size, std::vector<MNSeries>(size, MNSeries::zero(s2)));
        for (auto &row : r)
            for (auto &x : row) {
                std::vector<Term> ts;
                for (long k = testing::uniform(rng, 0, 2); k > 0; --k)
                    ts.push_back({g2(testing::uniform(rng, -2, 2), testing::uniform(rng, 1, 2)), Scalar(testing::uniform(rng, -2, 2))});
                x = MNSeries(s2, ts);
            }
        const long b = testing::uniform(rng, -1, 2);
        const GroupElement target = g2(testing::uniform(rng, -2, 2), testing::uniform(rng, 1, 2));
        o.require(neumann_round_trip(r, s2, g2(1, 0), b, target), "random matrix " + std::to_string(n));
    }
    return o;
}

Outcome validation()
{
    Outcome o;
    std::vector<SpecPtr> shipped = law_configs();
    shipped.push_back(twisted_spec(z1, Field::ratfunc(), EndoSpec::shift()));
    shipped.push_back(twisted_spec(z2, Field::ratfunc(), EndoSpec::q_dilation(Rational(2))));
    shipped.push_back(twisted_spec(heis, Field::quaternion(), EndoSpec::quaternion_conj(Quaternion{1, 1, 0, 0})));
    for (const SpecPtr &s : shipped) {
        const SpecSamples samples{random_triples(s->group(), 200, 11), sample_scalars(s->field())};
        o.require(validate_spec(*s, samples).empty(), "shipped spec fails: " + s->describe());
    }
    for (const Group &g : {z2, heis}) {
        const SpecPtr bad = corrupted_spec(g, Field::rational());
        o.require(!validate_spec(*bad, SpecSamples{box_triples(g, 1), sample_scalars(Field::rational())}).empty(),
                  "corrupted spec passes on " + g.to_string());
    }
    for (const Group &g : {z1, z2, heis}) {
        o.require(check_order_axioms(random_triples(g, 300, 12)).empty(), "order axioms fail on " + g.to_string());
        o.require(check_order_axioms(box_triples(g, 1)).empty(), "order axioms fail on the box of " + g.to_string());
    }
    for (const Group &g : {z2, heis})
        o.require(!check_order_axioms(random_triples(g, 300, 12), least_significant_comparator()).empty(),
                  "adversarial comparator passes on " + g.to_string());
    return o;
}

struct Criterion {
    int number;
    std::string name;
    double budget_seconds; // 0: none
    std::function<Outcome()> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "ring laws on 500 triples per configuration", 60, ring_laws},
        {2, "valuation axioms and ultrametric distance", 0, valuations},
        {3, "inversion round trip", 0, inversion},
        {4, "Weyl identities", 1, weyl},
        {5, "Cauchy limits reproduce inverses", 0, completeness},
        {6, "Heisenberg freeness ranks and relation", 10, freeness},
        {7, "x-series agree with the twisted crossed product", 0, cross_construction},
        {8, "Neumann matrix inversion", 0, neumann},
        {9, "spec and order validation", 0, validation},
    };
    bool all = true;
    for (const Criterion &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && c.budget_seconds > 0 && secs >= c.budget_seconds) {
            o.ok = false;
            o.detail = "over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
        }
        all = all && o.ok;
        std::ostringstream line;
        line << "criterion " << c.number << ": " << (o.ok ? "PASS" : "FAIL") << " " << c.name << " (" << std::fixed << std::setprecision(2) << secs
             << " s)";
        if (!o.detail.empty()) line << " - " << o.detail;
        std::cout << line.str() << std::endl;
    }
    return all ? 0 : 1;
}
