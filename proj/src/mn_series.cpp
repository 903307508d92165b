#include <mnseries/mn_series.hpp>

#include <algorithm>
#include <map>

#include <mnseries/error.hpp>
#include <mnseries/render.hpp>

namespace mns
{

bool bound_less(const Bound &a, const Bound &b)
{
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
}

Bound min_bound(const Bound &a, const Bound &b)
{
    return bound_less(b, a) ? b : a;
}

Bound left_shift(const GroupElement &x, const Bound &b)
{
    if (!b) return std::nullopt;
    return x * *b;
}

Bound right_shift(const Bound &b, const GroupElement &x)
{
    if (!b) return std::nullopt;
    return *b * x;
}

bool below(const GroupElement &x, const Bound &b)
{
    return !b || x < *b;
}

std::string to_string(const Bound &b)
{
    return b ? b->to_string() : "exact";
}

namespace
{

Bound mul_bounds(const Bound &a, const Bound &b)
{
    if (!a || !b) return std::nullopt;
    return *a * *b;
}

MNSeries from_map(const SpecPtr &spec, std::map<GroupElement, Scalar> &&acc, const Bound &cutoff)
{
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto &[x, a] : acc)
        if (!a.is_zero() && below(x, cutoff)) terms.push_back({x, std::move(a)});
    return MNSeries(spec, std::move(terms), cutoff);
}

} // namespace

MNSeries::MNSeries(SpecPtr spec, std::vector<Term> terms, Bound cutoff) : spec_(std::move(spec)), cutoff_(std::move(cutoff))
{
    if (!spec_) fail(Errc::InvalidArgument, "series without a crossed-product spec");
    if (cutoff_ && !(cutoff_->group() == spec_->group()))
        fail(Errc::KindMismatch, "cutoff " + cutoff_->to_string() + " outside " + spec_->group().to_string());
    const Field f = spec_->field();
    for (const Term &t : terms) {
        if (!(t.element.group() == spec_->group()))
            fail(Errc::KindMismatch, "term " + t.element.to_string() + " outside " + spec_->group().to_string());
        if (!(t.coeff.field() == f))
            fail(Errc::VariantMismatch, "coefficient " + t.coeff.to_string() + " is not in " + f.to_string());
    }
    const bool sorted = std::adjacent_find(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return !(a.element < b.element); }) ==
                        terms.end();
    if (sorted) {
        for (Term &t : terms)
            if (!t.coeff.is_zero() && below(t.element, cutoff_)) terms_.push_back(std::move(t));
        return;
    }
    std::map<GroupElement, Scalar> acc;
    for (Term &t : terms) {
        auto [it, fresh] = acc.try_emplace(t.element, t.coeff);
        if (!fresh) it->second += t.coeff;
    }
    for (auto &[x, a] : acc)
        if (!a.is_zero() && below(x, cutoff_)) terms_.push_back({x, std::move(a)});
}

MNSeries MNSeries::zero(SpecPtr spec, Bound cutoff)
{
    return MNSeries(std::move(spec), {}, std::move(cutoff));
}

MNSeries MNSeries::one(SpecPtr spec)
{
    const Scalar a = Scalar::one(spec->field());
    return constant(std::move(spec), a);
}

MNSeries MNSeries::monomial(SpecPtr spec, const GroupElement &x, const Scalar &a)
{
    return MNSeries(std::move(spec), {Term{x, a}});
}

MNSeries MNSeries::constant(SpecPtr spec, const Scalar &a)
{
    const GroupElement e = GroupElement::identity(spec->group());
    return MNSeries(std::move(spec), {Term{e, a}});
}

Scalar MNSeries::coefficient(const GroupElement &x) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), x, [](const Term &t, const GroupElement &g) { return t.element < g; });
    if (it != terms_.end() && it->element == x) return it->coeff;
    return Scalar::zero(field());
}

MNSeries MNSeries::truncated(const Bound &b) const
{
    const Bound c = min_bound(cutoff_, b);
    std::vector<Term> kept;
    for (const Term &t : terms_) {
        if (!below(t.element, c)) break;
        kept.push_back(t);
    }
    return MNSeries(spec_, std::move(kept), c);
}

MNSeries MNSeries::operator-() const
{
    std::vector<Term> out = terms_;
    for (Term &t : out) t.coeff = -t.coeff;
    return MNSeries(spec_, std::move(out), cutoff_);
}

std::string MNSeries::to_string() const
{
    std::string out;
    for (const Term &t : terms_) {
        const auto [negative, magnitude] = split_sign(t.coeff);
        if (out.empty())
            out = negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        out += render_product(magnitude, t.element.is_identity() ? std::string() : t.element.to_string());
    }
    if (out.empty()) out = "0";
    return out + (cutoff_ ? " cutoff " + cutoff_->to_string() : " exact");
}

bool operator==(const MNSeries &a, const MNSeries &b)
{
    if (!a.spec_->same_ring(*b.spec_) || a.cutoff_ != b.cutoff_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].element == b.terms_[i].element) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
}

void require_same_ring(const MNSeries &a, const MNSeries &b)
{
    if (!a.spec().same_ring(b.spec())) fail(Errc::SpecMismatch, "series over " + a.spec().describe() + " and " + b.spec().describe());
}

MNSeries operator+(const MNSeries &a, const MNSeries &b)
{
    require_same_ring(a, b);
    const Bound cutoff = min_bound(a.cutoff(), b.cutoff());
    std::vector<Term> out;
    out.reserve(a.terms().size() + b.terms().size());
    auto i = a.terms().begin(), j = b.terms().begin();
    while (i != a.terms().end() || j != b.terms().end()) {
        if (j == b.terms().end() || (i != a.terms().end() && i->element < j->element)) {
            out.push_back(*i++);
        } else if (i == a.terms().end() || j->element < i->element) {
            out.push_back(*j++);
        } else {
            Scalar s = i->coeff + j->coeff;
            if (!s.is_zero()) out.push_back({i->element, std::move(s)});
            ++i;
            ++j;
        }
    }
    return MNSeries(a.spec_ptr(), std::move(out), cutoff);
}

MNSeries operator-(const MNSeries &a, const MNSeries &b)
{
    return a + (-b);
}

MNSeries operator*(const MNSeries &a, const MNSeries &b)
{
    require_same_ring(a, b);
    const Bound cutoff = min_bound(mul_bounds(omega_floor(a), b.cutoff()), mul_bounds(a.cutoff(), omega_floor(b)));
    const CrossedProductSpec &spec = a.spec();
    std::map<GroupElement, Scalar> acc;
    for (const Term &s : a.terms()) {
        for (const Term &t : b.terms()) {
            GroupElement x = s.element * t.element;
            // Left invariance: later terms of b only give larger products.
            if (!below(x, cutoff)) break;
            Term p = basis_term_mul(spec, s, t);
            auto [it, fresh] = acc.try_emplace(std::move(p.element), p.coeff);
            if (!fresh) it->second += p.coeff;
        }
    }
    return from_map(a.spec_ptr(), std::move(acc), cutoff);
}

MNSeries operator*(const Scalar &c, const MNSeries &a)
{
    return MNSeries::constant(a.spec_ptr(), c) * a;
}

bool agree_below_common_cutoff(const MNSeries &a, const MNSeries &b)
{
    const Bound c = min_bound(a.cutoff(), b.cutoff());
    return a.truncated(c) == b.truncated(c);
}

std::optional<GroupElement> omega(const MNSeries &f)
{
    if (f.terms().empty()) return std::nullopt;
    return f.terms().front().element;
}

Bound omega_floor(const MNSeries &f)
{
    if (f.terms().empty()) return f.cutoff();
    return f.terms().front().element;
}

std::optional<Integer> nu(const MNSeries &f, const ConvexJump &jump)
{
    const auto w = omega(f);
    if (!w) return std::nullopt;
    return archimedean_projection(jump, *w);
}

Rational distance(const MNSeries &a, const MNSeries &b, const ConvexJump &jump)
{
    const auto v = nu(a - b, jump);
    if (!v) return Rational(0);
    if (!v->fits_slong_p()) fail(Errc::InvalidArgument, "valuation out of range for the metric");
    const long n = v->get_si();
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n < 0 ? -n : n));
    return n < 0 ? Rational(p) : make_rational(Integer(1), p);
}

MNSeries invert(const MNSeries &f, const Bound &target, std::size_t max_terms)
{
    if (f.terms().empty()) fail(Errc::NoLeadingTerm, "series is zero below its cutoff " + to_string(f.cutoff()));
    const SpecPtr &spec = f.spec_ptr();
    const Term &lead = f.terms().front();
    const GroupElement x0inv = inverse(lead.element);
    // (x0, a0)(x0^-1, c) = (1, tau(x0, x0^-1) a0^sigma(x0^-1) c) = 1
    const Scalar c = (spec->tau(lead.element, x0inv) * spec->sigma(x0inv).apply(lead.coeff)).inverse();
    const MNSeries linv = MNSeries::monomial(spec, x0inv, c);
    const MNSeries g = linv * f - MNSeries::one(spec);

    // f^-1 = (sum (-g)^k) l^-1. With the sum exact below S, f^-1 is exact
    // below S x0^-1 and f f^-1 = 1 below x0 S x0^-1; S covers both targets.
    Bound s_bound;
    if (target) {
        const GroupElement a = *target * lead.element, b = x0inv * *target * lead.element;
        s_bound = a < b ? b : a;
    }
    if (!s_bound && !(g.is_zero() && g.is_exact()))
        fail(Errc::InsufficientPrecision, "an exact inverse exists only for monomials; give a target cutoff");
    if (bound_less(g.cutoff(), s_bound))
        fail(Errc::InsufficientPrecision, "input cutoff " + to_string(f.cutoff()) + " does not reach target " + to_string(target));

    const MNSeries minus_g = -g;
    MNSeries sum = MNSeries::one(spec).truncated(s_bound);
    MNSeries power = sum;
    bool converged = false;
    for (std::size_t k = 1; k <= max_terms; ++k) {
        power = (power * minus_g).truncated(s_bound);
        if (power.is_zero()) {
            converged = true;
            break;
        }
        sum = sum + power;
    }
    if (!converged)
        fail(Errc::NoConvergence, "powers of " + to_string(omega(g)) + " stay below " + to_string(s_bound) + " after " +
                                      std::to_string(max_terms) + " Neumann terms");
    return sum * linv;
}

MNSeries defined_sum(const SpecPtr &spec, const std::vector<SumPiece> &family)
{
    MNSeries out = MNSeries::zero(spec);
    const GroupElement e = GroupElement::identity(spec->group());
    int previous_jump = 0;
    for (std::size_t b = 0; b < family.size(); ++b) {
        const SumPiece &p = family[b];
        const std::string where = "piece " + std::to_string(b) + ": ";
        if (!(p.f.spec().same_ring(*spec))) fail(Errc::SpecMismatch, where + "series over " + p.f.spec().describe());
        if (!(e < p.t)) fail(Errc::PreconditionViolated, where + "t = " + p.t.to_string() + " is not > 1");
        const ConvexJump jump = principal_jump_of(p.t);
        if (jump.index <= previous_jump)
            fail(Errc::PreconditionViolated, where + "jumps must strictly increase (got " + std::to_string(jump.index) + " after " +
                                                 std::to_string(previous_jump) + ")");
        previous_jump = jump.index;
        for (const Term &t : p.f.terms()) {
            if (t.element < e) fail(Errc::PreconditionViolated, where + "support element " + t.element.to_string() + " < 1");
            if (!jump.in_upper(t.element))
                fail(Errc::PreconditionViolated, where + "support element " + t.element.to_string() + " outside H of " + jump.describe());
        }
        MNSeries piece = MNSeries::monomial(spec, p.t, Scalar::one(spec->field())) * p.f;
        // Disjointness: everything of the later piece lies above the earlier one.
        if (!out.terms().empty() && !piece.terms().empty() && !(out.terms().back().element < piece.terms().front().element))
            fail(Errc::PreconditionViolated, where + "supports are not separated");
        out = out + piece;
    }
    return out;
}

MNSeries cauchy_limit(const SeriesSequence &seq, const Modulus &modulus, const ConvexJump &jump, const GroupElement &target)
{
    const Integer top = archimedean_projection(jump, target);
    if (!top.fits_slong_p()) fail(Errc::InvalidArgument, "target projection out of range");
    const long kmax = std::max(0L, top.get_si());

    std::vector<std::size_t> n;
    for (long k = 0; k <= kmax + 1; ++k) {
        n.push_back(modulus(static_cast<std::size_t>(k)));
        if (k > 0 && n[k] <= n[k - 1]) fail(Errc::PreconditionViolated, "modulus must be strictly increasing");
    }

    const GroupElement e = GroupElement::identity(jump.group);
    std::vector<MNSeries> u;
    for (std::size_t n_k : n) u.push_back(seq(n_k).truncated(target));

    const SpecPtr spec = u.front().spec_ptr();
    Bound cutoff = target;
    std::vector<Term> terms;
    for (long k = 0; k <= kmax; ++k) {
        const MNSeries &cur = u[static_cast<std::size_t>(k)];
        const MNSeries &next = u[static_cast<std::size_t>(k) + 1];
        require_same_ring(cur, next);
        auto region = [&](const GroupElement &x) { return archimedean_projection(jump, x) <= k; };

        const MNSeries diff = (cur - next);
        for (const Term &t : diff.terms())
            if (region(t.element))
                fail(Errc::NotCauchy, "u_" + std::to_string(n[k]) + " and u_" + std::to_string(n[k + 1]) + " differ at " +
                                          t.element.to_string() + " (pi = " + archimedean_projection(jump, t.element).get_str() +
                                          " <= " + std::to_string(k) + ")");
        for (const Term &t : cur.terms()) {
            const Integer p = archimedean_projection(jump, t.element);
            if ((k == 0 && p <= 0) || (k > 0 && p == k)) terms.push_back(t);
        }
        // The region pi <= k is only partly known when the cutoff sits inside it.
        if (const Bound &c = cur.cutoff()) {
            const bool covers = jump.in_upper(*c) ? archimedean_projection(jump, *c) > k : e < *c;
            if (!covers) cutoff = min_bound(cutoff, c);
        }
    }
    return MNSeries(spec, std::move(terms), cutoff);
}

} // namespace mns
