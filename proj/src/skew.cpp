#include <mnseries/skew.hpp>

#include <algorithm>
#include <map>
#include <sstream>

#include <mnseries/error.hpp>
#include <mnseries/render.hpp>

namespace mns
{

// ---------------------------------------------------------------- rings

SkewRing SkewRing::make(const Field &f, const EndoSpec &sigma, const DerivSpec &delta)
{
    const Scalar one = Scalar::one(f);
    sigma.apply(one);
    delta.apply(one);
    if (!delta.is_zero()) {
        const RatFunc t = RatFunc::t();
        const std::vector<Scalar> s = {Scalar(t), Scalar(t * t + RatFunc(Rational(1))), Scalar((t + RatFunc(Rational(1))).inverse()),
                                       Scalar(RatFunc(make_rational(3, 2)))};
        std::vector<std::pair<Scalar, Scalar>> pairs;
        for (const auto &a : s)
            for (const auto &b : s) pairs.emplace_back(a, b);
        const auto bad = check_sigma_derivation(sigma, delta, pairs);
        if (!bad.empty())
            fail(Errc::PreconditionViolated, delta.to_string() + " is not a " + sigma.to_string() + "-derivation: delta(" +
                                                 bad.front().a.to_string() + " * " + bad.front().b.to_string() + ") = " +
                                                 bad.front().lhs.to_string() + " != " + bad.front().rhs.to_string());
    }
    return SkewRing{f, sigma, delta, 8};
}

std::string SkewRing::to_string() const
{
    return "skewpoly sigma=" + sigma.to_string() + " delta=" + delta.to_string();
}

SkewRing parse_skew_ring(std::string_view text, const Field &field)
{
    std::istringstream in{std::string(text)};
    std::string word;
    EndoSpec sigma = EndoSpec::identity();
    DerivSpec delta = DerivSpec::zero();
    bool first = true;
    while (in >> word) {
        if (first && word == "skewpoly") {
            first = false;
            continue;
        }
        first = false;
        if (word.rfind("sigma=", 0) == 0)
            sigma = parse_endo(std::string_view(word).substr(6));
        else if (word.rfind("delta=", 0) == 0)
            delta = parse_deriv(std::string_view(word).substr(6));
        else
            fail(Errc::InvalidArgument, "unknown ring option '" + word + "' (expected sigma=<endo> delta=<zero|ddt>)");
    }
    return SkewRing::make(field, sigma, delta);
}

namespace
{

void require_same(const SkewRing &a, const SkewRing &b)
{
    if (!a.same(b)) fail(Errc::SpecMismatch, "elements of " + a.to_string() + " and " + b.to_string());
}

std::string y_power(long i, char var)
{
    if (i == 0) return "";
    if (i == 1) return std::string(1, var);
    return std::string(1, var) + "^" + std::to_string(i);
}

// Joins (negative, text) pieces into a signed sum.
std::string join_signed(const std::vector<std::pair<bool, std::string>> &parts)
{
    std::string out;
    for (const auto &[negative, text] : parts) {
        if (out.empty())
            out = negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        out += text;
    }
    return out.empty() ? "0" : out;
}

using IndexMap = std::map<long, Scalar>;

void accumulate(IndexMap &m, long i, const Scalar &a)
{
    if (a.is_zero()) return;
    auto [it, fresh] = m.try_emplace(i, a);
    if (!fresh) {
        it->second += a;
        if (it->second.is_zero()) m.erase(it);
    }
}

std::vector<std::pair<long, Scalar>> to_terms(const IndexMap &m)
{
    return {m.begin(), m.end()};
}

bool index_below(long i, const IndexBound &b)
{
    return !b || i < *b;
}

IndexBound add_bounds(const IndexBound &a, const IndexBound &b)
{
    if (!a || !b) return std::nullopt;
    return *a + *b;
}

std::vector<std::pair<long, Scalar>> normalize(const Field &f, std::vector<std::pair<long, Scalar>> terms, const IndexBound &cutoff)
{
    IndexMap m;
    for (auto &[i, a] : terms) {
        if (!(a.field() == f)) fail(Errc::VariantMismatch, "coefficient " + a.to_string() + " is not in " + f.to_string());
        if (index_below(i, cutoff)) accumulate(m, i, a);
    }
    return to_terms(m);
}

Scalar lookup(const std::vector<std::pair<long, Scalar>> &terms, long i, const Field &f)
{
    auto it = std::lower_bound(terms.begin(), terms.end(), i, [](const auto &t, long k) { return t.first < k; });
    if (it != terms.end() && it->first == i) return it->second;
    return Scalar::zero(f);
}

// Lower bound for the least index; +infinity only for an exact zero.
IndexBound omega_floor(const std::vector<std::pair<long, Scalar>> &terms, const IndexBound &cutoff)
{
    if (terms.empty()) return cutoff;
    return terms.front().first;
}

// y (sum c_k y^k), keeping indices below `limit`. Sets `lost` when a nonzero
// coefficient is dropped.
IndexMap y_times(const SkewRing &ring, const IndexMap &c, long limit, bool &lost)
{
    IndexMap out;
    for (const auto &[k, a] : c) {
        Scalar d = a;
        for (long j = 0; !d.is_zero(); ++j) {
            if (k + j + 1 >= limit) {
                lost = true;
                break;
            }
            accumulate(out, k + j + 1, ring.sigma.apply(d));
            if (ring.delta.is_zero()) break;
            d = ring.delta.apply(d);
        }
    }
    return out;
}

// y^-1 (sum c_k y^k) via y^-1 a = sigma^-1(a) y^-1 - delta(sigma^-1(a)).
IndexMap yinv_times(const SkewRing &ring, const IndexMap &c, long limit, bool &lost)
{
    const EndoSpec inv = ring.sigma.inverse();
    IndexMap out;
    for (const auto &[k, a] : c) {
        const Scalar b = inv.apply(a);
        if (k - 1 < limit)
            accumulate(out, k - 1, b);
        else
            lost = true;
        const Scalar d = ring.delta.apply(b);
        if (d.is_zero()) continue;
        if (k < limit)
            accumulate(out, k, -d);
        else
            lost = true;
    }
    return out;
}

// y^i b as a left-normal-form map, indices below limit.
IndexMap y_power_times(const SkewRing &ring, long i, const Scalar &b, long limit, bool &lost)
{
    IndexMap cur;
    if (!b.is_zero()) cur.emplace(0, b);
    const long steps = i < 0 ? -i : i;
    // y^-1 lowers indices by at most one per step, so intermediate terms may
    // sit above the final limit.
    for (long s = 0; s < steps && !cur.empty(); ++s)
        cur = i > 0 ? y_times(ring, cur, limit, lost) : yinv_times(ring, cur, limit + (steps - s - 1), lost);
    for (auto it = cur.begin(); it != cur.end();) {
        if (it->first >= limit) {
            lost = true;
            it = cur.erase(it);
        } else {
            ++it;
        }
    }
    return cur;
}

} // namespace

// ---------------------------------------------------------------- SkewPoly

SkewPoly::SkewPoly(SkewRing ring, std::vector<Scalar> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs))
{
    for (const Scalar &c : coeffs_)
        if (!(c.field() == ring_.field)) fail(Errc::VariantMismatch, "coefficient " + c.to_string() + " is not in " + ring_.field.to_string());
    trim();
}

SkewPoly SkewPoly::constant(const SkewRing &ring, const Scalar &c)
{
    return SkewPoly(ring, {c});
}

SkewPoly SkewPoly::x(const SkewRing &ring)
{
    return SkewPoly(ring, {Scalar::zero(ring.field), Scalar::one(ring.field)});
}

void SkewPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar SkewPoly::coeff(std::size_t i) const
{
    return i < coeffs_.size() ? coeffs_[i] : Scalar::zero(ring_.field);
}

long SkewPoly::order() const
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return static_cast<long>(i);
    return -1;
}

SkewPoly SkewPoly::operator-() const
{
    std::vector<Scalar> c = coeffs_;
    for (auto &v : c) v = -v;
    return SkewPoly(ring_, std::move(c));
}

SkewPoly operator+(const SkewPoly &a, const SkewPoly &b)
{
    require_same(a.ring_, b.ring_);
    std::vector<Scalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar::zero(a.ring_.field));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return SkewPoly(a.ring_, std::move(c));
}

SkewPoly operator-(const SkewPoly &a, const SkewPoly &b)
{
    return a + (-b);
}

SkewPoly operator*(const SkewPoly &a, const SkewPoly &b)
{
    require_same(a.ring_, b.ring_);
    const SkewRing &ring = a.ring_;
    const Scalar zero = Scalar::zero(ring.field);
    if (a.is_zero() || b.is_zero()) return SkewPoly(ring, {});
    std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, zero);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        // c x^j in right normal form, pushed one x at a time:
        // (sum x^k e_k) x = sum x^{k+1} sigma(e_k) + x^k delta(e_k).
        std::vector<Scalar> push = {a.coeffs_[i]};
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (j > 0) {
                std::vector<Scalar> next(push.size() + 1, zero);
                for (std::size_t k = 0; k < push.size(); ++k) {
                    next[k + 1] += ring.sigma.apply(push[k]);
                    next[k] += ring.delta.apply(push[k]);
                }
                push = std::move(next);
            }
            if (b.coeffs_[j].is_zero()) continue;
            for (std::size_t k = 0; k < push.size(); ++k)
                if (!push[k].is_zero()) out[i + k] += push[k] * b.coeffs_[j];
        }
    }
    return SkewPoly(ring, std::move(out));
}

bool operator==(const SkewPoly &a, const SkewPoly &b)
{
    return a.ring_.same(b.ring_) && a.coeffs_ == b.coeffs_;
}

std::string SkewPoly::to_string() const
{
    std::vector<std::pair<bool, std::string>> parts;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        if (coeffs_[k].is_zero()) continue;
        const auto [negative, magnitude] = split_sign(coeffs_[k]);
        const std::string xp = y_power(static_cast<long>(k), 'x');
        std::string text;
        if (xp.empty())
            text = magnitude.to_coefficient_string();
        else if (magnitude.is_one())
            text = xp;
        else
            text = xp + "*" + magnitude.to_coefficient_string();
        parts.emplace_back(negative, text);
    }
    return join_signed(parts);
}

// ---------------------------------------------------------------- SkewLaurent

IndexBound min_index_bound(const IndexBound &a, const IndexBound &b)
{
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

std::string to_string(const IndexBound &b)
{
    return b ? std::to_string(*b) : "exact";
}

SkewLaurent::SkewLaurent(SkewRing ring, std::vector<std::pair<long, Scalar>> terms, IndexBound cutoff)
    : ring_(std::move(ring)), terms_(normalize(ring_.field, std::move(terms), cutoff)), cutoff_(cutoff)
{
}

SkewLaurent SkewLaurent::zero(const SkewRing &ring, IndexBound cutoff)
{
    return SkewLaurent(ring, {}, cutoff);
}

SkewLaurent SkewLaurent::constant(const SkewRing &ring, const Scalar &c)
{
    return SkewLaurent(ring, {{0, c}});
}

SkewLaurent SkewLaurent::monomial(const SkewRing &ring, const Scalar &a, long i)
{
    return SkewLaurent(ring, {{i, a}});
}

Scalar SkewLaurent::coeff(long i) const
{
    return lookup(terms_, i, ring_.field);
}

SkewLaurent SkewLaurent::truncated(const IndexBound &n) const
{
    return SkewLaurent(ring_, terms_, min_index_bound(cutoff_, n));
}

SkewLaurent SkewLaurent::operator-() const
{
    auto t = terms_;
    for (auto &[i, a] : t) a = -a;
    return SkewLaurent(ring_, std::move(t), cutoff_);
}

std::string SkewLaurent::to_string() const
{
    std::vector<std::pair<bool, std::string>> parts;
    for (const auto &[i, a] : terms_) {
        const auto [negative, magnitude] = split_sign(a);
        parts.emplace_back(negative, render_product(magnitude, y_power(i, 'y')));
    }
    return join_signed(parts) + (cutoff_ ? " cutoff " + std::to_string(*cutoff_) : " exact");
}

bool operator==(const SkewLaurent &a, const SkewLaurent &b)
{
    return a.ring_.same(b.ring_) && a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
}

void require_same_ring(const SkewLaurent &a, const SkewLaurent &b)
{
    require_same(a.ring(), b.ring());
}

bool agree_below_common_cutoff(const SkewLaurent &a, const SkewLaurent &b)
{
    const IndexBound c = min_index_bound(a.cutoff(), b.cutoff());
    return a.truncated(c) == b.truncated(c);
}

SkewLaurent operator+(const SkewLaurent &a, const SkewLaurent &b)
{
    require_same_ring(a, b);
    auto t = a.terms();
    t.insert(t.end(), b.terms().begin(), b.terms().end());
    return SkewLaurent(a.ring(), std::move(t), min_index_bound(a.cutoff(), b.cutoff()));
}

SkewLaurent operator-(const SkewLaurent &a, const SkewLaurent &b)
{
    return a + (-b);
}

SkewLaurent commute_y_past(const SkewRing &ring, const Scalar &a, long n)
{
    bool lost = false;
    IndexMap c;
    if (!a.is_zero()) c.emplace(0, a);
    const IndexMap out = y_times(ring, c, n + 1, lost);
    return SkewLaurent(ring, to_terms(out), lost ? IndexBound(n + 1) : std::nullopt);
}

SkewLaurent commute_yinv_past(const SkewRing &ring, const Scalar &a, long n)
{
    if (n < 0) fail(Errc::InvalidArgument, "negative expansion length");
    // Coefficient of y^m in y (sum c_i y^i) is sum_{j=0}^m sigma delta^j (c_{m-1-j}).
    std::vector<Scalar> c; // c[i + 1] = c_i
    c.push_back(ring.sigma.inverse().apply(a));
    for (long m = 1; m <= n; ++m) {
        Scalar acc = Scalar::zero(ring.field);
        for (long j = 1; j <= m; ++j) {
            Scalar d = c[static_cast<std::size_t>(m - j)];
            for (long s = 0; s < j && !d.is_zero(); ++s) d = ring.delta.apply(d);
            acc += d;
        }
        c.push_back(-acc);
    }
    std::vector<std::pair<long, Scalar>> terms;
    for (std::size_t i = 0; i < c.size(); ++i) terms.emplace_back(static_cast<long>(i) - 1, c[i]);
    return SkewLaurent(ring, std::move(terms), n);
}

SkewLaurent laurent_mul(const SkewLaurent &f, const SkewLaurent &g, IndexBound cap)
{
    require_same_ring(f, g);
    const SkewRing &ring = f.ring();
    const IndexBound wf = omega_floor(f.terms(), f.cutoff());
    const IndexBound wg = omega_floor(g.terms(), g.cutoff());
    const IndexBound formal = min_index_bound(add_bounds(wf, g.cutoff()), add_bounds(f.cutoff(), wg));
    if (f.terms().empty() || g.terms().empty()) return SkewLaurent::zero(ring, formal);

    long limit;
    if (formal)
        limit = *formal;
    else
        limit = cap ? *cap : *wf + *wg + ring.precision;
    if (formal && cap) limit = std::min(limit, *cap);

    // Exact factors without a cap: each pair keeps `precision` powers past
    // its own leading index and the cut lands at the first lossy pair.
    const bool adaptive = !formal && !cap;
    bool lost = false;
    IndexBound lossy;
    IndexMap out;
    for (const auto &[i, a] : f.terms()) {
        for (const auto &[j, b] : g.terms()) {
            long pair_limit = limit;
            if (adaptive)
                pair_limit = std::max(limit, i + j + ring.precision);
            else if (i + j >= limit) {
                lost = true;
                break;
            }
            bool pair_lost = false;
            const IndexMap e = y_power_times(ring, i, b, pair_limit - j, pair_lost);
            if (pair_lost) {
                lost = true;
                lossy = min_index_bound(lossy, pair_limit);
            }
            for (const auto &[k, c] : e) accumulate(out, k + j, a * c);
        }
    }
    IndexBound cutoff = formal;
    if (!formal && lost) cutoff = adaptive ? lossy : IndexBound(limit);
    if (formal && cap && *cap < *formal) cutoff = cap;
    return SkewLaurent(ring, to_terms(out), cutoff);
}

std::optional<long> laurent_omega(const SkewLaurent &f)
{
    if (f.terms().empty()) return std::nullopt;
    return f.terms().front().first;
}

SkewLaurent laurent_invert(const SkewLaurent &f, long target)
{
    if (f.terms().empty()) fail(Errc::NoLeadingTerm, "series is zero below its cutoff " + to_string(f.cutoff()));
    const SkewRing &ring = f.ring();
    const long r = f.terms().front().first;
    const Scalar ar = f.terms().front().second;
    // f = a_r y^r (1 + g), (a_r y^r)^-1 = y^-r a_r^-1. The inverse is kept
    // below max(target, target - r) so that f f^-1 = 1 below target as well.
    const long inv_target = std::max(target, target - r);
    const long guard = inv_target + (r < 0 ? -r : r) + 2;
    const SkewLaurent linv = laurent_mul(SkewLaurent::monomial(ring, Scalar::one(ring.field), -r), SkewLaurent::constant(ring, ar.inverse()), guard);
    const SkewLaurent g = laurent_mul(linv, f, guard) - SkewLaurent::constant(ring, Scalar::one(ring.field));
    if (g.is_zero() && g.is_exact() && linv.is_exact()) return linv;

    const long s_bound = inv_target + r;
    if (!index_below(s_bound - 1, g.cutoff()))
        fail(Errc::InsufficientPrecision, "input cutoff " + to_string(f.cutoff()) + " does not reach target " + std::to_string(target) +
                                              " (needs " + std::to_string(s_bound + r) + ")");
    const SkewLaurent minus_g = -g;
    SkewLaurent sum = SkewLaurent::constant(ring, Scalar::one(ring.field)).truncated(s_bound);
    SkewLaurent power = sum;
    // omega(g) >= 1, so at most s_bound steps.
    for (long k = 1; k <= std::max(s_bound, 0L) + 1; ++k) {
        power = laurent_mul(power, minus_g, s_bound).truncated(s_bound);
        if (power.is_zero()) break;
        sum = sum + power;
    }
    if (!power.is_zero()) fail(Errc::NoConvergence, "Neumann series did not terminate");
    return laurent_mul(sum, linv, inv_target).truncated(inv_target);
}

SkewLaurent embed_poly(const SkewPoly &p)
{
    const SkewRing &ring = p.ring();
    bool lost = false;
    IndexMap out;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        const IndexMap e = y_power_times(ring, -static_cast<long>(i), p.coeffs()[i], 1, lost);
        for (const auto &[k, c] : e) accumulate(out, k, c);
    }
    return SkewLaurent(ring, to_terms(out));
}

SkewLaurent laurent_cauchy_limit(const LaurentSequence &seq, const LaurentModulus &modulus, long target)
{
    const long last = std::max(target, 1L);
    std::vector<std::size_t> n;
    std::vector<SkewLaurent> u;
    for (long k = 0; k <= last; ++k) {
        n.push_back(modulus(static_cast<std::size_t>(k)));
        if (k > 0 && n[k] <= n[k - 1]) fail(Errc::PreconditionViolated, "modulus must be strictly increasing");
        u.push_back(seq(n.back()).truncated(target));
    }
    for (long k = 0; k < last; ++k) {
        const SkewLaurent diff = u[k] - u[k + 1];
        const auto w = laurent_omega(diff);
        if (w && *w <= k)
            fail(Errc::NotCauchy, "u_" + std::to_string(n[k]) + " and u_" + std::to_string(n[k + 1]) + " differ at y^" + std::to_string(*w) +
                                      " (needs omega > " + std::to_string(k) + ")");
    }
    IndexBound cutoff = target;
    std::vector<std::pair<long, Scalar>> terms;
    for (const auto &[i, a] : u[0].terms())
        if (i < 0) terms.emplace_back(i, a);
    if (!index_below(-1, u[0].cutoff())) cutoff = min_index_bound(cutoff, u[0].cutoff());
    for (long i = 0; i < target; ++i) {
        const SkewLaurent &src = u[static_cast<std::size_t>(i)];
        if (!index_below(i, src.cutoff())) {
            cutoff = min_index_bound(cutoff, i);
            break;
        }
        terms.emplace_back(i, src.coeff(i));
    }
    return SkewLaurent(u[0].ring(), std::move(terms), cutoff);
}

// ---------------------------------------------------------------- K((x; sigma))

XSeries::XSeries(SkewRing ring, std::vector<std::pair<long, Scalar>> terms, IndexBound cutoff)
    : ring_(std::move(ring)), cutoff_(cutoff)
{
    if (!ring_.delta.is_zero()) fail(Errc::DeltaNotZero, "K((x; sigma)) needs delta = 0, got " + ring_.delta.to_string());
    terms_ = normalize(ring_.field, std::move(terms), cutoff_);
}

XSeries XSeries::monomial(const SkewRing &ring, long i, const Scalar &a)
{
    return XSeries(ring, {{i, a}});
}

Scalar XSeries::coeff(long i) const
{
    return lookup(terms_, i, ring_.field);
}

XSeries XSeries::truncated(const IndexBound &n) const
{
    return XSeries(ring_, terms_, min_index_bound(cutoff_, n));
}

XSeries XSeries::operator-() const
{
    auto t = terms_;
    for (auto &[i, a] : t) a = -a;
    return XSeries(ring_, std::move(t), cutoff_);
}

std::string XSeries::to_string() const
{
    std::vector<std::pair<bool, std::string>> parts;
    for (const auto &[i, a] : terms_) {
        const auto [negative, magnitude] = split_sign(a);
        const std::string xp = y_power(i, 'x');
        std::string text;
        if (xp.empty())
            text = magnitude.to_coefficient_string();
        else if (magnitude.is_one())
            text = xp;
        else
            text = xp + "*" + magnitude.to_coefficient_string();
        parts.emplace_back(negative, text);
    }
    return join_signed(parts) + (cutoff_ ? " cutoff " + std::to_string(*cutoff_) : " exact");
}

XSeries operator+(const XSeries &a, const XSeries &b)
{
    require_same(a.ring_, b.ring_);
    auto t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return XSeries(a.ring_, std::move(t), min_index_bound(a.cutoff_, b.cutoff_));
}

XSeries operator-(const XSeries &a, const XSeries &b)
{
    return a + (-b);
}

XSeries operator*(const XSeries &a, const XSeries &b)
{
    require_same(a.ring_, b.ring_);
    const IndexBound cutoff = min_index_bound(add_bounds(omega_floor(a.terms_, a.cutoff_), b.cutoff_), add_bounds(a.cutoff_, omega_floor(b.terms_, b.cutoff_)));
    IndexMap out;
    for (const auto &[i, x] : a.terms_)
        for (const auto &[j, y] : b.terms_) {
            if (!index_below(i + j, cutoff)) break;
            accumulate(out, i + j, a.ring_.sigma.power(j).apply(x) * y);
        }
    return XSeries(a.ring_, to_terms(out), cutoff);
}

bool operator==(const XSeries &a, const XSeries &b)
{
    return a.ring_.same(b.ring_) && a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
}

bool agree_below_common_cutoff(const XSeries &a, const XSeries &b)
{
    const IndexBound c = min_index_bound(a.cutoff(), b.cutoff());
    return a.truncated(c) == b.truncated(c);
}

XSeries xseries_invert(const XSeries &f, long target)
{
    if (f.terms().empty()) fail(Errc::NoLeadingTerm, "series is zero below its cutoff " + to_string(f.cutoff()));
    const SkewRing &ring = f.ring();
    const long r = f.terms().front().first;
    const Scalar &ar = f.terms().front().second;
    // (x^r a)(x^-r c) = sigma^-r(a) c = 1
    const XSeries linv = XSeries::monomial(ring, -r, ring.sigma.power(-r).apply(ar).inverse());
    const XSeries g = linv * f - XSeries::monomial(ring, 0, Scalar::one(ring.field));
    if (g.is_zero() && !g.cutoff()) return linv;
    const long inv_target = std::max(target, target - r);
    const long s_bound = inv_target + r;
    if (!index_below(s_bound - 1, g.cutoff()))
        fail(Errc::InsufficientPrecision, "input cutoff " + to_string(f.cutoff()) + " does not reach target " + std::to_string(target));
    const XSeries minus_g = -g;
    XSeries sum = XSeries::monomial(ring, 0, Scalar::one(ring.field)).truncated(s_bound);
    XSeries power = sum;
    for (long k = 1; k <= std::max(s_bound, 0L) + 1; ++k) {
        power = (power * minus_g).truncated(s_bound);
        if (power.is_zero()) break;
        sum = sum + power;
    }
    return (sum * linv).truncated(inv_target);
}

XSeries to_xseries(const SkewPoly &p)
{
    std::vector<std::pair<long, Scalar>> terms;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) terms.emplace_back(static_cast<long>(i), p.coeffs()[i]);
    return XSeries(p.ring(), std::move(terms));
}

std::optional<long> zeta(const XSeries &h)
{
    if (h.terms().empty()) return std::nullopt;
    return h.terms().front().first;
}

std::optional<long> eta(const SkewPoly &f, const SkewPoly &g)
{
    require_same(f.ring(), g.ring());
    if (!f.ring().delta.is_zero()) fail(Errc::DeltaNotZero, "eta needs delta = 0, got " + f.ring().delta.to_string());
    if (g.is_zero()) fail(Errc::DivisionByZero, "eta(f g^-1) with g = 0");
    if (f.is_zero()) return std::nullopt;
    return f.order() - g.order();
}

SkewRing weyl_ring()
{
    return SkewRing::make(Field::ratfunc(), EndoSpec::identity(), DerivSpec::ddt());
}

SkewPoly weyl_x1()
{
    return SkewPoly::constant(weyl_ring(), Scalar(RatFunc::t()));
}

SkewPoly weyl_x2()
{
    return SkewPoly::x(weyl_ring());
}

SkewPoly commutator(const SkewPoly &a, const SkewPoly &b)
{
    return a * b - b * a;
}

} // namespace mns
