#ifndef MNSERIES_SKEW_HPP
#define MNSERIES_SKEW_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <mnseries/scalar.hpp>

namespace mns
{

// Coefficient field with a twisting automorphism sigma and a sigma-derivation
// delta. `precision` is the number of extra y-powers kept when a product of
// exact Laurent series does not terminate.
struct SkewRing {
    Field field;
    EndoSpec sigma = EndoSpec::identity();
    DerivSpec delta = DerivSpec::zero();
    long precision = 8;

    // Checks that sigma and delta act on the field and satisfy the Leibniz law
    // on sample pairs (PreconditionViolated otherwise).
    static SkewRing make(const Field &f, const EndoSpec &sigma, const DerivSpec &delta);

    // skewpoly sigma=id delta=ddt
    std::string to_string() const;
    bool same(const SkewRing &o) const { return field == o.field && sigma == o.sigma && delta == o.delta; }
};

// "skewpoly sigma=<id|shift|shift:c|qdil:q|conj:u> delta=<zero|ddt>"; field given separately.
SkewRing parse_skew_ring(std::string_view text, const Field &field);

// Element of K[x; sigma, delta] in right normal form sum x^i c_i, with
// a x = x sigma(a) + delta(a).
class SkewPoly
{
public:
    SkewPoly(SkewRing ring, std::vector<Scalar> coeffs);

    static SkewPoly constant(const SkewRing &ring, const Scalar &c);
    static SkewPoly x(const SkewRing &ring);

    const SkewRing &ring() const noexcept { return ring_; }
    const std::vector<Scalar> &coeffs() const noexcept { return coeffs_; }
    Scalar coeff(std::size_t i) const;
    bool is_zero() const noexcept { return coeffs_.empty(); }
    // -1 for zero.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    // Least i with c_i != 0; -1 for zero.
    long order() const;

    SkewPoly operator-() const;
    friend SkewPoly operator+(const SkewPoly &a, const SkewPoly &b);
    friend SkewPoly operator-(const SkewPoly &a, const SkewPoly &b);
    friend SkewPoly operator*(const SkewPoly &a, const SkewPoly &b);
    friend bool operator==(const SkewPoly &a, const SkewPoly &b);

    // x^2*t + x + 1
    std::string to_string() const;

private:
    void trim();

    SkewRing ring_;
    std::vector<Scalar> coeffs_;
};

// Integer truncation marker: coefficients with index < N are exact.
// std::nullopt is +infinity.
using IndexBound = std::optional<long>;

IndexBound min_index_bound(const IndexBound &a, const IndexBound &b);
std::string to_string(const IndexBound &b);

// Truncated element of K((y; sigma, delta)), y = x^-1, in left normal form
// sum a_i y^i with y a = sum_{i >= 0} sigma delta^i (a) y^{i+1}.
class SkewLaurent
{
public:
    // Index/coefficient pairs; merged, zeros and indices >= cutoff dropped.
    SkewLaurent(SkewRing ring, std::vector<std::pair<long, Scalar>> terms, IndexBound cutoff = std::nullopt);

    static SkewLaurent zero(const SkewRing &ring, IndexBound cutoff = std::nullopt);
    static SkewLaurent constant(const SkewRing &ring, const Scalar &c);
    static SkewLaurent monomial(const SkewRing &ring, const Scalar &a, long i);

    const SkewRing &ring() const noexcept { return ring_; }
    // Ascending by index, nonzero coefficients.
    const std::vector<std::pair<long, Scalar>> &terms() const noexcept { return terms_; }
    const IndexBound &cutoff() const noexcept { return cutoff_; }
    bool is_exact() const noexcept { return !cutoff_.has_value(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    Scalar coeff(long i) const;

    SkewLaurent truncated(const IndexBound &n) const;
    SkewLaurent operator-() const;

    // t*y^2 + y^5 cutoff 7
    std::string to_string() const;

    friend bool operator==(const SkewLaurent &a, const SkewLaurent &b);

private:
    SkewRing ring_;
    std::vector<std::pair<long, Scalar>> terms_;
    IndexBound cutoff_;
};

void require_same_ring(const SkewLaurent &a, const SkewLaurent &b);
bool agree_below_common_cutoff(const SkewLaurent &a, const SkewLaurent &b);

SkewLaurent operator+(const SkewLaurent &a, const SkewLaurent &b);
SkewLaurent operator-(const SkewLaurent &a, const SkewLaurent &b);

// y a up to y^n: exact when delta^i(a) vanishes early, cutoff n + 1 otherwise.
SkewLaurent commute_y_past(const SkewRing &ring, const Scalar &a, long n);
// y^-1 a = sum_{i >= -1} c_i y^i solved from y (y^-1 a) = a, coefficients up
// to y^{n-1}; cutoff n. Throws NonInvertibleSigma.
SkewLaurent commute_yinv_past(const SkewRing &ring, const Scalar &a, long n);

// Product in left normal form. The cutoff is min(w(f) + N_g, N_f + w(g));
// when both factors are exact and some y a expansion does not terminate the
// result is cut at `cap` (default w(f) + w(g) + ring.precision).
SkewLaurent laurent_mul(const SkewLaurent &f, const SkewLaurent &g, IndexBound cap = std::nullopt);
inline SkewLaurent operator*(const SkewLaurent &a, const SkewLaurent &b)
{
    return laurent_mul(a, b);
}

// Least index with a nonzero coefficient; nullopt for zero below the cutoff.
std::optional<long> laurent_omega(const SkewLaurent &f);
// Exact below target. NoLeadingTerm, InsufficientPrecision.
SkewLaurent laurent_invert(const SkewLaurent &f, long target);

// x -> y^-1. Throws NonInvertibleSigma.
SkewLaurent embed_poly(const SkewPoly &p);

using LaurentSequence = std::function<SkewLaurent(std::size_t)>;
using LaurentModulus = std::function<std::size_t(std::size_t)>;

// u = sum_{i<0} a_i^(n_0) y^i + sum_{0 <= i < target} a_i^(n_i) y^i.
SkewLaurent laurent_cauchy_limit(const LaurentSequence &seq, const LaurentModulus &modulus, long target);

// Truncated element sum_{i >= r} x^i a_i of K((x; sigma)), delta = 0, with
// (x^i a)(x^j b) = x^{i+j} sigma^j(a) b.
class XSeries
{
public:
    // Throws DeltaNotZero.
    XSeries(SkewRing ring, std::vector<std::pair<long, Scalar>> terms, IndexBound cutoff = std::nullopt);

    static XSeries monomial(const SkewRing &ring, long i, const Scalar &a);

    const SkewRing &ring() const noexcept { return ring_; }
    const std::vector<std::pair<long, Scalar>> &terms() const noexcept { return terms_; }
    const IndexBound &cutoff() const noexcept { return cutoff_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Scalar coeff(long i) const;

    XSeries truncated(const IndexBound &n) const;
    XSeries operator-() const;
    std::string to_string() const;

    friend XSeries operator+(const XSeries &a, const XSeries &b);
    friend XSeries operator-(const XSeries &a, const XSeries &b);
    friend XSeries operator*(const XSeries &a, const XSeries &b);
    friend bool operator==(const XSeries &a, const XSeries &b);

private:
    SkewRing ring_;
    std::vector<std::pair<long, Scalar>> terms_;
    IndexBound cutoff_;
};

bool agree_below_common_cutoff(const XSeries &a, const XSeries &b);
XSeries xseries_invert(const XSeries &f, long target);
// Polynomial sum x^i c_i read as an exact element of K((x; sigma)). DeltaNotZero.
XSeries to_xseries(const SkewPoly &p);

// zeta(h) = sup{n : h in x^n K[[x; sigma]]}: the least index; nullopt for 0.
std::optional<long> zeta(const XSeries &h);
// eta(f g^-1) = o(f) - o(g), nullopt for f = 0. DeltaNotZero; DivisionByZero for g = 0.
std::optional<long> eta(const SkewPoly &f, const SkewPoly &g);

// Weyl algebra B = Q(x1)[x2; id, d/dx1] with x1 = t.
SkewRing weyl_ring();
SkewPoly weyl_x1();
SkewPoly weyl_x2();
SkewPoly commutator(const SkewPoly &a, const SkewPoly &b);

} // namespace mns

#endif
