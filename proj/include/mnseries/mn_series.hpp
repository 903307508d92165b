#ifndef MNSERIES_MN_SERIES_HPP
#define MNSERIES_MN_SERIES_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <mnseries/crossed_product.hpp>
#include <mnseries/group.hpp>
#include <mnseries/scalar.hpp>

namespace mns
{

// Truncation marker: coefficients strictly below the bound are exact.
// std::nullopt stands for +infinity, i.e. an exact finite-support element.
using Bound = std::optional<GroupElement>;

bool bound_less(const Bound &a, const Bound &b);
Bound min_bound(const Bound &a, const Bound &b);
// x * bound and bound * x; infinity is absorbing.
Bound left_shift(const GroupElement &x, const Bound &b);
Bound right_shift(const Bound &b, const GroupElement &x);
bool below(const GroupElement &x, const Bound &b);
std::string to_string(const Bound &b);

// Truncated Malcev-Neumann series sum xbar a_x over a crossed product.
class MNSeries
{
public:
    // Terms are merged, zero coefficients and terms at or above the cutoff dropped.
    MNSeries(SpecPtr spec, std::vector<Term> terms, Bound cutoff = std::nullopt);

    static MNSeries zero(SpecPtr spec, Bound cutoff = std::nullopt);
    static MNSeries one(SpecPtr spec);
    static MNSeries monomial(SpecPtr spec, const GroupElement &x, const Scalar &a);
    static MNSeries constant(SpecPtr spec, const Scalar &a);

    const SpecPtr &spec_ptr() const noexcept { return spec_; }
    const CrossedProductSpec &spec() const noexcept { return *spec_; }
    const Group &group() const noexcept { return spec_->group(); }
    const Field &field() const noexcept { return spec_->field(); }

    // Strictly ascending.
    const std::vector<Term> &terms() const noexcept { return terms_; }
    const Bound &cutoff() const noexcept { return cutoff_; }
    bool is_exact() const noexcept { return !cutoff_.has_value(); }
    // No terms below the cutoff.
    bool is_zero() const noexcept { return terms_.empty(); }
    Scalar coefficient(const GroupElement &x) const;

    MNSeries truncated(const Bound &b) const;
    MNSeries operator-() const;

    // 2*g[1,0] + 3*g[0,1] cutoff g[0,2]
    std::string to_string() const;

    friend bool operator==(const MNSeries &a, const MNSeries &b);

private:
    SpecPtr spec_;
    std::vector<Term> terms_;
    Bound cutoff_;
};

// Throws SpecMismatch unless the two series live in the same ring.
void require_same_ring(const MNSeries &a, const MNSeries &b);

MNSeries operator+(const MNSeries &a, const MNSeries &b);
MNSeries operator-(const MNSeries &a, const MNSeries &b);
MNSeries operator*(const MNSeries &a, const MNSeries &b);
MNSeries operator*(const Scalar &c, const MNSeries &a);

// Both sides truncated to the smaller cutoff compare equal.
bool agree_below_common_cutoff(const MNSeries &a, const MNSeries &b);

// omega(f) = min supp f; nullopt when there are no terms below the cutoff.
std::optional<GroupElement> omega(const MNSeries &f);
// Lower bound for the least support element: omega, or the cutoff when empty.
Bound omega_floor(const MNSeries &f);
// nu = pi o omega for the jump; nullopt for infinity. Throws NotInSubgroup.
std::optional<Integer> nu(const MNSeries &f, const ConvexJump &jump);
// d(a, b) = (1/2)^nu(a - b), 0 when a = b below the cutoff.
Rational distance(const MNSeries &a, const MNSeries &b, const ConvexJump &jump);

constexpr std::size_t default_neumann_terms = 64;

// f^-1 with f f^-1 = 1 below target and f^-1 exact below max(target, x0^-1 target),
// x0 = omega(f). NoLeadingTerm, InsufficientPrecision, NoConvergence.
MNSeries invert(const MNSeries &f, const Bound &target, std::size_t max_terms = default_neumann_terms);

struct SumPiece {
    GroupElement t;
    MNSeries f;
};

// sum_beta tbar_beta f_beta for t_beta > 1 with strictly increasing jumps,
// supp f_beta >= 1 and inside the principal convex subgroup of t_beta.
MNSeries defined_sum(const SpecPtr &spec, const std::vector<SumPiece> &family);

using SeriesSequence = std::function<MNSeries(std::size_t)>;
using Modulus = std::function<std::size_t(std::size_t)>;

// Coefficientwise limit: a_x read from u_{n_k} with k the least k >= pi(x),
// every term below target. Checks agreement of consecutive u_{n_k}.
MNSeries cauchy_limit(const SeriesSequence &seq, const Modulus &modulus, const ConvexJump &jump, const GroupElement &target);

} // namespace mns

#endif
