#ifndef MNSERIES_CROSSED_PRODUCT_HPP
#define MNSERIES_CROSSED_PRODUCT_HPP

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <mnseries/group.hpp>
#include <mnseries/scalar.hpp>

namespace mns
{

// A basis term xbar * a of K[G; sigma, tau].
struct Term {
    GroupElement element;
    Scalar coeff;
};

// K[G; sigma, tau]: xbar ybar = (xy)bar tau(x, y) and a xbar = xbar a^sigma(x).
// sigma and tau are closed-form rules, total on the (infinite) group.
class CrossedProductSpec
{
public:
    using SigmaRule = std::function<EndoSpec(const GroupElement &)>;
    using TauRule = std::function<Scalar(const GroupElement &, const GroupElement &)>;

    CrossedProductSpec(std::string name, Group group, Field field, SigmaRule sigma, TauRule tau);

    const std::string &name() const noexcept { return name_; }
    const Group &group() const noexcept { return group_; }
    const Field &field() const noexcept { return field_; }

    EndoSpec sigma(const GroupElement &x) const { return sigma_(x); }
    Scalar tau(const GroupElement &x, const GroupElement &y) const { return tau_(x, y); }

    // Same selector, group and field: series over the two specs may be combined.
    bool same_ring(const CrossedProductSpec &other) const;
    std::string describe() const;

private:
    std::string name_;
    Group group_;
    Field field_;
    SigmaRule sigma_;
    TauRule tau_;
};

using SpecPtr = std::shared_ptr<const CrossedProductSpec>;

// Group ring: sigma = id, tau = 1.
SpecPtr trivial_spec(const Group &g, const Field &f);
// tau(x, y) = (-1)^B(x, y) for the bilinear form B = x_2 y_1 on Z^n (n >= 2),
// x_1 y_1 on Z, and b(x) a(y) pulled back through the abelianization on Heis.
SpecPtr sign_cocycle_spec(const Group &g, const Field &f);
// sigma(x) = base^phi(x) with phi the outermost archimedean coordinate, tau = 1.
// On Z this is K((x; base)).
SpecPtr twisted_spec(const Group &g, const Field &f, const EndoSpec &base);

// Deliberately broken: tau(e1, e2) = 2, tau = 1 elsewhere. Fails the cocycle
// law on (e1, e2, e1). Needs two basis generators.
SpecPtr corrupted_spec(const Group &g, const Field &f);

// trivial | sign2 | twist:<endo> | corrupt
SpecPtr make_spec(std::string_view selector, const Group &g, const Field &f);

// (x, a)(y, b) = (xy, tau(x, y) a^sigma(y) b)
Term basis_term_mul(const CrossedProductSpec &spec, const Term &lhs, const Term &rhs);

struct SpecViolation {
    std::string law;
    std::string detail;
};

struct SpecSamples {
    std::vector<ElementTriple> triples;
    std::vector<Scalar> scalars;
};

// Normalization, 2-cocycle and compatibility laws on the samples:
//   tau(1, y) = tau(x, 1) = 1, sigma(1) = id
//   tau(xy, z) tau(x, y)^sigma(z) = tau(x, yz) tau(y, z)
//   a^{sigma(x) sigma(y)} = tau(x, y)^-1 a^sigma(xy) tau(x, y)
std::vector<SpecViolation> validate_spec(const CrossedProductSpec &spec, const SpecSamples &samples);

// All triples of elements with coordinates in [-bound, bound].
std::vector<ElementTriple> box_triples(const Group &g, long bound);
// A few nonzero scalars of the field, including noncentral ones where possible.
std::vector<Scalar> sample_scalars(const Field &f);

} // namespace mns

#endif
