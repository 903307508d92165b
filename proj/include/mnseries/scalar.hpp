#ifndef MNSERIES_SCALAR_HPP
#define MNSERIES_SCALAR_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace mns
{

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer &num, const Integer &den);
std::string to_string(const Rational &q);

// Dense univariate polynomial over Q in the indeterminate t, coefficients
// stored lowest degree first with no trailing zeros.
class QPoly
{
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);

    static QPoly constant(const Rational &c);
    static QPoly monomial(const Rational &c, std::size_t degree);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    // -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Rational> &coeffs() const noexcept { return coeffs_; }
    Rational coeff(std::size_t i) const;
    const Rational &leading() const;

    QPoly monic() const;
    QPoly derivative() const;
    // p(t) -> p(t + c)
    QPoly shifted(const Rational &c) const;
    // p(t) -> p(q t)
    QPoly dilated(const Rational &q) const;

    QPoly operator-() const;
    friend QPoly operator+(const QPoly &a, const QPoly &b);
    friend QPoly operator-(const QPoly &a, const QPoly &b);
    friend QPoly operator*(const QPoly &a, const QPoly &b);
    friend QPoly operator*(const QPoly &a, const Rational &c);
    friend bool operator==(const QPoly &a, const QPoly &b) = default;

    std::string to_string() const;

private:
    void trim();

    std::vector<Rational> coeffs_;
};

std::pair<QPoly, QPoly> divmod(const QPoly &a, const QPoly &b);
// Monic gcd; gcd(0, 0) = 0.
QPoly gcd(const QPoly &a, const QPoly &b);

// Element of Q(t): numerator and denominator coprime, denominator monic.
class RatFunc
{
public:
    RatFunc();
    RatFunc(QPoly num, QPoly den);
    explicit RatFunc(const Rational &c);

    static RatFunc t();

    const QPoly &num() const noexcept { return num_; }
    const QPoly &den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    RatFunc inverse() const;
    RatFunc derivative() const;

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc &a, const RatFunc &b);
    friend RatFunc operator-(const RatFunc &a, const RatFunc &b);
    friend RatFunc operator*(const RatFunc &a, const RatFunc &b);
    friend bool operator==(const RatFunc &a, const RatFunc &b) = default;

    std::string to_string() const;

private:
    QPoly num_;
    QPoly den_;
};

// Rational quaternion a + b i + c j + d k.
struct Quaternion {
    Rational a, b, c, d;

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
    Rational norm() const { return a * a + b * b + c * c + d * d; }
    Quaternion conjugate() const { return {a, -b, -c, -d}; }
    Quaternion inverse() const;

    Quaternion operator-() const { return {-a, -b, -c, -d}; }
    friend Quaternion operator+(const Quaternion &x, const Quaternion &y);
    friend Quaternion operator-(const Quaternion &x, const Quaternion &y);
    friend Quaternion operator*(const Quaternion &x, const Quaternion &y);
    friend bool operator==(const Quaternion &x, const Quaternion &y) = default;

    std::string to_string() const;
};

// Element of F_p, value in [0, p).
struct Fp {
    std::uint64_t value = 0;
    std::uint64_t modulus = 2;

    friend bool operator==(const Fp &, const Fp &) = default;
};

bool is_prime(std::uint64_t n);

// Coefficient field descriptor. Selector strings: q, fp:<p>, qt, quat.
struct Field {
    enum class Kind { Rational, Prime, RatFunc, Quaternion };

    Kind kind = Kind::Rational;
    std::uint64_t modulus = 0;

    static Field rational() { return {Kind::Rational, 0}; }
    // Throws InvalidArgument unless p is prime (trial division).
    static Field prime(std::uint64_t p);
    static Field ratfunc() { return {Kind::RatFunc, 0}; }
    static Field quaternion() { return {Kind::Quaternion, 0}; }

    bool is_commutative() const { return kind != Kind::Quaternion; }
    // Number of coordinates of an element over the prime field used for
    // linear-algebra flattening (Q(t) is unfolded separately).
    std::size_t prime_dimension() const { return kind == Kind::Quaternion ? 4 : 1; }
    std::string to_string() const;

    friend bool operator==(const Field &, const Field &) = default;
};

Field parse_field(std::string_view selector);

class Scalar
{
public:
    using Value = std::variant<Rational, Fp, RatFunc, Quaternion>;

    Scalar() : value_(Rational(0)) {}
    Scalar(Rational q) : value_(std::move(q)) {}
    Scalar(int n) : value_(Rational(n)) {}
    Scalar(Fp x) : value_(x) {}
    Scalar(RatFunc f) : value_(std::move(f)) {}
    Scalar(Quaternion h) : value_(std::move(h)) {}

    static Scalar zero(const Field &f);
    static Scalar one(const Field &f);
    // Image of a rational number in f (reduction mod p for F_p).
    static Scalar from_rational(const Field &f, const Rational &q);

    const Value &value() const noexcept { return value_; }
    Field field() const;

    bool is_zero() const;
    bool is_one() const;
    Scalar inverse() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar &a, const Scalar &b);
    friend Scalar operator-(const Scalar &a, const Scalar &b);
    friend Scalar operator*(const Scalar &a, const Scalar &b);
    friend Scalar operator/(const Scalar &a, const Scalar &b);
    friend bool operator==(const Scalar &a, const Scalar &b) = default;

    Scalar &operator+=(const Scalar &b) { return *this = *this + b; }
    Scalar &operator*=(const Scalar &b) { return *this = *this * b; }

    // Textual form: 2/3, 3 mod 7, (t^2+1)/(t-1), 1+2i+3j+4k.
    std::string to_string() const;
    // Same, but F_p values are printed bare (the field is known from context)
    // and compound values are parenthesized so they can prefix a product.
    std::string to_coefficient_string() const;

private:
    Value value_;
};

// Field automorphism. Identity applies to every variant; Shift (t -> t + c)
// and QDilation (t -> q t) to Q(t); QuaternionConj (a -> u a u^-1) to the
// quaternions.
class EndoSpec
{
public:
    enum class Kind { Identity, Shift, QDilation, QuaternionConj };

    static EndoSpec identity() { return EndoSpec(Kind::Identity, Rational(0), {}); }
    static EndoSpec shift(const Rational &c = Rational(1)) { return EndoSpec(Kind::Shift, c, {}); }
    static EndoSpec q_dilation(const Rational &q);
    static EndoSpec quaternion_conj(const Quaternion &unit);

    Kind kind() const noexcept { return kind_; }
    const Rational &parameter() const noexcept { return param_; }
    const Quaternion &unit() const noexcept { return unit_; }

    bool is_identity() const;
    Scalar apply(const Scalar &a) const;
    EndoSpec power(long n) const;
    EndoSpec inverse() const { return power(-1); }

    // id, shift, shift:<c>, qdil:<q>, conj:<u>
    std::string to_string() const;

    friend bool operator==(const EndoSpec &, const EndoSpec &) = default;

private:
    EndoSpec(Kind k, Rational p, Quaternion u) : kind_(k), param_(std::move(p)), unit_(std::move(u)) {}

    Kind kind_;
    Rational param_;
    Quaternion unit_;
};

EndoSpec parse_endo(std::string_view text);

class DerivSpec
{
public:
    enum class Kind { Zero, Ddt };

    static DerivSpec zero() { return DerivSpec(Kind::Zero); }
    static DerivSpec ddt() { return DerivSpec(Kind::Ddt); }

    Kind kind() const noexcept { return kind_; }
    bool is_zero() const noexcept { return kind_ == Kind::Zero; }
    Scalar apply(const Scalar &a) const;
    std::string to_string() const { return is_zero() ? "zero" : "ddt"; }

    friend bool operator==(const DerivSpec &, const DerivSpec &) = default;

private:
    explicit DerivSpec(Kind k) : kind_(k) {}

    Kind kind_;
};

DerivSpec parse_deriv(std::string_view text);

struct LeibnizViolation {
    Scalar a, b;
    Scalar lhs; // delta(ab)
    Scalar rhs; // delta(a) sigma(b) + a delta(b)
};

// Pairs (a, b) that break delta(ab) = delta(a) sigma(b) + a delta(b).
std::vector<LeibnizViolation> check_sigma_derivation(const EndoSpec &sigma, const DerivSpec &delta,
                                                     const std::vector<std::pair<Scalar, Scalar>> &samples);

} // namespace mns

#endif
