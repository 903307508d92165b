#include <mnseries/scalar.hpp>

#include <algorithm>
#include <cctype>

#include <mnseries/error.hpp>

namespace mns
{

Rational make_rational(const Integer &num, const Integer &den)
{
    if (den == 0) fail(Errc::DivisionByZero, "rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational &q)
{
    return q.get_str();
}

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    trim();
}

QPoly QPoly::constant(const Rational &c)
{
    return QPoly(std::vector<Rational>{c});
}

QPoly QPoly::monomial(const Rational &c, std::size_t degree)
{
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return QPoly(std::move(v));
}

void QPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational QPoly::coeff(std::size_t i) const
{
    return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

const Rational &QPoly::leading() const
{
    if (coeffs_.empty()) fail(Errc::InvalidArgument, "leading coefficient of zero polynomial");
    return coeffs_.back();
}

QPoly QPoly::monic() const
{
    if (is_zero()) return *this;
    Rational inv = 1 / leading();
    return *this * inv;
}

QPoly QPoly::derivative() const
{
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return QPoly(std::move(v));
}

QPoly QPoly::shifted(const Rational &c) const
{
    // Horner: p(t + c) = (...(a_n (t+c) + a_{n-1})(t+c) + ...)
    QPoly lin(std::vector<Rational>{c, Rational(1)});
    QPoly out;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out = out * lin + QPoly::constant(*it);
    return out;
}

QPoly QPoly::dilated(const Rational &q) const
{
    std::vector<Rational> v(coeffs_);
    Rational pw(1);
    for (auto &c : v) {
        c *= pw;
        pw *= q;
    }
    return QPoly(std::move(v));
}

QPoly QPoly::operator-() const
{
    std::vector<Rational> v(coeffs_);
    for (auto &c : v) c = -c;
    return QPoly(std::move(v));
}

QPoly operator+(const QPoly &a, const QPoly &b)
{
    std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly &a, const QPoly &b)
{
    return a + (-b);
}

QPoly operator*(const QPoly &a, const QPoly &b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return QPoly(std::move(v));
}

QPoly operator*(const QPoly &a, const Rational &c)
{
    std::vector<Rational> v(a.coeffs_);
    for (auto &x : v) x *= c;
    return QPoly(std::move(v));
}

std::pair<QPoly, QPoly> divmod(const QPoly &a, const QPoly &b)
{
    if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
    std::vector<Rational> rem(a.coeffs());
    const auto &bc = b.coeffs();
    const long db = b.degree();
    if (a.degree() < db) return {QPoly(), a};
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
    const Rational lead_inv = 1 / b.leading();
    for (long i = a.degree(); i >= db; --i) {
        const Rational c = rem[static_cast<std::size_t>(i)] * lead_inv;
        if (c == 0) continue;
        quo[static_cast<std::size_t>(i - db)] = c;
        for (long j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * bc[static_cast<std::size_t>(j)];
    }
    return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly gcd(const QPoly &a, const QPoly &b)
{
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

namespace
{

std::string term_power(long d)
{
    if (d == 0) return "";
    if (d == 1) return "t";
    return "t^" + std::to_string(d);
}

} // namespace

std::string QPoly::to_string() const
{
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (long d = degree(); d >= 0; --d) {
        const Rational &c = coeffs_[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        if (neg)
            out += "-";
        else if (!first)
            out += "+";
        if (d == 0)
            out += mns::to_string(mag);
        else if (mag == 1)
            out += term_power(d);
        else
            out += mns::to_string(mag) + "*" + term_power(d);
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc() : num_(), den_(QPoly::constant(1)) {}

RatFunc::RatFunc(const Rational &c) : num_(QPoly::constant(c)), den_(QPoly::constant(1)) {}

RatFunc::RatFunc(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den))
{
    if (den_.is_zero()) fail(Errc::DivisionByZero, "rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = QPoly::constant(1);
        return;
    }
    QPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
    }
    const Rational lc_inv = 1 / den_.leading();
    num_ = num_ * lc_inv;
    den_ = den_ * lc_inv;
}

RatFunc RatFunc::t()
{
    return RatFunc(QPoly::monomial(1, 1), QPoly::constant(1));
}

RatFunc RatFunc::inverse() const
{
    if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::derivative() const
{
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::operator-() const
{
    return RatFunc(-num_, den_);
}

RatFunc operator+(const RatFunc &a, const RatFunc &b)
{
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc &a, const RatFunc &b)
{
    return a + (-b);
}

RatFunc operator*(const RatFunc &a, const RatFunc &b)
{
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

namespace
{

std::size_t nonzero_terms(const QPoly &p)
{
    return static_cast<std::size_t>(std::count_if(p.coeffs().begin(), p.coeffs().end(), [](const Rational &c) { return c != 0; }));
}

bool integral_monomial(const QPoly &p)
{
    return nonzero_terms(p) == 1 && p.leading().get_den() == 1;
}

} // namespace

std::string RatFunc::to_string() const
{
    if (den_ == QPoly::constant(1)) return num_.to_string();
    std::string n = num_.to_string();
    std::string d = den_.to_string();
    if (!integral_monomial(num_)) n = "(" + n + ")";
    if (!(nonzero_terms(den_) == 1 && den_.leading() == 1)) d = "(" + d + ")";
    return n + "/" + d;
}

// ---------------------------------------------------------------- Quaternion

Quaternion Quaternion::inverse() const
{
    if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero quaternion");
    const Rational n = norm();
    return {a / n, -b / n, -c / n, -d / n};
}

Quaternion operator+(const Quaternion &x, const Quaternion &y)
{
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}

Quaternion operator-(const Quaternion &x, const Quaternion &y)
{
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}

Quaternion operator*(const Quaternion &x, const Quaternion &y)
{
    // Hamilton: i^2 = j^2 = k^2 = ijk = -1
    return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d, x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
            x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b, x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
}

std::string Quaternion::to_string() const
{
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    auto part = [&](const Rational &c, const char *unit) {
        if (c == 0) return;
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        if (neg)
            out += "-";
        else if (!first)
            out += "+";
        if (*unit == '\0')
            out += mns::to_string(mag);
        else if (mag == 1)
            out += unit;
        else if (mag.get_den() == 1)
            out += mns::to_string(mag) + unit;
        else
            out += mns::to_string(mag) + "*" + unit;
        first = false;
    };
    part(a, "");
    part(b, "i");
    part(c, "j");
    part(d, "k");
    return out;
}

// ---------------------------------------------------------------- F_p

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace
{

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t reduce(const Integer &z, std::uint64_t p)
{
    Integer r = z % Integer(std::to_string(p));
    if (r < 0) r += Integer(std::to_string(p));
    return std::stoull(r.get_str());
}

} // namespace

Field Field::prime(std::uint64_t p)
{
    if (!is_prime(p)) fail(Errc::InvalidArgument, "modulus " + std::to_string(p) + " is not prime");
    return {Kind::Prime, p};
}

std::string Field::to_string() const
{
    switch (kind) {
        case Kind::Rational:
            return "q";
        case Kind::Prime:
            return "fp:" + std::to_string(modulus);
        case Kind::RatFunc:
            return "qt";
        case Kind::Quaternion:
            return "quat";
    }
    return "?";
}

Field parse_field(std::string_view s)
{
    if (s == "q") return Field::rational();
    if (s == "qt") return Field::ratfunc();
    if (s == "quat") return Field::quaternion();
    if (s.substr(0, 3) == "fp:") {
        const std::string digits(s.substr(3));
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
            fail(Errc::InvalidArgument, "bad prime field selector '" + std::string(s) + "'");
        return Field::prime(std::stoull(digits));
    }
    fail(Errc::InvalidArgument, "unknown field selector '" + std::string(s) + "' (expected q, fp:<p>, qt, quat)");
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::zero(const Field &f)
{
    return from_rational(f, Rational(0));
}

Scalar Scalar::one(const Field &f)
{
    return from_rational(f, Rational(1));
}

Scalar Scalar::from_rational(const Field &f, const Rational &q)
{
    switch (f.kind) {
        case Field::Kind::Rational:
            return Scalar(q);
        case Field::Kind::Prime: {
            const std::uint64_t p = f.modulus;
            const std::uint64_t den = reduce(q.get_den(), p);
            if (den == 0) fail(Errc::DivisionByZero, "denominator of " + q.get_str() + " vanishes mod " + std::to_string(p));
            const std::uint64_t num = reduce(q.get_num(), p);
            return Scalar(Fp{mul_mod(num, pow_mod(den, p - 2, p), p), p});
        }
        case Field::Kind::RatFunc:
            return Scalar(RatFunc(q));
        case Field::Kind::Quaternion:
            return Scalar(Quaternion{q, 0, 0, 0});
    }
    return Scalar(q);
}

Field Scalar::field() const
{
    switch (value_.index()) {
        case 0:
            return Field::rational();
        case 1:
            return Field{Field::Kind::Prime, std::get<Fp>(value_).modulus};
        case 2:
            return Field::ratfunc();
        default:
            return Field::quaternion();
    }
}

bool Scalar::is_zero() const
{
    return std::visit(
        [](const auto &v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>)
                return v == 0;
            else if constexpr (std::is_same_v<T, Fp>)
                return v.value == 0;
            else
                return v.is_zero();
        },
        value_);
}

bool Scalar::is_one() const
{
    return *this == Scalar::one(field());
}

Scalar Scalar::inverse() const
{
    if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero");
    return std::visit(
        [](const auto &v) -> Scalar {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>)
                return Scalar(Rational(1 / v));
            else if constexpr (std::is_same_v<T, Fp>)
                return Scalar(Fp{pow_mod(v.value, v.modulus - 2, v.modulus), v.modulus});
            else
                return Scalar(v.inverse());
        },
        value_);
}

Scalar Scalar::operator-() const
{
    return std::visit(
        [](const auto &v) -> Scalar {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>)
                return Scalar(Rational(-v));
            else if constexpr (std::is_same_v<T, Fp>)
                return Scalar(Fp{v.value == 0 ? 0 : v.modulus - v.value, v.modulus});
            else
                return Scalar(-v);
        },
        value_);
}

namespace
{

void require_same(const Scalar &a, const Scalar &b)
{
    if (a.value().index() != b.value().index() ||
        (a.value().index() == 1 && std::get<Fp>(a.value()).modulus != std::get<Fp>(b.value()).modulus))
        fail(Errc::VariantMismatch, "operands in " + a.field().to_string() + " and " + b.field().to_string());
}

} // namespace

Scalar operator+(const Scalar &a, const Scalar &b)
{
    require_same(a, b);
    return std::visit(
        [&](const auto &x) -> Scalar {
            using T = std::decay_t<decltype(x)>;
            const T &y = std::get<T>(b.value_);
            if constexpr (std::is_same_v<T, Rational>)
                return Scalar(Rational(x + y));
            else if constexpr (std::is_same_v<T, Fp>)
                return Scalar(Fp{(x.value + y.value) % x.modulus, x.modulus});
            else
                return Scalar(x + y);
        },
        a.value_);
}

Scalar operator-(const Scalar &a, const Scalar &b)
{
    return a + (-b);
}

Scalar operator*(const Scalar &a, const Scalar &b)
{
    require_same(a, b);
    return std::visit(
        [&](const auto &x) -> Scalar {
            using T = std::decay_t<decltype(x)>;
            const T &y = std::get<T>(b.value_);
            if constexpr (std::is_same_v<T, Rational>)
                return Scalar(Rational(x * y));
            else if constexpr (std::is_same_v<T, Fp>)
                return Scalar(Fp{mul_mod(x.value, y.value, x.modulus), x.modulus});
            else
                return Scalar(x * y);
        },
        a.value_);
}

Scalar operator/(const Scalar &a, const Scalar &b)
{
    return a * b.inverse();
}

std::string Scalar::to_string() const
{
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>)
                return mns::to_string(v);
            else if constexpr (std::is_same_v<T, Fp>)
                return std::to_string(v.value) + " mod " + std::to_string(v.modulus);
            else
                return v.to_string();
        },
        value_);
}

namespace
{

// Safe as a factor without parentheses: no operator after the leading sign.
bool atomic_factor(const std::string &s)
{
    return s.find_first_of(" +/", 0) == std::string::npos && s.find('-', 1) == std::string::npos;
}

} // namespace

std::string Scalar::to_coefficient_string() const
{
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>) {
                return mns::to_string(v);
            } else if constexpr (std::is_same_v<T, Fp>) {
                return std::to_string(v.value);
            } else {
                const std::string s = v.to_string();
                return atomic_factor(s) ? s : "(" + s + ")";
            }
        },
        value_);
}

// ---------------------------------------------------------------- EndoSpec

EndoSpec EndoSpec::q_dilation(const Rational &q)
{
    if (q == 0) fail(Errc::InvalidArgument, "q-dilation parameter must be nonzero");
    return EndoSpec(Kind::QDilation, q, {});
}

EndoSpec EndoSpec::quaternion_conj(const Quaternion &unit)
{
    if (unit.is_zero()) fail(Errc::InvalidArgument, "conjugating quaternion must be nonzero");
    return EndoSpec(Kind::QuaternionConj, Rational(0), unit);
}

bool EndoSpec::is_identity() const
{
    switch (kind_) {
        case Kind::Identity:
            return true;
        case Kind::Shift:
            return param_ == 0;
        case Kind::QDilation:
            return param_ == 1;
        case Kind::QuaternionConj:
            return unit_.b == 0 && unit_.c == 0 && unit_.d == 0;
    }
    return false;
}

Scalar EndoSpec::apply(const Scalar &a) const
{
    if (kind_ == Kind::Identity) return a;
    if (kind_ == Kind::QuaternionConj) {
        const auto *h = std::get_if<Quaternion>(&a.value());
        if (!h) fail(Errc::VariantMismatch, "quaternion conjugation applied to " + a.field().to_string());
        return Scalar(unit_ * *h * unit_.inverse());
    }
    const auto *f = std::get_if<RatFunc>(&a.value());
    if (!f) fail(Errc::VariantMismatch, to_string() + " applied to " + a.field().to_string());
    if (kind_ == Kind::Shift) return Scalar(RatFunc(f->num().shifted(param_), f->den().shifted(param_)));
    return Scalar(RatFunc(f->num().dilated(param_), f->den().dilated(param_)));
}

EndoSpec EndoSpec::power(long n) const
{
    if (n == 0 || kind_ == Kind::Identity) return identity();
    switch (kind_) {
        case Kind::Shift:
            return shift(param_ * Rational(n));
        case Kind::QDilation: {
            Rational base = n > 0 ? param_ : Rational(1 / param_);
            Rational r(1);
            for (long i = 0; i < (n > 0 ? n : -n); ++i) r *= base;
            return q_dilation(r);
        }
        case Kind::QuaternionConj: {
            Quaternion base = n > 0 ? unit_ : unit_.inverse();
            Quaternion r{1, 0, 0, 0};
            for (long i = 0; i < (n > 0 ? n : -n); ++i) r = r * base;
            return quaternion_conj(r);
        }
        default:
            return identity();
    }
}

std::string EndoSpec::to_string() const
{
    switch (kind_) {
        case Kind::Identity:
            return "id";
        case Kind::Shift:
            return param_ == 1 ? "shift" : "shift:" + mns::to_string(param_);
        case Kind::QDilation:
            return "qdil:" + mns::to_string(param_);
        case Kind::QuaternionConj:
            return "conj:" + unit_.to_string();
    }
    return "?";
}

namespace
{

Rational parse_plain_rational(std::string_view s, std::string_view whole)
{
    const std::string str(s);
    const auto slash = str.find('/');
    auto digits_ok = [](const std::string &d, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < d.size() && (d[i] == '-' || d[i] == '+')) ++i;
        return i < d.size() && std::all_of(d.begin() + static_cast<long>(i), d.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    const std::string num = str.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        fail(Errc::InvalidArgument, "bad rational '" + str + "' in '" + std::string(whole) + "'");
    return make_rational(Integer(num[0] == '+' ? num.substr(1) : num), Integer(den));
}

// Accepts sums of signed rational parts each optionally suffixed by i, j, k
// (with or without '*'), e.g. 1+2i-1/2*k.
Quaternion parse_quaternion_literal(std::string_view s)
{
    Quaternion q;
    std::size_t pos = 0;
    if (s.empty()) fail(Errc::InvalidArgument, "empty quaternion literal");
    while (pos < s.size()) {
        std::size_t end = pos + 1;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string part(s.substr(pos, end - pos));
        pos = end;
        char unit = '\0';
        if (!part.empty() && (part.back() == 'i' || part.back() == 'j' || part.back() == 'k')) {
            unit = part.back();
            part.pop_back();
            if (!part.empty() && part.back() == '*') part.pop_back();
        }
        if (part.empty() || part == "+" || part == "-") part += "1";
        const Rational c = parse_plain_rational(part, s);
        switch (unit) {
            case 'i':
                q.b += c;
                break;
            case 'j':
                q.c += c;
                break;
            case 'k':
                q.d += c;
                break;
            default:
                q.a += c;
        }
    }
    return q;
}

} // namespace

EndoSpec parse_endo(std::string_view text)
{
    if (text == "id") return EndoSpec::identity();
    if (text == "shift") return EndoSpec::shift();
    if (text.substr(0, 6) == "shift:") return EndoSpec::shift(parse_plain_rational(text.substr(6), text));
    if (text.substr(0, 5) == "qdil:") return EndoSpec::q_dilation(parse_plain_rational(text.substr(5), text));
    if (text.substr(0, 5) == "conj:") return EndoSpec::quaternion_conj(parse_quaternion_literal(text.substr(5)));
    fail(Errc::InvalidArgument, "unknown automorphism '" + std::string(text) + "' (expected id, shift, qdil:<q>, conj:<u>)");
}

// ---------------------------------------------------------------- DerivSpec

Scalar DerivSpec::apply(const Scalar &a) const
{
    if (kind_ == Kind::Zero) return Scalar::zero(a.field());
    const auto *f = std::get_if<RatFunc>(&a.value());
    if (!f) fail(Errc::VariantMismatch, "d/dt applied to " + a.field().to_string());
    return Scalar(f->derivative());
}

DerivSpec parse_deriv(std::string_view text)
{
    if (text == "zero") return DerivSpec::zero();
    if (text == "ddt") return DerivSpec::ddt();
    fail(Errc::InvalidArgument, "unknown derivation '" + std::string(text) + "' (expected zero, ddt)");
}

std::vector<LeibnizViolation> check_sigma_derivation(const EndoSpec &sigma, const DerivSpec &delta,
                                                     const std::vector<std::pair<Scalar, Scalar>> &samples)
{
    std::vector<LeibnizViolation> out;
    for (const auto &[a, b] : samples) {
        Scalar lhs = delta.apply(a * b);
        Scalar rhs = delta.apply(a) * sigma.apply(b) + a * delta.apply(b);
        if (!(lhs == rhs)) out.push_back({a, b, std::move(lhs), std::move(rhs)});
    }
    return out;
}

} // namespace mns
