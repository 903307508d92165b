#include <mnseries/render.hpp>

#include <type_traits>

namespace mns
{

std::pair<bool, Scalar> split_sign(const Scalar &c)
{
    const bool negative = std::visit(
        [](const auto &v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>) {
                return v < 0;
            } else if constexpr (std::is_same_v<T, RatFunc>) {
                return !v.is_zero() && v.num().leading() < 0;
            } else if constexpr (std::is_same_v<T, Quaternion>) {
                for (const Rational *q : {&v.a, &v.b, &v.c, &v.d})
                    if (*q != 0) return *q < 0;
                return false;
            } else {
                return false;
            }
        },
        c.value());
    return negative ? std::pair{true, -c} : std::pair{false, c};
}

namespace
{

// '+' or '-' outside parentheses, past a leading sign.
bool top_level_sum(const std::string &s)
{
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (depth == 0 && i > 0 && (s[i] == '+' || s[i] == '-')) return true;
    }
    return false;
}

} // namespace

std::string render_product(const Scalar &c, const std::string &basis)
{
    if (basis.empty()) {
        const std::string s = c.to_string();
        return top_level_sum(s) ? "(" + s + ")" : s;
    }
    if (c.is_one()) return basis;
    return c.to_coefficient_string() + "*" + basis;
}

} // namespace mns
