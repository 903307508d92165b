#include <mnseries/group.hpp>

#include <algorithm>
#include <cctype>

#include <mnseries/error.hpp>

namespace mns
{

Group Group::lex(int n)
{
    if (n < 1) fail(Errc::InvalidArgument, "rank of Z^n must be at least 1");
    return {Kind::LexZn, n};
}

std::string Group::to_string() const
{
    return kind == Kind::LexZn ? "zn:" + std::to_string(rank) : "heis";
}

Group parse_group(std::string_view s)
{
    if (s == "heis") return Group::heisenberg();
    if (s.substr(0, 3) == "zn:") {
        const std::string digits(s.substr(3));
        if (!digits.empty() && digits.size() < 4 &&
            std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
            return Group::lex(std::stoi(digits));
    }
    fail(Errc::InvalidArgument, "unknown group selector '" + std::string(s) + "' (expected zn:<rank> or heis)");
}

GroupElement::GroupElement(Group g, std::vector<Integer> coords) : group_(g), coords_(std::move(coords))
{
    if (coords_.size() != static_cast<std::size_t>(g.rank))
        fail(Errc::KindMismatch, "element with " + std::to_string(coords_.size()) + " coordinates in " + g.to_string());
}

GroupElement GroupElement::identity(const Group &g)
{
    return GroupElement(g, std::vector<Integer>(static_cast<std::size_t>(g.rank), Integer(0)));
}

GroupElement GroupElement::basis(const Group &g, int i)
{
    if (i < 1 || i > g.rank) fail(Errc::InvalidArgument, "basis index out of range for " + g.to_string());
    std::vector<Integer> c(static_cast<std::size_t>(g.rank), Integer(0));
    c[static_cast<std::size_t>(i - 1)] = 1;
    return GroupElement(g, std::move(c));
}

bool GroupElement::is_identity() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer &z) { return z == 0; });
}

std::string GroupElement::to_string() const
{
    std::string out(1, group_.literal());
    out += "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ",";
        out += coords_[i].get_str();
    }
    return out + "]";
}

namespace
{

void require_same(const Group &a, const Group &b)
{
    if (!(a == b)) fail(Errc::KindMismatch, "elements of " + a.to_string() + " and " + b.to_string());
}

// Coordinate positions from most to least significant.
std::vector<std::size_t> significance(const Group &g)
{
    std::vector<std::size_t> order(static_cast<std::size_t>(g.rank));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = g.kind == Group::Kind::LexZn ? order.size() - 1 - i : i;
    return order;
}

// Coordinate read by the quotient H/N of jump `index`.
std::size_t jump_coordinate(const Group &g, int index)
{
    return g.kind == Group::Kind::LexZn ? static_cast<std::size_t>(index - 1) : static_cast<std::size_t>(3 - index);
}

} // namespace

bool operator==(const GroupElement &a, const GroupElement &b)
{
    return a.group_ == b.group_ && a.coords_ == b.coords_;
}

int compare(const GroupElement &a, const GroupElement &b)
{
    require_same(a.group(), b.group());
    for (std::size_t i : significance(a.group())) {
        const int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::strong_ordering operator<=>(const GroupElement &a, const GroupElement &b)
{
    const int c = compare(a, b);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

GroupElement operator*(const GroupElement &a, const GroupElement &b)
{
    require_same(a.group(), b.group());
    std::vector<Integer> c(a.coords().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    // x^a1 y^b1 z^c1 * x^a2 y^b2 z^c2: moving y^b1 past x^a2 costs z^(-b1 a2).
    if (a.group().kind == Group::Kind::Heisenberg) c[2] -= a[1] * b[0];
    return GroupElement(a.group(), std::move(c));
}

GroupElement inverse(const GroupElement &a)
{
    std::vector<Integer> c(a.coords().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a[i];
    if (a.group().kind == Group::Kind::Heisenberg) c[2] = -a[2] - a[0] * a[1];
    return GroupElement(a.group(), std::move(c));
}

GroupElement power(const GroupElement &a, long n)
{
    GroupElement base = n < 0 ? inverse(a) : a;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
    GroupElement result = GroupElement::identity(a.group());
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

// ---------------------------------------------------------------- jumps

bool ConvexJump::in_upper(const GroupElement &g) const
{
    require_same(group, g.group());
    const auto order = significance(group);
    const std::size_t lead = static_cast<std::size_t>(group.rank - index);
    for (std::size_t i = 0; i < lead; ++i)
        if (g[order[i]] != 0) return false;
    return true;
}

bool ConvexJump::in_lower(const GroupElement &g) const
{
    return in_upper(g) && g[jump_coordinate(group, index)] == 0;
}

std::string ConvexJump::describe() const
{
    // Generators of H listed from the jump generator inward.
    std::vector<std::string> names;
    for (int i = index; i >= 1; --i) {
        if (group.kind == Group::Kind::Heisenberg)
            names.push_back(std::string(1, "zyx"[i - 1]));
        else
            names.push_back("e" + std::to_string(i));
    }
    auto span = [](const std::vector<std::string> &v, std::size_t from) {
        if (from >= v.size()) return std::string("{1}");
        std::string s = "<";
        for (std::size_t i = from; i < v.size(); ++i) {
            if (i > from) s += ",";
            s += v[i];
        }
        return s + ">";
    };
    std::string h = index == group.rank ? "G" : span(names, 0);
    return "jump " + std::to_string(index) + ": H = " + h + ", N = " + span(names, 1) + ", t = " + generator.to_string();
}

ConvexJump jump_at(const Group &g, int index)
{
    if (index < 1 || index > g.num_jumps())
        fail(Errc::InvalidArgument, "jump index " + std::to_string(index) + " out of range 1.." + std::to_string(g.num_jumps()) +
                                        " for " + g.to_string());
    const int basis_index = g.kind == Group::Kind::LexZn ? index : 4 - index;
    return ConvexJump{g, index, GroupElement::basis(g, basis_index)};
}

ConvexJump principal_jump_of(const GroupElement &g)
{
    if (g.is_identity()) fail(Errc::IdentityHasNoJump, "the identity lies in no convex jump");
    const auto order = significance(g.group());
    for (std::size_t r = 0; r < order.size(); ++r)
        if (g[order[r]] != 0) return jump_at(g.group(), g.group().rank - static_cast<int>(r));
    fail(Errc::IdentityHasNoJump, "the identity lies in no convex jump");
}

Integer archimedean_projection(const ConvexJump &jump, const GroupElement &g)
{
    if (!jump.in_upper(g)) fail(Errc::NotInSubgroup, g.to_string() + " is not in H of " + jump.describe());
    return g[jump_coordinate(jump.group, jump.index)];
}

Integer convexity_witness(const ConvexJump &jump, const GroupElement &g)
{
    const Integer lead = archimedean_projection(jump, g);
    return abs(lead) + 1;
}

// ---------------------------------------------------------------- order axioms

std::vector<OrderViolation> check_order_axioms(const std::vector<ElementTriple> &samples, const Comparator &cmp)
{
    std::vector<OrderViolation> out;
    auto sgn = [&](const GroupElement &a, const GroupElement &b) {
        const int c = cmp(a, b);
        return c < 0 ? -1 : c > 0 ? 1 : 0;
    };
    for (const auto &[a, b, c] : samples) {
        const int ab = sgn(a, b);
        if ((ab == 0) != (a == b)) out.push_back({"totality/antisymmetry", {a, b}});
        if (ab != -sgn(b, a)) out.push_back({"asymmetry", {a, b}});
        if (sgn(a, a) != 0) out.push_back({"reflexivity", {a}});
        const int bc = sgn(b, c);
        if (ab <= 0 && bc <= 0 && sgn(a, c) > 0) out.push_back({"transitivity", {a, b, c}});
        if (ab >= 0 && bc >= 0 && sgn(a, c) < 0) out.push_back({"transitivity", {a, b, c}});
        if (sgn(c * a, c * b) != ab) out.push_back({"left invariance", {a, b, c}});
        if (sgn(a * c, b * c) != ab) out.push_back({"right invariance", {a, b, c}});
    }
    return out;
}

std::vector<OrderViolation> check_order_axioms(const std::vector<ElementTriple> &samples)
{
    return check_order_axioms(samples, [](const GroupElement &a, const GroupElement &b) { return compare(a, b); });
}

GroupElement random_element(const Group &g, std::mt19937_64 &rng, long bound)
{
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Integer> c(static_cast<std::size_t>(g.rank));
    for (auto &z : c) z = dist(rng);
    return GroupElement(g, std::move(c));
}

std::vector<ElementTriple> random_triples(const Group &g, std::size_t count, std::uint64_t seed, long bound)
{
    std::mt19937_64 rng(seed);
    std::vector<ElementTriple> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        GroupElement a = random_element(g, rng, bound);
        GroupElement b = random_element(g, rng, bound);
        GroupElement c = random_element(g, rng, bound);
        out.push_back({std::move(a), std::move(b), std::move(c)});
    }
    return out;
}

Comparator least_significant_comparator()
{
    return [](const GroupElement &a, const GroupElement &b) {
        const std::size_t i = a.group().kind == Group::Kind::Heisenberg ? 2 : 0;
        const int c = cmp(a[i], b[i]);
        return c < 0 ? -1 : c > 0 ? 1 : 0;
    };
}

} // namespace mns
