#ifndef MNSERIES_GROUP_HPP
#define MNSERIES_GROUP_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <mnseries/scalar.hpp>

namespace mns
{

// The two shipped ordered groups.
//  - LexZn: Z^n with basis e_1..e_n; x > 0 iff its highest-index nonzero
//    coordinate is positive.
//  - Heisenberg: x^a y^b z^c with z = [x, y] central, stored as the Mal'cev
//    triple (a, b, c) and ordered lexicographically with a most significant.
struct Group {
    enum class Kind { LexZn, Heisenberg };

    Kind kind = Kind::LexZn;
    int rank = 1;

    static Group lex(int n);
    static Group heisenberg() { return {Kind::Heisenberg, 3}; }

    // Number of convex jumps; jump indices run 1..num_jumps(), innermost first.
    int num_jumps() const { return rank; }
    // Coordinate family letter used in literals: g[...] or h[...].
    char literal() const { return kind == Kind::LexZn ? 'g' : 'h'; }
    std::string to_string() const;

    friend bool operator==(const Group &, const Group &) = default;
};

// zn:<rank> or heis
Group parse_group(std::string_view selector);

class GroupElement
{
public:
    GroupElement(Group g, std::vector<Integer> coords);

    static GroupElement identity(const Group &g);
    // i-th basis generator (1-based): e_i for LexZn; x, y, z for i = 1, 2, 3 on Heis.
    static GroupElement basis(const Group &g, int i);

    const Group &group() const noexcept { return group_; }
    const std::vector<Integer> &coords() const noexcept { return coords_; }
    const Integer &operator[](std::size_t i) const { return coords_[i]; }
    bool is_identity() const;

    // g[2,-1] or h[1,0,-3]
    std::string to_string() const;

    friend bool operator==(const GroupElement &a, const GroupElement &b);
    friend std::strong_ordering operator<=>(const GroupElement &a, const GroupElement &b);

private:
    Group group_;
    std::vector<Integer> coords_;
};

GroupElement operator*(const GroupElement &a, const GroupElement &b);
GroupElement inverse(const GroupElement &a);
GroupElement power(const GroupElement &a, long n);

// -1, 0, 1 under the group order. Throws KindMismatch across groups.
int compare(const GroupElement &a, const GroupElement &b);

// Convex jump (N, H) of one of the shipped groups, identified by its index
// (1 = innermost). H is the principal convex subgroup generated by
// `generator`; membership in N and H is decided on coordinates.
struct ConvexJump {
    Group group;
    int index = 1;
    GroupElement generator;

    bool in_upper(const GroupElement &g) const; // g in H
    bool in_lower(const GroupElement &g) const; // g in N
    std::string describe() const;
};

ConvexJump jump_at(const Group &g, int index);
// Jump (N, H) with g in H \ N. Throws IdentityHasNoJump.
ConvexJump principal_jump_of(const GroupElement &g);
// Image of gN in H/N = Z. Throws NotInSubgroup unless g in H.
Integer archimedean_projection(const ConvexJump &jump, const GroupElement &g);
// Some n >= 0 with t^-n <= g <= t^n for the jump generator t.
Integer convexity_witness(const ConvexJump &jump, const GroupElement &g);

using Comparator = std::function<int(const GroupElement &, const GroupElement &)>;

struct OrderViolation {
    std::string law;
    std::vector<GroupElement> witnesses;
};

struct ElementTriple {
    GroupElement a, b, c;
};

std::vector<OrderViolation> check_order_axioms(const std::vector<ElementTriple> &samples, const Comparator &cmp);
std::vector<OrderViolation> check_order_axioms(const std::vector<ElementTriple> &samples);

// Compares only the least significant coordinate (c on Heis, m_1 on LexZn).
// Not an order once the group has rank >= 2.
Comparator least_significant_comparator();

GroupElement random_element(const Group &g, std::mt19937_64 &rng, long bound);
std::vector<ElementTriple> random_triples(const Group &g, std::size_t count, std::uint64_t seed, long bound = 4);

} // namespace mns

#endif
