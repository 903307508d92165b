#ifndef MNSERIES_EXPR_HPP
#define MNSERIES_EXPR_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <mnseries/mn_series.hpp>
#include <mnseries/skew.hpp>

namespace mns
{

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Expression tree. Positions are byte offsets into the source text and are
// ignored by structural equality.
struct Node {
    enum class Kind {
        Integer, // value
        Modular, // value mod modulus
        Symbol,  // t, i, j, k or a variable name
        Element, // family[coords]
        Add,
        Sub,
        Mul,
        Div,
        Neg,
        Pow, // args[0] ^ exponent
    };

    Kind kind = Kind::Integer;
    Integer value;
    Integer modulus;
    std::string name;
    char family = 'g';
    std::vector<Integer> coords;
    long exponent = 0;
    std::vector<NodePtr> args;
    std::size_t position = 0;
};

bool structurally_equal(const Node &a, const Node &b);

struct Expression {
    enum class Tail { None, Cutoff, Exact };

    NodePtr root;
    Tail tail = Tail::None;
    // With Tail::Cutoff: an element literal or an integer index.
    NodePtr cutoff;
};

bool operator==(const Expression &a, const Expression &b);

// Throws ParseError with the failing position and the expected-token set.
Expression parse_expression(std::string_view text);

std::string render(const Node &n);
std::string render(const Expression &e);

using Value = std::variant<Scalar, MNSeries, SkewPoly, SkewLaurent>;

std::string to_string(const Value &v);

struct EvalContext {
    Field field = Field::rational();
    // Set for Malcev-Neumann evaluation.
    SpecPtr spec;
    // Set for skew polynomial / Laurent evaluation: x is the polynomial
    // variable, y = x^-1 the Laurent variable.
    std::optional<SkewRing> ring;
    std::map<std::string, Value> bindings;
    // Default inversion targets when the expression has no cutoff tail.
    Bound series_target;
    IndexBound laurent_target;
    std::size_t max_terms = default_neumann_terms;
};

// Evaluates and applies the cutoff tail, if any.
Value evaluate(const Expression &e, const EvalContext &ctx);

GroupElement element_from_literal(const Node &n, const Group &g);
GroupElement parse_element(std::string_view text, const Group &g);
Scalar parse_scalar(std::string_view text, const Field &f);
MNSeries parse_series(std::string_view text, const SpecPtr &spec);

} // namespace mns

#endif
