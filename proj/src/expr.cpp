#include <mnseries/expr.hpp>

#include <cctype>

#include <mnseries/error.hpp>

namespace mns
{

// ---------------------------------------------------------------- lexer

namespace
{

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Comma, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t pos = 0;
    // No whitespace between this token and the previous one.
    bool adjacent = false;
};

std::string describe(Tok k)
{
    switch (k) {
        case Tok::Int:
            return "integer";
        case Tok::Ident:
            return "identifier";
        case Tok::Plus:
            return "'+'";
        case Tok::Minus:
            return "'-'";
        case Tok::Star:
            return "'*'";
        case Tok::Slash:
            return "'/'";
        case Tok::Caret:
            return "'^'";
        case Tok::LParen:
            return "'('";
        case Tok::RParen:
            return "')'";
        case Tok::LBracket:
            return "'['";
        case Tok::RBracket:
            return "']'";
        case Tok::Comma:
            return "','";
        case Tok::End:
            return "end of input";
    }
    return "token";
}

std::vector<Token> lex(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    bool space = true;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            space = true;
            continue;
        }
        Token t;
        t.pos = i;
        t.adjacent = !space && !out.empty();
        space = false;
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Tok::Int;
            t.text = std::string(s.substr(i, j - i));
            i = j;
        } else if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(s.substr(i, j - i));
            i = j;
        } else {
            switch (c) {
                case '+': t.kind = Tok::Plus; break;
                case '-': t.kind = Tok::Minus; break;
                case '*': t.kind = Tok::Star; break;
                case '/': t.kind = Tok::Slash; break;
                case '^': t.kind = Tok::Caret; break;
                case '(': t.kind = Tok::LParen; break;
                case ')': t.kind = Tok::RParen; break;
                case '[': t.kind = Tok::LBracket; break;
                case ']': t.kind = Tok::RBracket; break;
                case ',': t.kind = Tok::Comma; break;
                default:
                    throw ParseError(i, {}, std::string("unexpected character '") + static_cast<char>(c) + "'");
            }
            t.text = std::string(1, static_cast<char>(c));
            ++i;
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::End;
    end.pos = s.size();
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------- parser

bool is_keyword(const std::string &s)
{
    return s == "mod" || s == "cutoff" || s == "exact";
}

NodePtr make(Node n)
{
    return std::make_shared<const Node>(std::move(n));
}

NodePtr binary(Node::Kind k, NodePtr a, NodePtr b, std::size_t pos)
{
    Node n;
    n.kind = k;
    n.args = {std::move(a), std::move(b)};
    n.position = pos;
    return make(std::move(n));
}

class Parser
{
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    Expression parse()
    {
        Expression e;
        e.root = sum();
        std::vector<std::string> expected = {"'+'", "'-'", "'*'", "'/'", "'^'", "'cutoff'", "'exact'", "end of input"};
        if (peek_keyword("cutoff")) {
            ++at_;
            e.tail = Expression::Tail::Cutoff;
            e.cutoff = cutoff_value();
            expected = {"end of input"};
        } else if (peek_keyword("exact")) {
            ++at_;
            e.tail = Expression::Tail::Exact;
            expected = {"end of input"};
        }
        if (peek().kind != Tok::End)
            throw ParseError(peek().pos, expected, "unexpected " + shown(peek()));
        return e;
    }

private:
    const Token &peek() const { return toks_[at_]; }
    bool peek_keyword(const char *kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

    static std::string shown(const Token &t)
    {
        return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    }

    const Token &expect(Tok k, std::vector<std::string> expected = {})
    {
        if (peek().kind != k) {
            if (expected.empty()) expected = {describe(k)};
            throw ParseError(peek().pos, expected, "unexpected " + shown(peek()));
        }
        return toks_[at_++];
    }

    NodePtr sum()
    {
        NodePtr lhs = product();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token op = toks_[at_++];
            lhs = binary(op.kind == Tok::Plus ? Node::Kind::Add : Node::Kind::Sub, lhs, product(), op.pos);
        }
        return lhs;
    }

    NodePtr product()
    {
        NodePtr lhs = unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token op = toks_[at_++];
            lhs = binary(op.kind == Tok::Star ? Node::Kind::Mul : Node::Kind::Div, lhs, unary(), op.pos);
        }
        return lhs;
    }

    NodePtr unary()
    {
        if (peek().kind == Tok::Minus) {
            const std::size_t pos = toks_[at_++].pos;
            Node n;
            n.kind = Node::Kind::Neg;
            n.args = {unary()};
            n.position = pos;
            return make(std::move(n));
        }
        return power();
    }

    long signed_exponent()
    {
        bool negative = false;
        if (peek().kind == Tok::Minus) {
            ++at_;
            negative = true;
        }
        const Token &t = expect(Tok::Int, {"integer exponent", "'-'"});
        const Integer v(t.text);
        if (!v.fits_slong_p()) throw ParseError(t.pos, {}, "exponent out of range");
        return negative ? -v.get_si() : v.get_si();
    }

    NodePtr power()
    {
        NodePtr base = primary();
        if (peek().kind != Tok::Caret) return base;
        const std::size_t pos = toks_[at_++].pos;
        Node n;
        n.kind = Node::Kind::Pow;
        n.args = {base};
        n.position = pos;
        if (peek().kind == Tok::LParen) {
            ++at_;
            n.exponent = signed_exponent();
            expect(Tok::RParen);
        } else {
            n.exponent = signed_exponent();
        }
        return make(std::move(n));
    }

    NodePtr element(const Token &id)
    {
        expect(Tok::LBracket);
        Node n;
        n.kind = Node::Kind::Element;
        n.family = id.text[0];
        n.position = id.pos;
        while (true) {
            bool negative = false;
            if (peek().kind == Tok::Minus) {
                ++at_;
                negative = true;
            }
            const Token &v = expect(Tok::Int, {"integer coordinate", "'-'"});
            Integer z(v.text);
            n.coords.push_back(negative ? Integer(-z) : z);
            if (peek().kind == Tok::Comma) {
                ++at_;
                continue;
            }
            expect(Tok::RBracket, {"','", "']'"});
            break;
        }
        return make(std::move(n));
    }

    NodePtr cutoff_value()
    {
        if (peek().kind == Tok::Ident && (peek().text == "g" || peek().text == "h")) {
            const Token id = toks_[at_++];
            return element(id);
        }
        Node n;
        n.kind = Node::Kind::Integer;
        n.position = peek().pos;
        bool negative = false;
        if (peek().kind == Tok::Minus) {
            ++at_;
            negative = true;
        }
        const Token &v = expect(Tok::Int, {"group element", "integer index"});
        n.value = Integer(v.text);
        if (negative) n.value = -n.value;
        return make(std::move(n));
    }

    NodePtr primary()
    {
        const Token t = peek();
        switch (t.kind) {
            case Tok::Int: {
                ++at_;
                Node n;
                n.kind = Node::Kind::Integer;
                n.value = Integer(t.text);
                n.position = t.pos;
                if (peek_keyword("mod")) {
                    ++at_;
                    n.kind = Node::Kind::Modular;
                    n.modulus = Integer(expect(Tok::Int, {"modulus"}).text);
                    return make(std::move(n));
                }
                NodePtr num = make(std::move(n));
                // 2i, 3t^2: a number directly followed by a scalar symbol.
                if (peek().kind == Tok::Ident && peek().adjacent &&
                    (peek().text == "i" || peek().text == "j" || peek().text == "k" || peek().text == "t")) {
                    return binary(Node::Kind::Mul, num, power(), peek().pos);
                }
                return num;
            }
            case Tok::Ident: {
                if (is_keyword(t.text)) break;
                ++at_;
                if ((t.text == "g" || t.text == "h") && peek().kind == Tok::LBracket) return element(t);
                Node n;
                n.kind = Node::Kind::Symbol;
                n.name = t.text;
                n.position = t.pos;
                return make(std::move(n));
            }
            case Tok::LParen: {
                ++at_;
                NodePtr inner = sum();
                expect(Tok::RParen, {"')'", "'+'", "'-'", "'*'", "'/'", "'^'"});
                return inner;
            }
            default:
                break;
        }
        throw ParseError(t.pos, {"integer", "identifier", "group element", "'('", "'-'"}, "unexpected " + shown(t));
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
};

} // namespace

Expression parse_expression(std::string_view text)
{
    return Parser(text).parse();
}

bool structurally_equal(const Node &a, const Node &b)
{
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Node::Kind::Integer:
            return a.value == b.value;
        case Node::Kind::Modular:
            return a.value == b.value && a.modulus == b.modulus;
        case Node::Kind::Symbol:
            return a.name == b.name;
        case Node::Kind::Element:
            return a.family == b.family && a.coords == b.coords;
        case Node::Kind::Pow:
            if (a.exponent != b.exponent) return false;
            break;
        default:
            break;
    }
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!structurally_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

bool operator==(const Expression &a, const Expression &b)
{
    if (a.tail != b.tail || !structurally_equal(*a.root, *b.root)) return false;
    if (a.tail != Expression::Tail::Cutoff) return true;
    return structurally_equal(*a.cutoff, *b.cutoff);
}

// ---------------------------------------------------------------- rendering

namespace
{

int precedence(const Node &n)
{
    switch (n.kind) {
        case Node::Kind::Add:
        case Node::Kind::Sub:
            return 1;
        case Node::Kind::Mul:
        case Node::Kind::Div:
            return 2;
        case Node::Kind::Neg:
            return 3;
        case Node::Kind::Pow:
            return 4;
        default:
            return 5;
    }
}

std::string render_at(const Node &n, int min_prec)
{
    std::string s = render(n);
    return precedence(n) < min_prec ? "(" + s + ")" : s;
}

} // namespace

std::string render(const Node &n)
{
    switch (n.kind) {
        case Node::Kind::Integer:
            return n.value.get_str();
        case Node::Kind::Modular:
            return n.value.get_str() + " mod " + n.modulus.get_str();
        case Node::Kind::Symbol:
            return n.name;
        case Node::Kind::Element: {
            std::string s(1, n.family);
            s += "[";
            for (std::size_t i = 0; i < n.coords.size(); ++i) s += (i ? "," : "") + n.coords[i].get_str();
            return s + "]";
        }
        case Node::Kind::Neg:
            return "-" + render_at(*n.args[0], 4);
        case Node::Kind::Pow:
            return render_at(*n.args[0], 5) + "^" + std::to_string(n.exponent);
        default:
            break;
    }
    const int p = precedence(n);
    const char *op = n.kind == Node::Kind::Add ? " + " : n.kind == Node::Kind::Sub ? " - " : n.kind == Node::Kind::Mul ? "*" : "/";
    return render_at(*n.args[0], p) + op + render_at(*n.args[1], p + 1);
}

std::string render(const Expression &e)
{
    std::string s = render(*e.root);
    if (e.tail == Expression::Tail::Exact) s += " exact";
    if (e.tail == Expression::Tail::Cutoff) s += " cutoff " + render(*e.cutoff);
    return s;
}

// ---------------------------------------------------------------- evaluation

std::string to_string(const Value &v)
{
    return std::visit(
        [](const auto &x) -> std::string {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Scalar>)
                return x.to_string();
            else
                return x.to_string();
        },
        v);
}

GroupElement element_from_literal(const Node &n, const Group &g)
{
    if (n.kind != Node::Kind::Element) fail(Errc::InvalidArgument, "expected a group element literal, got " + render(n));
    if (n.family != g.literal())
        fail(Errc::KindMismatch, render(n) + " is not an element of " + g.to_string() + " (literals are " + std::string(1, g.literal()) + "[...])");
    return GroupElement(g, n.coords);
}

namespace
{

class Evaluator
{
public:
    Evaluator(const EvalContext &ctx, Bound mn_target, IndexBound l_target) : ctx_(ctx), mn_target_(std::move(mn_target)), l_target_(l_target) {}

    Value eval(const Node &n) const
    {
        switch (n.kind) {
            case Node::Kind::Integer:
                return Scalar::from_rational(ctx_.field, Rational(n.value));
            case Node::Kind::Modular: {
                if (ctx_.field.kind != Field::Kind::Prime || Integer(static_cast<unsigned long>(ctx_.field.modulus)) != n.modulus)
                    fail(Errc::VariantMismatch, render(n) + " is not in " + ctx_.field.to_string());
                return Scalar::from_rational(ctx_.field, Rational(n.value));
            }
            case Node::Kind::Symbol:
                return symbol(n);
            case Node::Kind::Element: {
                const SpecPtr &spec = need_spec(n);
                return MNSeries::monomial(spec, element_from_literal(n, spec->group()), Scalar::one(ctx_.field));
            }
            case Node::Kind::Neg:
                return negate(eval(*n.args[0]));
            case Node::Kind::Add:
                return add(eval(*n.args[0]), eval(*n.args[1]));
            case Node::Kind::Sub:
                return add(eval(*n.args[0]), negate(eval(*n.args[1])));
            case Node::Kind::Mul:
                return mul(eval(*n.args[0]), eval(*n.args[1]));
            case Node::Kind::Div:
                return mul(eval(*n.args[0]), inv(eval(*n.args[1])));
            case Node::Kind::Pow:
                return pow(eval(*n.args[0]), n.exponent);
        }
        fail(Errc::InvalidArgument, "unknown expression node");
    }

private:
    const SpecPtr &need_spec(const Node &n) const
    {
        if (!ctx_.spec) fail(Errc::KindMismatch, render(n) + " needs a group (this context is " + (ctx_.ring ? ctx_.ring->to_string() : "scalars") + ")");
        return ctx_.spec;
    }

    Value symbol(const Node &n) const
    {
        if (auto it = ctx_.bindings.find(n.name); it != ctx_.bindings.end()) return it->second;
        if (n.name == "t") {
            if (ctx_.field.kind != Field::Kind::RatFunc) fail(Errc::VariantMismatch, "t is not in " + ctx_.field.to_string());
            return Scalar(RatFunc::t());
        }
        if (n.name == "i" || n.name == "j" || n.name == "k") {
            if (ctx_.field.kind != Field::Kind::Quaternion) fail(Errc::VariantMismatch, n.name + " is not in " + ctx_.field.to_string());
            if (n.name == "i") return Scalar(Quaternion{0, 1, 0, 0});
            if (n.name == "j") return Scalar(Quaternion{0, 0, 1, 0});
            return Scalar(Quaternion{0, 0, 0, 1});
        }
        if (ctx_.ring && n.name == "x") return SkewPoly::x(*ctx_.ring);
        if (ctx_.ring && n.name == "y") return SkewLaurent::monomial(*ctx_.ring, Scalar::one(ctx_.field), 1);
        fail(Errc::UnboundVariable, "unbound variable '" + n.name + "' at position " + std::to_string(n.position));
    }

    static int common(const Value &a, const Value &b)
    {
        return std::max(rank(a), rank(b));
    }

    // scalar 0, polynomial 1, Laurent 2, group series 3
    static int rank(const Value &v)
    {
        switch (v.index()) {
            case 0:
                return 0;
            case 1:
                return 3;
            case 2:
                return 1;
            default:
                return 2;
        }
    }

    Value lift_rank(const Value &v, int r) const
    {
        if (rank(v) == r) return v;
        if (r == 3) {
            if (rank(v) != 0) fail(Errc::KindMismatch, "cannot mix skew polynomials with group series");
            return MNSeries::constant(ctx_.spec, std::get<Scalar>(v));
        }
        if (rank(v) == 3) fail(Errc::KindMismatch, "cannot mix group series with skew polynomials");
        if (!ctx_.ring) fail(Errc::KindMismatch, "no skew ring in this context");
        if (r == 1) return SkewPoly::constant(*ctx_.ring, std::get<Scalar>(v));
        if (rank(v) == 0) return SkewLaurent::constant(*ctx_.ring, std::get<Scalar>(v));
        return embed_poly(std::get<SkewPoly>(v));
    }

    template <class F>
    Value combine(const Value &a, const Value &b, F op) const
    {
        const int r = common(a, b);
        const Value x = lift_rank(a, r), y = lift_rank(b, r);
        return std::visit(
            [&](const auto &u) -> Value {
                using T = std::decay_t<decltype(u)>;
                return op(u, std::get<T>(y));
            },
            x);
    }

    Value add(const Value &a, const Value &b) const
    {
        return combine(a, b, [](const auto &u, const auto &v) -> Value { return u + v; });
    }

    Value mul(const Value &a, const Value &b) const
    {
        return combine(a, b, [](const auto &u, const auto &v) -> Value { return u * v; });
    }

    static Value negate(const Value &a)
    {
        return std::visit([](const auto &u) -> Value { return -u; }, a);
    }

    Value inv(const Value &a) const
    {
        switch (rank(a)) {
            case 0:
                return std::get<Scalar>(a).inverse();
            case 3:
                return invert(std::get<MNSeries>(a), mn_target_, ctx_.max_terms);
            default: {
                const SkewLaurent f = std::get<SkewLaurent>(lift_rank(a, 2));
                if (!l_target_) {
                    if (f.is_exact() && f.terms().size() == 1) {
                        const long r = f.terms().front().first;
                        return laurent_invert(f, r < 0 ? -r + 1 : 1 - r);
                    }
                    fail(Errc::InsufficientPrecision, "inverting " + f.to_string() + " needs a target cutoff");
                }
                return laurent_invert(f, *l_target_);
            }
        }
    }

    Value pow(const Value &a, long e) const
    {
        Value base = e < 0 ? inv(a) : a;
        const long n = e < 0 ? -e : e;
        Value out = one_like(base);
        for (long i = 0; i < n; ++i) out = mul(out, base);
        return out;
    }

    Value one_like(const Value &a) const
    {
        switch (rank(a)) {
            case 0:
                return Scalar::one(ctx_.field);
            case 3:
                return MNSeries::one(std::get<MNSeries>(a).spec_ptr());
            case 1:
                return SkewPoly::constant(*ctx_.ring, Scalar::one(ctx_.field));
            default:
                return SkewLaurent::constant(*ctx_.ring, Scalar::one(ctx_.field));
        }
    }

    const EvalContext &ctx_;
    Bound mn_target_;
    IndexBound l_target_;
};

} // namespace

Value evaluate(const Expression &e, const EvalContext &ctx)
{
    Bound mn_target = ctx.series_target;
    IndexBound l_target = ctx.laurent_target;
    std::optional<GroupElement> tail_element;
    std::optional<long> tail_index;
    if (e.tail == Expression::Tail::Cutoff) {
        if (e.cutoff->kind == Node::Kind::Element) {
            if (!ctx.spec) fail(Errc::KindMismatch, "cutoff " + render(*e.cutoff) + " needs a group");
            tail_element = element_from_literal(*e.cutoff, ctx.spec->group());
            mn_target = tail_element;
        } else {
            if (!e.cutoff->value.fits_slong_p()) fail(Errc::InvalidArgument, "cutoff index out of range");
            tail_index = e.cutoff->value.get_si();
            l_target = tail_index;
        }
    }
    if (e.tail == Expression::Tail::Exact) {
        mn_target = std::nullopt;
        l_target = std::nullopt;
    }

    Value v = Evaluator(ctx, mn_target, l_target).eval(*e.root);

    if (tail_element) {
        if (std::holds_alternative<Scalar>(v)) v = MNSeries::constant(ctx.spec, std::get<Scalar>(v));
        if (!std::holds_alternative<MNSeries>(v)) fail(Errc::KindMismatch, "element cutoff on a non-group value");
        v = std::get<MNSeries>(v).truncated(tail_element);
    }
    if (tail_index) {
        if (!ctx.ring) fail(Errc::KindMismatch, "integer cutoff needs a skew ring (--ring)");
        if (std::holds_alternative<Scalar>(v)) v = SkewLaurent::constant(*ctx.ring, std::get<Scalar>(v));
        if (std::holds_alternative<SkewPoly>(v)) v = embed_poly(std::get<SkewPoly>(v));
        if (!std::holds_alternative<SkewLaurent>(v)) fail(Errc::KindMismatch, "integer cutoff on a non-Laurent value");
        v = std::get<SkewLaurent>(v).truncated(tail_index);
    }
    if (e.tail == Expression::Tail::Exact) {
        const bool exact = std::visit(
            [](const auto &x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, MNSeries> || std::is_same_v<T, SkewLaurent>)
                    return x.is_exact();
                else
                    return true;
            },
            v);
        if (!exact) fail(Errc::InsufficientPrecision, "value is only known below " + to_string(v));
    }
    return v;
}

GroupElement parse_element(std::string_view text, const Group &g)
{
    const Expression e = parse_expression(text);
    if (e.tail != Expression::Tail::None) throw ParseError(text.size(), {"end of input"}, "unexpected cutoff tail");
    return element_from_literal(*e.root, g);
}

Scalar parse_scalar(std::string_view text, const Field &f)
{
    EvalContext ctx;
    ctx.field = f;
    const Value v = evaluate(parse_expression(text), ctx);
    if (!std::holds_alternative<Scalar>(v)) fail(Errc::KindMismatch, "expected a scalar, got " + to_string(v));
    return std::get<Scalar>(v);
}

MNSeries parse_series(std::string_view text, const SpecPtr &spec)
{
    EvalContext ctx;
    ctx.field = spec->field();
    ctx.spec = spec;
    const Value v = evaluate(parse_expression(text), ctx);
    if (std::holds_alternative<Scalar>(v)) return MNSeries::constant(spec, std::get<Scalar>(v));
    if (!std::holds_alternative<MNSeries>(v)) fail(Errc::KindMismatch, "expected a series, got " + to_string(v));
    return std::get<MNSeries>(v);
}

} // namespace mns
