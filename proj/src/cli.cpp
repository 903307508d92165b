#include <mnseries/cli.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include <mnseries/crossed_product.hpp>
#include <mnseries/error.hpp>
#include <mnseries/expr.hpp>
#include <mnseries/freeness.hpp>
#include <mnseries/io.hpp>
#include <mnseries/render.hpp>

namespace mns
{

namespace
{

struct Options {
    std::string group = "zn:1";
    std::string field = "q";
    std::string spec = "trivial";
    std::string ring;
    std::string cutoff;
    std::string target;
    int jump = 0;
    std::size_t max_len = 3;
    std::vector<std::string> gens;
    std::vector<std::string> inputs;
    std::string output;
    std::string order = "lex";
    std::size_t samples = 200;
    std::uint64_t seed = 1;
    bool porcelain = false;
    std::string expr;
};

void add_common(CLI::App *sub, Options &o)
{
    sub->add_option("--group", o.group, "zn:<n> or heis")->capture_default_str();
    sub->add_option("--field", o.field, "q, fp:<p>, qt or quat")->capture_default_str();
    sub->add_option("--spec", o.spec, "trivial, sign2, twist:<sigma> or corrupt")->capture_default_str();
    sub->add_option("--ring", o.ring, "skew ring, e.g. \"sigma=id delta=ddt\"; switches to x / y expressions");
    sub->add_option("--cutoff", o.cutoff, "truncate the result below this element (or index with --ring)");
    sub->add_option("--target", o.target, "inversion target: element, or index with --ring");
    sub->add_option("--jump", o.jump, "convex jump index, 1 = innermost")->check(CLI::PositiveNumber);
    sub->add_option("--gen", o.gens, "bind name=expr (repeatable, evaluated in order)")->allow_extra_args(false);
    sub->add_flag("--porcelain", o.porcelain, "key=value output");
}

std::pair<std::string, std::string> split_binding(const std::string &s, const char *what)
{
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) fail(Errc::InvalidArgument, std::string(what) + " expects name=value, got '" + s + "'");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

long parse_index(const std::string &s, const char *what)
{
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception &) {
    }
    fail(Errc::InvalidArgument, std::string(what) + " expects an integer, got '" + s + "'");
}

std::string slurp(const std::string &path)
{
    std::ifstream in(path);
    if (!in) fail(Errc::InvalidArgument, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

EvalContext build_context(const Options &o)
{
    EvalContext ctx;
    ctx.field = parse_field(o.field);
    if (!o.ring.empty()) {
        ctx.ring = parse_skew_ring(o.ring, ctx.field);
        if (!o.target.empty()) ctx.laurent_target = parse_index(o.target, "--target");
        else if (!o.cutoff.empty()) ctx.laurent_target = parse_index(o.cutoff, "--cutoff");
    } else {
        ctx.spec = make_spec(o.spec, parse_group(o.group), ctx.field);
        if (!o.target.empty()) ctx.series_target = parse_element(o.target, ctx.spec->group());
        else if (!o.cutoff.empty()) ctx.series_target = parse_element(o.cutoff, ctx.spec->group());
    }
    for (const std::string &in : o.inputs) {
        const auto [name, path] = split_binding(in, "--input");
        const std::string text = slurp(path);
        if (text.rfind("skewlaurent", text.find_first_not_of(" \t\r\n#")) == text.find_first_not_of(" \t\r\n#"))
            ctx.bindings.insert_or_assign(name, read_laurent(text));
        else
            ctx.bindings.insert_or_assign(name, read_series(text));
    }
    for (const std::string &g : o.gens) {
        const auto [name, text] = split_binding(g, "--gen");
        ctx.bindings.insert_or_assign(name, evaluate(parse_expression(text), ctx));
    }
    return ctx;
}

MNSeries as_series(const Value &v, const EvalContext &ctx)
{
    if (std::holds_alternative<MNSeries>(v)) return std::get<MNSeries>(v);
    if (std::holds_alternative<Scalar>(v) && ctx.spec) return MNSeries::constant(ctx.spec, std::get<Scalar>(v));
    fail(Errc::KindMismatch, "expected a group series, got " + to_string(v));
}

SkewLaurent as_laurent(const Value &v, const EvalContext &ctx)
{
    if (std::holds_alternative<SkewLaurent>(v)) return std::get<SkewLaurent>(v);
    if (std::holds_alternative<SkewPoly>(v)) return embed_poly(std::get<SkewPoly>(v));
    if (std::holds_alternative<Scalar>(v) && ctx.ring) return SkewLaurent::constant(*ctx.ring, std::get<Scalar>(v));
    fail(Errc::KindMismatch, "expected a skew Laurent series, got " + to_string(v));
}

const char *kind_name(const Value &v)
{
    switch (v.index()) {
        case 0:
            return "scalar";
        case 1:
            return "mnseries";
        case 2:
            return "skewpoly";
        default:
            return "skewlaurent";
    }
}

void print_value(std::ostream &out, const Value &v, bool porcelain)
{
    if (!porcelain) {
        out << to_string(v) << "\n";
        return;
    }
    out << "kind=" << kind_name(v) << "\n";
    out << "value=" << to_string(v) << "\n";
    if (const auto *f = std::get_if<MNSeries>(&v)) {
        out << "terms=" << f->terms().size() << "\n";
        out << "cutoff=" << to_string(f->cutoff()) << "\n";
        for (const Term &t : f->terms()) out << "term=" << t.element.to_string() << " " << t.coeff.to_coefficient_string() << "\n";
    } else if (const auto *l = std::get_if<SkewLaurent>(&v)) {
        out << "terms=" << l->terms().size() << "\n";
        out << "cutoff=" << to_string(l->cutoff()) << "\n";
        for (const auto &[i, c] : l->terms()) out << "term=" << i << " " << c.to_coefficient_string() << "\n";
    }
}

Value apply_cutoff(const Value &v, const Options &o, const EvalContext &ctx)
{
    if (o.cutoff.empty()) return v;
    if (ctx.ring) return as_laurent(v, ctx).truncated(parse_index(o.cutoff, "--cutoff"));
    return as_series(v, ctx).truncated(parse_element(o.cutoff, ctx.spec->group()));
}

void write_output(const Value &v, const Options &o, const EvalContext &ctx)
{
    if (o.output.empty()) return;
    std::ofstream file(o.output);
    if (!file) fail(Errc::InvalidArgument, "cannot write " + o.output);
    file << (ctx.ring ? write_laurent(as_laurent(v, ctx)) : write_series(as_series(v, ctx)));
}

int cmd_eval(const Options &o, std::ostream &out)
{
    const EvalContext ctx = build_context(o);
    const Value v = apply_cutoff(evaluate(parse_expression(o.expr), ctx), o, ctx);
    print_value(out, v, o.porcelain);
    write_output(v, o, ctx);
    return 0;
}

int cmd_invert(const Options &o, std::ostream &out)
{
    const EvalContext ctx = build_context(o);
    const Value v = evaluate(parse_expression(o.expr), ctx);
    Value inv;
    if (ctx.ring) {
        if (!ctx.laurent_target) fail(Errc::InvalidArgument, "invert needs --target <index> with --ring");
        inv = laurent_invert(as_laurent(v, ctx), *ctx.laurent_target);
    } else {
        inv = invert(as_series(v, ctx), ctx.series_target, ctx.max_terms);
    }
    print_value(out, inv, o.porcelain);
    write_output(inv, o, ctx);
    return 0;
}

int cmd_valuate(const Options &o, std::ostream &out)
{
    const EvalContext ctx = build_context(o);
    const Value v = evaluate(parse_expression(o.expr), ctx);
    const char *sep = o.porcelain ? "=" : " = ";
    if (ctx.ring) {
        const SkewLaurent f = as_laurent(v, ctx);
        const auto w = laurent_omega(f);
        out << "omega" << sep << (w ? std::to_string(*w) : f.is_exact() ? "inf" : ">= " + to_string(f.cutoff())) << "\n";
        return 0;
    }
    const MNSeries f = as_series(v, ctx);
    const Group &g = f.group();
    int index = o.jump;
    if (index == 0) {
        if (g.num_jumps() != 1)
            fail(Errc::InvalidArgument, "--jump is required for " + g.to_string() + " (jumps 1.." + std::to_string(g.num_jumps()) + ", 1 = innermost)");
        index = 1;
    }
    const ConvexJump jump = jump_at(g, index);
    const auto w = omega(f);
    if (!w) {
        const std::string unknown = f.is_exact() ? "inf" : "unknown (zero below " + to_string(f.cutoff()) + ")";
        out << "omega" << sep << unknown << "\n";
        out << (o.porcelain ? "jump=" + std::to_string(index) : jump.describe()) << "\n";
        out << "nu" << sep << unknown << "\n";
        return 0;
    }
    const Integer nu = archimedean_projection(jump, *w);
    out << "omega" << sep << w->to_string() << "\n";
    out << (o.porcelain ? "jump=" + std::to_string(index) : jump.describe()) << "\n";
    out << "nu" << sep << nu.get_str() << "\n";
    return 0;
}

std::vector<std::string> default_generator_names(std::size_t n)
{
    static const char *letters[] = {"x", "y", "z", "w", "u", "v"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(i < 6 ? letters[i] : "x" + std::to_string(i + 1));
    return names;
}

int cmd_free_check(const Options &o, std::ostream &out)
{
    const EvalContext ctx = build_context(o);
    std::vector<std::string> names;
    for (const std::string &g : o.gens) names.push_back(split_binding(g, "--gen").first);
    IndependenceReport report;
    if (ctx.ring) {
        if (names.empty()) fail(Errc::InvalidArgument, "free-check with --ring needs --gen name=expr");
        std::vector<SkewLaurent> gens;
        for (const std::string &n : names) gens.push_back(as_laurent(ctx.bindings.at(n), ctx));
        report = independence_check(gens, o.max_len, names);
    } else {
        std::vector<MNSeries> gens;
        if (names.empty()) {
            const Group &g = ctx.spec->group();
            const int count = g.kind == Group::Kind::Heisenberg ? 2 : g.rank;
            names = default_generator_names(static_cast<std::size_t>(count));
            for (int i = 1; i <= count; ++i)
                gens.push_back(MNSeries::monomial(ctx.spec, GroupElement::basis(g, i), Scalar::one(ctx.field)));
        } else {
            for (const std::string &n : names) gens.push_back(as_series(ctx.bindings.at(n), ctx));
        }
        report = independence_check(gens, o.max_len, names);
    }
    out << (o.porcelain ? render_porcelain(report) : render_report(report) + "\n");
    return 0;
}

int cmd_weyl_demo(std::ostream &out)
{
    const SkewRing ring = weyl_ring();
    const SkewPoly x1 = weyl_x1(), x2 = weyl_x2();
    const SkewPoly one = SkewPoly::constant(ring, Scalar::one(ring.field));
    bool ok = true;
    out << "ring: " << ring.to_string() << " over " << ring.field.to_string() << "\n";
    out << "x1 = " << x1.to_string() << "\n";
    out << "x2 = " << x2.to_string() << "\n";
    out << "x1*x2 = " << (x1 * x2).to_string() << "\n";
    out << "x2*x1 = " << (x2 * x1).to_string() << "\n";
    SkewPoly power = one, below = one;
    for (long n = 1; n <= 4; ++n) {
        below = power;
        power = power * x1;
        const SkewPoly lhs = x2 * power - power * x2;
        const SkewPoly expected = SkewPoly::constant(ring, Scalar::from_rational(ring.field, Rational(-n))) * below;
        const bool good = lhs == expected;
        ok = ok && good;
        out << "x2*x1^" << n << " - x1^" << n << "*x2 = " << lhs.to_string() << " : " << (good ? "OK" : "FAIL") << "\n";
    }
    const SkewPoly c = commutator(x1, x2);
    const bool good = c == one;
    ok = ok && good;
    out << "[x1,x2] = " << c.to_string() << " : " << (good ? "OK" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int cmd_limit_demo(const Options &o, std::ostream &out)
{
    const long n = o.target.empty() ? 6 : parse_index(o.target, "--target");
    if (n < 1) fail(Errc::InvalidArgument, "--target must be positive");
    bool ok = true;

    const Field field = parse_field(o.field);
    const SpecPtr spec = make_spec(o.spec, parse_group(o.group), field);
    const ConvexJump jump = jump_at(spec->group(), o.jump == 0 ? 1 : o.jump);
    const GroupElement target = power(jump.generator, n);
    const MNSeries t = MNSeries::monomial(spec, jump.generator, Scalar::one(field));
    const MNSeries one = MNSeries::one(spec);

    // u_m = 1 + t + ... + t^(m-1), read at m = k + 1
    const SeriesSequence partial = [&](std::size_t m) {
        MNSeries s = MNSeries::zero(spec), p = one;
        for (std::size_t k = 0; k < m; ++k) {
            s = s + p;
            p = p * t;
        }
        return s;
    };
    const Modulus modulus = [](std::size_t k) { return k + 1; };
    const MNSeries lim = cauchy_limit(partial, modulus, jump, target);
    const MNSeries inv = invert(one - t, target);
    const bool mn_ok = lim == inv;
    ok = ok && mn_ok;
    out << "series: u_m = sum_{k<m} " << jump.generator.to_string() << "^k in " << spec->describe() << ", jump " << jump.index << "\n";
    out << "limit:   " << lim.to_string() << "\n";
    out << "inverse: " << inv.to_string() << "\n";
    out << "mn limit equals (1 - " << jump.generator.to_string() << ")^-1 : " << (mn_ok ? "OK" : "FAIL") << "\n";

    const SkewRing ring = o.ring.empty() ? weyl_ring() : parse_skew_ring(o.ring, field);
    const Scalar lead = ring.field.kind == Field::Kind::RatFunc ? Scalar(RatFunc::t()) : Scalar::one(ring.field);
    const SkewLaurent g = SkewLaurent::monomial(ring, lead, 1);
    const std::string g_name = render_product(lead, "y");
    const SkewLaurent lone = SkewLaurent::constant(ring, Scalar::one(ring.field));
    const LaurentSequence lpartial = [&](std::size_t m) {
        SkewLaurent s = SkewLaurent::zero(ring), p = lone;
        for (std::size_t k = 0; k < m; ++k) {
            s = s + p;
            p = p * g;
        }
        return s;
    };
    const SkewLaurent llim = laurent_cauchy_limit(lpartial, modulus, n);
    const SkewLaurent linv = laurent_invert(lone - g, n);
    const bool l_ok = llim == linv;
    ok = ok && l_ok;
    out << "series: u_m = sum_{k<m} (" << g_name << ")^k in " << ring.to_string() << " over " << ring.field.to_string() << "\n";
    out << "limit:   " << llim.to_string() << "\n";
    out << "inverse: " << linv.to_string() << "\n";
    out << "laurent limit equals (1 - " << g_name << ")^-1 : " << (l_ok ? "OK" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int cmd_validate_spec(const Options &o, std::ostream &out)
{
    const Field field = parse_field(o.field);
    const Group g = parse_group(o.group);
    const SpecPtr spec = make_spec(o.spec, g, field);
    std::vector<ElementTriple> triples = box_triples(g, 1);
    const std::vector<ElementTriple> random = random_triples(g, o.samples, o.seed);
    triples.insert(triples.end(), random.begin(), random.end());

    bool ok = true;
    auto report = [&](const std::string &what, const std::vector<std::pair<std::string, std::string>> &violations) {
        const bool good = violations.empty();
        ok = ok && good;
        if (o.porcelain) {
            out << what << ".checked=" << triples.size() << "\n" << what << ".violations=" << violations.size() << "\n";
        } else {
            out << what << ": " << violations.size() << " violations on " << triples.size() << " triples : " << (good ? "OK" : "FAIL") << "\n";
        }
        for (std::size_t i = 0; i < violations.size() && i < 3; ++i)
            out << (o.porcelain ? what + ".violation=" : "  ") << violations[i].first << ": " << violations[i].second << "\n";
    };

    if (!o.porcelain) out << "spec " << spec->describe() << "\n";
    std::vector<std::pair<std::string, std::string>> spec_v;
    for (const SpecViolation &v : validate_spec(*spec, SpecSamples{triples, sample_scalars(field)})) spec_v.emplace_back(v.law, v.detail);
    report("cocycle", spec_v);

    Comparator cmp;
    if (o.order == "lex") cmp = [](const GroupElement &a, const GroupElement &b) { return compare(a, b); };
    else if (o.order == "least-significant") cmp = least_significant_comparator();
    else fail(Errc::InvalidArgument, "unknown --order '" + o.order + "' (expected lex or least-significant)");
    std::vector<std::pair<std::string, std::string>> order_v;
    for (const OrderViolation &v : check_order_axioms(triples, cmp)) {
        std::string w;
        for (const GroupElement &x : v.witnesses) w += (w.empty() ? "" : " ") + x.to_string();
        order_v.emplace_back(v.law, w);
    }
    report("order", order_v);
    return ok ? 0 : 1;
}

bool is_usage_error(Errc c)
{
    switch (c) {
        case Errc::ParseError:
        case Errc::InvalidArgument:
        case Errc::UnboundVariable:
        case Errc::KindMismatch:
        case Errc::VariantMismatch:
            return true;
        default:
            return false;
    }
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact arithmetic with Malcev-Neumann series, skew Laurent series and free-subalgebra checks", "mns"};
    app.require_subcommand(1);
    Options o;

    CLI::App *eval = app.add_subcommand("eval", "evaluate an expression");
    add_common(eval, o);
    eval->add_option("expr", o.expr, "expression")->required();
    eval->add_option("--input", o.inputs, "bind name=path to a series file (repeatable)")->allow_extra_args(false);
    eval->add_option("--output", o.output, "write the result as a series file");

    CLI::App *inv = app.add_subcommand("invert", "invert a series below --target");
    add_common(inv, o);
    inv->add_option("expr", o.expr, "expression")->required();
    inv->add_option("--input", o.inputs, "bind name=path to a series file (repeatable)")->allow_extra_args(false);
    inv->add_option("--output", o.output, "write the inverse as a series file");

    CLI::App *val = app.add_subcommand("valuate", "print omega and nu at a convex jump");
    add_common(val, o);
    val->add_option("expr", o.expr, "expression")->required();
    val->add_option("--input", o.inputs, "bind name=path to a series file (repeatable)")->allow_extra_args(false);

    CLI::App *free = app.add_subcommand("free-check", "rank of the words of length <= D in the generators");
    add_common(free, o);
    free->add_option("--max-len", o.max_len, "maximal word length D")->capture_default_str();

    CLI::App *weyl = app.add_subcommand("weyl-demo", "commutation identities in the Weyl algebra over Q(t)");

    CLI::App *limit = app.add_subcommand("limit-demo", "Cauchy limits of geometric partial sums; --target is an integer N");
    add_common(limit, o);

    CLI::App *vs = app.add_subcommand("validate-spec", "check the crossed-product laws and the group order on samples");
    add_common(vs, o);
    vs->add_option("--order", o.order, "lex or least-significant")->capture_default_str();
    vs->add_option("--samples", o.samples, "random triples in addition to the unit box")->capture_default_str();
    vs->add_option("--seed", o.seed, "random seed")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(o, out);
        if (inv->parsed()) return cmd_invert(o, out);
        if (val->parsed()) return cmd_valuate(o, out);
        if (free->parsed()) return cmd_free_check(o, out);
        if (weyl->parsed()) return cmd_weyl_demo(out);
        if (limit->parsed()) return cmd_limit_demo(o, out);
        if (vs->parsed()) return cmd_validate_spec(o, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return is_usage_error(e.code()) ? 2 : 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace mns
