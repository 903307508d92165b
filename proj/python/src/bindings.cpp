#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <mnseries/cli.hpp>
#include <mnseries/error.hpp>
#include <mnseries/expr.hpp>
#include <mnseries/freeness.hpp>
#include <mnseries/io.hpp>
#include <mnseries/mn_series.hpp>
#include <mnseries/skew.hpp>

namespace py = pybind11;
using namespace mns;

namespace
{

py::object to_py_int(const Integer &n)
{
    return py::reinterpret_steal<py::object>(PyLong_FromString(n.get_str().c_str(), nullptr, 10));
}

py::object to_fraction(const Rational &q)
{
    return py::module_::import("fractions").attr("Fraction")(q.get_str());
}

GroupElement element_from(const Group &g, const py::handle &h)
{
    if (py::isinstance<GroupElement>(h))
        return h.cast<GroupElement>();
    if (py::isinstance<py::str>(h))
        return parse_element(h.cast<std::string>(), g);
    std::vector<Integer> coords;
    for (const py::handle &c : h)
        coords.emplace_back(py::str(c).cast<std::string>());
    return GroupElement(g, std::move(coords));
}

Bound bound_from(const Group &g, const py::object &h)
{
    if (h.is_none())
        return std::nullopt;
    return element_from(g, h);
}

py::object bound_to_py(const Bound &b)
{
    return b ? py::cast(*b) : py::none();
}

py::object value_to_py(const Value &v)
{
    return std::visit(
        [](const auto &x) -> py::object {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Scalar>)
                return py::str(x.to_string());
            else
                return py::cast(x);
        },
        v);
}

Value value_from_py(const py::handle &h, const Field &f)
{
    if (py::isinstance<MNSeries>(h))
        return h.cast<MNSeries>();
    if (py::isinstance<SkewPoly>(h))
        return h.cast<SkewPoly>();
    if (py::isinstance<SkewLaurent>(h))
        return h.cast<SkewLaurent>();
    return parse_scalar(py::str(h).cast<std::string>(), f);
}

// Shared spec owned from Python; series built from it keep it alive.
struct SpecHandle {
    SpecPtr spec;
};

SkewRing ring_from(const Field &f, const std::string &text)
{
    return text.empty() ? SkewRing::make(f, EndoSpec::identity(), DerivSpec::zero()) : parse_skew_ring(text, f);
}

py::dict report_to_py(const IndependenceReport &r)
{
    py::dict d;
    d["verdict"] = to_string(r.verdict);
    d["rank"] = r.rank;
    d["words"] = r.words;
    py::list rel;
    for (const RelationTerm &t : r.relation)
        rel.append(py::make_tuple(t.word, to_fraction(t.coeff)));
    d["relation"] = rel;
    d["cutoff"] = r.cutoff;
    d["field"] = r.field;
    d["report"] = render_report(r);
    return d;
}

std::vector<std::string> default_names(std::size_t n)
{
    static const std::string letters = "xyzuvw";
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(i < letters.size() ? std::string(1, letters[i]) : "g" + std::to_string(i + 1));
    return names;
}

} // namespace

PYBIND11_MODULE(_mnseries, m)
{
    m.doc() = "Malcev-Neumann series over crossed products and skew Laurent series";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_storage;
    error_storage.call_once_and_store_result([&]() { return py::object(py::exception<Error>(m, "Error")); });
    py::register_exception_translator([](std::exception_ptr p) {
        const py::object &error_type = error_storage.get_stored();
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error &e) {
            py::object inst = error_type(e.what());
            inst.attr("code") = std::string(to_string(e.code()));
            if (const auto *pe = dynamic_cast<const ParseError *>(&e)) {
                inst.attr("position") = pe->position();
                inst.attr("expected") = pe->expected();
            }
            PyErr_SetObject(error_type.ptr(), inst.ptr());
        }
    });

    py::class_<Field>(m, "Field")
        .def(py::init([](const std::string &s) { return parse_field(s); }), py::arg("selector") = "q")
        .def("__str__", &Field::to_string)
        .def("__repr__", [](const Field &f) { return "Field('" + f.to_string() + "')"; })
        .def(py::self == py::self);

    py::class_<GroupElement>(m, "GroupElement")
        .def_property_readonly("coords",
                               [](const GroupElement &x) {
                                   py::list l;
                                   for (const Integer &c : x.coords())
                                       l.append(to_py_int(c));
                                   return l;
                               })
        .def_property_readonly("group", &GroupElement::group)
        .def("is_identity", &GroupElement::is_identity)
        .def("inverse", [](const GroupElement &x) { return inverse(x); })
        .def("__mul__", [](const GroupElement &a, const GroupElement &b) { return a * b; })
        .def("__pow__", [](const GroupElement &a, long n) { return power(a, n); })
        .def("__eq__", [](const GroupElement &a, const GroupElement &b) { return a == b; })
        .def("__lt__", [](const GroupElement &a, const GroupElement &b) { return compare(a, b) < 0; })
        .def("__le__", [](const GroupElement &a, const GroupElement &b) { return compare(a, b) <= 0; })
        .def("__gt__", [](const GroupElement &a, const GroupElement &b) { return compare(a, b) > 0; })
        .def("__ge__", [](const GroupElement &a, const GroupElement &b) { return compare(a, b) >= 0; })
        .def("__hash__", [](const GroupElement &x) { return py::hash(py::str(x.to_string())); })
        .def("__str__", &GroupElement::to_string)
        .def("__repr__", [](const GroupElement &x) { return "GroupElement('" + x.to_string() + "')"; });

    py::class_<ConvexJump>(m, "ConvexJump")
        .def_readonly("index", &ConvexJump::index)
        .def_readonly("generator", &ConvexJump::generator)
        .def("contains", &ConvexJump::in_upper, "Membership in the upper subgroup H.")
        .def("in_lower", &ConvexJump::in_lower)
        .def("projection", [](const ConvexJump &j, const GroupElement &x) { return to_py_int(archimedean_projection(j, x)); })
        .def("__str__", &ConvexJump::describe);

    py::class_<Group>(m, "Group")
        .def(py::init([](const std::string &s) { return parse_group(s); }), py::arg("selector"))
        .def_property_readonly("num_jumps", &Group::num_jumps)
        .def("element", [](const Group &g, const py::object &h) { return element_from(g, h); })
        .def("identity", [](const Group &g) { return GroupElement::identity(g); })
        .def("basis", [](const Group &g, int i) { return GroupElement::basis(g, i); })
        .def("jump", [](const Group &g, int i) { return jump_at(g, i); })
        .def("principal_jump", [](const Group &, const GroupElement &x) { return principal_jump_of(x); })
        .def("order_violations",
             [](const Group &g, std::size_t count, std::uint64_t seed) {
                 return check_order_axioms(random_triples(g, count, seed)).size();
             },
             py::arg("count") = 500, py::arg("seed") = 1)
        .def(py::self == py::self)
        .def("__str__", &Group::to_string)
        .def("__repr__", [](const Group &g) { return "Group('" + g.to_string() + "')"; });

    py::class_<SpecHandle>(m, "Spec")
        .def(py::init([](const std::string &selector, const Group &g, const py::object &field) {
                 const Field f = py::isinstance<Field>(field) ? field.cast<Field>() : parse_field(field.cast<std::string>());
                 return SpecHandle{make_spec(selector, g, f)};
             }),
             py::arg("selector"), py::arg("group"), py::arg("field") = "q")
        .def_property_readonly("name", [](const SpecHandle &s) { return s.spec->name(); })
        .def_property_readonly("group", [](const SpecHandle &s) { return s.spec->group(); })
        .def_property_readonly("field", [](const SpecHandle &s) { return s.spec->field(); })
        .def("series", [](const SpecHandle &s, const std::string &text) { return parse_series(text, s.spec); })
        .def("one", [](const SpecHandle &s) { return MNSeries::one(s.spec); })
        .def("monomial",
             [](const SpecHandle &s, const py::object &x, const std::string &coeff) {
                 return MNSeries::monomial(s.spec, element_from(s.spec->group(), x), parse_scalar(coeff, s.spec->field()));
             },
             py::arg("element"), py::arg("coeff") = "1")
        .def("violations",
             [](const SpecHandle &s, long bound) {
                 const SpecSamples samples{box_triples(s.spec->group(), bound), sample_scalars(s.spec->field())};
                 return validate_spec(*s.spec, samples).size();
             },
             py::arg("bound") = 1)
        .def("__str__", [](const SpecHandle &s) { return s.spec->describe(); });

    py::class_<MNSeries>(m, "Series")
        .def_property_readonly("terms",
                               [](const MNSeries &f) {
                                   py::list l;
                                   for (const Term &t : f.terms())
                                       l.append(py::make_tuple(t.element, t.coeff.to_string()));
                                   return l;
                               })
        .def_property_readonly("cutoff", [](const MNSeries &f) { return bound_to_py(f.cutoff()); })
        .def_property_readonly("spec", [](const MNSeries &f) { return SpecHandle{f.spec_ptr()}; })
        .def("is_exact", &MNSeries::is_exact)
        .def("is_zero", &MNSeries::is_zero)
        .def("coefficient",
             [](const MNSeries &f, const py::object &x) { return f.coefficient(element_from(f.group(), x)).to_string(); })
        .def("truncated", [](const MNSeries &f, const py::object &b) { return f.truncated(bound_from(f.group(), b)); })
        .def("invert",
             [](const MNSeries &f, const py::object &target, std::size_t max_terms) {
                 return invert(f, bound_from(f.group(), target), max_terms);
             },
             py::arg("target"), py::arg("max_terms") = default_neumann_terms)
        .def("omega", [](const MNSeries &f) { return bound_to_py(omega(f)); })
        .def("nu",
             [](const MNSeries &f, const ConvexJump &j) -> py::object {
                 const auto v = nu(f, j);
                 return v ? to_py_int(*v) : py::none();
             })
        .def("distance", [](const MNSeries &a, const MNSeries &b, const ConvexJump &j) { return to_fraction(distance(a, b, j)); })
        .def("agrees_with", [](const MNSeries &a, const MNSeries &b) { return agree_below_common_cutoff(a, b); })
        .def("dumps", &write_series)
        .def_static("loads", [](const std::string &text) { return read_series(text); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__str__", &MNSeries::to_string)
        .def("__repr__", [](const MNSeries &f) { return "Series('" + f.to_string() + "')"; });

    py::class_<SkewRing>(m, "Ring")
        .def(py::init([](const std::string &field, const std::string &text) { return ring_from(parse_field(field), text); }),
             py::arg("field") = "qt", py::arg("ring") = "")
        .def_readwrite("precision", &SkewRing::precision)
        .def_property_readonly("field", [](const SkewRing &r) { return r.field; })
        .def("x", [](const SkewRing &r) { return SkewPoly::x(r); })
        .def("poly",
             [](const SkewRing &r, const std::string &text) {
                 EvalContext ctx;
                 ctx.field = r.field;
                 ctx.ring = r;
                 const Value v = evaluate(parse_expression(text), ctx);
                 if (const auto *p = std::get_if<SkewPoly>(&v))
                     return *p;
                 if (const auto *c = std::get_if<Scalar>(&v))
                     return SkewPoly::constant(r, *c);
                 fail(Errc::KindMismatch, "not a skew polynomial: " + text);
             })
        .def("laurent",
             [](const SkewRing &r, const std::string &text) {
                 EvalContext ctx;
                 ctx.field = r.field;
                 ctx.ring = r;
                 const Value v = evaluate(parse_expression(text), ctx);
                 if (const auto *l = std::get_if<SkewLaurent>(&v))
                     return *l;
                 if (const auto *p = std::get_if<SkewPoly>(&v))
                     return embed_poly(*p);
                 if (const auto *c = std::get_if<Scalar>(&v))
                     return SkewLaurent::constant(r, *c);
                 fail(Errc::KindMismatch, "not a Laurent series: " + text);
             })
        .def("__str__", &SkewRing::to_string);

    m.def("weyl_ring", &weyl_ring);

    py::class_<SkewPoly>(m, "SkewPoly")
        .def_property_readonly("coeffs",
                               [](const SkewPoly &p) {
                                   std::vector<std::string> c;
                                   for (const Scalar &s : p.coeffs())
                                       c.push_back(s.to_string());
                                   return c;
                               })
        .def_property_readonly("degree", &SkewPoly::degree)
        .def_property_readonly("order", &SkewPoly::order)
        .def("is_zero", &SkewPoly::is_zero)
        .def("commutator", [](const SkewPoly &a, const SkewPoly &b) { return commutator(a, b); })
        .def("to_laurent", [](const SkewPoly &p) { return embed_poly(p); })
        .def("__pow__",
             [](const SkewPoly &p, unsigned n) {
                 SkewPoly r = SkewPoly::constant(p.ring(), Scalar::one(p.ring().field));
                 for (unsigned i = 0; i < n; ++i)
                     r = r * p;
                 return r;
             })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__str__", &SkewPoly::to_string)
        .def("__repr__", [](const SkewPoly &p) { return "SkewPoly('" + p.to_string() + "')"; });

    py::class_<SkewLaurent>(m, "SkewLaurent")
        .def_property_readonly("terms",
                               [](const SkewLaurent &f) {
                                   py::list l;
                                   for (const auto &[i, c] : f.terms())
                                       l.append(py::make_tuple(i, c.to_string()));
                                   return l;
                               })
        .def_property_readonly("cutoff", [](const SkewLaurent &f) { return f.cutoff(); })
        .def("is_exact", &SkewLaurent::is_exact)
        .def("is_zero", &SkewLaurent::is_zero)
        .def("coeff", [](const SkewLaurent &f, long i) { return f.coeff(i).to_string(); })
        .def("truncated", &SkewLaurent::truncated)
        .def("invert", [](const SkewLaurent &f, long target) { return laurent_invert(f, target); }, py::arg("target"))
        .def("omega", [](const SkewLaurent &f) { return laurent_omega(f); })
        .def("agrees_with", [](const SkewLaurent &a, const SkewLaurent &b) { return agree_below_common_cutoff(a, b); })
        .def("dumps", &write_laurent)
        .def_static("loads", [](const std::string &text) { return read_laurent(text); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__str__", &SkewLaurent::to_string)
        .def("__repr__", [](const SkewLaurent &f) { return "SkewLaurent('" + f.to_string() + "')"; });

    m.def(
        "evaluate",
        [](const std::string &text, const std::string &field, const std::string &group, const std::string &spec,
           const std::string &ring, const py::dict &bindings, const py::object &target) {
            EvalContext ctx;
            ctx.field = parse_field(field);
            if (!ring.empty()) {
                ctx.ring = parse_skew_ring(ring, ctx.field);
                if (!target.is_none())
                    ctx.laurent_target = target.cast<long>();
            } else if (!group.empty()) {
                ctx.spec = make_spec(spec, parse_group(group), ctx.field);
                ctx.series_target = bound_from(ctx.spec->group(), target);
            }
            for (const auto &[k, v] : bindings)
                ctx.bindings.insert_or_assign(py::str(k).cast<std::string>(), value_from_py(v, ctx.field));
            return value_to_py(evaluate(parse_expression(text), ctx));
        },
        py::arg("text"), py::arg("field") = "q", py::arg("group") = "", py::arg("spec") = "trivial", py::arg("ring") = "",
        py::arg("bindings") = py::dict(), py::arg("target") = py::none(),
        "Evaluates an expression; scalars come back as strings.");

    m.def(
        "free_check",
        [](const py::list &gens, std::size_t max_len, std::optional<std::vector<std::string>> names) {
            const std::vector<std::string> ns = names ? *names : default_names(gens.size());
            if (!gens.empty() && py::isinstance<SkewLaurent>(gens[0]))
                return report_to_py(independence_check(gens.cast<std::vector<SkewLaurent>>(), max_len, ns));
            return report_to_py(independence_check(gens.cast<std::vector<MNSeries>>(), max_len, ns));
        },
        py::arg("gens"), py::arg("max_len"), py::arg("names") = py::none());

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one mns command; returns (exit code, stdout, stderr).");
}
