#include <mnseries/io.hpp>

#include <sstream>
#include <vector>

#include <mnseries/error.hpp>
#include <mnseries/expr.hpp>

namespace mns
{

namespace
{

struct Line {
    std::size_t offset;
    std::string text;
};

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<Line> lines_of(std::string_view text)
{
    std::vector<Line> out;
    std::size_t at = 0;
    while (at <= text.size()) {
        std::size_t nl = text.find('\n', at);
        if (nl == std::string_view::npos) nl = text.size();
        std::string t = trim(text.substr(at, nl - at));
        if (!t.empty() && t[0] != '#') out.push_back({at, std::move(t)});
        at = nl + 1;
    }
    return out;
}

class Reader
{
public:
    explicit Reader(std::string_view text) : lines_(lines_of(text)), size_(text.size()) {}

    const Line &next(const std::string &what)
    {
        if (at_ >= lines_.size()) throw ParseError(size_, {what}, "unexpected end of input");
        return lines_[at_++];
    }

    // "key value" with the given key; returns value.
    std::string keyed(const std::string &key)
    {
        const Line &l = next(key);
        const auto sp = l.text.find(' ');
        if (l.text.substr(0, sp) != key || sp == std::string::npos)
            throw ParseError(l.offset, {key + " <value>"}, "unexpected line '" + l.text + "'");
        return trim(std::string_view(l.text).substr(sp + 1));
    }

    bool at_end_marker(std::size_t &offset)
    {
        const Line &l = next("end");
        offset = l.offset;
        if (l.text == "end") return true;
        --at_;
        return false;
    }

    void finish()
    {
        if (at_ < lines_.size()) throw ParseError(lines_[at_].offset, {"end of input"}, "trailing content after 'end'");
    }

private:
    std::vector<Line> lines_;
    std::size_t size_;
    std::size_t at_ = 0;
};

// Errors from nested parsers are reported at the line's offset.
template <class F>
auto at_line(std::size_t offset, F f)
{
    try {
        return f();
    } catch (const ParseError &e) {
        throw ParseError(offset + e.position(), e.expected(), e.detail());
    }
}

} // namespace

std::string write_series(const MNSeries &f)
{
    std::ostringstream os;
    os << "mnseries 1\n";
    os << "spec " << f.spec().name() << "\n";
    os << "group " << f.group().to_string() << "\n";
    os << "field " << f.field().to_string() << "\n";
    os << "cutoff " << (f.cutoff() ? f.cutoff()->to_string() : "exact") << "\n";
    for (const Term &t : f.terms()) os << t.element.to_string() << " " << t.coeff.to_coefficient_string() << "\n";
    os << "end\n";
    return os.str();
}

MNSeries read_series(std::string_view text)
{
    Reader r(text);
    const Line &head = r.next("mnseries 1");
    if (head.text != "mnseries 1") throw ParseError(head.offset, {"mnseries 1"}, "bad header '" + head.text + "'");
    const std::string spec_name = r.keyed("spec");
    const Group g = parse_group(r.keyed("group"));
    const Field f = parse_field(r.keyed("field"));
    const SpecPtr spec = make_spec(spec_name, g, f);
    const std::string cut = r.keyed("cutoff");
    Bound cutoff;
    if (cut != "exact") cutoff = parse_element(cut, g);
    std::vector<Term> terms;
    std::size_t offset = 0;
    while (!r.at_end_marker(offset)) {
        const Line &l = r.next("term");
        const auto sp = l.text.find(' ');
        if (sp == std::string::npos) throw ParseError(l.offset, {"<element> <coefficient>"}, "malformed term line '" + l.text + "'");
        const GroupElement x = at_line(l.offset, [&] { return parse_element(l.text.substr(0, sp), g); });
        const Scalar c = at_line(l.offset + sp + 1, [&] { return parse_scalar(l.text.substr(sp + 1), f); });
        terms.push_back({x, c});
    }
    r.finish();
    return MNSeries(spec, std::move(terms), cutoff);
}

std::string write_laurent(const SkewLaurent &f)
{
    std::ostringstream os;
    os << "skewlaurent 1\n";
    os << "ring sigma=" << f.ring().sigma.to_string() << " delta=" << f.ring().delta.to_string() << "\n";
    os << "field " << f.ring().field.to_string() << "\n";
    os << "cutoff " << to_string(f.cutoff()) << "\n";
    for (const auto &[i, c] : f.terms()) os << i << " " << c.to_coefficient_string() << "\n";
    os << "end\n";
    return os.str();
}

SkewLaurent read_laurent(std::string_view text)
{
    Reader r(text);
    const Line &head = r.next("skewlaurent 1");
    if (head.text != "skewlaurent 1") throw ParseError(head.offset, {"skewlaurent 1"}, "bad header '" + head.text + "'");
    const std::string ring_text = r.keyed("ring");
    const Field f = parse_field(r.keyed("field"));
    const SkewRing ring = parse_skew_ring(ring_text, f);
    const std::string cut = r.keyed("cutoff");
    IndexBound cutoff;
    if (cut != "exact") {
        try {
            std::size_t used = 0;
            cutoff = std::stol(cut, &used);
            if (used != cut.size()) throw std::invalid_argument(cut);
        } catch (const std::exception &) {
            throw ParseError(0, {"integer", "exact"}, "bad cutoff '" + cut + "'");
        }
    }
    std::vector<std::pair<long, Scalar>> terms;
    std::size_t offset = 0;
    while (!r.at_end_marker(offset)) {
        const Line &l = r.next("term");
        const auto sp = l.text.find(' ');
        long i = 0;
        try {
            if (sp == std::string::npos) throw std::invalid_argument(l.text);
            std::size_t used = 0;
            i = std::stol(l.text.substr(0, sp), &used);
            if (used != sp) throw std::invalid_argument(l.text);
        } catch (const std::exception &) {
            throw ParseError(l.offset, {"<index> <coefficient>"}, "malformed term line '" + l.text + "'");
        }
        terms.emplace_back(i, at_line(l.offset + sp + 1, [&] { return parse_scalar(l.text.substr(sp + 1), f); }));
    }
    r.finish();
    return SkewLaurent(ring, std::move(terms), cutoff);
}

} // namespace mns
