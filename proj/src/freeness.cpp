#include <mnseries/freeness.hpp>

#include <algorithm>
#include <map>
#include <sstream>

#include <mnseries/error.hpp>

namespace mns
{

std::vector<Word> enumerate_words(std::size_t m, std::size_t max_len)
{
    std::vector<Word> out = {Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len && m > 0; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t g = 0; g < m; ++g) {
                Word w = out[i];
                w.push_back(g);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

std::string word_name(const Word &w, const std::vector<std::string> &names)
{
    if (w.empty()) return "1";
    const bool long_names = std::any_of(names.begin(), names.end(), [](const std::string &s) { return s.size() != 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && long_names) out += "*";
        out += names.at(w[i]);
    }
    return out;
}

// ---------------------------------------------------------------- prime field

Rational PrimeField::reduce(const Rational &a) const
{
    if (modulus == 0) return a;
    const Integer p(static_cast<unsigned long>(modulus));
    Integer den = a.get_den();
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) fail(Errc::DivisionByZero, "denominator divisible by " + p.get_str());
    Integer v = a.get_num() * inv;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return Rational(v);
}

Rational PrimeField::inv(const Rational &a) const
{
    if (a == 0) fail(Errc::DivisionByZero, "inverse of zero");
    if (modulus == 0) return Rational(1) / a;
    const Integer p(static_cast<unsigned long>(modulus));
    Integer v = a.get_num(), out;
    if (mpz_invert(out.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0) fail(Errc::DivisionByZero, "inverse of zero");
    return Rational(out);
}

RankResult rank_with_relation(const std::vector<std::vector<Rational>> &rows, const PrimeField &k)
{
    struct Pivot {
        std::size_t col;
        std::vector<Rational> vec;
        std::vector<Rational> comb;
    };
    RankResult out;
    std::vector<Pivot> basis;
    const std::size_t n = rows.size();
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<Rational> vec(rows[r].size());
        for (std::size_t c = 0; c < vec.size(); ++c) vec[c] = k.reduce(rows[r][c]);
        std::vector<Rational> comb(n, Rational(0));
        comb[r] = 1;
        for (const Pivot &p : basis) {
            if (vec[p.col] == 0) continue;
            const Rational f = vec[p.col];
            for (std::size_t c = 0; c < vec.size(); ++c)
                if (p.vec[c] != 0) vec[c] = k.sub(vec[c], k.mul(f, p.vec[c]));
            for (std::size_t c = 0; c < n; ++c)
                if (p.comb[c] != 0) comb[c] = k.sub(comb[c], k.mul(f, p.comb[c]));
        }
        auto lead = std::find_if(vec.begin(), vec.end(), [](const Rational &q) { return q != 0; });
        if (lead == vec.end()) {
            if (!out.first_relation) out.first_relation = comb;
            continue;
        }
        const Rational s = k.inv(*lead);
        for (auto &q : vec) q = k.mul(q, s);
        for (auto &q : comb) q = k.mul(q, s);
        basis.push_back({static_cast<std::size_t>(lead - vec.begin()), std::move(vec), std::move(comb)});
    }
    out.rank = basis.size();
    return out;
}

// ---------------------------------------------------------------- words

namespace
{

template <class Series>
std::vector<Series> evaluate_words_impl(const std::vector<Series> &gens, const std::vector<Word> &words, const Series &one)
{
    std::map<Word, std::size_t> index;
    std::vector<Series> out;
    out.reserve(words.size());
    for (const Word &w : words) {
        if (w.empty()) {
            out.push_back(one);
        } else {
            Word prefix(w.begin(), w.end() - 1);
            auto it = index.find(prefix);
            Series base = it != index.end() ? out[it->second] : evaluate_words_impl(gens, {prefix}, one).front();
            out.push_back(base * gens.at(w.back()));
        }
        index.emplace(w, out.size() - 1);
    }
    return out;
}

PrimeField prime_of(const Field &f)
{
    return PrimeField{f.kind == Field::Kind::Prime ? f.modulus : 0};
}

std::string key_label(const GroupElement &g)
{
    return g.to_string();
}

std::string key_label(long i)
{
    return "y^" + std::to_string(i);
}

QPoly lcm(const QPoly &a, const QPoly &b)
{
    return divmod(a * b, gcd(a, b)).first.monic();
}

// Flattens keyed coefficient rows into rational coordinates over the prime field.
template <class Key>
FlatMatrix flatten(const std::vector<std::vector<std::pair<Key, Scalar>>> &rows, const Field &field)
{
    FlatMatrix out;
    out.prime = prime_of(field);

    std::map<Key, QPoly> common_den;
    if (field.kind == Field::Kind::RatFunc) {
        for (const auto &row : rows)
            for (const auto &[key, a] : row) {
                const QPoly &den = std::get<RatFunc>(a.value()).den();
                auto [it, fresh] = common_den.try_emplace(key, den);
                if (!fresh) it->second = lcm(it->second, den);
            }
    }

    using Column = std::pair<Key, std::size_t>;
    std::vector<std::map<Column, Rational>> cells(rows.size());
    std::map<Column, std::size_t> columns;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto &[key, a] : rows[r]) {
            std::vector<Rational> coords;
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, Rational>) {
                        coords = {v};
                    } else if constexpr (std::is_same_v<T, Fp>) {
                        coords = {Rational(static_cast<unsigned long>(v.value))};
                    } else if constexpr (std::is_same_v<T, RatFunc>) {
                        const QPoly scaled = v.num() * divmod(common_den.at(key), v.den()).first;
                        coords = scaled.coeffs();
                    } else {
                        coords = {v.a, v.b, v.c, v.d};
                    }
                },
                a.value());
            for (std::size_t c = 0; c < coords.size(); ++c) {
                if (coords[c] == 0) continue;
                cells[r][{key, c}] = coords[c];
                columns.emplace(Column{key, c}, 0);
            }
        }
    }
    std::size_t next = 0;
    for (auto &[col, idx] : columns) {
        idx = next++;
        out.columns.push_back(key_label(col.first) + "#" + std::to_string(col.second));
    }
    for (const auto &row : cells) {
        std::vector<Rational> v(columns.size(), Rational(0));
        for (const auto &[col, q] : row) v[columns.at(col)] = q;
        out.rows.push_back(std::move(v));
    }
    return out;
}

std::vector<std::pair<GroupElement, Scalar>> keyed(const MNSeries &f)
{
    std::vector<std::pair<GroupElement, Scalar>> out;
    for (const Term &t : f.terms()) out.emplace_back(t.element, t.coeff);
    return out;
}

std::vector<std::pair<long, Scalar>> keyed(const SkewLaurent &f)
{
    return f.terms();
}

void require_one_representable(bool ok)
{
    if (!ok) fail(Errc::InsufficientPrecision, "common word cutoff does not reach the empty word; raise the generator cutoffs");
}

Rational scale_to_one(std::vector<Rational> &coeffs, const PrimeField &k)
{
    for (const Rational &q : coeffs)
        if (q != 0) {
            const Rational s = k.inv(q);
            for (auto &c : coeffs) c = k.mul(c, s);
            return s;
        }
    return Rational(0);
}

} // namespace

std::vector<MNSeries> evaluate_words(const std::vector<MNSeries> &gens, const std::vector<Word> &words)
{
    if (gens.empty()) fail(Errc::InvalidArgument, "no generators");
    for (const auto &g : gens) require_same_ring(gens.front(), g);
    return evaluate_words_impl(gens, words, MNSeries::one(gens.front().spec_ptr()));
}

std::vector<SkewLaurent> evaluate_words(const std::vector<SkewLaurent> &gens, const std::vector<Word> &words)
{
    if (gens.empty()) fail(Errc::InvalidArgument, "no generators");
    for (const auto &g : gens) require_same_ring(gens.front(), g);
    return evaluate_words_impl(gens, words, SkewLaurent::constant(gens.front().ring(), Scalar::one(gens.front().ring().field)));
}

FlatMatrix enumerate_and_flatten(const std::vector<MNSeries> &gens, std::size_t max_len, const std::vector<std::string> &names)
{
    const auto words = enumerate_words(gens.size(), max_len);
    auto values = evaluate_words(gens, words);
    Bound cut = std::nullopt;
    for (const auto &v : values) cut = min_bound(cut, v.cutoff());
    const GroupElement e = GroupElement::identity(gens.front().group());
    require_one_representable(below(e, cut));
    std::vector<std::vector<std::pair<GroupElement, Scalar>>> rows;
    for (const auto &v : values) rows.push_back(keyed(v.truncated(cut)));
    FlatMatrix out = flatten(rows, gens.front().field());
    for (const auto &w : words) out.words.push_back(word_name(w, names));
    out.exact = !cut.has_value();
    out.cutoff = to_string(cut);
    return out;
}

FlatMatrix enumerate_and_flatten(const std::vector<SkewLaurent> &gens, std::size_t max_len, const std::vector<std::string> &names)
{
    const auto words = enumerate_words(gens.size(), max_len);
    auto values = evaluate_words(gens, words);
    IndexBound cut = std::nullopt;
    for (const auto &v : values) cut = min_index_bound(cut, v.cutoff());
    require_one_representable(!cut || *cut > 0);
    std::vector<std::vector<std::pair<long, Scalar>>> rows;
    for (const auto &v : values) rows.push_back(keyed(v.truncated(cut)));
    FlatMatrix out = flatten(rows, gens.front().ring().field);
    for (const auto &w : words) out.words.push_back(word_name(w, names));
    out.exact = !cut.has_value();
    out.cutoff = to_string(cut);
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
        case Verdict::IndependentCertified:
            return "IndependentCertified";
        case Verdict::DependentWithRelation:
            return "DependentWithRelation";
        case Verdict::Inconclusive:
            return "Inconclusive";
    }
    return "Inconclusive";
}

namespace
{

template <class Series>
IndependenceReport independence_check_impl(const std::vector<Series> &gens, std::size_t max_len, const std::vector<std::string> &names,
                                           const Field &field, const Series &zero, const std::function<Series(const Scalar &)> &constant)
{
    const FlatMatrix flat = enumerate_and_flatten(gens, max_len, names);
    IndependenceReport rep;
    rep.words = flat.rows.size();
    rep.cutoff = flat.cutoff;
    rep.field = field.to_string();
    RankResult rr = rank_with_relation(flat.rows, flat.prime);
    rep.rank = rr.rank;
    if (rr.rank == flat.rows.size()) {
        rep.verdict = Verdict::IndependentCertified;
        return rep;
    }
    rep.verdict = Verdict::Inconclusive;
    if (!flat.exact || !rr.first_relation) return rep;

    std::vector<Rational> c = *rr.first_relation;
    scale_to_one(c, flat.prime);
    // Re-verify by direct evaluation in the ring.
    const auto words = enumerate_words(gens.size(), max_len);
    std::vector<Word> support;
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) {
            support.push_back(words[i]);
            coeffs.push_back(c[i]);
        }
    const auto values = evaluate_words(gens, support);
    Series sum = zero;
    for (std::size_t i = 0; i < values.size(); ++i) sum = sum + constant(Scalar::from_rational(field, coeffs[i])) * values[i];
    if (!sum.is_zero() || !sum.is_exact()) return rep;

    rep.verdict = Verdict::DependentWithRelation;
    for (std::size_t i = 0; i < support.size(); ++i) rep.relation.push_back({word_name(support[i], names), coeffs[i]});
    return rep;
}

} // namespace

IndependenceReport independence_check(const std::vector<MNSeries> &gens, std::size_t max_len, const std::vector<std::string> &names)
{
    if (gens.empty()) fail(Errc::InvalidArgument, "no generators");
    const SpecPtr spec = gens.front().spec_ptr();
    return independence_check_impl<MNSeries>(gens, max_len, names, spec->field(), MNSeries::zero(spec),
                                             [&](const Scalar &a) { return MNSeries::constant(spec, a); });
}

IndependenceReport independence_check(const std::vector<SkewLaurent> &gens, std::size_t max_len, const std::vector<std::string> &names)
{
    if (gens.empty()) fail(Errc::InvalidArgument, "no generators");
    const SkewRing ring = gens.front().ring();
    return independence_check_impl<SkewLaurent>(gens, max_len, names, ring.field, SkewLaurent::zero(ring),
                                                [&](const Scalar &a) { return SkewLaurent::constant(ring, a); });
}

namespace
{

std::string signed_sum(const std::vector<std::pair<Rational, std::string>> &terms)
{
    std::string out;
    for (const auto &[q, text] : terms) {
        const bool negative = q < 0;
        const Rational mag = negative ? Rational(-q) : q;
        if (out.empty())
            out = negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (text == "1")
            out += to_string(mag);
        else if (mag == 1)
            out += text;
        else
            out += to_string(mag) + "*" + text;
    }
    return out.empty() ? "0" : out;
}

} // namespace

std::string render_relation(const std::vector<RelationTerm> &relation)
{
    std::vector<std::pair<Rational, std::string>> terms;
    for (const auto &t : relation) terms.emplace_back(t.coeff, t.word);
    return signed_sum(terms);
}

std::string render_report(const IndependenceReport &r)
{
    const std::string rank = "rank=" + std::to_string(r.rank) + "/" + std::to_string(r.words);
    switch (r.verdict) {
        case Verdict::IndependentCertified:
            return "INDEPENDENT " + rank;
        case Verdict::DependentWithRelation:
            return "DEPENDENT " + rank + " relation: " + render_relation(r.relation);
        case Verdict::Inconclusive:
            break;
    }
    return "INCONCLUSIVE " + rank + " cutoff=" + r.cutoff;
}

std::string render_porcelain(const IndependenceReport &r)
{
    std::ostringstream out;
    out << "verdict=" << to_string(r.verdict) << "\n";
    out << "rank=" << r.rank << "\n";
    out << "words=" << r.words << "\n";
    out << "field=" << r.field << "\n";
    out << "cutoff=" << r.cutoff << "\n";
    out << "relation=" << (r.relation.empty() ? "" : render_relation(r.relation)) << "\n";
    for (const auto &t : r.relation) out << "relation.term=" << t.word << " " << to_string(t.coeff) << "\n";
    return out.str();
}

// ---------------------------------------------------------------- matrices

SeriesMatrix identity_matrix(const SpecPtr &spec, std::size_t n)
{
    SeriesMatrix out(n, std::vector<MNSeries>(n, MNSeries::zero(spec)));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = MNSeries::one(spec);
    return out;
}

namespace
{

void require_square(const SeriesMatrix &m)
{
    for (const auto &row : m)
        if (row.size() != m.size()) fail(Errc::InvalidArgument, "matrix is not square");
}

SeriesMatrix truncated(const SeriesMatrix &m, const Bound &b)
{
    SeriesMatrix out = m;
    for (auto &row : out)
        for (auto &e : row) e = e.truncated(b);
    return out;
}

bool all_zero(const SeriesMatrix &m)
{
    for (const auto &row : m)
        for (const auto &e : row)
            if (!e.is_zero()) return false;
    return true;
}

SeriesMatrix add(const SeriesMatrix &a, const SeriesMatrix &b)
{
    SeriesMatrix out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] = a[i][j] + b[i][j];
    return out;
}

Bound max_bound(const Bound &a, const Bound &b)
{
    return bound_less(a, b) ? b : a;
}

// Target large enough that both products with `a` are known below `target`.
Bound verification_target(const SeriesMatrix &a, const Bound &target)
{
    if (!target) return target;
    Bound out = target;
    for (const auto &row : a)
        for (const auto &e : row) {
            const Bound w = omega_floor(e);
            if (!w) continue;
            const GroupElement winv = inverse(*w);
            out = max_bound(out, winv * *target);
            out = max_bound(out, *target * winv);
        }
    return out;
}

MNSeries monomial_power(const SpecPtr &spec, const GroupElement &t, long b)
{
    const MNSeries tbar = MNSeries::monomial(spec, t, Scalar::one(spec->field()));
    MNSeries out = MNSeries::one(spec);
    for (long i = 0; i < (b < 0 ? -b : b); ++i) out = out * tbar;
    return b < 0 ? invert(out, std::nullopt) : out;
}

} // namespace

SeriesMatrix matmul(const SeriesMatrix &a, const SeriesMatrix &b)
{
    if (a.empty()) return {};
    const std::size_t inner = a.front().size();
    if (b.size() != inner) fail(Errc::InvalidArgument, "matrix shapes do not match");
    const SpecPtr spec = a.front().front().spec_ptr();
    SeriesMatrix out(a.size(), std::vector<MNSeries>(b.empty() ? 0 : b.front().size(), MNSeries::zero(spec)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < out[i].size(); ++j) {
            MNSeries acc = MNSeries::zero(spec);
            for (std::size_t k = 0; k < inner; ++k) acc = acc + a[i][k] * b[k][j];
            out[i][j] = acc;
        }
    return out;
}

bool is_identity_below(const SeriesMatrix &m, const Bound &target)
{
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            const MNSeries &e = m[i][j];
            if (bound_less(e.cutoff(), target)) return false;
            const MNSeries want = (i == j ? MNSeries::one(e.spec_ptr()) : MNSeries::zero(e.spec_ptr())).truncated(target);
            if (!(e.truncated(target) == want.truncated(min_bound(e.cutoff(), target)))) return false;
        }
    return true;
}

SeriesMatrix neumann_sum(const SeriesMatrix &m, const Bound &bound, std::size_t max_terms)
{
    require_square(m);
    if (m.empty()) return {};
    const SpecPtr spec = m.front().front().spec_ptr();
    const GroupElement e = GroupElement::identity(spec->group());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            const MNSeries &x = m[i][j];
            const Bound w = omega_floor(x);
            if (w && !(e < *w))
                fail(Errc::PreconditionViolated, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") has omega " + w->to_string() +
                                                     " not > 1");
            if (bound_less(x.cutoff(), bound))
                fail(Errc::InsufficientPrecision, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") known only below " +
                                                      to_string(x.cutoff()) + ", need " + to_string(bound));
        }
    SeriesMatrix sum = truncated(identity_matrix(spec, m.size()), bound);
    SeriesMatrix power = sum;
    for (std::size_t k = 1; k <= max_terms; ++k) {
        power = truncated(matmul(power, m), bound);
        if (all_zero(power)) return sum;
        sum = add(sum, power);
    }
    fail(Errc::NoConvergence, "matrix powers stay below " + to_string(bound) + " after " + std::to_string(max_terms) + " Neumann terms");
}

SeriesMatrix neumann_matrix_inverse(const SeriesMatrix &m, const GroupElement &t, long b, const Bound &target, std::size_t max_terms)
{
    require_square(m);
    if (m.empty()) return {};
    const SpecPtr spec = m.front().front().spec_ptr();
    if (!(GroupElement::identity(spec->group()) < t)) fail(Errc::PreconditionViolated, "t = " + t.to_string() + " is not > 1");

    const MNSeries tb = monomial_power(spec, t, b);
    const MNSeries tb_inv = invert(tb, std::nullopt);
    SeriesMatrix a = identity_matrix(spec, m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) a[i][j] = tb * (a[i][j] - m[i][j]);

    const Bound inner = verification_target(a, target);
    // Terms of S at x land at x t^-b in S tbar^-b.
    const Bound s_bound = right_shift(inner, power(t, b));
    SeriesMatrix r = neumann_sum(m, s_bound, max_terms);
    for (auto &row : r)
        for (auto &x : row) x = (x * tb_inv).truncated(inner);

    if (!is_identity_below(matmul(a, r), target) || !is_identity_below(matmul(r, a), target))
        fail(Errc::InversionFailed, "round-trip product is not the identity below " + to_string(target));
    return r;
}

// ---------------------------------------------------------------- specialization

std::string to_string(const FreePoly &p)
{
    std::vector<std::pair<Rational, std::string>> terms;
    for (const auto &m : p) {
        std::string w;
        for (std::size_t i = 0; i < m.vars.size(); ++i) w += (i ? "*" : "") + m.vars[i];
        terms.emplace_back(m.coeff, w.empty() ? "1" : w);
    }
    return signed_sum(terms);
}

MNSeries evaluate_free(const FreePoly &p, const std::map<std::string, MNSeries> &assignment, const SpecPtr &spec)
{
    MNSeries out = MNSeries::zero(spec);
    for (const auto &m : p) {
        MNSeries term = MNSeries::constant(spec, Scalar::from_rational(spec->field(), m.coeff));
        for (const auto &v : m.vars) {
            auto it = assignment.find(v);
            if (it == assignment.end()) fail(Errc::UnboundVariable, "variable '" + v + "' has no assigned series");
            term = term * it->second;
        }
        out = out + term;
    }
    return out;
}

SeriesMatrix specialize_matrix(const FreeMatrix &a, const std::map<std::string, MNSeries> &assignment, const SpecPtr &spec)
{
    SeriesMatrix out;
    for (const auto &row : a) {
        std::vector<MNSeries> r;
        for (const auto &p : row) r.push_back(evaluate_free(p, assignment, spec));
        out.push_back(std::move(r));
    }
    return out;
}

InversionAttempt try_invert(const SeriesMatrix &a, const Bound &target, std::size_t max_terms)
{
    InversionAttempt out;
    for (const auto &row : a)
        if (row.size() != a.size()) {
            out.diagnostic = "matrix is not square";
            return out;
        }
    const std::size_t n = a.size();
    if (n == 0) {
        out.ok = true;
        return out;
    }
    const SpecPtr spec = a.front().front().spec_ptr();

    // Column of the strictly dominant (smallest) leading term in each row.
    std::vector<std::size_t> col(n);
    std::vector<bool> used(n, false);
    for (std::size_t r = 0; r < n; ++r) {
        std::optional<std::size_t> best;
        for (std::size_t c = 0; c < n; ++c) {
            if (a[r][c].is_zero()) continue;
            if (!best || a[r][c].terms().front().element < a[r][*best].terms().front().element) best = c;
        }
        if (!best) {
            out.diagnostic = "row " + std::to_string(r) + " vanishes below its cutoff " + to_string(a[r].front().cutoff());
            return out;
        }
        const GroupElement &w = a[r][*best].terms().front().element;
        for (std::size_t c = 0; c < n; ++c) {
            if (c == *best) continue;
            const Bound other = omega_floor(a[r][c]);
            if (other && !(w < *other)) {
                out.diagnostic = "row " + std::to_string(r) + " has no strictly dominant leading term (" + w.to_string() + " vs column " +
                                 std::to_string(c) + ")";
                return out;
            }
        }
        if (used[*best]) {
            out.diagnostic = "no row permutation puts a dominant leading term on the diagonal";
            return out;
        }
        used[*best] = true;
        col[r] = *best;
    }

    SeriesMatrix pa(n);
    for (std::size_t r = 0; r < n; ++r) pa[col[r]] = a[r];

    try {
        std::vector<MNSeries> dinv;
        Bound s_bound = target;
        const Bound inner = verification_target(a, target);
        for (std::size_t i = 0; i < n; ++i) {
            const Term &lead = pa[i][i].terms().front();
            dinv.push_back(invert(MNSeries::monomial(spec, lead.element, lead.coeff), std::nullopt));
            s_bound = max_bound(s_bound, right_shift(inner, lead.element));
        }
        SeriesMatrix m = identity_matrix(spec, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = m[i][j] - dinv[i] * pa[i][j];
        SeriesMatrix s = neumann_sum(m, s_bound, max_terms);
        // (PA)^-1 = S D^-1, and A^-1 = (PA)^-1 P.
        SeriesMatrix inv(n, std::vector<MNSeries>(n, MNSeries::zero(spec)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < n; ++r) inv[i][r] = (s[i][col[r]] * dinv[col[r]]).truncated(inner);
        if (!is_identity_below(matmul(a, inv), target) || !is_identity_below(matmul(inv, a), target)) {
            out.diagnostic = "round-trip product is not the identity below " + to_string(target);
            return out;
        }
        out.inverse = truncated(inv, target);
        out.ok = true;
    } catch (const Error &e) {
        out.diagnostic = e.what();
    }
    return out;
}

} // namespace mns
