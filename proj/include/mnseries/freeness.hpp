#ifndef MNSERIES_FREENESS_HPP
#define MNSERIES_FREENESS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <mnseries/mn_series.hpp>
#include <mnseries/skew.hpp>

namespace mns
{

// A word in the generators, as generator indices. The empty word is 1.
using Word = std::vector<std::size_t>;

// All words of length 0..max_len over m letters, length first then lex.
std::vector<Word> enumerate_words(std::size_t m, std::size_t max_len);
// xyyx; "1" for the empty word; letters joined by '*' if any name is longer than one character.
std::string word_name(const Word &w, const std::vector<std::string> &names);

// Arithmetic in the prime field: Q when modulus = 0, F_p otherwise. Values
// are kept as Rationals (reduced to [0, p) in characteristic p).
struct PrimeField {
    std::uint64_t modulus = 0;

    Rational reduce(const Rational &a) const;
    Rational add(const Rational &a, const Rational &b) const { return reduce(a + b); }
    Rational sub(const Rational &a, const Rational &b) const { return reduce(a - b); }
    Rational mul(const Rational &a, const Rational &b) const { return reduce(a * b); }
    Rational inv(const Rational &a) const;
};

// Rows are words, columns the flattened (support key, coordinate) pairs.
struct FlatMatrix {
    PrimeField prime;
    std::vector<std::string> words;
    std::vector<std::string> columns;
    std::vector<std::vector<Rational>> rows;
    // Common evaluation cutoff, rendered; "exact" when every word is exact.
    std::string cutoff;
    bool exact = true;
};

struct RankResult {
    std::size_t rank = 0;
    // Coefficients (per row) of the first dependency found, if any.
    std::optional<std::vector<Rational>> first_relation;
};

// Gaussian elimination in row order with combination tracking.
RankResult rank_with_relation(const std::vector<std::vector<Rational>> &rows, const PrimeField &k);

std::vector<MNSeries> evaluate_words(const std::vector<MNSeries> &gens, const std::vector<Word> &words);
std::vector<SkewLaurent> evaluate_words(const std::vector<SkewLaurent> &gens, const std::vector<Word> &words);

// Throws InsufficientPrecision when the common cutoff does not even reach the empty word.
FlatMatrix enumerate_and_flatten(const std::vector<MNSeries> &gens, std::size_t max_len, const std::vector<std::string> &names);
FlatMatrix enumerate_and_flatten(const std::vector<SkewLaurent> &gens, std::size_t max_len, const std::vector<std::string> &names);

enum class Verdict { IndependentCertified, DependentWithRelation, Inconclusive };
std::string to_string(Verdict v);

struct RelationTerm {
    std::string word;
    Rational coeff;
};

struct IndependenceReport {
    Verdict verdict = Verdict::Inconclusive;
    std::size_t rank = 0;
    std::size_t words = 0;
    std::vector<RelationTerm> relation;
    std::string cutoff;
    std::string field;
};

IndependenceReport independence_check(const std::vector<MNSeries> &gens, std::size_t max_len, const std::vector<std::string> &names);
IndependenceReport independence_check(const std::vector<SkewLaurent> &gens, std::size_t max_len, const std::vector<std::string> &names);

// xyyx - yxxy
std::string render_relation(const std::vector<RelationTerm> &relation);
// DEPENDENT rank=30/31 relation: xyyx - yxxy
std::string render_report(const IndependenceReport &r);
// key=value lines
std::string render_porcelain(const IndependenceReport &r);

using SeriesMatrix = std::vector<std::vector<MNSeries>>;

SeriesMatrix identity_matrix(const SpecPtr &spec, std::size_t n);
SeriesMatrix matmul(const SeriesMatrix &a, const SeriesMatrix &b);
// Every entry agrees with the identity below min(target, entry cutoff).
bool is_identity_below(const SeriesMatrix &m, const Bound &target);

// (1 + M + M^2 + ...) truncated below bound; entries of M need omega > 1.
SeriesMatrix neumann_sum(const SeriesMatrix &m, const Bound &bound, std::size_t max_terms = default_neumann_terms);

// [tbar^b (I - M)]^-1 = (1 + M + M^2 + ...) tbar^-b, exact below target, with
// both round-trip products checked. PreconditionViolated, NoConvergence.
SeriesMatrix neumann_matrix_inverse(const SeriesMatrix &m, const GroupElement &t, long b, const Bound &target,
                                    std::size_t max_terms = default_neumann_terms);

// Noncommutative polynomial with rational coefficients in named variables.
struct FreeMonomial {
    Rational coeff;
    std::vector<std::string> vars;
};
using FreePoly = std::vector<FreeMonomial>;
using FreeMatrix = std::vector<std::vector<FreePoly>>;

std::string to_string(const FreePoly &p);

MNSeries evaluate_free(const FreePoly &p, const std::map<std::string, MNSeries> &assignment, const SpecPtr &spec);
// Throws UnboundVariable.
SeriesMatrix specialize_matrix(const FreeMatrix &a, const std::map<std::string, MNSeries> &assignment, const SpecPtr &spec);

struct InversionAttempt {
    bool ok = false;
    std::string diagnostic;
    SeriesMatrix inverse;
};

// Row permutation P with a strictly dominant leading term on the diagonal,
// D = diag(leading terms), (PA)^-1 = (I - M)^-1 D^-1 for M = I - D^-1 P A.
InversionAttempt try_invert(const SeriesMatrix &a, const Bound &target, std::size_t max_terms = default_neumann_terms);

} // namespace mns

#endif
