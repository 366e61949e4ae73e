#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

struct AlgebraPresentation;

/// A word in the generators (a path, in quiver mode). Degree = length.
/// `vtx` identifies the vertex idempotent and is meaningful only for the
/// empty word; connected presentations use vertex 0 throughout.
struct Word {
    std::vector<int32_t> letters;
    int32_t vtx = 0;

    int degree() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }
    // vtx only distinguishes vertex idempotents, never nonempty paths
    bool operator==(const Word& o) const {
        return letters == o.letters && (!letters.empty() || vtx == o.vtx);
    }
};

Word empty_word(int vertex = 0);
Word single_word(int gen);

/// Degree-lexicographic order, tie-broken left-to-right with earlier-listed
/// generators ranking higher. Returns <0, 0, >0 as a is smaller/equal/greater.
int word_cmp(const Word& a, const Word& b);
inline bool word_less(const Word& a, const Word& b) { return word_cmp(a, b) < 0; }

struct Term {
    Word word;
    Scalar coeff;
};

/// Finite scalar combination of words, terms sorted descending in the
/// monomial order, zero coefficients never stored.
class Polynomial {
  public:
    Polynomial() = default;

    static Polynomial zero() { return {}; }
    static Polynomial monomial(Word w, Scalar c);
    static Polynomial scalar(const Scalar& c, int vertex = 0);

    /// Builds from an arbitrary term list: merges duplicates, drops zeros.
    static Polynomial from_terms(std::vector<Term> terms, const Field& field);

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading() const;

    bool is_homogeneous() const;
    /// Degree of a homogeneous polynomial; -1 for the zero polynomial.
    int degree() const;

    Polynomial plus(const Polynomial& o, const Field& field) const;
    Polynomial minus(const Polynomial& o, const Field& field) const;
    Polynomial scaled(const Scalar& c, const Field& field) const;

    bool operator==(const Polynomial&) const;

  private:
    std::vector<Term> terms_;
};

struct GeneratorSet {
    std::vector<std::string> names;
    std::vector<int> source; // per generator; all zero in connected mode
    std::vector<int> target;

    int count() const { return static_cast<int>(names.size()); }
};

struct AlgebraPresentation {
    FieldSpec field;
    bool quiver = false;
    int vertices = 1;
    GeneratorSet gens;
    std::vector<Polynomial> relations; // homogeneous, degree >= 2, monic

    int num_gens() const { return gens.count(); }
    int source_of(const Word& w) const { return w.empty() ? w.vtx : gens.source[w.letters.front()]; }
    int target_of(const Word& w) const { return w.empty() ? w.vtx : gens.target[w.letters.back()]; }
    bool is_path(const Word& w) const;
    /// Concatenation u then v; nullopt when the paths do not compose.
    std::optional<Word> concat(const Word& u, const Word& v) const;
    int max_relation_degree() const;
};

/// A finitely presented graded module over an algebra, as the cokernel of a
/// map of graded free modules. Rows are vectors of polynomials, one entry per
/// generator, homogeneous of a single row degree.
struct ModulePresentation {
    std::vector<int> gen_degrees;  // nonnegative
    std::vector<int> gen_vertices; // zero in connected mode
    std::vector<std::vector<Polynomial>> rows;
    std::vector<int> row_degrees;

    int num_gens() const { return static_cast<int>(gen_degrees.size()); }
};

AlgebraPresentation parse_algebra(const std::string& text);
ModulePresentation parse_module(const std::string& text, const AlgebraPresentation& algebra);

/// The trivial module k = A/J: one degree-0 generator per vertex, one
/// relation row per algebra generator.
ModulePresentation trivial_module(const AlgebraPresentation& algebra);

std::string print_word(const Word& w, const AlgebraPresentation& algebra);
std::string print_polynomial(const Polynomial& p, const AlgebraPresentation& algebra);
std::string print_algebra(const AlgebraPresentation& algebra);
std::string print_module(const ModulePresentation& module, const AlgebraPresentation& algebra);

bool structurally_equal(const AlgebraPresentation& a, const AlgebraPresentation& b);

} // namespace koszul
