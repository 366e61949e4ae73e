#pragma once

#include <vector>

#include "koszul/linalg.hpp"
#include "koszul/rewrite.hpp"

namespace koszul {

/// Graded free module A(-m_1) e_{v_1} ⊕ … ⊕ A(-m_s) e_{v_s} with m_1 <= … <= m_s.
/// Vertices are all zero in connected mode.
struct GradedFreeModule {
    std::vector<int> degrees;
    std::vector<int> vertices;

    int count() const { return static_cast<int>(degrees.size()); }
    bool empty() const { return degrees.empty(); }

    static GradedFreeModule make(std::vector<int> degrees, std::vector<int> vertices = {});

    /// Internal degrees of generators as a support set (sorted, deduplicated).
    std::vector<int> degree_support() const;
    bool operator==(const GradedFreeModule&) const = default;
};

/// Basis of the degree-j slice of a graded free module: pairs (generator,
/// normal word), ordered by source vertex, then generator, then word
/// descending. The vertex-major order keeps echelon bases block-pure in
/// quiver mode.
class SliceBasis {
  public:
    SliceBasis() = default;
    SliceBasis(const GradedFreeModule& mod, int degree, const GroebnerBasisTruncated& gb);

    int dim() const { return static_cast<int>(elems_.size()); }
    const std::pair<int, Word>& operator[](int i) const { return elems_[i]; }
    int degree() const { return degree_; }

    /// Position of (gen, word) in the basis; -1 when absent.
    int index_of(int gen, const Word& w) const;

    /// Source vertex of a basis element.
    int source(int i, const AlgebraPresentation& a) const { return a.source_of(elems_[i].second); }

  private:
    int degree_ = 0;
    std::vector<std::pair<int, Word>> elems_;
    std::vector<int> lookup_; // indices sorted by (gen, word) for binary search
};

/// Homogeneous matrix between graded free modules with the row convention
/// f(ζ) = Fξ: row i is the image of source generator i. Entry (i, j) is
/// homogeneous of degree m_i - n_j - shift, zero when that is negative.
struct GradedMatrix {
    GradedFreeModule source, target;
    int shift = 0;
    std::vector<std::vector<Polynomial>> entries;

    static GradedMatrix zero(GradedFreeModule source, GradedFreeModule target, int shift = 0);

    /// Validates the degree law; throws on violation.
    void check_degrees(const AlgebraPresentation& a) const;

    /// True when every entry has positive degree (no degree-0 units).
    bool entries_in_radical() const;
};

/// Scalar matrix of the induced map (source slice at `degree`) -> (target
/// slice at `degree - shift`), rows indexed by the source slice basis.
SparseMat slice_matrix(const GradedMatrix& f, int degree, const GroebnerBasisTruncated& gb);

/// Matrix product corresponding to composing f then g (f: M->N, g: N->P).
GradedMatrix compose(const GradedMatrix& f, const GradedMatrix& g,
                     const GroebnerBasisTruncated& gb);

/// Rebuilds a coordinate row over the degree-`degree` slice of `mod` as a
/// polynomial row (one entry per generator).
std::vector<Polynomial> row_to_polynomials(const SparseRow& row, const GradedFreeModule& mod,
                                           const SliceBasis& basis, const Field& field);

/// Canonicalizes a matrix representation: entries in normal form, bases
/// sorted by nondecreasing degree, degree law checked.
GradedMatrix matrix_representation(const GradedMatrix& f, const GroebnerBasisTruncated& gb);

} // namespace koszul
