#pragma once

#include <map>
#include <string>
#include <vector>

#include "koszul/graded.hpp"

namespace koszul {

/// Submodule of a graded free module, stored as one canonical echelon space
/// per internal degree (coordinates over the ambient SliceBasis).
struct DegreewiseModule {
    GradedFreeModule ambient;
    int degree_bound = 0;
    std::vector<EchelonSpace> slices; // index 0..degree_bound

    int dim(int j) const { return slices[j].dim(); }
    bool is_zero() const;
    bool operator==(const DegreewiseModule&) const = default;
};

/// Degreewise realization of a graded module: slice dimensions, source
/// vertices of the canonical basis, and the left action of each algebra
/// generator as a matrix slice_j -> slice_{j+1}. Cokernels, submodules and
/// quotients all funnel into this shape before being resolved.
struct Realization {
    int degree_bound = 0;
    std::vector<int> dims;                   // 0..degree_bound
    std::vector<std::vector<int>> vtx;       // per degree: source vertex per basis element
    std::vector<std::vector<SparseMat>> act; // [gen][j]: dims[j] x dims[j+1]

    int dim(int j) const { return dims[j]; }
};

/// Degreewise slices of the cokernel presented by `mp` (the spec operation
/// present_degreewise).
Realization realize_cokernel(const ModulePresentation& mp, const GroebnerBasisTruncated& gb,
                             int degree_bound);
Realization realize_submodule(const DegreewiseModule& s, const GroebnerBasisTruncated& gb);
/// Restriction of a realization to action-closed subspaces (one per degree).
Realization realize_sub(const Realization& parent, const std::vector<EchelonSpace>& sub,
                        const Field& field);
Realization realize_quotient(const Realization& parent, const std::vector<EchelonSpace>& sub,
                             const Field& field);

/// Per-degree subspaces spanned by the image of the generator action: the
/// graded radical J·N inside the realization's coordinates.
std::vector<EchelonSpace> radical_subspaces(const Realization& n, const Field& field);

/// Prepend-action of generator `g` on a coordinate row, expressed against
/// prebuilt slice bases for the source and target degrees.
SparseRow free_action(int g, const SparseRow& row, const SliceBasis& src, const SliceBasis& dst,
                      const GroebnerBasisTruncated& gb);

/// All slice bases of a free module through a degree window, built once.
std::vector<SliceBasis> slice_bases(const GradedFreeModule& mod, int degree_bound,
                                    const GroebnerBasisTruncated& gb);

struct MinimalGenerator {
    int degree;
    int vertex;
    SparseRow row; // coordinates over the ambient slice at `degree`
};

/// Canonical minimal generators of a submodule: per degree, a basis of
/// S_j / A_1·S_{j-1} chosen by reduced-echelon pivots.
std::vector<MinimalGenerator> minimal_generators(const DegreewiseModule& s,
                                                 const GroebnerBasisTruncated& gb);

DegreewiseModule radical(const DegreewiseModule& s, const GroebnerBasisTruncated& gb);
DegreewiseModule intersect(const DegreewiseModule& s, const DegreewiseModule& t,
                           const Field& field);

struct BettiTable {
    int length = 0;       // homological window L
    int degree_bound = 0; // internal window D
    std::map<std::pair<int, int>, long> entries;

    long beta(int i, int j) const;
    std::vector<int> support(int i) const;
    /// Last level T such that rows T..L are all empty; length+1 when none.
    int termination_level() const;
    bool operator==(const BettiTable&) const = default;
};

/// Minimal graded free resolution with a certified window: differentials
/// compose to zero exactly, entries lie in the radical, and every beta_{i,j}
/// with j <= degree_bound is exact.
struct Resolution {
    int length = 0;
    int degree_bound = 0;
    Realization module;
    std::vector<GradedFreeModule> terms; // Q_0 .. Q_length
    std::vector<GradedMatrix> diffs;     // diffs[n-1] = ∂_n : Q_n -> Q_{n-1}
    std::vector<SparseMat> cover;        // per degree: (Q_0)_j -> module slice j
    bool terminated = false;             // some Q_t = 0 within the window

    const GradedMatrix& diff(int n) const { return diffs.at(n - 1); }
};

Resolution minimal_resolution(const Realization& module, const GroebnerBasisTruncated& gb,
                              int length, bool parallel = parallel_default());

/// Convenience: realize a presented module and resolve it.
Resolution resolve_module(const ModulePresentation& mp, const GroebnerBasisTruncated& gb,
                          int length, int degree_bound, bool parallel = parallel_default());
/// Resolution of the trivial module k = A/J.
Resolution resolve_trivial(const GroebnerBasisTruncated& gb, int length, int degree_bound,
                           bool parallel = parallel_default());

BettiTable betti(const Resolution& res);

/// Homological-degree views of a Betti table: rows ≡ 0,1 (mod 3), rows ≡ 2,
/// and rows ≡ 0.
struct ExtParts {
    BettiTable pure;     // E^[P]
    BettiTable non_pure; // E^[N]
    BettiTable zero;     // E^[0]
};
ExtParts ext_parts(const BettiTable& table);

/// The n-th syzygy Ω^n = ker ∂_{n-1} (∂_0 = cover), n >= 1, as a submodule
/// of Q_{n-1}.
DegreewiseModule syzygy_module(const Resolution& res, int n, const GroebnerBasisTruncated& gb,
                               bool parallel = parallel_default());

int slice_dim(const GradedFreeModule& mod, int degree, const GroebnerBasisTruncated& gb);

/// Applies a word to a realization row (letters act right to left from
/// `start_degree`).
SparseRow realization_word_action(const Word& w, const SparseRow& row, int start_degree,
                                  const Realization& n, const Field& field);

/// Smallest action-closed family of subspaces containing the given seed rows
/// (per degree).
std::vector<EchelonSpace> generated_subspaces(const Realization& n,
                                              const std::vector<std::vector<SparseRow>>& seeds,
                                              const Field& field);

struct EulerReport {
    bool applicable = false; // resolution terminated within the window
    std::vector<char> ok;    // per degree 0..D
    bool all_ok() const;
};
EulerReport euler_check(const Resolution& res, const GroebnerBasisTruncated& gb);

/// Degreewise exactness certificate: dim ker(∂_n)_j == dim im(∂_{n+1})_j for
/// 1 <= n < L, plus ker(cover)_j == im(∂_1)_j.
bool exactness_certificate(const Resolution& res, const GroebnerBasisTruncated& gb,
                           std::string* what = nullptr);

} // namespace koszul
