#pragma once

#include <optional>

#include "koszul/koszulity.hpp"

namespace koszul {

/// Bipartition of the generators of every resolution term into prime and
/// doubleprime parts. At levels ≡ 2 (mod 3) the prime part is forced to be
/// the generators of the lower degree.
struct BlockPartition {
    std::vector<std::vector<int>> prime; // sorted generator indices, per level

    std::vector<int> doubleprime(const GradedFreeModule& mod, int level) const;
};

struct AdmissibilityCertificate {
    bool admissible = true;
    /// Per row of U: a witness row over the prime source generators with
    /// X'·F' = u, verified by truncated multiplication.
    std::vector<std::optional<std::vector<Polynomial>>> witnesses;
    int failing_row = -1;
    int failing_degree = -1;
};

/// Row-module membership test: every row of `u` must lie in the left
/// A-row-span of `fprime`. One exact linear solve per row, in the single
/// internal degree of that row.
AdmissibilityCertificate is_admissible(const GradedMatrix& fprime, const GradedMatrix& u,
                                       const GroebnerBasisTruncated& gb,
                                       bool parallel = parallel_default());

GradedMatrix submatrix(const GradedMatrix& f, const std::vector<int>& rows,
                       const std::vector<int>& cols);

struct SplitTriple {
    // blocks of the incoming map f: M -> N and the outgoing map g: N -> P
    GradedMatrix fp, u, fpp;
    GradedMatrix gp, v, gpp;
    AdmissibilityCertificate f_cert, g_cert;
    bool composite_zero = false;
    std::vector<char> prime_exact;       // per internal degree
    std::vector<char> doubleprime_exact; // per internal degree
    bool ok = false;
};

/// Lemma-style split of an exact pair M -f-> N -g-> P along partitions of
/// the three terms, with degreewise exactness of both split rows verified.
SplitTriple split_triple(const GradedMatrix& f, const GradedMatrix& g,
                         const std::vector<int>& prime_m, const std::vector<int>& prime_n,
                         const std::vector<int>& prime_p, const GroebnerBasisTruncated& gb);

struct FreeComplex {
    std::vector<GradedFreeModule> terms;
    std::vector<GradedMatrix> diffs; // diffs[m-1]: terms[m] -> terms[m-1]
};

BettiTable betti_of_terms(const std::vector<GradedFreeModule>& terms, int length,
                          int degree_bound);

struct CheckLine {
    std::string name;
    bool ok;
    std::string detail;
};

struct DecompositionResult {
    bool ok = false;
    std::string failure; // set when no decomposition was produced
    BlockPartition partition;
    FreeComplex prime, doubleprime;
    ModulePresentation m_prime, m_doubleprime;
    std::vector<CheckLine> transcript;

    bool all_checks_ok() const;
};

/// Theorem-style decomposition of a bi-Koszul module resolution into a
/// δ'-pure and a δ''-pure resolution, with the short exact sequence
/// 0 -> M' -> M -> M'' -> 0 verified degreewise.
DecompositionResult decompose(const Resolution& res, const GroebnerBasisTruncated& gb, int d,
                              const std::optional<BlockPartition>& partition = std::nullopt);

struct PartitionSearch {
    std::optional<BlockPartition> partition;
    std::string failure;
    long nodes_visited = 0;
};

/// Deterministic exhaustive search for a conformable admissible partition;
/// levels ≡ 2 (mod 3) are pinned by degree, other levels are enumerated in
/// ascending bitmask order. Hard-capped at `cap` generators per level.
PartitionSearch search_partition(const Resolution& res, const GroebnerBasisTruncated& gb, int d,
                                 int cap = 12);

} // namespace koszul
