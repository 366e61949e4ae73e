#pragma once

#include "koszul/homology.hpp"

namespace koszul {

/// Element of E^i_j(M): a coefficient row on the degree-j generators of Q_i,
/// indexed by their position among all generators of Q_i.
struct ExtElement {
    int i = 0;
    int j = 0;
    SparseRow coeffs;
};

/// Dual basis of E^i(M) (all internal degrees), one element per generator.
std::vector<ExtElement> ext_basis(const Resolution& res, int i);
std::vector<ExtElement> ext_basis(const Resolution& res, int i, int j);

/// Lifts a class e in E^{i}(M) to a chain map (ψ_0 … ψ_levels) with
/// ψ_n : Q_{e.i + n}(M) -> P_n, against the resolution `res_a` of the trivial
/// module. Lifting solves one exact linear system per generator per level,
/// choosing the echelon-pivot section; consistency failures signal a broken
/// resolution.
std::vector<GradedMatrix> chain_lift(const ExtElement& e, const Resolution& res_m,
                                     const Resolution& res_a, const GroebnerBasisTruncated& gb,
                                     int levels);

/// Yoneda product e1·e2 for e1 in E(A) (over res_a) and e2 in E(M) (over
/// res_m); lands in E^{i1+i2}_{j1+j2}(M).
ExtElement yoneda_product(const ExtElement& e1, const ExtElement& e2, const Resolution& res_a,
                          const Resolution& res_m, const GroebnerBasisTruncated& gb);

/// Dimension of the span of pairwise Yoneda products of two Ext families,
/// inside E^{i1+i2}_{j1+j2}.
long yoneda_span_dim(const std::vector<ExtElement>& left, const std::vector<ExtElement>& right,
                     const Resolution& res_a, const Resolution& res_m,
                     const GroebnerBasisTruncated& gb);

struct ExtGenReport {
    struct Row {
        int n;
        long dim_ext;
        long dim_span; // dim of E^n(A)·E^0(M)
        bool generated;
    };
    int length = 0;
    int degree_bound = 0;
    std::vector<Row> rows;
    bool all_generated = true;
};

/// Checks E^n(M) = E^n(A)·E^0(M) for each n <= L, with dimension evidence.
ExtGenReport ext_generated_in_degree0(const Resolution& res_m, const Resolution& res_a,
                                      const GroebnerBasisTruncated& gb, int length);

} // namespace koszul
