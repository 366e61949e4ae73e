#include "koszul/yoneda.hpp"

#include <map>

namespace koszul {

std::vector<ExtElement> ext_basis(const Resolution& res, int i) {
    if (i < 0 || i >= static_cast<int>(res.terms.size()))
        fail(ErrorKind::window, "cohomological degree outside the resolved window");
    std::vector<ExtElement> out;
    const auto& mod = res.terms[i];
    for (int g = 0; g < mod.count(); ++g)
        out.push_back({i, mod.degrees[g], unit_row(g)});
    return out;
}

std::vector<ExtElement> ext_basis(const Resolution& res, int i, int j) {
    std::vector<ExtElement> out;
    for (auto& e : ext_basis(res, i))
        if (e.j == j)
            out.push_back(std::move(e));
    return out;
}

std::vector<GradedMatrix> chain_lift(const ExtElement& e, const Resolution& res_m,
                                     const Resolution& res_a, const GroebnerBasisTruncated& gb,
                                     int levels) {
    const Field& field = gb.field();
    if (e.i + levels > res_m.length || levels > res_a.length)
        fail(ErrorKind::window, "chain lift exceeds the resolved window");

    std::vector<GradedMatrix> lift;
    const GradedFreeModule& q0 = res_m.terms[e.i];
    const GradedFreeModule& p0 = res_a.terms[0];

    GradedMatrix psi0 = GradedMatrix::zero(q0, p0, e.j);
    for (int g = 0; g < q0.count(); ++g) {
        if (q0.degrees[g] != e.j)
            continue;
        Scalar c = e.coeffs.get(g);
        if (c == 0)
            continue;
        int col = -1;
        for (int h = 0; h < p0.count(); ++h)
            if (p0.vertices[h] == q0.vertices[g]) {
                col = h;
                break;
            }
        if (col < 0)
            fail(ErrorKind::internal, "cover module misses a vertex component");
        psi0.entries[g][col] = Polynomial::monomial(empty_word(q0.vertices[g]), c);
    }
    lift.push_back(std::move(psi0));

    for (int n = 1; n <= levels; ++n) {
        const GradedMatrix& del = res_m.diff(e.i + n); // Q_{i+n} -> Q_{i+n-1}
        const GradedMatrix& d = res_a.diff(n);         // P_n -> P_{n-1}
        const GradedMatrix& prev = lift.back();
        GradedMatrix psi = GradedMatrix::zero(res_m.terms[e.i + n], res_a.terms[n], e.j);

        std::map<int, LeftSolver> solver_by_degree;
        std::map<int, SliceBasis> src_basis_by_degree;
        for (int r = 0; r < del.source.count(); ++r) {
            int m = del.source.degrees[r];
            int target_deg = m - e.j;
            if (target_deg < 0)
                continue;
            // rhs = psi_{n-1}(∂ h_r) as a polynomial row over P_{n-1}
            std::vector<Polynomial> rhs(d.target.count());
            bool rhs_zero = true;
            for (int g = 0; g < del.target.count(); ++g) {
                if (del.entries[r][g].is_zero())
                    continue;
                for (int t = 0; t < d.target.count(); ++t) {
                    if (prev.entries[g][t].is_zero())
                        continue;
                    rhs[t] =
                        rhs[t].plus(gb.multiply(del.entries[r][g], prev.entries[g][t]), field);
                }
            }
            for (const auto& p : rhs)
                if (!p.is_zero())
                    rhs_zero = false;
            if (rhs_zero)
                continue;
            if (target_deg > res_a.degree_bound)
                fail(ErrorKind::window, "chain lift leaves the certified degree window");
            auto bit = src_basis_by_degree.find(target_deg);
            if (bit == src_basis_by_degree.end())
                bit = src_basis_by_degree.emplace(target_deg, SliceBasis(d.source, target_deg, gb))
                          .first;
            auto sit = solver_by_degree.find(target_deg);
            if (sit == solver_by_degree.end())
                sit = solver_by_degree
                          .emplace(target_deg, LeftSolver(slice_matrix(d, target_deg, gb), field))
                          .first;
            SliceBasis tgt_basis(d.target, target_deg, gb);
            SparseRow b;
            for (int t = 0; t < d.target.count(); ++t)
                for (const auto& term : rhs[t].terms()) {
                    int col = tgt_basis.index_of(t, term.word);
                    if (col < 0)
                        fail(ErrorKind::internal, "lift right-hand side misses the slice");
                    b.set(col, field.add(b.get(col), term.coeff));
                }
            auto x = sit->second.solve(b);
            if (!x)
                fail(ErrorKind::internal,
                     "inconsistent lift system (resolution exactness is broken)");
            psi.entries[r] = row_to_polynomials(*x, d.source, bit->second, field);
        }
        lift.push_back(std::move(psi));
    }
    return lift;
}

namespace {

// Coefficient row of a product: one entry per generator of the lift's top
// source, read off the constant part of the lifted map against e1.
SparseRow pair_with_lift(const ExtElement& e1, const std::vector<GradedMatrix>& lift,
                         const Resolution& res_a, const Field& field) {
    const GradedMatrix& top = lift[e1.i];
    SparseRow out;
    const GradedFreeModule& pn = res_a.terms[e1.i];
    for (int r = 0; r < top.source.count(); ++r) {
        Scalar val(0);
        for (int g = 0; g < pn.count(); ++g) {
            if (pn.degrees[g] != e1.j)
                continue;
            Scalar c = e1.coeffs.get(g);
            if (c == 0 || top.entries[r][g].is_zero())
                continue;
            for (const auto& t : top.entries[r][g].terms())
                if (t.word.empty())
                    val = field.add(val, field.mul(c, t.coeff));
        }
        if (val != 0)
            out.set(r, val);
    }
    return out;
}

} // namespace

ExtElement yoneda_product(const ExtElement& e1, const ExtElement& e2, const Resolution& res_a,
                          const Resolution& res_m, const GroebnerBasisTruncated& gb) {
    if (e1.i + e2.i > res_m.length)
        fail(ErrorKind::window, "product degree exceeds the homological window");
    if (e1.j + e2.j > res_m.degree_bound)
        fail(ErrorKind::window, "product degree exceeds the internal window");
    auto lift = chain_lift(e2, res_m, res_a, gb, e1.i);
    ExtElement out;
    out.i = e1.i + e2.i;
    out.j = e1.j + e2.j;
    SparseRow row = pair_with_lift(e1, lift, res_a, gb.field());
    const GradedFreeModule& q = res_m.terms[out.i];
    for (const auto& ent : row.ents)
        if (q.degrees[ent.first] != out.j)
            fail(ErrorKind::internal, "Yoneda product violated degree additivity");
    out.coeffs = std::move(row);
    return out;
}

long yoneda_span_dim(const std::vector<ExtElement>& left, const std::vector<ExtElement>& right,
                     const Resolution& res_a, const Resolution& res_m,
                     const GroebnerBasisTruncated& gb) {
    if (left.empty() || right.empty())
        return 0;
    int max_i1 = 0;
    for (const auto& e1 : left)
        max_i1 = std::max(max_i1, e1.i);
    std::vector<SparseRow> rows;
    int cols = 0;
    for (const auto& e2 : right) {
        auto lift = chain_lift(e2, res_m, res_a, gb, max_i1);
        for (const auto& e1 : left) {
            cols = std::max(cols, res_m.terms[e1.i + e2.i].count());
            SparseRow row = pair_with_lift(e1, lift, res_a, gb.field());
            if (!row.is_zero())
                rows.push_back(std::move(row));
        }
    }
    return row_space(rows, cols, gb.field()).dim();
}

ExtGenReport ext_generated_in_degree0(const Resolution& res_m, const Resolution& res_a,
                                      const GroebnerBasisTruncated& gb, int length) {
    const Field& field = gb.field();
    if (length > res_m.length || length > res_a.length)
        fail(ErrorKind::window, "report length exceeds the resolved window");
    for (int d : res_m.terms[0].degrees)
        if (d != 0)
            fail(ErrorKind::validation, "module is not generated in degree 0");

    ExtGenReport rep;
    rep.length = length;
    rep.degree_bound = res_m.degree_bound;

    std::vector<std::vector<GradedMatrix>> lifts;
    for (const auto& e0 : ext_basis(res_m, 0))
        lifts.push_back(chain_lift(e0, res_m, res_a, gb, length));

    for (int n = 0; n <= length; ++n) {
        long dim_ext = res_m.terms[n].count();
        std::vector<SparseRow> rows;
        for (const auto& lift : lifts)
            for (const auto& e1 : ext_basis(res_a, n)) {
                SparseRow row = pair_with_lift(e1, lift, res_a, field);
                if (!row.is_zero())
                    rows.push_back(std::move(row));
            }
        long dim_span = row_space(rows, res_m.terms[n].count(), field).dim();
        bool gen = dim_span == dim_ext;
        rep.rows.push_back({n, dim_ext, dim_span, gen});
        if (!gen)
            rep.all_generated = false;
    }
    return rep;
}

} // namespace koszul
