#include "koszul/homology.hpp"

#include <algorithm>

namespace koszul {

bool DegreewiseModule::is_zero() const {
    for (const auto& s : slices)
        if (s.dim() > 0)
            return false;
    return true;
}

std::vector<SliceBasis> slice_bases(const GradedFreeModule& mod, int degree_bound,
                                    const GroebnerBasisTruncated& gb) {
    std::vector<SliceBasis> out;
    out.reserve(degree_bound + 1);
    for (int j = 0; j <= degree_bound; ++j)
        out.emplace_back(mod, j, gb);
    return out;
}

SparseRow free_action(int g, const SparseRow& row, const SliceBasis& src, const SliceBasis& dst,
                      const GroebnerBasisTruncated& gb) {
    const AlgebraPresentation& a = gb.algebra();
    const Field& field = gb.field();
    Word ga = single_word(g);
    SparseRow out;
    for (const auto& e : row.ents) {
        auto [gen, w] = src[e.first];
        auto c = a.concat(ga, w);
        if (!c)
            continue;
        Polynomial nf = gb.normal_form(Polynomial::monomial(*c, 1));
        for (const auto& t : nf.terms()) {
            int col = dst.index_of(gen, t.word);
            if (col < 0)
                fail(ErrorKind::internal, "action left the slice basis");
            out.set(col, field.add(out.get(col), field.mul(e.second, t.coeff)));
        }
    }
    return out;
}

namespace {

// Splits a coordinate row into its vertex-pure pieces (identity in
// connected mode).
std::vector<SparseRow> vertex_pieces(const SparseRow& row, const SliceBasis& basis,
                                     const AlgebraPresentation& a) {
    if (!a.quiver)
        return row.is_zero() ? std::vector<SparseRow>{} : std::vector<SparseRow>{row};
    std::map<int, SparseRow> by_vtx;
    for (const auto& e : row.ents)
        by_vtx[a.source_of(basis[e.first].second)].ents.push_back(e);
    std::vector<SparseRow> out;
    for (auto& [v, r] : by_vtx)
        out.push_back(std::move(r));
    return out;
}

SparseRow coordinates_of(const std::vector<Polynomial>& entries, const SliceBasis& basis,
                         const Field& field) {
    SparseRow out;
    for (size_t g = 0; g < entries.size(); ++g)
        for (const auto& t : entries[g].terms()) {
            int col = basis.index_of(static_cast<int>(g), t.word);
            if (col < 0)
                fail(ErrorKind::internal, "row entry outside the slice basis");
            out.set(col, field.add(out.get(col), t.coeff));
        }
    return out;
}

int row_vertex(const SparseRow& row, const SliceBasis& basis, const AlgebraPresentation& a) {
    if (row.is_zero())
        return 0;
    return a.source_of(basis[row.ents.front().first].second);
}

int realization_row_vertex(const SparseRow& row, const std::vector<int>& vtx) {
    if (row.is_zero())
        return 0;
    return vtx[row.ents.front().first];
}

} // namespace

Realization realize_cokernel(const ModulePresentation& mp, const GroebnerBasisTruncated& gb,
                             int degree_bound) {
    const AlgebraPresentation& a = gb.algebra();
    const Field& field = gb.field();
    if (degree_bound > gb.certified_degree())
        fail(ErrorKind::window, "degree bound exceeds the certified rewrite window");
    GradedFreeModule f = GradedFreeModule::make(mp.gen_degrees, mp.gen_vertices);

    // degreewise closure of the relation submodule
    std::vector<EchelonSpace> rel(degree_bound + 1);
    std::vector<SliceBasis> bases(degree_bound + 1);
    for (int j = 0; j <= degree_bound; ++j)
        bases[j] = SliceBasis(f, j, gb);
    for (int j = 0; j <= degree_bound; ++j) {
        std::vector<SparseRow> rows;
        if (j > 0)
            for (const auto& r : rel[j - 1].rows())
                for (int g = 0; g < a.num_gens(); ++g) {
                    SparseRow img = free_action(g, r, bases[j - 1], bases[j], gb);
                    if (!img.is_zero())
                        rows.push_back(std::move(img));
                }
        for (size_t i = 0; i < mp.rows.size(); ++i)
            if (mp.row_degrees[i] == j) {
                std::vector<Polynomial> nf_entries;
                for (const auto& e : mp.rows[i])
                    nf_entries.push_back(gb.normal_form(e));
                SparseRow r = coordinates_of(nf_entries, bases[j], field);
                for (auto& piece : vertex_pieces(r, bases[j], a))
                    rows.push_back(std::move(piece));
            }
        rel[j] = row_space(rows, bases[j].dim(), field);
    }

    Realization n;
    n.degree_bound = degree_bound;
    n.dims.resize(degree_bound + 1);
    n.vtx.resize(degree_bound + 1);
    // quotient basis: non-pivot coordinates of the relation space
    std::vector<std::vector<int32_t>> coords(degree_bound + 1);
    std::vector<std::vector<int32_t>> coord_index(degree_bound + 1);
    for (int j = 0; j <= degree_bound; ++j) {
        coord_index[j].assign(bases[j].dim(), -1);
        const auto& piv = rel[j].pivots();
        size_t p = 0;
        for (int32_t c = 0; c < bases[j].dim(); ++c) {
            if (p < piv.size() && piv[p] == c) {
                ++p;
                continue;
            }
            coord_index[j][c] = static_cast<int32_t>(coords[j].size());
            coords[j].push_back(c);
            n.vtx[j].push_back(a.source_of(bases[j][c].second));
        }
        n.dims[j] = static_cast<int>(coords[j].size());
    }
    n.act.assign(a.num_gens(), {});
    for (int g = 0; g < a.num_gens(); ++g) {
        n.act[g].resize(degree_bound + 1);
        for (int j = 0; j < degree_bound; ++j) {
            SparseMat m;
            m.cols = n.dims[j + 1];
            m.rows.resize(n.dims[j]);
            for (int b = 0; b < n.dims[j]; ++b) {
                SparseRow img = free_action(g, unit_row(coords[j][b]), bases[j], bases[j + 1], gb);
                SparseRow red = rel[j + 1].reduce(img, field);
                SparseRow out;
                for (const auto& e : red.ents) {
                    if (coord_index[j + 1][e.first] < 0)
                        fail(ErrorKind::internal, "reduced row meets a pivot column");
                    out.set(coord_index[j + 1][e.first], e.second);
                }
                m.rows[b] = std::move(out);
            }
            n.act[g][j] = std::move(m);
        }
        n.act[g][degree_bound] = SparseMat{};
    }
    return n;
}

Realization realize_submodule(const DegreewiseModule& s, const GroebnerBasisTruncated& gb) {
    const AlgebraPresentation& a = gb.algebra();
    const Field& field = gb.field();
    int dmax = s.degree_bound;
    Realization n;
    n.degree_bound = dmax;
    n.dims.resize(dmax + 1);
    n.vtx.resize(dmax + 1);
    std::vector<SliceBasis> bases(dmax + 1);
    for (int j = 0; j <= dmax; ++j) {
        bases[j] = SliceBasis(s.ambient, j, gb);
        n.dims[j] = s.slices[j].dim();
        for (const auto& r : s.slices[j].rows())
            n.vtx[j].push_back(row_vertex(r, bases[j], a));
    }
    n.act.assign(a.num_gens(), {});
    for (int g = 0; g < a.num_gens(); ++g) {
        n.act[g].resize(dmax + 1);
        for (int j = 0; j < dmax; ++j) {
            SparseMat m;
            m.cols = n.dims[j + 1];
            m.rows.resize(n.dims[j]);
            for (int b = 0; b < n.dims[j]; ++b) {
                SparseRow img = free_action(g, s.slices[j].rows()[b], bases[j], bases[j + 1], gb);
                SparseRow coeffs;
                SparseRow res = s.slices[j + 1].reduce(img, field, &coeffs);
                if (!res.is_zero())
                    fail(ErrorKind::internal, "degreewise submodule is not action-closed");
                m.rows[b] = std::move(coeffs);
            }
            n.act[g][j] = std::move(m);
        }
        n.act[g][dmax] = SparseMat{};
    }
    return n;
}

Realization realize_sub(const Realization& parent, const std::vector<EchelonSpace>& sub,
                        const Field& field) {
    int dmax = parent.degree_bound;
    Realization n;
    n.degree_bound = dmax;
    n.dims.resize(dmax + 1);
    n.vtx.resize(dmax + 1);
    for (int j = 0; j <= dmax; ++j) {
        n.dims[j] = sub[j].dim();
        for (const auto& r : sub[j].rows())
            n.vtx[j].push_back(realization_row_vertex(r, parent.vtx[j]));
    }
    size_t gens = parent.act.size();
    n.act.assign(gens, {});
    for (size_t g = 0; g < gens; ++g) {
        n.act[g].resize(dmax + 1);
        for (int j = 0; j < dmax; ++j) {
            SparseMat m;
            m.cols = n.dims[j + 1];
            m.rows.resize(n.dims[j]);
            for (int b = 0; b < n.dims[j]; ++b) {
                SparseRow img = row_times(sub[j].rows()[b], parent.act[g][j], field);
                SparseRow coeffs;
                SparseRow res = sub[j + 1].reduce(img, field, &coeffs);
                if (!res.is_zero())
                    fail(ErrorKind::internal, "subspaces are not action-closed");
                m.rows[b] = std::move(coeffs);
            }
            n.act[g][j] = std::move(m);
        }
        n.act[g][dmax] = SparseMat{};
    }
    return n;
}

Realization realize_quotient(const Realization& parent, const std::vector<EchelonSpace>& sub,
                             const Field& field) {
    int dmax = parent.degree_bound;
    Realization n;
    n.degree_bound = dmax;
    n.dims.resize(dmax + 1);
    n.vtx.resize(dmax + 1);
    std::vector<std::vector<int32_t>> coords(dmax + 1), coord_index(dmax + 1);
    for (int j = 0; j <= dmax; ++j) {
        coord_index[j].assign(parent.dims[j], -1);
        const auto& piv = sub[j].pivots();
        size_t p = 0;
        for (int32_t c = 0; c < parent.dims[j]; ++c) {
            if (p < piv.size() && piv[p] == c) {
                ++p;
                continue;
            }
            coord_index[j][c] = static_cast<int32_t>(coords[j].size());
            coords[j].push_back(c);
            n.vtx[j].push_back(parent.vtx[j][c]);
        }
        n.dims[j] = static_cast<int>(coords[j].size());
    }
    size_t gens = parent.act.size();
    n.act.assign(gens, {});
    for (size_t g = 0; g < gens; ++g) {
        n.act[g].resize(dmax + 1);
        for (int j = 0; j < dmax; ++j) {
            SparseMat m;
            m.cols = n.dims[j + 1];
            m.rows.resize(n.dims[j]);
            for (int b = 0; b < n.dims[j]; ++b) {
                SparseRow img =
                    row_times(unit_row(coords[j][b]), parent.act[g][j], field);
                SparseRow red = sub[j + 1].reduce(img, field);
                SparseRow out;
                for (const auto& e : red.ents)
                    out.set(coord_index[j + 1][e.first], e.second);
                m.rows[b] = std::move(out);
            }
            n.act[g][j] = std::move(m);
        }
        n.act[g][dmax] = SparseMat{};
    }
    return n;
}

std::vector<EchelonSpace> radical_subspaces(const Realization& n, const Field& field) {
    std::vector<EchelonSpace> out(n.degree_bound + 1);
    out[0] = EchelonSpace(n.dims[0]);
    for (int j = 1; j <= n.degree_bound; ++j) {
        std::vector<SparseRow> rows;
        for (const auto& per_gen : n.act)
            for (const auto& r : per_gen[j - 1].rows)
                if (!r.is_zero())
                    rows.push_back(r);
        out[j] = row_space(rows, n.dims[j], field);
    }
    return out;
}

std::vector<MinimalGenerator> minimal_generators(const DegreewiseModule& s,
                                                 const GroebnerBasisTruncated& gb) {
    const AlgebraPresentation& a = gb.algebra();
    const Field& field = gb.field();
    std::vector<MinimalGenerator> gens;
    auto bases = slice_bases(s.ambient, s.degree_bound, gb);
    for (int j = 0; j <= s.degree_bound; ++j) {
        if (s.slices[j].dim() == 0)
            continue;
        const SliceBasis& basis = bases[j];
        std::vector<SparseRow> covered;
        if (j > 0)
            for (const auto& r : s.slices[j - 1].rows())
                for (int g = 0; g < a.num_gens(); ++g) {
                    SparseRow img = free_action(g, r, bases[j - 1], bases[j], gb);
                    if (!img.is_zero())
                        covered.push_back(std::move(img));
                }
        EchelonSpace cur = row_space(covered, basis.dim(), field);
        for (const auto& v : s.slices[j].rows()) {
            SparseRow r = cur.reduce(v, field);
            if (r.is_zero())
                continue;
            r = row_scaled(r, field.inv(r.ents.front().second), field);
            gens.push_back({j, row_vertex(r, basis, a), r});
            std::vector<SparseRow> ext = cur.rows();
            ext.push_back(r);
            cur = row_space(ext, basis.dim(), field);
        }
    }
    return gens;
}

DegreewiseModule radical(const DegreewiseModule& s, const GroebnerBasisTruncated& gb) {
    const AlgebraPresentation& a = gb.algebra();
    const Field& field = gb.field();
    DegreewiseModule out;
    out.ambient = s.ambient;
    out.degree_bound = s.degree_bound;
    out.slices.resize(s.degree_bound + 1);
    out.slices[0] = EchelonSpace(s.slices[0].cols());
    auto bases = slice_bases(s.ambient, s.degree_bound, gb);
    for (int j = 1; j <= s.degree_bound; ++j) {
        std::vector<SparseRow> rows;
        for (const auto& r : s.slices[j - 1].rows())
            for (int g = 0; g < a.num_gens(); ++g) {
                SparseRow img = free_action(g, r, bases[j - 1], bases[j], gb);
                if (!img.is_zero())
                    rows.push_back(std::move(img));
            }
        out.slices[j] = row_space(rows, bases[j].dim(), field);
    }
    return out;
}

DegreewiseModule intersect(const DegreewiseModule& s, const DegreewiseModule& t,
                           const Field& field) {
    if (!(s.ambient == t.ambient) || s.degree_bound != t.degree_bound)
        fail(ErrorKind::validation, "intersection requires a common ambient module");
    DegreewiseModule out;
    out.ambient = s.ambient;
    out.degree_bound = s.degree_bound;
    out.slices.resize(s.degree_bound + 1);
    for (int j = 0; j <= s.degree_bound; ++j)
        out.slices[j] = intersect_spaces(s.slices[j], t.slices[j], field);
    return out;
}

// ---------------------------------------------------------------------------
// Resolution

namespace {

// Minimal generators of a realization: canonical complement of the radical
// image inside each slice.
std::vector<MinimalGenerator> realization_generators(const Realization& n, const Field& field) {
    std::vector<MinimalGenerator> gens;
    auto rad = radical_subspaces(n, field);
    for (int j = 0; j <= n.degree_bound; ++j) {
        if (n.dims[j] == 0)
            continue;
        EchelonSpace cur = rad[j];
        for (int32_t c = 0; c < n.dims[j]; ++c) {
            SparseRow r = cur.reduce(unit_row(c), field);
            if (r.is_zero())
                continue;
            r = row_scaled(r, field.inv(r.ents.front().second), field);
            gens.push_back({j, n.vtx[j][c], r});
            std::vector<SparseRow> ext = cur.rows();
            ext.push_back(r);
            cur = row_space(ext, n.dims[j], field);
        }
    }
    return gens;
}

GradedFreeModule module_of(const std::vector<MinimalGenerator>& gens) {
    GradedFreeModule m;
    for (const auto& g : gens) {
        m.degrees.push_back(g.degree);
        m.vertices.push_back(g.vertex);
    }
    return m;
}

SparseRow word_action(const Word& w, const SparseRow& row, int start_degree,
                      const Realization& n, const Field& field) {
    SparseRow cur = row;
    int deg = start_degree;
    for (size_t i = w.letters.size(); i-- > 0;) {
        cur = row_times(cur, n.act[w.letters[i]][deg], field);
        ++deg;
        if (cur.is_zero())
            return cur;
    }
    return cur;
}

} // namespace

Resolution minimal_resolution(const Realization& module, const GroebnerBasisTruncated& gb,
                              int length, bool parallel) {
    const Field& field = gb.field();
    const int dmax = module.degree_bound;
    if (length < 0)
        fail(ErrorKind::validation, "resolution length must be nonnegative");

    Resolution res;
    res.length = length;
    res.degree_bound = dmax;
    res.module = module;

    auto gens0 = realization_generators(module, field);
    res.terms.push_back(module_of(gens0));
    res.cover.resize(dmax + 1);
    sweep(
        0, dmax,
        [&](int j) {
            SliceBasis basis(res.terms[0], j, gb);
            SparseMat cov;
            cov.cols = module.dims[j];
            cov.rows.resize(basis.dim());
            for (int i = 0; i < basis.dim(); ++i) {
                auto [g, w] = basis[i];
                cov.rows[i] = word_action(w, gens0[g].row, gens0[g].degree, module, field);
            }
            res.cover[j] = std::move(cov);
        },
        parallel);

    // first syzygy: degreewise kernels of the cover
    DegreewiseModule syz;
    syz.ambient = res.terms[0];
    syz.degree_bound = dmax;
    syz.slices.resize(dmax + 1);
    sweep(
        0, dmax,
        [&](int j) {
            syz.slices[j] =
                EchelonSpace::adopt_reduced(kernel_rows(res.cover[j], field), res.cover[j].num_rows());
        },
        parallel);

    for (int n = 1; n <= length; ++n) {
        if (res.terminated || syz.is_zero()) {
            res.terminated = true;
            GradedFreeModule empty;
            res.diffs.push_back(GradedMatrix::zero(empty, res.terms.back()));
            res.terms.push_back(empty);
            continue;
        }
        auto gens = minimal_generators(syz, gb);
        GradedFreeModule q = module_of(gens);
        GradedMatrix d = GradedMatrix::zero(q, res.terms.back());
        for (size_t i = 0; i < gens.size(); ++i) {
            SliceBasis basis(res.terms.back(), gens[i].degree, gb);
            d.entries[i] = row_to_polynomials(gens[i].row, res.terms.back(), basis, field);
        }
        res.terms.push_back(q);
        res.diffs.push_back(std::move(d));

        if (n == length)
            break;
        DegreewiseModule next;
        next.ambient = q;
        next.degree_bound = dmax;
        next.slices.resize(dmax + 1);
        sweep(
            0, dmax,
            [&](int j) {
                SparseMat m = slice_matrix(res.diffs.back(), j, gb);
                next.slices[j] =
                    EchelonSpace::adopt_reduced(kernel_rows(m, field), m.num_rows());
            },
            parallel);
        syz = std::move(next);
    }
    if (!res.terminated)
        res.terminated = res.terms.back().empty();
    return res;
}

Resolution resolve_module(const ModulePresentation& mp, const GroebnerBasisTruncated& gb,
                          int length, int degree_bound, bool parallel) {
    return minimal_resolution(realize_cokernel(mp, gb, degree_bound), gb, length, parallel);
}

Resolution resolve_trivial(const GroebnerBasisTruncated& gb, int length, int degree_bound,
                           bool parallel) {
    return resolve_module(trivial_module(gb.algebra()), gb, length, degree_bound, parallel);
}

long BettiTable::beta(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
}

std::vector<int> BettiTable::support(int i) const {
    std::vector<int> s;
    for (const auto& [k, v] : entries)
        if (k.first == i && v > 0)
            s.push_back(k.second);
    return s;
}

int BettiTable::termination_level() const {
    int t = length + 1;
    for (int i = length; i >= 0; --i) {
        if (support(i).empty())
            t = i;
        else
            break;
    }
    return t;
}

BettiTable betti(const Resolution& res) {
    BettiTable t;
    t.length = res.length;
    t.degree_bound = res.degree_bound;
    for (size_t i = 0; i < res.terms.size(); ++i)
        for (int d : res.terms[i].degrees)
            ++t.entries[{static_cast<int>(i), d}];
    return t;
}

ExtParts ext_parts(const BettiTable& table) {
    ExtParts p;
    p.pure.length = p.non_pure.length = p.zero.length = table.length;
    p.pure.degree_bound = p.non_pure.degree_bound = p.zero.degree_bound = table.degree_bound;
    for (const auto& [k, v] : table.entries) {
        int r = k.first % 3;
        if (r == 2)
            p.non_pure.entries[k] = v;
        else
            p.pure.entries[k] = v;
        if (r == 0)
            p.zero.entries[k] = v;
    }
    return p;
}

DegreewiseModule syzygy_module(const Resolution& res, int n, const GroebnerBasisTruncated& gb,
                               bool parallel) {
    if (n < 1 || n > res.length)
        fail(ErrorKind::window, "syzygy index outside the resolved window");
    const Field& field = gb.field();
    DegreewiseModule out;
    out.ambient = res.terms[n - 1];
    out.degree_bound = res.degree_bound;
    out.slices.resize(res.degree_bound + 1);
    sweep(
        0, res.degree_bound,
        [&](int j) {
            if (n == 1) {
                out.slices[j] = EchelonSpace::adopt_reduced(kernel_rows(res.cover[j], field),
                                                            res.cover[j].num_rows());
            } else {
                SparseMat m = slice_matrix(res.diff(n - 1), j, gb);
                out.slices[j] =
                    EchelonSpace::adopt_reduced(kernel_rows(m, field), m.num_rows());
            }
        },
        parallel);
    return out;
}

int slice_dim(const GradedFreeModule& mod, int degree, const GroebnerBasisTruncated& gb) {
    const AlgebraPresentation& a = gb.algebra();
    int total = 0;
    for (int g = 0; g < mod.count(); ++g) {
        int wdeg = degree - mod.degrees[g];
        if (wdeg < 0)
            continue;
        if (!a.quiver) {
            total += gb.hilbert(wdeg);
        } else {
            for (const Word& w : gb.monomial_basis(wdeg))
                if (a.target_of(w) == mod.vertices[g])
                    ++total;
        }
    }
    return total;
}

bool EulerReport::all_ok() const {
    for (char c : ok)
        if (!c)
            return false;
    return true;
}

EulerReport euler_check(const Resolution& res, const GroebnerBasisTruncated& gb) {
    EulerReport rep;
    rep.applicable = res.terminated;
    rep.ok.assign(res.degree_bound + 1, 1);
    if (!rep.applicable)
        return rep;
    for (int j = 0; j <= res.degree_bound; ++j) {
        long sum = 0;
        for (size_t i = 0; i < res.terms.size(); ++i) {
            long d = slice_dim(res.terms[i], j, gb);
            sum += (i % 2 == 0) ? d : -d;
        }
        rep.ok[j] = (sum == res.module.dims[j]) ? 1 : 0;
    }
    return rep;
}

SparseRow realization_word_action(const Word& w, const SparseRow& row, int start_degree,
                                  const Realization& n, const Field& field) {
    return word_action(w, row, start_degree, n, field);
}

std::vector<EchelonSpace> generated_subspaces(const Realization& n,
                                              const std::vector<std::vector<SparseRow>>& seeds,
                                              const Field& field) {
    std::vector<EchelonSpace> out(n.degree_bound + 1);
    for (int j = 0; j <= n.degree_bound; ++j) {
        std::vector<SparseRow> rows;
        if (j > 0)
            for (const auto& r : out[j - 1].rows())
                for (const auto& per_gen : n.act) {
                    SparseRow img = row_times(r, per_gen[j - 1], field);
                    if (!img.is_zero())
                        rows.push_back(std::move(img));
                }
        if (j < static_cast<int>(seeds.size()))
            for (const auto& r : seeds[j])
                rows.push_back(r);
        out[j] = row_space(rows, n.dims[j], field);
    }
    return out;
}

bool exactness_certificate(const Resolution& res, const GroebnerBasisTruncated& gb,
                           std::string* what) {
    const Field& field = gb.field();
    for (int n = 0; n < res.length; ++n) {
        for (int j = 0; j <= res.degree_bound; ++j) {
            SparseMat outer = n == 0 ? res.cover[j] : slice_matrix(res.diff(n), j, gb);
            SparseMat inner = slice_matrix(res.diff(n + 1), j, gb);
            int dim_src = outer.num_rows();
            int ker = dim_src - rank(outer, field);
            int im = rank(inner, field);
            if (ker != im) {
                if (what)
                    *what = "exactness fails at level " + std::to_string(n) + ", degree " +
                            std::to_string(j);
                return false;
            }
        }
    }
    return true;
}

} // namespace koszul
