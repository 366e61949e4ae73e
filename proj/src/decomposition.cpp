#include "koszul/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace koszul {

std::vector<int> BlockPartition::doubleprime(const GradedFreeModule& mod, int level) const {
    std::vector<int> out;
    const auto& p = prime.at(level);
    size_t k = 0;
    for (int i = 0; i < mod.count(); ++i) {
        if (k < p.size() && p[k] == i) {
            ++k;
            continue;
        }
        out.push_back(i);
    }
    return out;
}

GradedMatrix submatrix(const GradedMatrix& f, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
    GradedFreeModule src, tgt;
    for (int i : rows) {
        src.degrees.push_back(f.source.degrees[i]);
        src.vertices.push_back(f.source.vertices[i]);
    }
    for (int j : cols) {
        tgt.degrees.push_back(f.target.degrees[j]);
        tgt.vertices.push_back(f.target.vertices[j]);
    }
    GradedMatrix out = GradedMatrix::zero(src, tgt, f.shift);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            out.entries[i][j] = f.entries[rows[i]][cols[j]];
    return out;
}

AdmissibilityCertificate is_admissible(const GradedMatrix& fprime, const GradedMatrix& u,
                                       const GroebnerBasisTruncated& gb, bool parallel) {
    const Field& field = gb.field();
    AdmissibilityCertificate cert;
    cert.witnesses.resize(u.source.count());
    if (u.source.count() == 0)
        return cert;
    if (!(u.target == fprime.target))
        fail(ErrorKind::validation, "admissibility blocks are not conformable");

    // group the solves by row degree: one linear system per degree slice
    std::map<int, LeftSolver> solvers;
    std::map<int, SliceBasis> bases;
    for (int r = 0; r < u.source.count(); ++r) {
        int m = u.source.degrees[r];
        if (!solvers.count(m)) {
            solvers.emplace(m, LeftSolver(slice_matrix(fprime, m, gb), field));
            bases.emplace(m, SliceBasis(fprime.source, m, gb));
        }
    }
    std::mutex mtx;
    sweep(
        0, u.source.count() - 1,
        [&](int r) {
            int m = u.source.degrees[r];
            SliceBasis tgt(u.target, m, gb);
            SparseRow b;
            for (int j = 0; j < u.target.count(); ++j)
                for (const auto& t : u.entries[r][j].terms()) {
                    int col = tgt.index_of(j, t.word);
                    if (col < 0)
                        fail(ErrorKind::internal, "row coordinates escape the slice");
                    b.set(col, field.add(b.get(col), t.coeff));
                }
            auto x = solvers.at(m).solve(b);
            if (!x) {
                std::lock_guard<std::mutex> lk(mtx);
                cert.admissible = false;
                if (cert.failing_row < 0 || r < cert.failing_row) {
                    cert.failing_row = r;
                    cert.failing_degree = m;
                }
                return;
            }
            std::vector<Polynomial> witness =
                row_to_polynomials(*x, fprime.source, bases.at(m), field);
            // verify exactly under truncated multiplication
            for (int j = 0; j < u.target.count(); ++j) {
                Polynomial acc;
                for (int c = 0; c < fprime.source.count(); ++c)
                    if (!witness[c].is_zero() && !fprime.entries[c][j].is_zero())
                        acc = acc.plus(gb.multiply(witness[c], fprime.entries[c][j]), field);
                if (!(acc == u.entries[r][j]))
                    fail(ErrorKind::internal, "admissibility witness failed re-verification");
            }
            std::lock_guard<std::mutex> lk(mtx);
            cert.witnesses[r] = std::move(witness);
        },
        parallel);
    return cert;
}

namespace {

bool zero_block(const GradedMatrix& f, const std::vector<int>& prime_rows,
                const std::vector<int>& dp_cols) {
    for (int i : prime_rows)
        for (int j : dp_cols)
            if (!f.entries[i][j].is_zero())
                return false;
    return true;
}

bool exact_at_middle(const GradedMatrix& f, const GradedMatrix& g, int degree,
                     const GroebnerBasisTruncated& gb) {
    SparseMat fm = slice_matrix(f, degree, gb);
    SparseMat gm = slice_matrix(g, degree, gb);
    int dim_mid = gm.num_rows();
    int ker = dim_mid - rank(gm, gb.field());
    int im = rank(fm, gb.field());
    return ker == im;
}

} // namespace

SplitTriple split_triple(const GradedMatrix& f, const GradedMatrix& g,
                         const std::vector<int>& prime_m, const std::vector<int>& prime_n,
                         const std::vector<int>& prime_p, const GroebnerBasisTruncated& gb) {
    SplitTriple out;
    GradedMatrix fg = compose(f, g, gb);
    out.composite_zero = true;
    for (const auto& row : fg.entries)
        for (const auto& e : row)
            if (!e.is_zero())
                out.composite_zero = false;
    if (!out.composite_zero)
        fail(ErrorKind::validation, "split of a non-complex (f∘g is nonzero)");

    auto complement = [](const GradedFreeModule& mod, const std::vector<int>& p) {
        std::vector<int> out_idx;
        size_t k = 0;
        for (int i = 0; i < mod.count(); ++i) {
            if (k < p.size() && p[k] == i) {
                ++k;
                continue;
            }
            out_idx.push_back(i);
        }
        return out_idx;
    };
    std::vector<int> dp_m = complement(f.source, prime_m);
    std::vector<int> dp_n = complement(f.target, prime_n);
    std::vector<int> dp_p = complement(g.target, prime_p);

    if (!zero_block(f, prime_m, dp_n) || !zero_block(g, prime_n, dp_p))
        fail(ErrorKind::validation, "partition does not expose the zero blocks");

    out.fp = submatrix(f, prime_m, prime_n);
    out.u = submatrix(f, dp_m, prime_n);
    out.fpp = submatrix(f, dp_m, dp_n);
    out.gp = submatrix(g, prime_n, prime_p);
    out.v = submatrix(g, dp_n, prime_p);
    out.gpp = submatrix(g, dp_n, dp_p);

    out.f_cert = is_admissible(out.fp, out.u, gb);
    out.g_cert = is_admissible(out.gp, out.v, gb);
    if (!out.f_cert.admissible || !out.g_cert.admissible) {
        out.ok = false;
        return out;
    }

    int dmax = gb.certified_degree();
    out.prime_exact.assign(dmax + 1, 1);
    out.doubleprime_exact.assign(dmax + 1, 1);
    for (int j = 0; j <= dmax; ++j) {
        out.prime_exact[j] = exact_at_middle(out.fp, out.gp, j, gb) ? 1 : 0;
        out.doubleprime_exact[j] = exact_at_middle(out.fpp, out.gpp, j, gb) ? 1 : 0;
    }
    out.ok = true;
    for (int j = 0; j <= dmax; ++j)
        if (!out.prime_exact[j] || !out.doubleprime_exact[j])
            out.ok = false;
    return out;
}

BettiTable betti_of_terms(const std::vector<GradedFreeModule>& terms, int length,
                          int degree_bound) {
    BettiTable t;
    t.length = length;
    t.degree_bound = degree_bound;
    for (size_t i = 0; i < terms.size(); ++i)
        for (int d : terms[i].degrees)
            ++t.entries[{static_cast<int>(i), d}];
    return t;
}

bool DecompositionResult::all_checks_ok() const {
    if (!ok)
        return false;
    for (const auto& line : transcript)
        if (!line.ok)
            return false;
    return true;
}

namespace {

std::string degree_list(const std::vector<int>& v) {
    std::ostringstream s;
    s << "(";
    for (size_t i = 0; i < v.size(); ++i)
        s << (i ? "," : "") << v[i];
    s << ")";
    return s.str();
}

int top_level(const Resolution& res) {
    int top = -1;
    for (size_t i = 0; i < res.terms.size(); ++i)
        if (!res.terms[i].empty())
            top = static_cast<int>(i);
    return top;
}

// prime indices pinned by the resolution map at levels ≡ 2 (mod 3)
std::vector<int> pinned_prime(const GradedFreeModule& mod, int level, int d) {
    long lower = delta_bounds(d, level).first;
    std::vector<int> out;
    for (int i = 0; i < mod.count(); ++i)
        if (mod.degrees[i] == lower)
            out.push_back(i);
    return out;
}

} // namespace

DecompositionResult decompose(const Resolution& res, const GroebnerBasisTruncated& gb, int d,
                              const std::optional<BlockPartition>& partition_opt) {
    const Field& field = gb.field();
    const AlgebraPresentation& a = gb.algebra();
    if (a.quiver)
        fail(ErrorKind::validation, "decomposition requires a connected algebra");
    for (int deg : res.terms[0].degrees)
        if (deg != 0)
            fail(ErrorKind::validation, "decomposition requires a module generated in degree 0");
    if (!within_resolution_map(betti(res), d))
        fail(ErrorKind::validation,
             "resolution does not follow the bi-Koszul resolution map in the window");

    DecompositionResult out;
    int top = top_level(res);
    if (top < 0) {
        out.ok = false;
        out.failure = "zero module has no decomposition";
        return out;
    }

    if (partition_opt) {
        out.partition = *partition_opt;
        if (static_cast<int>(out.partition.prime.size()) <= top) {
            out.ok = false;
            out.failure = "partition does not cover every resolution level";
            return out;
        }
        for (int m = 0; m <= top; ++m) {
            auto& p = out.partition.prime[m];
            std::sort(p.begin(), p.end());
            for (int i : p)
                if (i < 0 || i >= res.terms[m].count())
                    fail(ErrorKind::validation, "partition index out of range at level " +
                                                    std::to_string(m));
            if (m % 3 == 2 && p != pinned_prime(res.terms[m], m, d)) {
                out.ok = false;
                out.failure = "partition at level " + std::to_string(m) +
                              " must pick exactly the lower-degree generators";
                return out;
            }
        }
    } else {
        PartitionSearch found = search_partition(res, gb, d);
        if (!found.partition) {
            out.ok = false;
            out.failure = found.failure;
            return out;
        }
        out.partition = *found.partition;
    }
    out.partition.prime.resize(res.terms.size());

    // extract blocks level by level
    out.prime.terms.clear();
    out.doubleprime.terms.clear();
    std::vector<std::vector<int>> dp(res.terms.size());
    for (size_t m = 0; m < res.terms.size(); ++m) {
        dp[m] = out.partition.doubleprime(res.terms[m], static_cast<int>(m));
        GradedFreeModule pm, dm;
        for (int i : out.partition.prime[m]) {
            pm.degrees.push_back(res.terms[m].degrees[i]);
            pm.vertices.push_back(res.terms[m].vertices[i]);
        }
        for (int i : dp[m]) {
            dm.degrees.push_back(res.terms[m].degrees[i]);
            dm.vertices.push_back(res.terms[m].vertices[i]);
        }
        out.prime.terms.push_back(std::move(pm));
        out.doubleprime.terms.push_back(std::move(dm));
    }
    for (int m = 1; m <= top; ++m) {
        const GradedMatrix& f = res.diff(m);
        if (!zero_block(f, out.partition.prime[m], dp[m - 1])) {
            out.ok = false;
            out.failure = "no zero block at level " + std::to_string(m) +
                          " (partition not conformable)";
            return out;
        }
        GradedMatrix fp = submatrix(f, out.partition.prime[m], out.partition.prime[m - 1]);
        GradedMatrix u = submatrix(f, dp[m], out.partition.prime[m - 1]);
        GradedMatrix fpp = submatrix(f, dp[m], dp[m - 1]);
        AdmissibilityCertificate cert = is_admissible(fp, u, gb);
        if (!cert.admissible) {
            out.ok = false;
            out.failure = "F_" + std::to_string(m) + " is not admissible (row " +
                          std::to_string(cert.failing_row) + ", degree " +
                          std::to_string(cert.failing_degree) + ")";
            return out;
        }
        out.prime.diffs.push_back(std::move(fp));
        out.doubleprime.diffs.push_back(std::move(fpp));
    }
    out.ok = true;

    // presentations of the two edge modules: generators from level 0,
    // relations read off the first differentials
    auto make_presentation = [&](const FreeComplex& c) {
        ModulePresentation mp;
        mp.gen_degrees.assign(c.terms[0].count(), 0);
        mp.gen_vertices.assign(c.terms[0].count(), 0);
        if (!c.diffs.empty())
            for (int r = 0; r < c.diffs[0].source.count(); ++r) {
                mp.rows.push_back(c.diffs[0].entries[r]);
                mp.row_degrees.push_back(c.diffs[0].source.degrees[r]);
            }
        return mp;
    };
    out.m_prime = make_presentation(out.prime);
    out.m_doubleprime = make_presentation(out.doubleprime);

    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        out.transcript.push_back({name, ok, detail});
    };

    // degree multisets split
    {
        bool ok = true;
        for (size_t m = 0; m < res.terms.size(); ++m) {
            std::vector<int> merged = out.prime.terms[m].degrees;
            merged.insert(merged.end(), out.doubleprime.terms[m].degrees.begin(),
                          out.doubleprime.terms[m].degrees.end());
            std::sort(merged.begin(), merged.end());
            std::vector<int> want = res.terms[m].degrees;
            std::sort(want.begin(), want.end());
            if (merged != want)
                ok = false;
        }
        check("generator degrees split into a disjoint union", ok);
    }

    // complexes: composition, minimality, exactness
    for (const auto* side : {&out.prime, &out.doubleprime}) {
        const char* tag = side == &out.prime ? "prime" : "doubleprime";
        bool zero = true, minimal = true;
        for (size_t m = 0; m + 1 < side->diffs.size(); ++m) {
            GradedMatrix comp = compose(side->diffs[m + 1], side->diffs[m], gb);
            for (const auto& row : comp.entries)
                for (const auto& e : row)
                    if (!e.is_zero())
                        zero = false;
        }
        for (const auto& diff : side->diffs)
            if (!diff.entries_in_radical())
                minimal = false;
        check(std::string(tag) + " differentials compose to zero", zero);
        check(std::string(tag) + " complex is minimal", minimal);

        bool exact = true;
        for (size_t m = 0; m + 1 < side->diffs.size(); ++m)
            for (int j = 0; j <= res.degree_bound; ++j)
                if (!exact_at_middle(side->diffs[m + 1], side->diffs[m], j, gb))
                    exact = false;
        check(std::string(tag) + " complex is degreewise exact", exact);
    }

    // purity against the two pure resolution maps
    {
        BettiTable tp = betti_of_terms(out.prime.terms, res.length, res.degree_bound);
        BettiTable td = betti_of_terms(out.doubleprime.terms, res.length, res.degree_bound);
        PatternVerdict vp = classify_against(tp, PatternSpec{PatternKind::delta_prime, 0, 0, d});
        PatternVerdict vd =
            classify_against(td, PatternSpec{PatternKind::delta_double_prime, 0, 0, d});
        check("prime complex matches delta-prime(" + std::to_string(d) + ")", vp.matches);
        check("doubleprime complex matches delta-doubleprime(" + std::to_string(d) + ")",
              vd.matches);
    }

    // short exact sequence 0 -> M' -> M -> M'' -> 0, degreewise
    {
        const Realization& m_real = res.module;
        SliceBasis basis0(res.terms[0], 0, gb);
        std::vector<std::vector<SparseRow>> seeds(res.degree_bound + 1);
        for (int i : out.partition.prime[0]) {
            int idx = basis0.index_of(i, empty_word(res.terms[0].vertices[i]));
            if (idx < 0)
                fail(ErrorKind::internal, "degree-0 generator missing from the cover slice");
            seeds[0].push_back(res.cover[0].rows[idx]);
        }
        auto msub = generated_subspaces(m_real, seeds, field);

        Realization mp_real = realize_cokernel(out.m_prime, gb, res.degree_bound);
        Realization mpp_real = realize_cokernel(out.m_doubleprime, gb, res.degree_bound);
        bool dims_ok = true, prime_matches = true;
        for (int j = 0; j <= res.degree_bound; ++j) {
            if (mp_real.dims[j] != msub[j].dim())
                prime_matches = false;
            if (m_real.dims[j] != msub[j].dim() + mpp_real.dims[j])
                dims_ok = false;
        }
        check("presented M' matches the image of the prime cover", prime_matches);
        check("dim M = dim M' + dim M'' in every degree", dims_ok);

        // M'' relations vanish in M/M', and its generators span the quotient
        Realization quot = realize_quotient(m_real, msub, field);
        std::vector<SparseRow> gen_images;
        {
            // image of each doubleprime generator in M/M'
            std::vector<int32_t> coord_index(m_real.dims[0], -1);
            const auto& piv = msub[0].pivots();
            size_t p = 0;
            int32_t c2 = 0;
            for (int32_t c = 0; c < m_real.dims[0]; ++c) {
                if (p < piv.size() && piv[p] == c) {
                    ++p;
                    continue;
                }
                coord_index[c] = c2++;
            }
            for (int i : dp[0]) {
                int idx = basis0.index_of(i, empty_word(res.terms[0].vertices[i]));
                SparseRow red = msub[0].reduce(res.cover[0].rows[idx], field);
                SparseRow img;
                for (const auto& e : red.ents)
                    img.set(coord_index[e.first], e.second);
                gen_images.push_back(std::move(img));
            }
        }
        bool rel_vanish = true;
        for (size_t r = 0; r < out.m_doubleprime.rows.size(); ++r) {
            SparseRow acc;
            for (size_t g = 0; g < out.m_doubleprime.rows[r].size(); ++g)
                for (const auto& t : out.m_doubleprime.rows[r][g].terms()) {
                    SparseRow part = realization_word_action(t.word, gen_images[g], 0, quot, field);
                    acc = row_axpy(acc, t.coeff, part, field);
                }
            if (!acc.is_zero())
                rel_vanish = false;
        }
        check("relations of M'' vanish in M/M'", rel_vanish);

        std::vector<std::vector<SparseRow>> dp_seeds(res.degree_bound + 1);
        dp_seeds[0] = gen_images;
        auto span = generated_subspaces(quot, dp_seeds, field);
        bool surjective = true;
        for (int j = 0; j <= res.degree_bound; ++j)
            if (span[j].dim() != quot.dims[j])
                surjective = false;
        check("M -> M'' is surjective degreewise", surjective);
    }

    // summary of the degree sequences
    {
        std::vector<int> dp_seq, pr_seq;
        for (const auto& t : out.prime.terms)
            for (int deg : t.degrees)
                pr_seq.push_back(deg);
        for (const auto& t : out.doubleprime.terms)
            for (int deg : t.degrees)
                dp_seq.push_back(deg);
        check("degree sequences", true,
              "prime " + degree_list(pr_seq) + ", doubleprime " + degree_list(dp_seq));
    }
    return out;
}

PartitionSearch search_partition(const Resolution& res, const GroebnerBasisTruncated& gb, int d,
                                 int cap) {
    PartitionSearch out;
    int top = top_level(res);
    if (top < 0) {
        out.failure = "zero module";
        return out;
    }
    for (int m = 0; m <= top; ++m)
        if (res.terms[m].count() > cap)
            fail(ErrorKind::resource, "level " + std::to_string(m) + " has more than " +
                                          std::to_string(cap) +
                                          " generators; supply a partition");

    const long budget = 500000;
    long nodes = 0;
    std::vector<std::vector<int>> chosen(top + 1);

    auto candidates = [&](int m) {
        std::vector<std::vector<int>> cands;
        if (m % 3 == 2) {
            cands.push_back(pinned_prime(res.terms[m], m, d));
            return cands;
        }
        int s = res.terms[m].count();
        for (int mask = 0; mask < (1 << s); ++mask) {
            std::vector<int> idx;
            for (int i = 0; i < s; ++i)
                if (mask & (1 << i))
                    idx.push_back(i);
            cands.push_back(std::move(idx));
        }
        return cands;
    };

    std::function<bool(int)> dfs = [&](int m) -> bool {
        if (m > top)
            return true;
        for (auto& cand : candidates(m)) {
            if (++nodes > budget)
                fail(ErrorKind::resource, "partition search budget exceeded");
            if (m > 0) {
                const GradedMatrix& f = res.diff(m);
                std::vector<int> dp_prev;
                {
                    size_t k = 0;
                    for (int i = 0; i < res.terms[m - 1].count(); ++i) {
                        if (k < chosen[m - 1].size() && chosen[m - 1][k] == i) {
                            ++k;
                            continue;
                        }
                        dp_prev.push_back(i);
                    }
                }
                if (!zero_block(f, cand, dp_prev))
                    continue;
                std::vector<int> dp_cur;
                {
                    size_t k = 0;
                    for (int i = 0; i < res.terms[m].count(); ++i) {
                        if (k < cand.size() && cand[k] == i) {
                            ++k;
                            continue;
                        }
                        dp_cur.push_back(i);
                    }
                }
                GradedMatrix fp = submatrix(f, cand, chosen[m - 1]);
                GradedMatrix u = submatrix(f, dp_cur, chosen[m - 1]);
                if (!is_admissible(fp, u, gb, false).admissible)
                    continue;
            }
            chosen[m] = cand;
            if (dfs(m + 1))
                return true;
        }
        return false;
    };

    if (dfs(0)) {
        BlockPartition p;
        p.prime = chosen;
        out.partition = std::move(p);
    } else {
        out.failure = "no conformable admissible partition exists";
    }
    out.nodes_visited = nodes;
    return out;
}

} // namespace koszul
