#include "koszul/graded.hpp"

#include <algorithm>
#include <numeric>

namespace koszul {

GradedFreeModule GradedFreeModule::make(std::vector<int> degrees, std::vector<int> vertices) {
    GradedFreeModule m;
    m.degrees = std::move(degrees);
    m.vertices = vertices.empty() ? std::vector<int>(m.degrees.size(), 0) : std::move(vertices);
    if (m.vertices.size() != m.degrees.size())
        fail(ErrorKind::internal, "generator degree/vertex length mismatch");
    for (size_t i = 0; i + 1 < m.degrees.size(); ++i)
        if (m.degrees[i] > m.degrees[i + 1])
            fail(ErrorKind::validation, "free module generator degrees must be nondecreasing");
    return m;
}

std::vector<int> GradedFreeModule::degree_support() const {
    std::vector<int> s = degrees;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

SliceBasis::SliceBasis(const GradedFreeModule& mod, int degree, const GroebnerBasisTruncated& gb)
    : degree_(degree) {
    const AlgebraPresentation& a = gb.algebra();
    for (int g = 0; g < mod.count(); ++g) {
        int wdeg = degree - mod.degrees[g];
        if (wdeg < 0)
            continue;
        for (const Word& w : gb.monomial_basis(wdeg))
            if (a.target_of(w) == mod.vertices[g])
                elems_.push_back({g, w});
    }
    std::sort(elems_.begin(), elems_.end(), [&a](const auto& x, const auto& y) {
        int sx = a.source_of(x.second), sy = a.source_of(y.second);
        if (sx != sy)
            return sx < sy;
        if (x.first != y.first)
            return x.first < y.first;
        return word_cmp(x.second, y.second) > 0;
    });
    lookup_.resize(elems_.size());
    std::iota(lookup_.begin(), lookup_.end(), 0);
    std::sort(lookup_.begin(), lookup_.end(), [this](int i, int j) {
        if (elems_[i].first != elems_[j].first)
            return elems_[i].first < elems_[j].first;
        return word_cmp(elems_[i].second, elems_[j].second) > 0;
    });
}

int SliceBasis::index_of(int gen, const Word& w) const {
    auto cmp = [this](int i, const std::pair<int, Word>& key) {
        if (elems_[i].first != key.first)
            return elems_[i].first < key.first;
        return word_cmp(elems_[i].second, key.second) > 0;
    };
    std::pair<int, Word> key{gen, w};
    auto it = std::lower_bound(lookup_.begin(), lookup_.end(), key, cmp);
    if (it != lookup_.end() && elems_[*it].first == gen && elems_[*it].second == w)
        return *it;
    return -1;
}

GradedMatrix GradedMatrix::zero(GradedFreeModule source, GradedFreeModule target, int shift) {
    GradedMatrix f;
    f.source = std::move(source);
    f.target = std::move(target);
    f.shift = shift;
    f.entries.assign(f.source.count(), std::vector<Polynomial>(f.target.count()));
    return f;
}

void GradedMatrix::check_degrees(const AlgebraPresentation& a) const {
    for (int i = 0; i < source.count(); ++i) {
        for (int j = 0; j < target.count(); ++j) {
            const Polynomial& e = entries[i][j];
            if (e.is_zero())
                continue;
            int want = source.degrees[i] - target.degrees[j] - shift;
            if (want < 0)
                fail(ErrorKind::validation, "nonzero entry where the degree law forces zero");
            if (!e.is_homogeneous() || e.degree() != want)
                fail(ErrorKind::validation, "matrix entry violates the degree law");
            for (const auto& t : e.terms())
                if (a.target_of(t.word) != target.vertices[j] ||
                    a.source_of(t.word) != source.vertices[i])
                    fail(ErrorKind::validation, "matrix entry violates vertex compatibility");
        }
    }
}

bool GradedMatrix::entries_in_radical() const {
    for (const auto& row : entries)
        for (const auto& e : row)
            if (!e.is_zero() && e.degree() == 0)
                return false;
    return true;
}

SparseMat slice_matrix(const GradedMatrix& f, int degree, const GroebnerBasisTruncated& gb) {
    const Field& field = gb.field();
    SliceBasis src(f.source, degree, gb);
    SliceBasis tgt(f.target, degree - f.shift, gb);
    SparseMat m;
    m.cols = tgt.dim();
    m.rows.resize(src.dim());
    for (int i = 0; i < src.dim(); ++i) {
        auto [g, w] = src[i];
        SparseRow out;
        for (int h = 0; h < f.target.count(); ++h) {
            const Polynomial& e = f.entries[g][h];
            if (e.is_zero())
                continue;
            std::vector<Term> prod;
            for (const auto& t : e.terms()) {
                auto c = gb.algebra().concat(w, t.word);
                if (c)
                    prod.push_back({*c, t.coeff});
            }
            Polynomial nf = gb.normal_form(Polynomial::from_terms(std::move(prod), field));
            for (const auto& t : nf.terms()) {
                int col = tgt.index_of(h, t.word);
                if (col < 0)
                    fail(ErrorKind::internal, "normal word missing from target slice");
                out.set(col, field.add(out.get(col), t.coeff));
            }
        }
        m.rows[i] = std::move(out);
    }
    return m;
}

GradedMatrix compose(const GradedMatrix& f, const GradedMatrix& g,
                     const GroebnerBasisTruncated& gb) {
    if (!(f.target == g.source))
        fail(ErrorKind::validation, "composition shape mismatch");
    GradedMatrix h = GradedMatrix::zero(f.source, g.target, f.shift + g.shift);
    for (int i = 0; i < f.source.count(); ++i)
        for (int j = 0; j < g.target.count(); ++j) {
            Polynomial acc;
            for (int k = 0; k < f.target.count(); ++k) {
                if (f.entries[i][k].is_zero() || g.entries[k][j].is_zero())
                    continue;
                acc = acc.plus(gb.multiply(f.entries[i][k], g.entries[k][j]), gb.field());
            }
            h.entries[i][j] = std::move(acc);
        }
    return h;
}

std::vector<Polynomial> row_to_polynomials(const SparseRow& row, const GradedFreeModule& mod,
                                           const SliceBasis& basis, const Field& field) {
    std::vector<std::vector<Term>> per_gen(mod.count());
    for (const auto& e : row.ents) {
        auto [g, w] = basis[e.first];
        per_gen[g].push_back({w, e.second});
    }
    std::vector<Polynomial> out;
    out.reserve(mod.count());
    for (auto& terms : per_gen)
        out.push_back(Polynomial::from_terms(std::move(terms), field));
    return out;
}

GradedMatrix matrix_representation(const GradedMatrix& f, const GroebnerBasisTruncated& gb) {
    GradedMatrix out = f;
    // stable sort of both bases by degree, permuting rows/columns along
    auto perm_of = [](const GradedFreeModule& m) {
        std::vector<int> p(m.count());
        std::iota(p.begin(), p.end(), 0);
        std::stable_sort(p.begin(), p.end(),
                         [&m](int a, int b) { return m.degrees[a] < m.degrees[b]; });
        return p;
    };
    std::vector<int> ps = perm_of(f.source), pt = perm_of(f.target);
    GradedFreeModule src, tgt;
    for (int i : ps) {
        src.degrees.push_back(f.source.degrees[i]);
        src.vertices.push_back(f.source.vertices[i]);
    }
    for (int j : pt) {
        tgt.degrees.push_back(f.target.degrees[j]);
        tgt.vertices.push_back(f.target.vertices[j]);
    }
    out.source = src;
    out.target = tgt;
    out.entries.assign(src.count(), std::vector<Polynomial>(tgt.count()));
    for (int i = 0; i < src.count(); ++i)
        for (int j = 0; j < tgt.count(); ++j)
            out.entries[i][j] = gb.normal_form(f.entries[ps[i]][pt[j]]);
    out.check_degrees(gb.algebra());
    return out;
}

} // namespace koszul
