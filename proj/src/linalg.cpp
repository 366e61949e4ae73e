#include "koszul/linalg.hpp"

#include <algorithm>
#include <atomic>

namespace koszul {

Scalar SparseRow::get(int32_t col) const {
    auto it = std::lower_bound(ents.begin(), ents.end(), col,
                               [](const auto& e, int32_t c) { return e.first < c; });
    if (it != ents.end() && it->first == col)
        return it->second;
    return Scalar(0);
}

void SparseRow::set(int32_t col, const Scalar& v) {
    auto it = std::lower_bound(ents.begin(), ents.end(), col,
                               [](const auto& e, int32_t c) { return e.first < c; });
    if (it != ents.end() && it->first == col) {
        if (v == 0)
            ents.erase(it);
        else
            it->second = v;
    } else if (v != 0) {
        ents.insert(it, {col, v});
    }
}

SparseRow row_axpy(const SparseRow& x, const Scalar& c, const SparseRow& y, const Field& field) {
    SparseRow out;
    out.ents.reserve(x.ents.size() + y.ents.size());
    size_t i = 0, j = 0;
    while (i < x.ents.size() || j < y.ents.size()) {
        if (j >= y.ents.size() || (i < x.ents.size() && x.ents[i].first < y.ents[j].first)) {
            out.ents.push_back(x.ents[i++]);
        } else if (i >= x.ents.size() || y.ents[j].first < x.ents[i].first) {
            Scalar v = field.mul(c, y.ents[j].second);
            if (v != 0)
                out.ents.push_back({y.ents[j].first, std::move(v)});
            ++j;
        } else {
            Scalar v = field.add(x.ents[i].second, field.mul(c, y.ents[j].second));
            if (v != 0)
                out.ents.push_back({x.ents[i].first, std::move(v)});
            ++i, ++j;
        }
    }
    return out;
}

SparseRow row_scaled(const SparseRow& x, const Scalar& c, const Field& field) {
    SparseRow out;
    for (const auto& e : x.ents) {
        Scalar v = field.mul(e.second, c);
        if (v != 0)
            out.ents.push_back({e.first, std::move(v)});
    }
    return out;
}

SparseRow unit_row(int32_t col) {
    SparseRow r;
    r.ents.push_back({col, Scalar(1)});
    return r;
}

SparseRow row_times(const SparseRow& x, const SparseMat& m, const Field& field) {
    SparseRow out;
    for (const auto& e : x.ents) {
        if (e.first >= m.num_rows())
            fail(ErrorKind::internal, "row/matrix shape mismatch");
        out = row_axpy(out, e.second, m.rows[e.first], field);
    }
    return out;
}

SparseRow EchelonSpace::reduce(const SparseRow& v, const Field& field, SparseRow* coeffs) const {
    SparseRow cur = v;
    if (coeffs)
        coeffs->ents.clear();
    // reduced rows carry no foreign pivot columns, so one pass over the
    // pivot entries present in v is enough
    std::vector<std::pair<size_t, Scalar>> hits;
    for (const auto& e : cur.ents) {
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), e.first);
        if (it != pivots_.end() && *it == e.first)
            hits.push_back({static_cast<size_t>(it - pivots_.begin()), e.second});
    }
    for (const auto& [i, c] : hits) {
        cur = row_axpy(cur, field.neg(c), rows_[i], field);
        if (coeffs)
            coeffs->set(static_cast<int32_t>(i), c);
    }
    return cur;
}

bool EchelonSpace::contains(const SparseRow& v, const Field& field) const {
    return reduce(v, field).is_zero();
}

// ---------------------------------------------------------------------------
// Elimination engines

namespace {

// Scales a rational row to a primitive integer vector with positive leading
// coefficient. The scale factor is applied to the tracking row as well, which
// keeps kernel combinations valid (scaling does not change the row space).
void make_primitive(SparseRow& r, SparseRow* track) {
    if (r.ents.empty())
        return;
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& e : r.ents) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), e.second.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), e.second.get_num().get_mpz_t());
    }
    Scalar scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (r.ents.front().second < 0)
        scale = -scale;
    for (auto& e : r.ents)
        e.second *= scale;
    if (track)
        for (auto& e : track->ents)
            e.second *= scale;
}

} // namespace

class Eliminator {
  public:
    Eliminator(int32_t cols, const Field& field, bool track)
        : cols_(cols), field_(field), track_(track), pivot_row_(cols, -1) {}

    // Inserts a row; when it is dependent, the optional tracking row records
    // a vanishing combination of the inputs.
    void insert(SparseRow v, SparseRow tr) {
        bool char0 = field_.characteristic() == 0;
        if (char0)
            make_primitive(v, track_ ? &tr : nullptr);
        else {
            v = normalize_row(v);
            tr = normalize_row(tr);
        }
        while (!v.is_zero()) {
            int32_t lead = v.leading_col();
            int32_t idx = pivot_row_[lead];
            if (idx < 0) {
                pivot_row_[lead] = static_cast<int32_t>(rows_.size());
                rows_.push_back(std::move(v));
                if (track_)
                    tracks_.push_back(std::move(tr));
                return;
            }
            // fraction-free cross-multiplication step
            const SparseRow& piv = rows_[idx];
            Scalar a = piv.get(lead), b = v.get(lead);
            if (char0) {
                SparseRow nv = row_axpy(row_scaled(v, a, field_), field_.neg(b), piv, field_);
                if (track_)
                    tr = row_axpy(row_scaled(tr, a, field_), field_.neg(b), tracks_[idx], field_);
                make_primitive(nv, track_ ? &tr : nullptr);
                v = std::move(nv);
            } else {
                Scalar c = field_.neg(field_.div(b, a));
                v = row_axpy(v, c, piv, field_);
                if (track_)
                    tr = row_axpy(tr, c, tracks_[idx], field_);
            }
        }
        if (track_ && !tr.is_zero())
            null_tracks_.push_back(std::move(tr));
    }

    int rank() const { return static_cast<int>(rows_.size()); }

    void sort_by_pivot() {
        std::vector<int32_t> order(rows_.size());
        for (size_t i = 0; i < order.size(); ++i)
            order[i] = static_cast<int32_t>(i);
        std::sort(order.begin(), order.end(), [this](int32_t a, int32_t b) {
            return rows_[a].leading_col() < rows_[b].leading_col();
        });
        std::vector<SparseRow> rows, tracks;
        rows.reserve(rows_.size());
        for (int32_t i : order) {
            rows.push_back(std::move(rows_[i]));
            if (track_)
                tracks.push_back(std::move(tracks_[i]));
        }
        rows_ = std::move(rows);
        tracks_ = std::move(tracks);
        pivots_.clear();
        for (const auto& r : rows_)
            pivots_.push_back(r.leading_col());
    }

    // Back-eliminates (still fraction-free in char 0) and scales pivots to
    // one at the very end: the canonical reduced form. Rows are processed in
    // descending pivot order and only the entries actually present are
    // touched; rows below are already reduced, so one pass per row suffices.
    void finalize() {
        sort_by_pivot();
        bool char0 = field_.characteristic() == 0;
        for (int32_t c = 0; c < cols_; ++c)
            pivot_row_[c] = -1;
        for (size_t i = 0; i < rows_.size(); ++i)
            pivot_row_[pivots_[i]] = static_cast<int32_t>(i);
        for (size_t i = rows_.size(); i-- > 0;) {
            // rows below are reduced, so the set of pivot columns present in
            // row i only shrinks; coefficients are re-read because the
            // fraction-free step rescales the whole row
            std::vector<int32_t> hits;
            for (const auto& e : rows_[i].ents)
                if (e.first > pivots_[i] && pivot_row_[e.first] >= 0)
                    hits.push_back(pivot_row_[e.first]);
            for (int32_t k : hits) {
                Scalar a = rows_[k].get(pivots_[k]);
                Scalar c = rows_[i].get(pivots_[k]);
                if (c == 0)
                    continue;
                if (char0) {
                    rows_[i] = row_axpy(row_scaled(rows_[i], a, field_), field_.neg(c), rows_[k],
                                        field_);
                    if (track_)
                        tracks_[i] = row_axpy(row_scaled(tracks_[i], a, field_), field_.neg(c),
                                              tracks_[k], field_);
                    make_primitive(rows_[i], track_ ? &tracks_[i] : nullptr);
                } else {
                    Scalar f = field_.neg(field_.div(c, a));
                    rows_[i] = row_axpy(rows_[i], f, rows_[k], field_);
                    if (track_)
                        tracks_[i] = row_axpy(tracks_[i], f, tracks_[k], field_);
                }
            }
        }
        for (size_t i = 0; i < rows_.size(); ++i) {
            Scalar inv = field_.inv(rows_[i].get(pivots_[i]));
            rows_[i] = row_scaled(rows_[i], inv, field_);
            if (track_)
                tracks_[i] = row_scaled(tracks_[i], inv, field_);
        }
    }

    EchelonSpace space() const {
        EchelonSpace s(cols_);
        s.rows_ = rows_;
        s.pivots_ = pivots_;
        return s;
    }

    const std::vector<SparseRow>& tracks() const { return tracks_; }
    const std::vector<SparseRow>& null_tracks() const { return null_tracks_; }

  private:
    SparseRow normalize_row(const SparseRow& r) const {
        SparseRow out;
        for (const auto& e : r.ents) {
            Scalar v = field_.normalize(e.second);
            if (v != 0)
                out.ents.push_back({e.first, std::move(v)});
        }
        return out;
    }

    int32_t cols_;
    Field field_;
    bool track_;
    std::vector<int32_t> pivot_row_; // column -> index into rows_, -1 when free
    std::vector<int32_t> pivots_;    // valid after finalize()
    std::vector<SparseRow> rows_;
    std::vector<SparseRow> tracks_;
    std::vector<SparseRow> null_tracks_;
};

namespace {

constexpr int32_t kDenseThreshold = 40;

// Plain exact Gauss-Jordan on dense vectors; the small-size fallback and the
// reference the sparse path is tested against.
EchelonSpace dense_row_space(const std::vector<SparseRow>& rows, int32_t cols,
                             const Field& field) {
    std::vector<std::vector<Scalar>> a;
    for (const auto& r : rows) {
        std::vector<Scalar> d(cols, Scalar(0));
        for (const auto& e : r.ents)
            d[e.first] = field.normalize(e.second);
        a.push_back(std::move(d));
    }
    std::vector<int32_t> pivots;
    size_t rank = 0;
    for (int32_t c = 0; c < cols && rank < a.size(); ++c) {
        size_t sel = rank;
        while (sel < a.size() && a[sel][c] == 0)
            ++sel;
        if (sel == a.size())
            continue;
        std::swap(a[rank], a[sel]);
        Scalar inv = field.inv(a[rank][c]);
        for (int32_t k = c; k < cols; ++k)
            a[rank][k] = field.mul(a[rank][k], inv);
        for (size_t r = 0; r < a.size(); ++r) {
            if (r == rank || a[r][c] == 0)
                continue;
            Scalar f = a[r][c];
            for (int32_t k = c; k < cols; ++k)
                a[r][k] = field.sub(a[r][k], field.mul(f, a[rank][k]));
        }
        pivots.push_back(c);
        ++rank;
    }
    std::vector<SparseRow> out;
    for (size_t r = 0; r < rank; ++r) {
        SparseRow s;
        for (int32_t c = 0; c < cols; ++c)
            if (a[r][c] != 0)
                s.ents.push_back({c, a[r][c]});
        out.push_back(std::move(s));
    }
    EchelonSpace sp(cols);
    // rows already sorted by pivot
    std::vector<SparseRow> rs = std::move(out);
    Eliminator e(cols, field, false);
    for (auto& r : rs)
        e.insert(std::move(r), {});
    e.finalize();
    sp = e.space();
    (void)pivots;
    return sp;
}

} // namespace

EchelonSpace row_space(const std::vector<SparseRow>& rows, int32_t cols, const Field& field,
                       ElimMode mode) {
    if (mode == ElimMode::dense ||
        (mode == ElimMode::automatic && cols <= kDenseThreshold &&
         rows.size() <= static_cast<size_t>(kDenseThreshold)))
        return dense_row_space(rows, cols, field);
    Eliminator e(cols, field, false);
    for (const auto& r : rows)
        e.insert(r, {});
    e.finalize();
    return e.space();
}

std::vector<SparseRow> kernel_rows(const SparseMat& m, const Field& field, ElimMode mode) {
    Eliminator e(m.cols, field, true);
    for (int32_t i = 0; i < m.num_rows(); ++i)
        e.insert(m.rows[i], unit_row(i));
    std::vector<SparseRow> raw = e.null_tracks();
    EchelonSpace canon = row_space(raw, m.num_rows(), field, mode);
    return canon.rows();
}

EchelonSpace EchelonSpace::adopt_reduced(std::vector<SparseRow> rows, int32_t cols) {
    EchelonSpace s(cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        int32_t p = rows[i].leading_col();
        if (p < 0 || (i > 0 && p <= s.pivots_.back()))
            fail(ErrorKind::internal, "adopt_reduced expects rows sorted by pivot");
        s.pivots_.push_back(p);
    }
    s.rows_ = std::move(rows);
    return s;
}

int rank(const SparseMat& m, const Field& field) {
    Eliminator e(m.cols, field, false);
    for (const auto& r : m.rows)
        e.insert(r, {});
    return e.rank();
}

LeftSolver::LeftSolver(const SparseMat& m, const Field& field)
    : field_(field), input_rows_(m.num_rows()) {
    Eliminator e(m.cols, field, true);
    for (int32_t i = 0; i < m.num_rows(); ++i)
        e.insert(m.rows[i], unit_row(i));
    e.finalize();
    space_ = e.space();
    combos_ = e.tracks();
}

std::optional<SparseRow> LeftSolver::solve(const SparseRow& b) const {
    SparseRow coeffs;
    SparseRow residual = space_.reduce(b, field_, &coeffs);
    if (!residual.is_zero())
        return std::nullopt;
    SparseRow x;
    for (const auto& e : coeffs.ents)
        x = row_axpy(x, e.second, combos_[e.first], field_);
    return x;
}

EchelonSpace intersect_spaces(const EchelonSpace& a, const EchelonSpace& b, const Field& field) {
    if (a.cols() != b.cols())
        fail(ErrorKind::validation, "intersection of spaces over different ambient bases");
    // left kernel of the stacked matrix [A; B]: z = (x, y) with xA = -yB,
    // so xA runs over the intersection
    SparseMat stacked;
    stacked.cols = a.cols();
    stacked.rows = a.rows();
    for (const auto& r : b.rows())
        stacked.rows.push_back(r);
    auto null_space = kernel_rows(stacked, field);
    std::vector<SparseRow> inter;
    for (const auto& z : null_space) {
        SparseRow xa;
        for (const auto& e : z.ents) {
            if (e.first < a.dim())
                xa = row_axpy(xa, e.second, a.rows()[e.first], field);
        }
        if (!xa.is_zero())
            inter.push_back(std::move(xa));
    }
    return row_space(inter, a.cols(), field);
}

EchelonSpace sum_spaces(const EchelonSpace& a, const EchelonSpace& b, const Field& field) {
    if (a.cols() != b.cols())
        fail(ErrorKind::validation, "sum of spaces over different ambient bases");
    std::vector<SparseRow> all = a.rows();
    for (const auto& r : b.rows())
        all.push_back(r);
    return row_space(all, a.cols(), field);
}

// ---------------------------------------------------------------------------

namespace {
std::atomic<bool> g_parallel{true};
}

bool parallel_default() { return g_parallel.load(); }
void set_parallel_default(bool on) { g_parallel.store(on); }

void sweep(int lo, int hi, const std::function<void(int)>& fn, bool parallel) {
    if (hi < lo)
        return;
    if (!parallel) {
        for (int j = lo; j <= hi; ++j)
            fn(j);
        return;
    }
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1)
    for (int j = lo; j <= hi; ++j) {
        try {
            fn(j);
        } catch (...) {
#pragma omp critical
            if (!err)
                err = std::current_exception();
        }
    }
    if (err)
        std::rethrow_exception(err);
}

} // namespace koszul
