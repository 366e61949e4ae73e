#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

/// Sparse row vector: (column, coefficient) pairs sorted by column, no zeros.
struct SparseRow {
    std::vector<std::pair<int32_t, Scalar>> ents;

    bool is_zero() const { return ents.empty(); }
    Scalar get(int32_t col) const;
    void set(int32_t col, const Scalar& v);
    int32_t leading_col() const { return ents.empty() ? -1 : ents.front().first; }
    bool operator==(const SparseRow&) const = default;
};

SparseRow row_axpy(const SparseRow& x, const Scalar& c, const SparseRow& y, const Field& field);
SparseRow row_scaled(const SparseRow& x, const Scalar& c, const Field& field);
SparseRow unit_row(int32_t col);

struct SparseMat {
    int32_t cols = 0;
    std::vector<SparseRow> rows;

    int32_t num_rows() const { return static_cast<int32_t>(rows.size()); }
};

/// Right multiplication of a coordinate row by a matrix: (x·M).
SparseRow row_times(const SparseRow& x, const SparseMat& m, const Field& field);

/// Canonical reduced row echelon basis of a row space: pivot entries 1,
/// pivot columns strictly increasing, pivots cleared in all other rows.
/// Uniqueness of this form is what makes every downstream output
/// deterministic.
class EchelonSpace {
  public:
    EchelonSpace() = default;
    explicit EchelonSpace(int32_t cols) : cols_(cols) {}

    int32_t cols() const { return cols_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseRow>& rows() const { return rows_; }
    const std::vector<int32_t>& pivots() const { return pivots_; }

    /// Residual of v after clearing all pivot columns. When coeffs is given,
    /// it receives the basis-row coefficients used, so v = coeffs·rows + residual.
    SparseRow reduce(const SparseRow& v, const Field& field, SparseRow* coeffs = nullptr) const;
    bool contains(const SparseRow& v, const Field& field) const;

    bool operator==(const EchelonSpace&) const = default;

    /// Adopts rows that are already in canonical reduced form (sorted by
    /// pivot, pivot coefficient 1, pivots cleared elsewhere).
    static EchelonSpace adopt_reduced(std::vector<SparseRow> rows, int32_t cols);

    friend class Eliminator;

  private:
    int32_t cols_ = 0;
    std::vector<SparseRow> rows_;
    std::vector<int32_t> pivots_;
};

enum class ElimMode { automatic, sparse_ff, dense };

/// Canonical row space of a list of rows (reduced echelon form).
EchelonSpace row_space(const std::vector<SparseRow>& rows, int32_t cols, const Field& field,
                       ElimMode mode = ElimMode::automatic);

/// Canonical basis of the left kernel {x : x·M = 0}.
std::vector<SparseRow> kernel_rows(const SparseMat& m, const Field& field,
                                   ElimMode mode = ElimMode::automatic);

int rank(const SparseMat& m, const Field& field);

/// Solves x·M = b for one x; deterministic choice via the echelon section.
class LeftSolver {
  public:
    LeftSolver() = default;
    LeftSolver(const SparseMat& m, const Field& field);
    std::optional<SparseRow> solve(const SparseRow& b) const;

  private:
    Field field_;
    EchelonSpace space_;
    std::vector<SparseRow> combos_; // row i of space_ as a combination of inputs
    int32_t input_rows_ = 0;
};

/// Intersection of two row spaces over the same column set.
EchelonSpace intersect_spaces(const EchelonSpace& a, const EchelonSpace& b, const Field& field);

/// Sum of row spaces.
EchelonSpace sum_spaces(const EchelonSpace& a, const EchelonSpace& b, const Field& field);

// ---------------------------------------------------------------------------
// Degreewise sweep: runs fn(j) for j in [lo, hi]. The work items must be
// independent; with parallel=true they are distributed over OpenMP threads
// and the results are required to be identical to the serial order.
void sweep(int lo, int hi, const std::function<void(int)>& fn, bool parallel);

bool parallel_default();
void set_parallel_default(bool on);

} // namespace koszul
