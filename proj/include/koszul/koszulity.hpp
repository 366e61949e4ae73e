#pragma once

#include "koszul/yoneda.hpp"

namespace koszul {

/// Period-three resolution map: {2md} at n=3m, {2md+1} at n=3m+1,
/// {2md+d, 2md+d+1} at n=3m+2.
std::pair<long, long> delta_bounds(long d, long n);
std::vector<long> delta_set(long d, long n);

enum class PatternKind {
    koszul,
    n_koszul,
    piecewise,
    delta_prime,
    delta_double_prime,
    bi_koszul,
};

struct PatternSpec {
    PatternKind kind = PatternKind::koszul;
    int p = 0; // piecewise period
    int N = 0; // piecewise / N-Koszul jump
    int d = 0; // delta-family parameter

    std::vector<int> degrees(int n) const; // expected support of row n
    std::string name() const;
    bool operator==(const PatternSpec&) const = default;
};

struct PatternVerdict {
    PatternSpec pattern;
    bool matches = false;
    int refuted_at = -1;
    std::vector<int> observed; // offending support when refuted
    std::vector<int> expected;
    std::string note; // set when the pattern could not even be fitted
};

struct ClassificationReport {
    int length = 0;
    int degree_bound = 0;
    int termination_level = 0;
    std::vector<PatternVerdict> verdicts;

    std::vector<PatternSpec> matches() const;
    bool matched(PatternKind kind) const;
    bool matched(PatternKind kind, int d) const;
};

/// Verifies one pattern against all rows in the window. `shift` offsets the
/// expected degrees uniformly (for modules whose natural grading starts
/// above zero).
PatternVerdict classify_against(const BettiTable& table, const PatternSpec& pattern,
                                int shift = 0);

/// Fits parameters from rows 1-2 and verifies every candidate pattern.
ClassificationReport classify(const BettiTable& table);

/// Subset reading of "generated in degrees Δ(n)": every row's support lies
/// inside the resolution map's set (the classifier's equality reading stays
/// separate: a pure resolution passes this but is not *classified*
/// bi-Koszul).
bool within_resolution_map(const BettiTable& table, int d, int shift = 0);

struct ObstructionReport {
    int n = 0;
    int d = 0;
    long obstruction_dim = -1;        // dim E^2_{2nd+d+1}(J·Ω^{3n}(k))
    std::vector<int> syzygy_degrees;  // generator degrees of Ω^2(J·Ω^{3n}(k))
    std::vector<int> expected_degrees; // generator degrees of Ω^{3n+3}(k)
    bool route2_available = false;
    bool strongly_here = false; // obstruction vanishes at this n
    bool routes_agree = true;   // syzygy-degree route gives the same verdict
};

/// The obstruction at one n >= 1. Requires A bi-Koszul(d) in the window,
/// 3n+2 <= L and 2nd+d+1 <= D.
ObstructionReport obstruction(const Resolution& res_k, const GroebnerBasisTruncated& gb, int d,
                              int n);

/// Every n testable inside the window of res_k.
std::vector<ObstructionReport> obstruction_sweep(const Resolution& res_k,
                                                 const GroebnerBasisTruncated& gb, int d);

struct ModulePatternReport {
    BettiTable table;
    PatternVerdict verdict; // against the bi-Koszul(d) resolution map
    bool bi_koszul = false;
};

ModulePatternReport bikoszul_module_check(const Resolution& res_m, int d);

enum class StronglyStatus {
    verified,     // all defining conditions hold in the window
    violated,     // an intersection condition failed at a defining stage
    not_verified, // the diagram construction was obstructed
};

struct StronglyStageReport {
    int stage = 0;              // homological stage n of the tower
    bool defining = false;      // n ≡ 2 (mod 3): the condition in the definition
    bool condition_holds = false;
    bool hypothesis_single_degree = false;
    std::vector<int> s_degrees, t_degrees, q_degrees; // generators of S, T, T/S
};

struct StronglyModuleReport {
    StronglyStatus status = StronglyStatus::not_verified;
    int stage = -1; // stage where the verdict was decided, -1 when verified
    std::vector<StronglyStageReport> stages;
    std::string detail;
};

/// Iterated projective-cover tower for the strongly-bi-Koszul module
/// condition: realizes Ω^n(M) inside Ω^n(M/JM) through a shared chain of
/// covers and tests J·S = J·T ∩ S at stages n ≡ 2 (mod 3).
StronglyModuleReport strongly_module_check(const ModulePresentation& mp,
                                           const GroebnerBasisTruncated& gb, int d, int length,
                                           int degree_bound);

struct DecompositionIdentityReport {
    int n = 0, d = 0;
    long lhs_lower = 0, pure_lower = 0;            // internal degree 2nd+d
    long lhs_upper = 0, pure_upper = 0, jm_term = 0; // internal degree 2nd+d+1
    bool lower_ok = false, upper_ok = false;
};

/// Dimension identity E^{3n+2}_j(M) = (E^{3n+2}(A)E^0(M))_j ⊕ [j = 2nd+d+1]
/// E^{3n+2}_{2nd+d+1}(JM), both sides computed by independent code paths.
DecompositionIdentityReport verify_prop3(const ModulePresentation& mp,
                                         const GroebnerBasisTruncated& gb, int d, int n,
                                         int length, int degree_bound);

} // namespace koszul
