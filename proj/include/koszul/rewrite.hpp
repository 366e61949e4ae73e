#pragma once

#include <vector>

#include "koszul/presentation.hpp"

namespace koszul {

struct RewriteRule {
    Word lead;            // monic leading word
    Polynomial remainder; // same degree, strictly smaller in the order
};

struct CompletionOptions {
    int max_rules = 20000;
};

/// Rewriting system for the relation ideal, certified confluent for all
/// overlap ambiguities of total degree <= certified_degree(). Immutable once
/// built; safe to query from many threads.
class GroebnerBasisTruncated {
  public:
    const AlgebraPresentation& algebra() const { return algebra_; }
    const Field& field() const { return field_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    int certified_degree() const { return certified_degree_; }

    bool is_normal(const Word& w) const;
    Polynomial normal_form(const Polynomial& p) const;

    /// Irreducible words of one internal degree, listed descending in the
    /// monomial order.
    const std::vector<Word>& monomial_basis(int degree) const;
    int hilbert(int degree) const;

    Polynomial multiply(const Polynomial& p, const Polynomial& q) const;

    friend GroebnerBasisTruncated complete(const AlgebraPresentation&, int,
                                           const CompletionOptions&);

  private:
    // returns -1 when w is irreducible, else the leftmost reducible position
    // (with the matching rule in *rule_out)
    int find_reduction(const Word& w, int* rule_out) const;
    void build_bases();

    AlgebraPresentation algebra_;
    Field field_;
    std::vector<RewriteRule> rules_;
    int certified_degree_ = 0;
    std::vector<std::vector<Word>> basis_; // per degree 0..D
};

GroebnerBasisTruncated complete(const AlgebraPresentation& algebra, int degree_bound,
                                const CompletionOptions& opts = {});

} // namespace koszul
