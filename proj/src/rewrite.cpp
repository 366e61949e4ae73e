#include "koszul/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace koszul {

namespace {

bool matches_at(const Word& w, const Word& lead, size_t pos) {
    if (pos + lead.letters.size() > w.letters.size())
        return false;
    for (size_t i = 0; i < lead.letters.size(); ++i)
        if (w.letters[pos + i] != lead.letters[i])
            return false;
    return true;
}

bool is_factor(const Word& lead, const Word& w) {
    if (lead.letters.size() > w.letters.size())
        return false;
    for (size_t pos = 0; pos + lead.letters.size() <= w.letters.size(); ++pos)
        if (matches_at(w, lead, pos))
            return true;
    return false;
}

Word subword(const Word& w, size_t from, size_t len, const AlgebraPresentation& a) {
    Word s;
    if (len == 0) {
        s.vtx = from < w.letters.size() ? a.gens.source[w.letters[from]]
                                        : a.target_of(w);
        return s;
    }
    s.letters.assign(w.letters.begin() + from, w.letters.begin() + from + len);
    return s;
}

} // namespace

int GroebnerBasisTruncated::find_reduction(const Word& w, int* rule_out) const {
    for (size_t pos = 0; pos < w.letters.size(); ++pos) {
        for (size_t r = 0; r < rules_.size(); ++r) {
            if (matches_at(w, rules_[r].lead, pos)) {
                *rule_out = static_cast<int>(r);
                return static_cast<int>(pos);
            }
        }
    }
    return -1;
}

bool GroebnerBasisTruncated::is_normal(const Word& w) const {
    int r;
    return find_reduction(w, &r) < 0;
}

Polynomial GroebnerBasisTruncated::normal_form(const Polynomial& p) const {
    if (p.degree() > certified_degree_)
        fail(ErrorKind::window, "normal form requested above the certified degree");
    Polynomial cur = p;
    while (true) {
        // the order-largest reducible term, reduced at its leftmost position
        int term_idx = -1, rule = -1, pos = -1;
        for (size_t i = 0; i < cur.terms().size(); ++i) {
            int r;
            int q = find_reduction(cur.terms()[i].word, &r);
            if (q >= 0) {
                term_idx = static_cast<int>(i);
                rule = r;
                pos = q;
                break;
            }
        }
        if (term_idx < 0)
            return cur;
        const Term& t = cur.terms()[term_idx];
        const RewriteRule& rr = rules_[rule];
        Word left = subword(t.word, 0, pos, algebra_);
        Word right = subword(t.word, pos + rr.lead.letters.size(),
                             t.word.letters.size() - pos - rr.lead.letters.size(), algebra_);
        std::vector<Term> terms;
        for (const auto& u : cur.terms())
            if (!(u.word == t.word))
                terms.push_back(u);
        for (const auto& u : rr.remainder.terms()) {
            auto lw = algebra_.concat(left, u.word);
            if (!lw)
                continue;
            auto full = algebra_.concat(*lw, right);
            if (!full)
                continue;
            terms.push_back({*full, field_.mul(t.coeff, u.coeff)});
        }
        cur = Polynomial::from_terms(std::move(terms), field_);
    }
}

const std::vector<Word>& GroebnerBasisTruncated::monomial_basis(int degree) const {
    if (degree < 0 || degree > certified_degree_)
        fail(ErrorKind::window, "degree " + std::to_string(degree) +
                                    " outside certified window [0, " +
                                    std::to_string(certified_degree_) + "]");
    return basis_[degree];
}

int GroebnerBasisTruncated::hilbert(int degree) const {
    return static_cast<int>(monomial_basis(degree).size());
}

Polynomial GroebnerBasisTruncated::multiply(const Polynomial& p, const Polynomial& q) const {
    if (p.is_zero() || q.is_zero())
        return Polynomial::zero();
    if (p.degree() + q.degree() > certified_degree_)
        fail(ErrorKind::window, "product degree exceeds the certified window");
    std::vector<Term> terms;
    for (const auto& s : p.terms())
        for (const auto& t : q.terms()) {
            auto w = algebra_.concat(s.word, t.word);
            if (w)
                terms.push_back({*w, field_.mul(s.coeff, t.coeff)});
        }
    return normal_form(Polynomial::from_terms(std::move(terms), field_));
}

void GroebnerBasisTruncated::build_bases() {
    basis_.assign(certified_degree_ + 1, {});
    for (int v = algebra_.vertices - 1; v >= 0; --v)
        basis_[0].push_back(empty_word(v));
    for (int j = 1; j <= certified_degree_; ++j) {
        for (const Word& w : basis_[j - 1]) {
            int tv = algebra_.target_of(w);
            for (int g = 0; g < algebra_.num_gens(); ++g) {
                if (algebra_.gens.source[g] != tv)
                    continue;
                Word cand = w;
                cand.letters.push_back(g);
                // w is already normal, so only suffixes ending at the new
                // letter can introduce a leading word
                bool reducible = false;
                for (const auto& r : rules_) {
                    size_t len = r.lead.letters.size();
                    if (len <= cand.letters.size() &&
                        matches_at(cand, r.lead, cand.letters.size() - len)) {
                        reducible = true;
                        break;
                    }
                }
                if (!reducible)
                    basis_[j].push_back(std::move(cand));
            }
        }
        std::sort(basis_[j].begin(), basis_[j].end(),
                  [](const Word& a, const Word& b) { return word_cmp(a, b) > 0; });
    }
}

GroebnerBasisTruncated complete(const AlgebraPresentation& algebra, int degree_bound,
                                const CompletionOptions& opts) {
    GroebnerBasisTruncated gb;
    gb.algebra_ = algebra;
    gb.field_ = Field(algebra.field);
    gb.certified_degree_ = degree_bound;
    if (degree_bound < algebra.max_relation_degree())
        fail(ErrorKind::window, "degree bound below the maximal relation degree");

    // pending homogeneous polynomials, bucketed by degree, FIFO within each
    std::map<int, std::deque<Polynomial>> pending;
    for (const auto& r : algebra.relations)
        pending[r.degree()].push_back(r);

    auto queue_overlaps = [&](size_t ri, size_t rj) {
        const Word& u = gb.rules_[ri].lead;
        const Word& v = gb.rules_[rj].lead;
        size_t lu = u.letters.size(), lv = v.letters.size();
        // proper overlaps: a nonempty proper suffix of u equals a prefix of v
        for (size_t len = 1; len < std::min(lu, lv); ++len) {
            bool ok = true;
            for (size_t i = 0; i < len; ++i)
                if (u.letters[lu - len + i] != v.letters[i]) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            int total = static_cast<int>(lu + lv - len);
            if (total > degree_bound)
                continue;
            Word a = subword(u, 0, lu - len, algebra);
            Word b = subword(v, len, lv - len, algebra);
            // S-polynomial of the ambiguity a·(overlap)·b = u·b = a·v
            std::vector<Term> terms;
            for (const auto& t : gb.rules_[ri].remainder.terms()) {
                auto w = algebra.concat(t.word, b);
                if (w)
                    terms.push_back({*w, t.coeff});
            }
            for (const auto& t : gb.rules_[rj].remainder.terms()) {
                auto w = algebra.concat(a, t.word);
                if (w)
                    terms.push_back({*w, gb.field_.neg(t.coeff)});
            }
            Polynomial s = Polynomial::from_terms(std::move(terms), gb.field_);
            if (!s.is_zero())
                pending[total].push_back(std::move(s));
        }
    };

    while (!pending.empty()) {
        auto it = pending.begin();
        if (it->second.empty()) {
            pending.erase(it);
            continue;
        }
        Polynomial p = std::move(it->second.front());
        it->second.pop_front();

        p = gb.normal_form(p);
        if (p.is_zero())
            continue;
        if (static_cast<int>(gb.rules_.size()) >= opts.max_rules)
            fail(ErrorKind::resource, "rewrite rule cap exceeded (" +
                                          std::to_string(opts.max_rules) + ")");
        Polynomial monic = p.scaled(gb.field_.inv(p.leading().coeff), gb.field_);
        RewriteRule rule;
        rule.lead = monic.leading().word;
        rule.remainder =
            Polynomial::monomial(rule.lead, 1).minus(monic, gb.field_);
        // homogeneous degree-ascending processing: no existing lead can
        // contain the new one as a proper factor
        for (const auto& r : gb.rules_)
            if (is_factor(rule.lead, r.lead))
                fail(ErrorKind::internal, "rule leads became divisible");
        gb.rules_.push_back(std::move(rule));
        size_t n = gb.rules_.size() - 1;
        for (size_t i = 0; i < gb.rules_.size(); ++i) {
            queue_overlaps(i, n);
            if (i != n)
                queue_overlaps(n, i);
        }
    }

    gb.build_bases();
    return gb;
}

} // namespace koszul
