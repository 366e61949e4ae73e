#include <doctest.h>

#include <random>

#include "koszul/decomposition.hpp"

using namespace koszul;

namespace {

AlgebraPresentation example_algebra() {
    return parse_algebra("field Q; gens x,y,z,w; rel y*x; rel z*z*y; rel w*z");
}

Polynomial mono(std::initializer_list<int> letters) {
    Word w;
    for (int l : letters)
        w.letters.push_back(l);
    return Polynomial::monomial(w, 1);
}

GradedMatrix make_matrix(std::vector<int> src, std::vector<int> tgt,
                         std::vector<std::vector<Polynomial>> entries) {
    GradedMatrix f = GradedMatrix::zero(GradedFreeModule::make(std::move(src)),
                                        GradedFreeModule::make(std::move(tgt)));
    f.entries = std::move(entries);
    return f;
}

} // namespace

TEST_CASE("matrix representation canonicalizes and checks the degree law") {
    auto gb = complete(example_algebra(), 8);
    Polynomial zero;

    // rows (y, 0), (0, z^2) with degrees (2,3) over targets (1,1)
    GradedMatrix m2 = make_matrix({2, 3}, {1, 1}, {{mono({1}), zero}, {zero, mono({2, 2})}});
    GradedMatrix canon = matrix_representation(m2, gb);
    CHECK(canon.entries[0][0] == mono({1}));
    CHECK(canon.entries[1][1] == mono({2, 2}));

    GradedMatrix m4 = make_matrix({5}, {4, 4}, {{mono({3}), zero}});
    CHECK_NOTHROW(matrix_representation(m4, gb));

    // a map into strictly higher degrees must be zero
    GradedMatrix updeg = make_matrix({1}, {2}, {{zero}});
    CHECK_NOTHROW(matrix_representation(updeg, gb));
    GradedMatrix bad = make_matrix({2}, {1}, {{mono({1, 1})}}); // degree 2 entry, law wants 1
    CHECK_THROWS_AS(matrix_representation(bad, gb), Error);
}

TEST_CASE("admissibility certificates") {
    auto gb = complete(example_algebra(), 8);
    Polynomial zero;

    // U = 0 is admissible with zero witnesses
    GradedMatrix fp = make_matrix({2, 3}, {1, 1}, {{mono({1}), zero}, {zero, mono({2, 2})}});
    GradedMatrix u0 = make_matrix({3}, {1, 1}, {{zero, zero}});
    AdmissibilityCertificate c0 = is_admissible(fp, u0, gb);
    CHECK(c0.admissible);
    REQUIRE(c0.witnesses.size() == 1);
    for (const auto& e : *c0.witnesses[0])
        CHECK(e.is_zero());

    // x·x lies in the row module of (x) over the free algebra on x
    auto ax = parse_algebra("field Q; gens x");
    auto gbx = complete(ax, 6);
    GradedMatrix fpx = make_matrix({1}, {0}, {{mono({0})}});
    GradedMatrix ux = make_matrix({2}, {0}, {{mono({0, 0})}});
    AdmissibilityCertificate cx = is_admissible(fpx, ux, gbx);
    CHECK(cx.admissible);
    CHECK((*cx.witnesses[0])[0] == mono({0}));

    // y does not lie in A·x over the free algebra on x, y
    auto axy = parse_algebra("field Q; gens x,y");
    auto gbxy = complete(axy, 6);
    GradedMatrix fpy = make_matrix({1}, {0}, {{mono({0})}});
    GradedMatrix uy = make_matrix({1}, {0}, {{mono({1})}});
    AdmissibilityCertificate cy = is_admissible(fpy, uy, gbxy);
    CHECK_FALSE(cy.admissible);
    CHECK(cy.failing_row == 0);
    CHECK(cy.failing_degree == 1);
    // counterexample re-verifies by rank: appending the row grows the slice
    SparseMat base = slice_matrix(fpy, 1, gbxy);
    SparseMat grown = base;
    {
        SliceBasis tb(uy.target, 1, gbxy);
        SparseRow r;
        r.set(tb.index_of(0, single_word(1)), Scalar(1));
        grown.rows.push_back(r);
    }
    CHECK(rank(grown, gbxy.field()) == rank(base, gbxy.field()) + 1);
}

TEST_CASE("split of the paper triple is block diagonal and exact") {
    auto a = example_algebra();
    auto gb = complete(a, 8);
    Resolution res = resolve_module(parse_module("free 0,0; rel x,0; rel 0,y", a), gb, 5, 8);
    // triple Q_3 -> Q_2 -> Q_1 with the diagonal partition
    SplitTriple st = split_triple(res.diff(3), res.diff(2), {0}, {0}, {0}, gb);
    CHECK(st.ok);
    CHECK(st.composite_zero);
    for (const auto& row : st.u.entries)
        for (const auto& e : row)
            CHECK(e.is_zero()); // λ = 0
    for (int j = 0; j <= 8; ++j) {
        CHECK(st.prime_exact[j]);
        CHECK(st.doubleprime_exact[j]);
    }

    // full prime part: the doubleprime row is trivially exact
    SplitTriple full = split_triple(res.diff(3), res.diff(2), {0, 1}, {0, 1}, {0, 1}, gb);
    CHECK(full.ok);
}

TEST_CASE("randomized admissible gluing recovers exactness") {
    // build a block-triangular pair from two independent resolutions glued
    // with U = X'·F', then split and verify
    auto a = example_algebra();
    auto gb = complete(a, 8);
    Resolution rx = resolve_module(parse_module("free 0; rel x", a), gb, 4, 8);
    Resolution ry = resolve_module(parse_module("free 0; rel y", a), gb, 4, 8);
    std::mt19937 rng(2718);

    for (int trial = 0; trial < 4; ++trial) {
        // levels 2 -> 1 -> 0 of the direct sum, coupled below the diagonal
        auto glue = [&](const GradedMatrix& top, const GradedMatrix& bot,
                        const Polynomial& x1) {
            GradedFreeModule src, tgt;
            for (int i = 0; i < top.source.count(); ++i) {
                src.degrees.push_back(top.source.degrees[i]);
                src.vertices.push_back(0);
            }
            for (int i = 0; i < bot.source.count(); ++i) {
                src.degrees.push_back(bot.source.degrees[i]);
                src.vertices.push_back(0);
            }
            for (int i = 0; i < top.target.count(); ++i) {
                tgt.degrees.push_back(top.target.degrees[i]);
                tgt.vertices.push_back(0);
            }
            for (int i = 0; i < bot.target.count(); ++i) {
                tgt.degrees.push_back(bot.target.degrees[i]);
                tgt.vertices.push_back(0);
            }
            GradedMatrix f = GradedMatrix::zero(src, tgt);
            int pr = top.source.count(), pc = top.target.count();
            for (int i = 0; i < pr; ++i)
                for (int j = 0; j < pc; ++j)
                    f.entries[i][j] = top.entries[i][j];
            for (int i = 0; i < bot.source.count(); ++i)
                for (int j = 0; j < bot.target.count(); ++j)
                    f.entries[pr + i][pc + j] = bot.entries[i][j];
            // U = X'·F' with X' = (x1): stays in the row module by design
            for (int j = 0; j < pc; ++j)
                f.entries[pr][j] = gb.multiply(x1, top.entries[0][j]);
            return f;
        };
        Polynomial x1 = Polynomial::monomial(single_word(trial % 4), 1);
        // degree bookkeeping: entry degree must match row (bot row deg) - col
        // (top col deg); use x, y, z, w of degree 1 against matching levels
        int mdeg = ry.diff(2).source.degrees[0] - rx.diff(2).source.degrees[0];
        if (mdeg < 1)
            continue;
        Polynomial coupling = Polynomial::zero();
        for (const Word& w : gb.monomial_basis(mdeg)) {
            coupling = Polynomial::monomial(w, 1);
            break;
        }
        GradedMatrix f = glue(rx.diff(2), ry.diff(2), coupling);
        GradedMatrix g = glue(rx.diff(1), ry.diff(1), Polynomial::zero());
        // recompute the coupling of g so that f∘g = 0 still holds: keep U_g = 0
        std::vector<int> pm, pn, pp;
        for (int i = 0; i < rx.diff(2).source.count(); ++i)
            pm.push_back(i);
        for (int i = 0; i < rx.diff(1).source.count(); ++i)
            pn.push_back(i);
        for (int i = 0; i < rx.diff(1).target.count(); ++i)
            pp.push_back(i);
        GradedMatrix fg = compose(f, g, gb);
        bool zero = true;
        for (const auto& row : fg.entries)
            for (const auto& e : row)
                if (!e.is_zero())
                    zero = false;
        if (!zero)
            continue; // coupling broke the complex; skip this draw
        SplitTriple st = split_triple(f, g, pm, pn, pp, gb);
        CHECK(st.ok);
    }
    (void)rng;
}

TEST_CASE("golden decomposition of the paper module") {
    auto a = example_algebra();
    auto gb = complete(a, 8);
    Resolution res = resolve_module(parse_module("free 0,0; rel x,0; rel 0,y", a), gb, 5, 8);

    PartitionSearch found = search_partition(res, gb, 2);
    REQUIRE(found.partition.has_value());
    // the paper matrices are block diagonal: the search finds the diagonal
    for (int m = 0; m <= 4; ++m)
        CHECK(found.partition->prime[m] == std::vector<int>{0});

    DecompositionResult dec = decompose(res, gb, 2);
    REQUIRE(dec.ok);
    CHECK(dec.all_checks_ok());

    std::vector<int> prime_seq, dp_seq;
    for (const auto& t : dec.prime.terms)
        for (int d : t.degrees)
            prime_seq.push_back(d);
    for (const auto& t : dec.doubleprime.terms)
        for (int d : t.degrees)
            dp_seq.push_back(d);
    CHECK(prime_seq == std::vector<int>{0, 1, 2, 4, 5});
    CHECK(dp_seq == std::vector<int>{0, 1, 3, 4});

    // edge modules: single relations (x) and (y)
    REQUIRE(dec.m_prime.rows.size() == 1);
    REQUIRE(dec.m_doubleprime.rows.size() == 1);
    CHECK(dec.m_prime.rows[0][0] == Polynomial::monomial(single_word(0), 1));
    CHECK(dec.m_doubleprime.rows[0][0] == Polynomial::monomial(single_word(1), 1));

    // round trip: re-resolving the emitted presentations reproduces the
    // split complexes
    Resolution rp = resolve_module(dec.m_prime, gb, 5, 8);
    Resolution rd = resolve_module(dec.m_doubleprime, gb, 5, 8);
    CHECK(betti(rp) == betti_of_terms(dec.prime.terms, 5, 8));
    CHECK(betti(rd) == betti_of_terms(dec.doubleprime.terms, 5, 8));
}

TEST_CASE("pure resolutions decompose trivially") {
    auto a = example_algebra();
    auto gb = complete(a, 8);
    Resolution res = resolve_module(parse_module("free 0; rel x", a), gb, 5, 8);
    DecompositionResult dec = decompose(res, gb, 2);
    REQUIRE(dec.ok);
    CHECK(dec.all_checks_ok());
    for (const auto& t : dec.doubleprime.terms)
        CHECK(t.empty());
    CHECK(dec.m_doubleprime.num_gens() == 0);
}

TEST_CASE("shuffled direct sum is recovered by the search") {
    auto a = example_algebra();
    auto gb = complete(a, 8);
    // M = A/(x) ⊕ A/(y) presented with interleaved generators
    Resolution res = resolve_module(parse_module("free 0,0; rel 0,x; rel y,0", a), gb, 5, 8);
    DecompositionResult dec = decompose(res, gb, 2);
    REQUIRE(dec.ok);
    CHECK(dec.all_checks_ok());
    BettiTable sum = betti(res);
    BettiTable tp = betti_of_terms(dec.prime.terms, 5, 8);
    BettiTable td = betti_of_terms(dec.doubleprime.terms, 5, 8);
    for (const auto& [key, count] : sum.entries)
        CHECK(tp.beta(key.first, key.second) + td.beta(key.first, key.second) == count);
}

TEST_CASE("inadmissible couplings are reported") {
    auto a = example_algebra();
    auto gb = complete(a, 8);
    Resolution res = resolve_module(parse_module("free 0,0; rel x,0; rel 0,y", a), gb, 5, 8);
    // a partition violating the pinned level-2 choice is rejected
    BlockPartition bad;
    bad.prime = {{0}, {0}, {1}, {0}, {0}, {}};
    DecompositionResult dec = decompose(res, gb, 2, bad);
    CHECK_FALSE(dec.ok);
    CHECK(dec.failure.find("level 2") != std::string::npos);
}

TEST_CASE("search cap raises a resource error") {
    auto a = example_algebra();
    auto gb = complete(a, 8);
    Resolution res = resolve_module(parse_module("free 0,0; rel x,0; rel 0,y", a), gb, 5, 8);
    CHECK_THROWS_AS(search_partition(res, gb, 2, 1), Error);
}
