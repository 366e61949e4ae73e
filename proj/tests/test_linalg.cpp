#include <doctest.h>

#include <random>

#include "koszul/linalg.hpp"

using namespace koszul;

namespace {

SparseRow make_row(std::initializer_list<std::pair<int, int>> ents) {
    SparseRow r;
    for (auto [c, v] : ents)
        r.set(c, Scalar(v));
    return r;
}

SparseMat random_matrix(std::mt19937& rng, int rows, int cols, int density_pct) {
    SparseMat m;
    m.cols = cols;
    std::uniform_int_distribution<int> coeff(-4, 4), pct(0, 99);
    for (int i = 0; i < rows; ++i) {
        SparseRow r;
        for (int c = 0; c < cols; ++c)
            if (pct(rng) < density_pct)
                r.set(c, Scalar(coeff(rng)));
        m.rows.push_back(std::move(r));
    }
    return m;
}

} // namespace

TEST_CASE("row space is canonical reduced echelon") {
    Field f{FieldSpec{0}};
    std::vector<SparseRow> rows{make_row({{0, 2}, {1, 4}}), make_row({{0, 1}, {1, 2}, {2, 2}}),
                                make_row({{1, 3}, {2, 1}})};
    EchelonSpace s = row_space(rows, 3, f);
    CHECK(s.dim() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(s.rows()[i].get(s.pivots()[i]) == 1);
        for (int j = 0; j < 3; ++j)
            if (j != i)
                CHECK(s.rows()[j].get(s.pivots()[i]) == 0);
    }
    // shuffled input gives the same canonical form
    std::vector<SparseRow> shuffled{rows[2], rows[0], rows[1]};
    CHECK(row_space(shuffled, 3, f) == s);
}

TEST_CASE("sparse fraction-free and dense elimination agree") {
    std::mt19937 rng(99);
    Field q{FieldSpec{0}};
    Field f5{FieldSpec{5}};
    for (int t = 0; t < 30; ++t) {
        SparseMat m = random_matrix(rng, 3 + t % 5, 4 + t % 6, 55);
        for (const Field& f : {q, f5}) {
            EchelonSpace sparse = row_space(m.rows, m.cols, f, ElimMode::sparse_ff);
            EchelonSpace dense = row_space(m.rows, m.cols, f, ElimMode::dense);
            CHECK(sparse == dense);
        }
    }
}

TEST_CASE("kernel rows annihilate and have full nullity") {
    std::mt19937 rng(1234);
    Field q{FieldSpec{0}};
    for (int t = 0; t < 25; ++t) {
        SparseMat m = random_matrix(rng, 4 + t % 5, 3 + t % 5, 50);
        auto ker = kernel_rows(m, q);
        int r = rank(m, q);
        CHECK(static_cast<int>(ker.size()) + r == m.num_rows());
        for (const auto& k : ker)
            CHECK(row_times(k, m, q).is_zero());
    }
}

TEST_CASE("left solver finds exact witnesses") {
    std::mt19937 rng(555);
    Field q{FieldSpec{0}};
    for (int t = 0; t < 25; ++t) {
        SparseMat m = random_matrix(rng, 4, 5, 60);
        LeftSolver solver(m, q);
        // b in the row space: random combination
        std::uniform_int_distribution<int> coeff(-3, 3);
        SparseRow x0;
        for (int i = 0; i < m.num_rows(); ++i)
            x0.set(i, Scalar(coeff(rng)));
        SparseRow b = row_times(x0, m, q);
        auto x = solver.solve(b);
        REQUIRE(x.has_value());
        CHECK(row_times(*x, m, q) == b);
    }
    SparseMat m;
    m.cols = 2;
    m.rows = {make_row({{0, 1}})};
    LeftSolver solver(m, q);
    CHECK_FALSE(solver.solve(make_row({{1, 1}})).has_value());
}

TEST_CASE("intersection and sum of row spaces") {
    Field q{FieldSpec{0}};
    EchelonSpace a = row_space({make_row({{0, 1}}), make_row({{1, 1}})}, 3, q);
    EchelonSpace b = row_space({make_row({{1, 1}}), make_row({{2, 1}})}, 3, q);
    EchelonSpace i = intersect_spaces(a, b, q);
    CHECK(i.dim() == 1);
    CHECK(i.rows()[0] == make_row({{1, 1}}));
    CHECK(sum_spaces(a, b, q).dim() == 3);
    // idempotence
    CHECK(intersect_spaces(a, a, q) == a);
}

TEST_CASE("GF(p) elimination stays canonical") {
    Field f7{FieldSpec{7}};
    std::vector<SparseRow> rows{make_row({{0, 3}, {1, 5}}), make_row({{0, 10}, {1, 4}})};
    EchelonSpace s = row_space(rows, 2, f7);
    CHECK(s.dim() == 2);
    for (const auto& r : s.rows())
        for (const auto& e : r.ents) {
            CHECK(e.second.get_den() == 1);
            CHECK(e.second >= 0);
            CHECK(e.second < 7);
        }
}

TEST_CASE("parallel sweep matches serial results bit for bit") {
    std::mt19937 rng(31337);
    Field q{FieldSpec{0}};
    std::vector<SparseMat> mats;
    for (int j = 0; j < 12; ++j)
        mats.push_back(random_matrix(rng, 10, 12, 40));
    std::vector<std::vector<SparseRow>> serial(mats.size()), parallel(mats.size());
    sweep(0, static_cast<int>(mats.size()) - 1,
          [&](int j) { serial[j] = kernel_rows(mats[j], q); }, false);
    sweep(0, static_cast<int>(mats.size()) - 1,
          [&](int j) { parallel[j] = kernel_rows(mats[j], q); }, true);
    CHECK(serial == parallel);
}

TEST_CASE("sweep propagates exceptions") {
    CHECK_THROWS_AS(
        sweep(0, 3, [](int j) { if (j == 2) fail(ErrorKind::window, "boom"); }, true), Error);
}
