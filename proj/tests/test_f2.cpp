#include "doctest.h"
#include "motext/f2.hpp"

#include <random>
#include <stdexcept>

using namespace motext::f2;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, size_t r, size_t c, double density = 0.5)
{
    std::bernoulli_distribution bit(density);
    BitMatrix m(c);
    for (size_t i = 0; i < r; ++i) {
        BitVector v(c);
        for (size_t j = 0; j < c; ++j)
            if (bit(rng))
                v.set(j);
        m.push_row(v);
    }
    return m;
}

}  // namespace

TEST_SUITE("f2")
{
    TEST_CASE("bitvector basics")
    {
        auto v = BitVector::from_string("0110");
        CHECK(v.size() == 4);
        CHECK(v.count() == 2);
        CHECK(v.leading() == 1);
        CHECK(v.to_string() == "0110");
        v.resize(2);
        CHECK(v.to_string() == "01");
        v.resize(130);
        CHECK(v.count() == 1);
        v.set(129);
        CHECK(v.next_set(2) == 129);
        CHECK(BitVector(70).is_zero());
    }

    TEST_CASE("row_reduce examples")
    {
        auto e = row_reduce(BitMatrix::from_strings({"110", "011"}));
        CHECK(e.basis == BitMatrix::from_strings({"101", "011"}));
        CHECK(e.pivots == std::vector<size_t>{0, 1});

        e = row_reduce(BitMatrix::from_strings({"11", "11"}));
        CHECK(e.basis == BitMatrix::from_strings({"11"}));
        CHECK(e.pivots == std::vector<size_t>{0});

        e = row_reduce(BitMatrix(5));
        CHECK(e.rank() == 0);
    }

    TEST_CASE("kernel_basis examples")
    {
        auto k = kernel_basis(BitMatrix::from_strings({"11", "11"}));
        REQUIRE(k.size() == 1);
        CHECK(k[0].to_string() == "11");
        CHECK(kernel_basis(BitMatrix::identity(3)).empty());
        k = kernel_basis(BitMatrix::zero(2, 2));
        REQUIRE(k.size() == 2);
        CHECK(k[0].to_string() == "10");
        CHECK(k[1].to_string() == "01");
    }

    TEST_CASE("solve examples")
    {
        auto x = solve(BitMatrix::identity(2), BitVector::from_string("10"));
        REQUIRE(x);
        CHECK(x->to_string() == "10");
        x = solve(BitMatrix::from_strings({"11"}), BitVector::from_string("11"));
        REQUIRE(x);
        CHECK(x->to_string() == "1");
        CHECK_FALSE(solve(BitMatrix::from_strings({"11"}), BitVector::from_string("10")));
    }

    TEST_CASE("complement_basis examples")
    {
        auto full = row_reduce(BitMatrix::identity(2));
        auto sub = row_reduce(BitMatrix::from_strings({"10"}));
        auto c = complement_basis(sub, full);
        REQUIRE(c.size() == 1);
        CHECK(c[0].to_string() == "01");
        CHECK(complement_basis(full, full).empty());
        auto diag = row_reduce(BitMatrix::from_strings({"11"}));
        c = complement_basis(row_reduce(BitMatrix(2)), diag);
        REQUIRE(c.size() == 1);
        CHECK(c[0].to_string() == "11");
        CHECK_THROWS_AS(complement_basis(full, diag), std::invalid_argument);
    }

    TEST_CASE("random properties")
    {
        std::mt19937_64 rng(12345);
        for (int trial = 0; trial < 200; ++trial) {
            size_t r = rng() % 40, c = 1 + rng() % 150;
            auto m = random_matrix(rng, r, c, trial % 3 == 0 ? 0.1 : 0.5);
            auto e = row_reduce(m);
            // idempotence
            auto e2 = row_reduce(e.basis);
            CHECK(e2.basis == e.basis);
            CHECK(e2.pivots == e.pivots);
            // rank-nullity for the column action
            auto k = kernel_basis(m);
            CHECK(rank(m) + k.size() == c);
            for (const auto& v : k)
                CHECK(m.right_apply(v).is_zero());
            // solve soundness
            BitVector x(r);
            for (size_t i = 0; i < r; ++i)
                if (rng() & 1)
                    x.set(i);
            auto target = m.left_apply(x);
            auto sol = solve(m, target);
            REQUIRE(sol);
            CHECK(m.left_apply(*sol) == target);
            // eliminator agrees with row_reduce
            Eliminator el(c, r);
            size_t zero_rows = 0;
            for (const auto& row : m.rows()) {
                auto combo = el.insert(row);
                if (combo) {
                    ++zero_rows;
                    BitVector check(c);
                    for (size_t i : combo->support())
                        check ^= m.row(i);
                    CHECK(check.is_zero());
                }
            }
            CHECK(el.rank() == e.rank());
            CHECK(zero_rows == r - e.rank());
            auto es = el.solve(target);
            REQUIRE(es);
            CHECK(m.left_apply(*es) == target);
        }
    }

    TEST_CASE("determinism")
    {
        std::mt19937_64 a(7), b(7);
        auto m1 = random_matrix(a, 30, 90);
        auto m2 = random_matrix(b, 30, 90);
        CHECK(row_reduce(m1).basis == row_reduce(m2).basis);
        CHECK(kernel_basis(m1) == kernel_basis(m2));
    }
}
