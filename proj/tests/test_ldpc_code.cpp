#include <cstdint>
#include <set>
#include <sstream>

#include "doctest.h"
#include "isi2d/code_construct.hpp"
#include "isi2d/coset_code.hpp"
#include "isi2d/parity_check.hpp"
#include "isi2d/rng.hpp"

using namespace isi2d;

namespace {

std::vector<std::uint8_t> random_bits(int n, Rng& rng) {
    std::vector<std::uint8_t> v(n);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng() & 1u);
    return v;
}

// Dense GF(2) multiply, independent of the sparse syndrome path.
std::vector<std::uint8_t> dense_syndrome(const ParityCheckMatrix& pcm,
                                         const std::vector<std::uint8_t>& s) {
    std::vector<std::vector<std::uint8_t>> dense(pcm.rows(),
                                                 std::vector<std::uint8_t>(pcm.cols(), 0));
    for (int m = 0; m < pcm.rows(); ++m)
        for (int n : pcm.row(m)) dense[m][n] = 1;
    std::vector<std::uint8_t> d(pcm.rows(), 0);
    for (int m = 0; m < pcm.rows(); ++m) {
        int acc = 0;
        for (int n = 0; n < pcm.cols(); ++n) acc += dense[m][n] * s[n];
        d[m] = static_cast<std::uint8_t>(acc & 1);
    }
    return d;
}

bool overlap_at_most_one(const ParityCheckMatrix& pcm) {
    for (int a = 0; a < pcm.cols(); ++a)
        for (int b = a + 1; b < pcm.cols(); ++b) {
            const auto& ca = pcm.col(a);
            const auto& cb = pcm.col(b);
            int shared = 0;
            for (int x : ca)
                for (int y : cb)
                    if (x == y) ++shared;
            if (shared > 1) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("degree distribution validation") {
    CHECK_NOTHROW(DegreeDistribution::regular(3, 6));
    DegreeDistribution bad;
    bad.lambda = {{3, 0.5}};
    bad.rho = {{6, 1.0}};
    bad.d_v_max = 3;
    bad.d_c_max = 6;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.lambda = {{3, 1.0}};
    bad.rho = {{1, 1.0}};
    bad.d_c_max = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK(DegreeDistribution::regular(3, 6).rate() == doctest::Approx(0.5));
    CHECK(DegreeDistribution::regular(4, 36).rate() == doctest::Approx(8.0 / 9.0));
}

TEST_CASE("regular construction: (2000,3,6)") {
    const auto pcm = construct_regular_code(2000, 3, 6, 6, 7);
    CHECK(pcm.rows() == 1000);
    CHECK(pcm.cols() == 2000);
    CHECK(pcm.edge_count() == 6000);
    CHECK(pcm.is_regular(3, 6));
    CHECK(pcm.has_no_4cycle());
    // deterministic for a fixed seed
    const auto again = construct_regular_code(2000, 3, 6, 6, 7);
    CHECK(pcm == again);
    const auto other = construct_regular_code(2000, 3, 6, 6, 8);
    CHECK_FALSE(pcm == other);
}

TEST_CASE("regular construction: smallest instance and (4500,4,36)") {
    const auto tiny = construct_regular_code(6, 1, 3, 4, 1);
    CHECK(tiny.rows() == 2);
    for (int j = 0; j < 6; ++j) CHECK(tiny.col_weight(j) == 1);

    const auto big = construct_regular_code(4500, 4, 36, 6, 1);
    CHECK(big.rows() == 500);
    CHECK(big.cols() == 4500);
    CHECK(big.edge_count() == 18000);
    CHECK(big.is_regular(4, 36));
    CHECK(big.has_no_4cycle());
}

TEST_CASE("regular construction: errors") {
    CHECK_THROWS_AS(construct_regular_code(2001, 3, 6, 6, 1), std::invalid_argument);
    CHECK_THROWS_AS(construct_regular_code(2000, 3, 6, 5, 1), std::invalid_argument);
    // Infeasible 4-cycle-free demand: more column pairs than row pairs available.
    CHECK_THROWS_AS(construct_regular_code(12, 3, 6, 6, 1), std::runtime_error);
}

TEST_CASE("no-4-cycle invariant via independent pairwise overlap") {
    const auto pcm = construct_regular_code(600, 3, 6, 6, 3);
    CHECK(overlap_at_most_one(pcm));
}

TEST_CASE("generator: systematic identity-block case") {
    // H = [I_4 | B]: deriving a generator must give H G^T = 0 and K = 4.
    ParityCheckMatrix pcm(4, 8);
    for (int i = 0; i < 4; ++i) pcm.add_entry(i, i);
    pcm.add_entry(0, 4);
    pcm.add_entry(0, 5);
    pcm.add_entry(1, 5);
    pcm.add_entry(1, 6);
    pcm.add_entry(2, 6);
    pcm.add_entry(2, 7);
    pcm.add_entry(3, 7);
    pcm.add_entry(3, 4);
    pcm.finalize();
    const auto gen = derive_generator(pcm);
    CHECK(gen.k() == 4);
    for (int i = 0; i < gen.k(); ++i) {
        std::vector<std::uint8_t> row(8);
        for (int j = 0; j < 8; ++j) row[j] = gen.get(i, j);
        const auto d = pcm.syndrome(row);
        for (auto bit : d) CHECK(bit == 0);
    }
}

TEST_CASE("generator: random code, 100 random info words") {
    const auto pcm = construct_regular_code(2000, 3, 6, 6, 7);
    const auto code = CosetLdpcCode::make(pcm);
    Rng rng = make_rng(42, 1);
    for (int trial = 0; trial < 100; ++trial) {
        const auto u = random_bits(code.k(), rng);
        const auto s = code.encode(u);
        const auto d = pcm.syndrome(s);
        for (auto bit : d) REQUIRE(bit == 0);
    }
}

TEST_CASE("generator: rank deficiency reported") {
    ParityCheckMatrix pcm(3, 6);
    pcm.add_entry(0, 0);
    pcm.add_entry(0, 1);
    pcm.add_entry(1, 1);
    pcm.add_entry(1, 2);
    // row 2 left empty: all-zero row
    pcm.finalize();
    CHECK_THROWS_AS(derive_generator(pcm), RankDeficientError);
    try {
        derive_generator(pcm);
    } catch (const RankDeficientError& e) {
        CHECK(e.rank == 2);
        CHECK(e.expected == 3);
    }
}

TEST_CASE("encode: coset identities") {
    const auto pcm = construct_regular_code(120, 3, 6, 6, 2);
    SUBCASE("b = 0, u = 0 gives the zero codeword") {
        const auto code = CosetLdpcCode::make(pcm);
        const auto s = code.encode(std::vector<std::uint8_t>(code.k(), 0));
        for (auto bit : s) CHECK(bit == 0);
    }
    SUBCASE("b = 0: syndrome vanishes for any u") {
        const auto code = CosetLdpcCode::make(pcm);
        Rng rng = make_rng(7, 2);
        for (int trial = 0; trial < 50; ++trial) {
            const auto s = code.encode(random_bits(code.k(), rng));
            for (auto bit : pcm.syndrome(s)) REQUIRE(bit == 0);
        }
    }
    SUBCASE("random b: syndrome equals H b^T bitwise") {
        Rng rng = make_rng(7, 3);
        for (int trial = 0; trial < 20; ++trial) {
            const auto b = random_bits(pcm.cols(), rng);
            const auto code = CosetLdpcCode::make(pcm, b);
            const auto s = code.encode(random_bits(code.k(), rng));
            CHECK(pcm.syndrome(s) == pcm.syndrome(b));
            CHECK(code.d == pcm.syndrome(b));
        }
    }
    SUBCASE("length mismatch") {
        const auto code = CosetLdpcCode::make(pcm);
        CHECK_THROWS_AS(code.encode(std::vector<std::uint8_t>(code.k() + 1, 0)),
                        std::invalid_argument);
    }
}

TEST_CASE("encode-then-syndrome always yields H b^T (1000 trials)") {
    const auto pcm = construct_regular_code(48, 3, 6, 4, 9);
    Rng rng = make_rng(11, 4);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto b = random_bits(pcm.cols(), rng);
        const auto code = CosetLdpcCode::make(pcm, b);
        const auto s = code.encode(random_bits(code.k(), rng));
        REQUIRE(pcm.syndrome(s) == code.d);
    }
}

TEST_CASE("syndrome: explicit cases and dense oracle") {
    const auto pcm = construct_regular_code(60, 3, 6, 6, 5);
    const std::vector<std::uint8_t> zero(pcm.cols(), 0);
    for (auto bit : pcm.syndrome(zero)) CHECK(bit == 0);

    Rng rng = make_rng(3, 5);
    const auto b = random_bits(pcm.cols(), rng);
    CHECK(pcm.syndrome(b) == dense_syndrome(pcm, b));
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_bits(pcm.cols(), rng);
        REQUIRE(pcm.syndrome(s) == dense_syndrome(pcm, s));
    }
    CHECK_THROWS_AS(pcm.syndrome(std::vector<std::uint8_t>(10, 0)), std::invalid_argument);
}

TEST_CASE("alist: hand-written 2x4 expansion") {
    // columns: {1}, {2}, {1,2}, {2} (1-based rows)
    const std::string text =
        "4 2\n"
        "2 3\n"
        "1 1 2 1\n"
        "2 3\n"
        "1\n"
        "2\n"
        "1 2\n"
        "2\n"
        "1 3\n"
        "2 3 4\n";
    std::istringstream in(text);
    const auto pcm = parse_alist(in, "inline");
    CHECK(pcm.rows() == 2);
    CHECK(pcm.cols() == 4);
    CHECK(pcm.col(0) == std::vector<int>{0});
    CHECK(pcm.col(2) == std::vector<int>{0, 1});
    CHECK(pcm.row(0) == std::vector<int>{0, 2});
    CHECK(pcm.row(1) == std::vector<int>{1, 2, 3});
}

TEST_CASE("alist: save/load round trip") {
    const auto pcm = construct_regular_code(120, 3, 6, 6, 13);
    const std::string path = "roundtrip_test.alist";
    save_alist(pcm, path);
    const auto loaded = load_alist(path);
    CHECK(pcm == loaded);
    std::remove(path.c_str());
}

TEST_CASE("alist: malformed inputs") {
    std::istringstream truncated("4 2\n2 3\n1 1 2 1\n2 3\n1\n");
    CHECK_THROWS_AS(parse_alist(truncated, "t"), std::runtime_error);
    std::istringstream badheader("0 2\n1 1\n");
    CHECK_THROWS_AS(parse_alist(badheader, "t"), std::runtime_error);
    // weights disagree about the edge count
    std::istringstream badweights("2 2\n1 2\n1 1\n2 1\n1\n2\n1 2\n1\n");
    CHECK_THROWS_AS(parse_alist(badweights, "t"), std::runtime_error);
}

TEST_CASE("M d_c = N d_v = N_e for constructed codes") {
    for (auto [n, dv, dc] : {std::tuple{240, 3, 6}, {240, 3, 4}, {360, 4, 36} /* M=40 */}) {
        if ((static_cast<std::int64_t>(n) * dv) % dc != 0) continue;
        const auto pcm = construct_regular_code(n, dv, dc, 4, 21);
        CHECK(static_cast<std::int64_t>(pcm.rows()) * dc == pcm.edge_count());
        CHECK(static_cast<std::int64_t>(pcm.cols()) * dv == pcm.edge_count());
    }
}
