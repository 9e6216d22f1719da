#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "parreg/density.hpp"

using namespace parreg;

TEST_CASE("survey counts match brute force below 3000") {
    for (long t : {2, 3, -4, 16, 36, 12}) {
        for (unsigned n : {2u, 3u, 4u, 8u}) {
            auto s = survey(Rat(t), n, 3000);
            std::uint64_t admissible = 0, hits = 0;
            for (auto p : oracle::primes_up_to(3000)) {
                auto r = oracle::reduce(Rat(t), p);
                if (!r) continue;
                ++admissible;
                if (oracle::nth_power_residue(*r, n, p)) ++hits;
            }
            CHECK(s.admissible_count == admissible);
            CHECK(s.hit_count == hits);
        }
    }
}

TEST_CASE("16 is an eighth power at every admissible prime") {
    auto s = survey(Rat(16), 8, 100'000);
    CHECK(s.density() == Rat(1));
    CHECK(s.admissible_count == 9591);
}

TEST_CASE("density bands") {
    const double cubes = survey(Rat(2), 3, 100'000).density().to_double();
    CHECK(cubes >= 0.646);
    CHECK(cubes <= 0.686);
    const double squares = survey(Rat(2), 2, 100'000).density().to_double();
    CHECK(squares >= 0.48);
    CHECK(squares <= 0.52);
}

TEST_CASE("odd exponents follow the residue-class prediction") {
    const std::vector<std::pair<long, unsigned>> cases = {{2, 3}, {2, 5}, {3, 3}};
    for (auto [t, n] : cases) {
        auto s = survey(Rat(t), n, 100'000);
        double expected = 0;
        std::uint64_t admissible = 0;
        for (auto p : oracle::primes_up_to(100'000)) {
            if (p == static_cast<std::uint64_t>(t)) continue;
            ++admissible;
            expected += (p - 1) % n == 0 ? 1.0 / n : 1.0;
        }
        expected /= static_cast<double>(admissible);
        CHECK(std::abs(s.density().to_double() - expected) <= 0.03);
    }
}

TEST_CASE("higher exponents never raise the density") {
    for (long t : {2, 5, 12, -3, 36}) {
        for (unsigned n : {1u, 2u, 3u}) {
            for (unsigned k : {2u, 3u}) {
                auto lo = survey(Rat(t), n, 20'000);
                auto hi = survey(Rat(t), n * k, 20'000);
                CHECK(hi.hit_count <= lo.hit_count);
            }
        }
    }
    CHECK(survey(Rat(5), 1, 1000).density() == Rat(1));
}

TEST_CASE("joint surveys") {
    const std::vector<Rat> pm4 = {Rat(4), Rat(-4)};
    auto js = joint_survey(pm4, 4, 100'000);
    CHECK(js.none == 0);
    CHECK(js.inclusion_exclusion_holds());
    CHECK(js.none_density() == Rat(0));

    const std::vector<std::vector<Rat>> lists = {
        {Rat(2), Rat(3), Rat(6)}, {Rat(2), Rat(3), Rat(5), Rat(7)}, {Rat(36), Rat(9)}, {Rat(-1)}};
    for (const auto& targets : lists) {
        for (unsigned n : {2u, 3u, 4u}) {
            auto j = joint_survey(targets, n, 20'000);
            CHECK(j.inclusion_exclusion_holds());
            CHECK(j.none + j.at_least_one == j.admissible_count);
            std::uint64_t total = 0;
            for (auto c : j.pattern_counts) total += c;
            CHECK(total == j.admissible_count);
            CHECK(j.all == j.pattern_counts.back());
            CHECK(j.none == j.pattern_counts.front());
        }
    }

    // 2, 3, 6 modulo squares: at least one is always a square.
    auto q = joint_survey(lists[0], 2, 20'000);
    CHECK(q.none == 0);

    CHECK_THROWS_AS(joint_survey(std::vector<Rat>{}, 2, 100), std::invalid_argument);
    CHECK_THROWS_AS(joint_survey(std::vector<Rat>{Rat(0)}, 2, 100), std::invalid_argument);
}

TEST_CASE("prime records and thread independence") {
    const std::vector<Rat> targets = {Rat(2), Rat(3, 5)};
    auto one = prime_records(targets, 3, 5000, 1);
    auto many = prime_records(targets, 3, 5000, 4);
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].p == many[i].p);
        CHECK(one[i].hits == many[i].hits);
        CHECK(one[i].p != 2);
        CHECK(one[i].p != 3);
        CHECK(one[i].p != 5);
    }
    auto a = joint_survey(targets, 3, 50'000, 1);
    auto b = joint_survey(targets, 3, 50'000, 3);
    CHECK(a.pattern_counts == b.pattern_counts);
}

TEST_CASE("CSV output") {
    std::ostringstream os;
    const std::vector<Rat> targets = {Rat(2), Rat(-1)};
    write_csv(os, targets, 2, 20);
    CHECK(os.str() ==
          "prime,p_mod_n,gcd_n_p_minus_1,hit_2,hit_-1\n"
          "3,1,2,0,0\n"
          "5,1,2,0,1\n"
          "7,1,2,1,0\n"
          "11,1,2,0,0\n"
          "13,1,2,0,1\n"
          "17,1,2,1,1\n"
          "19,1,2,0,0\n");
}
