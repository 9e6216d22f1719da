#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "parreg/classify.hpp"
#include "parreg/coloring.hpp"
#include "parreg/density.hpp"
#include "parreg/radolinear.hpp"
#include "parreg/witness.hpp"

using namespace parreg;

namespace {

constexpr double kRegressionSeconds = 10.0;
constexpr double kWitnessSeconds = 1.0;
constexpr double kColoringSeconds = 300.0;
constexpr std::int64_t kColoringHalfWidth = 300;
constexpr std::uint64_t kColoringCandidates = 216'000'000;
constexpr unsigned kSpeedupWorkers = 8;
constexpr double kSpeedupTolerance = 0.20;
constexpr double kMinTimedSeconds = 0.5;
constexpr long kQpRange = 10'000;
constexpr long kQpFractionRange = 1'000;
constexpr int kQpMaxNegativeValuation = 6;
constexpr std::uint64_t kDensityBound = 100'000;
constexpr double kDensitySeconds = 30.0;
constexpr int kColumnsTrials = 1000;
constexpr double kSystemsSeconds = 5.0;
constexpr int kPropertyEquations = 500;
constexpr int kChiPairs = 10'000;
constexpr double kCubeBand[2] = {0.646, 0.686};
constexpr double kSquareBand[2] = {0.48, 0.52};

struct Check {
    std::ostringstream notes;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Check&)>& body) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.notes << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!c.ok) ++failures;
    std::printf("%s %d %s (%.2fs)%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), secs, c.notes.str().c_str());
    std::fflush(stdout);
}

double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::array<Status, 3> statuses(const Verdict& v) { return {v.status(Domain::N), v.status(Domain::Z), v.status(Domain::Q)}; }

template <typename Body>
const Body* find_body(const Verdict& v) {
    for (const auto& c : v.certificates()) {
        if (const auto* b = std::get_if<Body>(&c.body)) return b;
    }
    return nullptr;
}

std::string eq_name(std::int64_t a, std::int64_t b, std::int64_t c, unsigned m, unsigned n) {
    return EquationSpec::make(a, b, c, m, n).str();
}

void criterion_regression(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::tuple<std::int64_t, std::int64_t, unsigned, std::uint64_t>> padic = {
        {3, 13, 8, 2}, {16, 16, 8, 2}, {60, 90, 2, 2}, {81, 729, 12, 3}, {32400, 57600, 4, 5}};
    for (auto [a, b, n, p] : padic) {
        auto v = classify_equation(EquationSpec::make(a, b, 1, 1, n));
        const auto* o = find_body<PadicObstruction>(v);
        c.require(v.status(Domain::Z) == Status::NotPR && v.status(Domain::N) == Status::NotPR && o && o->p == p &&
                      reverify(v),
                  eq_name(a, b, 1, 1, n));
    }
    using S = Status;
    const std::vector<std::pair<std::array<std::int64_t, 5>, std::array<S, 3>>> rows = {
        {{1, 1, 1, 1, 1}, {S::PR, S::PR, S::PR}},
        {{2, -8, 1, 1, 3}, {S::Unknown, S::PR, S::PR}},
        {{16, 17, 1, 1, 8}, {S::Unknown, S::Unknown, S::Unknown}},
        {{33, 4063, 1, 1, 8}, {S::Unknown, S::Unknown, S::Unknown}},
        {{1, 1, -1, 1, 1}, {S::NotPR, S::PR, S::PR}}};
    for (const auto& [e, want] : rows) {
        auto v = classify_equation(
            EquationSpec::make(e[0], e[1], e[2], static_cast<unsigned>(e[3]), static_cast<unsigned>(e[4])));
        c.require(statuses(v) == want && reverify(v),
                  eq_name(e[0], e[1], e[2], static_cast<unsigned>(e[3]), static_cast<unsigned>(e[4])));
    }
    const double secs = elapsed(start);
    c.require(secs < kRegressionSeconds, "runtime");
    c.notes << " 10 equations";
}

void criterion_witness(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Rat> targets = {Rat(2), Rat(3), Rat(5)};
    auto w = find_witness_prime(targets, 2, BigInt(5), {1'000'000, 1});
    c.require(w && w->p == 43 && reverify(*w, true), "witness is 43");
    for (std::uint64_t p = 6; p < 43; ++p) {
        if (oracle::is_prime(p)) c.require(!oracle::witness_qualifies(targets, 2, p), "prime " + std::to_string(p));
    }
    c.require(oracle::witness_qualifies(targets, 2, 43), "43 qualifies by brute force");
    c.require(elapsed(start) < kWitnessSeconds, "runtime");
    c.notes << " p=" << (w ? w->p : 0);
}

unsigned chi(std::int64_t x, std::int64_t p) {
    while (x % p == 0) x /= p;
    return static_cast<unsigned>(((x % p) + p) % p);
}

// Every (w, z, x) triple in the box, no pruning.
std::pair<std::uint64_t, std::uint64_t> naive_scan(std::int64_t a, std::int64_t b, std::int64_t p, std::int64_t h) {
    std::vector<unsigned> color(static_cast<std::size_t>(2 * h + 1), 0);
    for (std::int64_t v = -h; v <= h; ++v) {
        if (v != 0) color[static_cast<std::size_t>(v + h)] = chi(v, p);
    }
    std::uint64_t triples = 0, mono = 0;
    for (std::int64_t w = -h; w <= h; ++w) {
        if (w == 0) continue;
        for (std::int64_t z = -h; z <= h; ++z) {
            if (z == 0) continue;
            const std::int64_t rhs = w * z * z;
            for (std::int64_t x = -h; x <= h; ++x) {
                if (x == 0) continue;
                ++triples;
                const std::int64_t num = rhs - a * x;
                if (num % b != 0) continue;
                const std::int64_t y = num / b;
                if (y == 0 || y < -h || y > h) continue;
                const unsigned cw = color[static_cast<std::size_t>(w + h)];
                if (color[static_cast<std::size_t>(x + h)] == cw && color[static_cast<std::size_t>(y + h)] == cw &&
                    color[static_cast<std::size_t>(z + h)] == cw) {
                    ++mono;
                }
            }
        }
    }
    return {triples, mono};
}

void criterion_coloring(Check& c) {
    auto eq = EquationSpec::make(2, 3, 1, 1, 2);
    const auto box = SearchBox::symmetric(kColoringHalfWidth);
    auto one = verify_no_mono_solution(eq, ValuationColoring{43}, box, 1);
    c.require(one.none_found() && one.monochromatic_count == 0, "no monochromatic solution");
    c.require(one.candidates_scanned == kColoringCandidates, "candidate count");
    c.require(one.elapsed_seconds < kColoringSeconds, "single-worker runtime");
    auto many = verify_no_mono_solution(eq, ValuationColoring{43}, box, kSpeedupWorkers);
    c.require(many.found == one.found && many.monochromatic_count == one.monochromatic_count &&
                  many.candidates_scanned == one.candidates_scanned,
              "8-worker result identical");
    const auto naive_start = std::chrono::steady_clock::now();
    const auto [triples, mono] = naive_scan(2, 3, 43, kColoringHalfWidth);
    const double naive_secs = elapsed(naive_start);
    c.require(triples == kColoringCandidates && mono == 0, "unpruned scan");
    c.require(naive_secs < kColoringSeconds, "unpruned runtime");
    c.notes << " unpruned " << triples << " triples in " << naive_secs << "s, " << mono << " monochromatic;";
    const unsigned hw = std::thread::hardware_concurrency();
    c.notes << " candidates=" << one.candidates_scanned << " t1=" << one.elapsed_seconds << "s t8=" << many.elapsed_seconds
            << "s";
    if (hw >= kSpeedupWorkers && one.elapsed_seconds >= kMinTimedSeconds) {
        const double speedup = one.elapsed_seconds / std::max(many.elapsed_seconds, 1e-9);
        c.require(speedup >= kSpeedupWorkers * (1.0 - kSpeedupTolerance), "speedup");
        c.notes << " speedup=" << speedup;
    } else {
        c.notes << " speedup unmeasured: " << hw << " hardware thread(s), single-worker run " << one.elapsed_seconds
                << "s";
    }
}

void criterion_oracles(Check& c) {
    std::uint64_t euler_checks = 0, euler_mismatch = 0;
    for (auto p : oracle::primes_up_to(99)) {
        for (std::uint64_t n = 1; n <= 12; ++n) {
            for (std::uint64_t r = 1; r < p; ++r) {
                ++euler_checks;
                if (nth_power_residue(r, n, p) != oracle::nth_power_residue(r, n, p)) ++euler_mismatch;
            }
        }
    }
    std::uint64_t qp_checks = 0, qp_mismatch = 0;
    for (std::uint64_t p : {2, 3, 5}) {
        for (std::uint64_t n = 1; n <= 12; ++n) {
            for (long q = -kQpRange; q <= kQpRange; ++q) {
                if (q == 0) continue;
                ++qp_checks;
                if (nth_power_in_Qp(Rat(q), p, n) != oracle::nth_power_in_Qp(Rat(q), p, n)) ++qp_mismatch;
            }
            for (long q = -kQpFractionRange; q <= kQpFractionRange; ++q) {
                if (q == 0 || q % static_cast<long>(p) == 0) continue;
                BigInt den = 1;
                for (int j = 1; j <= kQpMaxNegativeValuation; ++j) {
                    den *= static_cast<unsigned long>(p);
                    const Rat x(BigInt(q), den);
                    ++qp_checks;
                    if (nth_power_in_Qp(x, p, n) != oracle::nth_power_in_Qp(x, p, n)) ++qp_mismatch;
                }
            }
        }
    }
    c.require(euler_mismatch == 0, "Euler criterion mismatches");
    c.require(qp_mismatch == 0, "Q_p mismatches");
    c.require(nth_power_in_Qp(Rat(33), 2, 8), "33 is an eighth power in Q_2");
    c.require(!nth_power_in_Qp(Rat(17), 2, 8) && !nth_power_in_Qp(Rat(16), 2, 8), "17 and 16 are not");
    c.notes << " euler " << euler_checks << " checks, " << euler_mismatch << " mismatches; Q_p " << qp_checks
            << " checks, " << qp_mismatch << " mismatches";
}

void criterion_identities(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    auto s16 = survey(Rat(16), 8, kDensityBound);
    c.require(s16.density() == Rat(1), "density(16, 8) = 1");

    const std::vector<Rat> pm4 = {Rat(4), Rat(-4)};
    auto j4 = joint_survey(pm4, 4, kDensityBound);
    c.require(j4.none == 0, "none([4,-4], 4) = 0");

    const std::vector<Rat> t369 = {Rat(36), Rat(9)};
    auto j36 = joint_survey(t369, 4, kDensityBound);
    c.require(j36.none == 0, "none([36,9], 4) = 0, got " + std::to_string(j36.none));
    std::uint64_t disagreements = 0, first = 0;
    for (const auto& rec : prime_records(t369, 4, kDensityBound)) {
        const bool predicted = rec.p % 24 != 13;
        if (predicted != rec.hits[0]) {
            ++disagreements;
            if (first == 0) first = rec.p;
        }
    }
    c.require(disagreements == 0, "36 is a fourth power exactly off 13 mod 24, " + std::to_string(disagreements) +
                                      " disagreements, first at p=" + std::to_string(first));
    c.require(elapsed(start) < kDensitySeconds, "runtime");
    c.notes << " density(16,8)=" << s16.density().str() << " none([4,-4])=" << j4.none << " none([36,9])=" << j36.none;
}

QMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Rat>> r;
    for (const auto& row : rows) {
        r.emplace_back();
        for (long v : row) r.back().emplace_back(v);
    }
    return QMatrix::from_rows(r);
}

void criterion_columns(Check& c) {
    auto schur = int_matrix({{1, 1, -1}});
    auto cert = columns_condition(schur);
    c.require(cert && verify_certificate(schur, *cert), "[1 1 -1] certified");
    c.require(!columns_condition(int_matrix({{2, 3, -1}})), "[2 3 -1] refused");
    const std::vector<std::int64_t> j = {1, 2, 3};
    auto brauer = brauer_system(2, j);
    auto bcert = certify_partition(brauer, brauer_partition(3));
    c.require(bcert && verify_certificate(brauer, *bcert), "Brauer system with the known partition");
    c.require(oracle::columns_condition(brauer), "Brauer system by brute force");

    std::mt19937_64 rng(20250101);
    std::uniform_int_distribution<long> entry(-3, 3);
    std::uniform_int_distribution<int> row_count(1, 3);
    int disagreements = 0, positives = 0;
    for (int t = 0; t < kColumnsTrials; ++t) {
        std::vector<std::vector<long>> rows(row_count(rng), std::vector<long>(3));
        for (auto& r : rows) {
            for (auto& v : r) v = entry(rng);
        }
        auto m = int_matrix(rows);
        auto got = columns_condition(m);
        if (got.has_value() != oracle::columns_condition(m)) ++disagreements;
        if (got) {
            ++positives;
            if (!verify_certificate(m, *got)) ++disagreements;
        }
    }
    c.require(disagreements == 0, "random trials");
    c.notes << " " << kColumnsTrials << " random trials, " << positives << " satisfy, " << disagreements
            << " disagreements";
}

void criterion_systems(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    struct Case {
        std::vector<SystemRow> rows;
        unsigned n;
        std::string rule;
        std::vector<Rat> intersection;
    };
    const std::vector<Case> cases = {
        {{{32400, 57600, 1}, {15210000, 87609600, 1}}, 4, "S3", {}},
        {{{16, 17, 1}, {33, 4063, 1}}, 8, "S3", {Rat(33)}},
        {{{8, 27, 1}, {27, 343, 1}, {343, 8, 1}}, 3, "S2", {}},
        {{{9, 16, 1}, {25, -9, 1}, {25, -16, 1}, {9, 7, 1}}, 2, "S2", {}},
    };
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& k = cases[i];
        auto sys = SystemSpec::make(k.rows, k.n);
        auto v = classify_system(sys);
        c.require(v.status(Domain::Z) == Status::NotPR && v.rules() == std::vector<std::string>{k.rule} &&
                      sys.ratio_intersection() == k.intersection && reverify(v),
                  "system " + std::to_string(i + 1));
    }
    const auto& four = cases[3].rows;
    for (std::size_t drop = 1; drop < 4; ++drop) {
        auto rows = four;
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(drop));
        auto v = classify_system(SystemSpec::make(rows, 2));
        c.require(v.status(Domain::Z) == Status::PR && reverify(v), "dropping row " + std::to_string(drop + 1));
    }
    for (auto sys : {SystemSpec::make({{16, 17, 1}, {33, -17, 1}}, 8),
                     SystemSpec::make({{625, 729, 1}, {-104, 729, 1}}, 12)}) {
        auto v = classify_system(sys);
        c.require(statuses(v) == std::array{Status::Unknown, Status::Unknown, Status::Unknown}, "open system");
    }
    c.require(elapsed(start) < kSystemsSeconds, "runtime");
}

bool monotone(const Verdict& v) {
    const auto s = statuses(v);
    return (s[0] != Status::PR || s[1] == Status::PR) && (s[1] != Status::PR || s[2] == Status::PR) &&
           (s[2] != Status::NotPR || s[1] == Status::NotPR) && (s[1] != Status::NotPR || s[0] == Status::NotPR);
}

int vp(std::int64_t x, std::int64_t p) {
    int e = 0;
    for (; x % p == 0; x /= p) ++e;
    return e;
}

void criterion_properties(Check& c) {
    const ClassifyConfig cfg{100'000, 1, {}};
    std::mt19937_64 rng(8675309);
    std::uniform_int_distribution<std::int64_t> coef(-40, 40);
    std::uniform_int_distribution<unsigned> expo(1, 8);
    int lattice_bad = 0, reverify_bad = 0, symmetry_bad = 0;
    for (int i = 0; i < kPropertyEquations; ++i) {
        std::int64_t a = 0, b = 0, cc = 0;
        while (a == 0) a = coef(rng);
        while (b == 0) b = coef(rng);
        while (cc == 0) cc = coef(rng);
        unsigned m = expo(rng), n = expo(rng);
        if (m > n) std::swap(m, n);
        auto v = classify_equation(EquationSpec::make(a, b, cc, m, n), cfg);
        if (!monotone(v) || !v.lattice_consistent()) ++lattice_bad;
        if (!reverify(v)) ++reverify_bad;
        auto swapped = classify_equation(EquationSpec::make(b, a, cc, m, n), cfg);
        auto negated = classify_equation(EquationSpec::make(-a, -b, -cc, m, n), cfg);
        const std::int64_t flip = (m + n + 1) % 2 == 0 ? 1 : -1;
        auto mirrored = classify_equation(EquationSpec::make(a, b, flip * cc, m, n), cfg);
        if (statuses(swapped) != statuses(v) || statuses(negated) != statuses(v) ||
            mirrored.status(Domain::Z) != v.status(Domain::Z) || mirrored.status(Domain::Q) != v.status(Domain::Q)) {
            ++symmetry_bad;
        }
    }
    c.require(lattice_bad == 0, "lattice monotonicity");
    c.require(reverify_bad == 0, "certificate re-verification");
    c.require(symmetry_bad == 0, "symmetries");

    int mult_bad = 0, add_bad = 0, add_cases = 0;
    std::uniform_int_distribution<std::int64_t> big(-1'000'000, 1'000'000);
    for (std::int64_t p : {2, 3, 43}) {
        const ColoringSpec spec = ValuationColoring{static_cast<std::uint64_t>(p)};
        for (int i = 0; i < kChiPairs; ++i) {
            std::int64_t x = 0, y = 0;
            while (x == 0) x = big(rng);
            while (y == 0) y = big(rng);
            const auto cx = color_of(x, spec), cy = color_of(y, spec);
            if (cx != chi(x, p) || color_of(x * y, spec) != (static_cast<std::uint64_t>(cx) * cy) % p) ++mult_bad;
            if (i % 2 == 0) y *= p;
            if (x + y == 0) continue;
            const int vx = vp(x, p), vy = vp(y, p);
            const auto cs = color_of(x + y, spec);
            const auto cy2 = color_of(y, spec);
            ++add_cases;
            if (vx < vy && cs != cx) ++add_bad;
            if (vy < vx && cs != cy2) ++add_bad;
            if (vx == vy && (cx + cy2) % p != 0 && cs != (cx + cy2) % p) ++add_bad;
        }
    }
    c.require(mult_bad == 0, "chi multiplicativity");
    c.require(add_bad == 0, "chi addition case analysis");
    c.notes << " " << kPropertyEquations << " equations, " << 3 * kChiPairs << " chi pairs, " << add_cases
            << " sums";
}

void criterion_density(Check& c) {
    const double cubes = survey(Rat(2), 3, kDensityBound).density().to_double();
    const double squares = survey(Rat(2), 2, kDensityBound).density().to_double();
    c.require(cubes >= kCubeBand[0] && cubes <= kCubeBand[1], "density(2, 3)");
    c.require(squares >= kSquareBand[0] && squares <= kSquareBand[1], "density(2, 2)");
    const std::vector<std::pair<std::vector<Rat>, unsigned>> joints = {
        {{Rat(4), Rat(-4)}, 4}, {{Rat(36), Rat(9)}, 4}, {{Rat(2), Rat(3), Rat(6)}, 2},
        {{Rat(2), Rat(3), Rat(5), Rat(7)}, 3}, {{Rat(16), Rat(17), Rat(33)}, 8}};
    for (const auto& [targets, n] : joints) {
        auto j = joint_survey(targets, n, kDensityBound);
        c.require(j.inclusion_exclusion_holds() && j.none + j.at_least_one == j.admissible_count,
                  "inclusion-exclusion");
    }
    c.notes << " density(2,3)=" << cubes << " density(2,2)=" << squares;
}

} // namespace

int main() {
    run(1, "regression table", criterion_regression);
    run(2, "witness search", criterion_witness);
    run(3, "coloring verification", criterion_coloring);
    run(4, "oracle equivalence", criterion_oracles);
    run(5, "power-residue identities", criterion_identities);
    run(6, "columns condition", criterion_columns);
    run(7, "systems", criterion_systems);
    run(8, "property suites", criterion_properties);
    run(9, "density sanity", criterion_density);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
