#include "parreg/coloring.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "parreg/arith.hpp"

namespace parreg {

namespace {

using i128 = __int128;

constexpr std::int64_t kMaxBoxAbs = std::int64_t{1} << 31;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

void validate(const ColoringSpec& spec) {
    if (const auto* v = std::get_if<ValuationColoring>(&spec)) {
        if (!is_prime(v->p)) throw std::invalid_argument("valuation coloring needs a prime modulus");
    } else if (const auto* m = std::get_if<ModColoring>(&spec)) {
        if (m->modulus == 0 || m->palette.size() != m->modulus) {
            throw std::invalid_argument("mod coloring palette must have one entry per residue");
        }
    }
}

void validate(const SearchBox& box) {
    if (box.lo < -kMaxBoxAbs || box.hi > kMaxBoxAbs) throw std::invalid_argument("search box exceeds 2^31");
}

// Color table indexed by v - box.lo.
std::vector<unsigned> color_table(const SearchBox& box, const ColoringSpec& spec) {
    std::vector<unsigned> colors;
    if (box.lo > box.hi) return colors;
    colors.resize(static_cast<std::size_t>(box.hi - box.lo + 1), 0);
    for (std::int64_t v = box.lo; v <= box.hi; ++v) {
        if (v == 0) continue;
        colors[static_cast<std::size_t>(v - box.lo)] = color_of(v, spec);
    }
    return colors;
}

struct RowScan {
    std::int64_t a, b, c;
    unsigned m, n;
};

// Smallest monochromatic solution per color plus the total count.
struct RowResult {
    std::map<unsigned, MonoSolution> smallest;
    std::uint64_t count = 0;

    void add(const MonoSolution& s) {
        ++count;
        auto [it, inserted] = smallest.emplace(s.color, s);
        if (!inserted && s < it->second) it->second = s;
    }
    void absorb(const RowResult& other) {
        count += other.count;
        for (const auto& [color, s] : other.smallest) {
            auto [it, inserted] = smallest.emplace(color, s);
            if (!inserted && s < it->second) it->second = s;
        }
    }
};

// Right-hand side c*w^m*z^n, or nullopt once it exceeds `limit` in absolute value.
std::optional<i128> rhs_within(const RowScan& row, std::int64_t w, std::int64_t z, i128 limit) {
    i128 t = row.c;
    if (abs128(t) > limit) return std::nullopt;
    for (unsigned i = 0; i < row.m; ++i) {
        t *= w;
        if (abs128(t) > limit) return std::nullopt;
    }
    for (unsigned i = 0; i < row.n; ++i) {
        t *= z;
        if (abs128(t) > limit) return std::nullopt;
    }
    return t;
}

RowResult scan_row_shard(const RowScan& row, const SearchBox& box, const std::vector<unsigned>& colors,
                         unsigned shard, unsigned shards) {
    RowResult out;
    if (box.lo > box.hi) return out;
    const i128 max_abs = std::max<i128>(abs128(box.lo), abs128(box.hi));
    const i128 limit = (abs128(row.a) + abs128(row.b)) * max_abs;
    auto color = [&](std::int64_t v) { return colors[static_cast<std::size_t>(v - box.lo)]; };

    std::uint64_t index = 0;
    for (std::int64_t w = box.lo; w <= box.hi; ++w) {
        if (w == 0 && box.exclude_zero) continue;
        if (index++ % shards != shard) continue;
        const unsigned cw = color(w);
        for (std::int64_t z = box.lo; z <= box.hi; ++z) {
            if (z == 0 && box.exclude_zero) continue;
            if (color(z) != cw) continue;
            auto rhs = rhs_within(row, w, z, limit);
            if (!rhs) continue;
            for (std::int64_t x = box.lo; x <= box.hi; ++x) {
                if (x == 0 && box.exclude_zero) continue;
                if (color(x) != cw) continue;
                const i128 num = *rhs - static_cast<i128>(row.a) * x;
                if (num % row.b != 0) continue;
                const i128 y = num / row.b;
                if (y < box.lo || y > box.hi || y == 0) continue;
                if (color(static_cast<std::int64_t>(y)) != cw) continue;
                out.add({w, x, static_cast<std::int64_t>(y), z, cw});
            }
        }
    }
    return out;
}

RowResult scan_row(const RowScan& row, const SearchBox& box, const std::vector<unsigned>& colors, unsigned threads) {
    threads = std::max(1u, threads);
    if (threads == 1) return scan_row_shard(row, box, colors, 0, 1);
    std::vector<RowResult> parts(threads);
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] { parts[t] = scan_row_shard(row, box, colors, t, threads); });
    }
    for (auto& th : workers) th.join();
    RowResult merged;
    for (const auto& p : parts) merged.absorb(p);
    return merged;
}

std::string box_equation(const RowScan& r) {
    std::ostringstream os;
    os << r.a << "x + " << r.b << "y = " << r.c << "w^" << r.m << "z^" << r.n;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

bool is_certifying(const ColoringSpec& spec) { return std::holds_alternative<ValuationColoring>(spec); }

std::string describe(const ColoringSpec& spec) {
    std::ostringstream os;
    if (const auto* v = std::get_if<ValuationColoring>(&spec)) {
        os << "valuation(p=" << v->p << ")";
    } else if (const auto* m = std::get_if<ModColoring>(&spec)) {
        os << "mod(" << m->modulus << ") [non-certifying]";
    } else {
        os << "table(" << std::get<TableColoring>(spec).colors.size() << " entries) [non-certifying]";
    }
    return os.str();
}

unsigned color_of(const Rat& x, const ColoringSpec& spec) {
    if (x.is_zero()) throw std::invalid_argument("color_of: zero has no color");
    validate(spec);
    if (const auto* v = std::get_if<ValuationColoring>(&spec)) {
        const long e = valuation(x, v->p);
        Rat unit = x / Rat(BigInt(std::to_string(v->p), 10)).pow_signed(e);
        return static_cast<unsigned>(residue_mod_p(unit, v->p));
    }
    if (const auto* m = std::get_if<ModColoring>(&spec)) {
        return m->palette[mpz_fdiv_ui(x.num_ref().get_mpz_t(), m->modulus)];
    }
    const auto& t = std::get<TableColoring>(spec);
    auto it = t.colors.find(x);
    return it == t.colors.end() ? t.fallback : it->second;
}

unsigned color_of(std::int64_t x, const ColoringSpec& spec) {
    if (x == 0) throw std::invalid_argument("color_of: zero has no color");
    if (const auto* v = std::get_if<ValuationColoring>(&spec)) {
        if (!is_prime(v->p)) throw std::invalid_argument("valuation coloring needs a prime modulus");
        const auto p = static_cast<std::int64_t>(std::min<std::uint64_t>(v->p, std::uint64_t{1} << 62));
        std::int64_t u = x;
        while (u % p == 0) u /= p;
        std::int64_t r = u % p;
        return static_cast<unsigned>(r < 0 ? r + p : r);
    }
    return color_of(Rat(static_cast<long>(x)), spec);
}

std::uint64_t SearchBox::size() const {
    if (lo > hi) return 0;
    std::uint64_t n = static_cast<std::uint64_t>(hi - lo) + 1;
    if (exclude_zero && lo <= 0 && hi >= 0) --n;
    return n;
}

std::uint64_t predicted_candidates(const SearchBox& box) {
    const std::uint64_t n = box.size();
    return n * n * n;
}

void merge_into(MonoReport& into, const MonoReport& shard) {
    into.candidates_scanned += shard.candidates_scanned;
    into.monochromatic_count += shard.monochromatic_count;
    into.elapsed_seconds = std::max(into.elapsed_seconds, shard.elapsed_seconds);
    if (!shard.found.empty() && (into.found.empty() || shard.found < into.found)) into.found = shard.found;
}

MonoReport verify_no_mono_solution(const EquationSpec& eq, const ColoringSpec& spec, const SearchBox& box,
                                   unsigned threads) {
    validate(spec);
    validate(box);
    const auto start = std::chrono::steady_clock::now();
    const RowScan row{eq.a, eq.b, eq.c, eq.m, eq.n};

    MonoReport report;
    report.equation = box_equation(row);
    report.coloring = describe(spec);
    report.certifying = is_certifying(spec);
    report.box = box;
    report.candidates_scanned = predicted_candidates(box);

    auto colors = color_table(box, spec);
    RowResult result = scan_row(row, box, colors, threads);
    report.monochromatic_count = result.count;
    if (!result.smallest.empty()) {
        auto best = std::min_element(result.smallest.begin(), result.smallest.end(),
                                     [](const auto& l, const auto& r) { return l.second < r.second; });
        report.found = {best->second};
    }
    report.elapsed_seconds = seconds_since(start);
    return report;
}

MonoReport verify_system_no_mono(const SystemSpec& system, const ColoringSpec& spec, const SearchBox& box,
                                 unsigned threads) {
    validate(spec);
    validate(box);
    const auto start = std::chrono::steady_clock::now();

    MonoReport report;
    report.coloring = describe(spec);
    report.certifying = is_certifying(spec);
    report.box = box;

    auto colors = color_table(box, spec);
    std::vector<RowResult> rows;
    for (const auto& r : system.rows) {
        RowScan scan{r.a, r.b, r.c, 1, system.n};
        if (!report.equation.empty()) report.equation += "; ";
        report.equation += box_equation(scan);
        rows.push_back(scan_row(scan, box, colors, threads));
        report.candidates_scanned += predicted_candidates(box);
    }

    // Colors admitting a solution in every row.
    std::optional<unsigned> shared;
    if (!rows.empty()) {
        for (const auto& [color, s] : rows.front().smallest) {
            bool everywhere = std::all_of(rows.begin(), rows.end(),
                                          [&, color = color](const RowResult& rr) { return rr.smallest.count(color) > 0; });
            if (everywhere) {
                shared = color;
                break;
            }
        }
    }
    if (shared) {
        for (const auto& rr : rows) report.found.push_back(rr.smallest.at(*shared));
        report.monochromatic_count = 1;
    }
    report.elapsed_seconds = seconds_since(start);
    return report;
}

std::vector<Rat> small_height_rationals(std::uint64_t height) {
    std::vector<Rat> out;
    for (std::uint64_t s = 1; s <= height; ++s) {
        for (std::uint64_t r = 1; r <= height; ++r) {
            if (std::gcd(r, s) != 1) continue;
            const BigInt num(std::to_string(r), 10);
            const BigInt den(std::to_string(s), 10);
            out.emplace_back(num, den);
            out.emplace_back(-num, den);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

MonoReport verify_rational_no_mono(const EquationSpec& eq, const ColoringSpec& spec, std::uint64_t height) {
    validate(spec);
    const auto start = std::chrono::steady_clock::now();
    auto values = small_height_rationals(height);
    std::unordered_map<Rat, unsigned> colors;
    for (const auto& v : values) colors.emplace(v, color_of(v, spec));

    MonoReport report;
    report.equation = box_equation({eq.a, eq.b, eq.c, eq.m, eq.n}) + " over fractions of height <= " +
                      std::to_string(height);
    report.coloring = describe(spec);
    report.certifying = is_certifying(spec);
    report.box = {-static_cast<std::int64_t>(height), static_cast<std::int64_t>(height), true};
    const std::uint64_t n = values.size();
    report.candidates_scanned = n * n * n;

    const Rat a(static_cast<long>(eq.a)), b(static_cast<long>(eq.b)), c(static_cast<long>(eq.c));
    for (const auto& w : values) {
        const unsigned cw = colors.at(w);
        const Rat cwm = c * w.pow(eq.m);
        for (const auto& z : values) {
            if (colors.at(z) != cw) continue;
            const Rat rhs = cwm * z.pow(eq.n);
            for (const auto& x : values) {
                if (colors.at(x) != cw) continue;
                const Rat y = (rhs - a * x) / b;
                auto it = colors.find(y);
                if (it == colors.end() || it->second != cw) continue;
                ++report.monochromatic_count;
                if (report.rational_found.empty()) report.rational_found = {w, x, y, z};
            }
        }
    }
    report.elapsed_seconds = seconds_since(start);
    return report;
}

} // namespace parreg
