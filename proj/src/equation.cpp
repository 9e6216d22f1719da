#include "parreg/equation.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>

namespace parreg {

namespace {

constexpr std::int64_t kCoefficientLimit = std::int64_t{1} << 62;

void check_coefficient(std::int64_t v, const char* name) {
    if (v == 0) throw std::invalid_argument(std::string(name) + " must be nonzero");
    if (v >= kCoefficientLimit || v <= -kCoefficientLimit) {
        throw std::invalid_argument(std::string(name) + " is out of range (|" + name + "| < 2^62)");
    }
}

std::array<Rat, 3> ratio_triple(std::int64_t a, std::int64_t b, std::int64_t c) {
    Rat rc(c);
    return {Rat(a) / rc, Rat(b) / rc, (Rat(a) + Rat(b)) / rc};
}

} // namespace

EquationSpec EquationSpec::make(std::int64_t a, std::int64_t b, std::int64_t c, unsigned m, unsigned n) {
    check_coefficient(a, "a");
    check_coefficient(b, "b");
    check_coefficient(c, "c");
    if (m == 0 || n == 0) throw std::invalid_argument("exponents m, n must be positive");
    if (m > n) std::swap(m, n);
    return EquationSpec{a, b, c, m, n};
}

std::array<Rat, 3> EquationSpec::ratios() const { return ratio_triple(a, b, c); }

std::string EquationSpec::str() const {
    std::ostringstream os;
    os << a << "x + " << b << "y = " << c << "*w";
    if (m != 1) os << "^" << m;
    os << "*z";
    if (n != 1) os << "^" << n;
    return os.str();
}

std::array<Rat, 3> SystemRow::ratios() const { return ratio_triple(a, b, c); }

SystemSpec SystemSpec::make(std::vector<SystemRow> rows, unsigned n) {
    if (rows.empty()) throw std::invalid_argument("system must have at least one row");
    if (n == 0) throw std::invalid_argument("exponent n must be positive");
    for (const auto& r : rows) {
        check_coefficient(r.a, "a_i");
        check_coefficient(r.b, "b_i");
        check_coefficient(r.c, "c_i");
    }
    return SystemSpec{std::move(rows), n};
}

SystemSpec SystemSpec::parse(std::istream& in, unsigned n) {
    std::vector<SystemRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> fields;
        for (std::string tok; ls >> tok;) fields.push_back(tok);
        if (fields.empty()) continue;
        if (fields.size() != 3) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'a b c'");
        }
        SystemRow row;
        std::int64_t* slots[3] = {&row.a, &row.b, &row.c};
        for (int i = 0; i < 3; ++i) {
            std::size_t used = 0;
            try {
                *slots[i] = std::stoll(fields[i], &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != fields[i].size()) {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": bad integer '" + fields[i] + "'");
            }
        }
        rows.push_back(row);
    }
    return make(std::move(rows), n);
}

std::vector<Rat> SystemSpec::ratio_union() const {
    std::set<Rat> all;
    for (const auto& r : rows) {
        for (auto& v : r.ratios()) all.insert(v);
    }
    return {all.begin(), all.end()};
}

std::vector<Rat> SystemSpec::ratio_intersection() const {
    if (rows.empty()) return {};
    auto first = rows.front().ratios();
    std::set<Rat> acc(first.begin(), first.end());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        auto rr = rows[i].ratios();
        std::set<Rat> row(rr.begin(), rr.end());
        std::set<Rat> next;
        std::set_intersection(acc.begin(), acc.end(), row.begin(), row.end(), std::inserter(next, next.begin()));
        acc = std::move(next);
    }
    return {acc.begin(), acc.end()};
}

} // namespace parreg
