#include "parreg/radolinear.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

namespace parreg {

namespace {

using i128 = __int128;

constexpr std::size_t kSubsetCap = 30;

std::vector<Rat> block_sum(const QMatrix& m, const std::vector<std::size_t>& block) {
    std::vector<Rat> s(m.rows());
    for (std::size_t c : block) {
        for (std::size_t r = 0; r < m.rows(); ++r) s[r] += m.at(r, c);
    }
    return s;
}

std::vector<std::size_t> members(std::uint32_t mask, std::size_t cols) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols; ++c) {
        if (mask & (std::uint32_t{1} << c)) out.push_back(c);
    }
    return out;
}

// Next k-combination of [0, n) in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::optional<SpanWitness> span_witness(const QMatrix& m, const std::vector<std::size_t>& earlier,
                                        const std::vector<std::size_t>& block, std::size_t block_index) {
    auto target = block_sum(m, block);
    std::vector<std::vector<Rat>> vectors;
    for (std::size_t c : earlier) vectors.push_back(m.column(c));
    auto coeffs = solve_in_span(vectors, target);
    if (!coeffs) return std::nullopt;
    SpanWitness w;
    w.block = block_index;
    for (std::size_t i = 0; i < earlier.size(); ++i) w.combination.emplace_back(earlier[i], (*coeffs)[i]);
    return w;
}

struct ColumnSearch {
    const QMatrix& m;
    std::size_t cols;
    std::uint32_t full;
    std::vector<char> dead;
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<SpanWitness> witnesses;

    bool run(std::uint32_t used) {
        if (used == full) return true;
        if (dead[used]) return false;
        const auto earlier = members(used, cols);
        std::vector<std::size_t> rest = members(full & ~used, cols);
        for (std::size_t size = 1; size <= rest.size(); ++size) {
            std::vector<std::size_t> pick(size);
            std::iota(pick.begin(), pick.end(), 0);
            do {
                std::vector<std::size_t> block;
                std::uint32_t bits = 0;
                for (std::size_t i : pick) {
                    block.push_back(rest[i]);
                    bits |= std::uint32_t{1} << rest[i];
                }
                auto w = span_witness(m, earlier, block, blocks.size());
                if (!w) continue;
                blocks.push_back(block);
                witnesses.push_back(std::move(*w));
                if (run(used | bits)) return true;
                blocks.pop_back();
                witnesses.pop_back();
            } while (next_combination(pick, rest.size()));
        }
        dead[used] = 1;
        return false;
    }
};

} // namespace

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    if (rows.empty() || rows.front().empty()) throw std::invalid_argument("matrix must be nonempty");
    QMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

QMatrix QMatrix::parse(std::istream& in) {
    std::vector<std::vector<Rat>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<Rat> row;
        std::string token;
        while (ls >> token) {
            try {
                row.push_back(Rat::parse(token));
            } catch (const std::exception& e) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return from_rows(rows);
}

std::vector<Rat> QMatrix::column(std::size_t c) const {
    std::vector<Rat> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

std::optional<std::vector<Rat>> solve_in_span(const std::vector<std::vector<Rat>>& vectors,
                                              const std::vector<Rat>& target) {
    const std::size_t dim = target.size();
    const std::size_t k = vectors.size();
    // Augmented system [v_1 ... v_k | target].
    std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(k + 1));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t j = 0; j < k; ++j) a[r][j] = vectors[j].at(r);
        a[r][k] = target[r];
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < dim; ++col) {
        std::size_t piv = row;
        while (piv < dim && a[piv][col].is_zero()) ++piv;
        if (piv == dim) continue;
        std::swap(a[piv], a[row]);
        const Rat inv = a[row][col].inverse();
        for (std::size_t j = col; j <= k; ++j) a[row][j] *= inv;
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            const Rat f = a[r][col];
            for (std::size_t j = col; j <= k; ++j) a[r][j] -= f * a[row][j];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < dim; ++r) {
        if (!a[r][k].is_zero()) return std::nullopt;
    }
    std::vector<Rat> coeffs(k);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) coeffs[pivot_cols[i]] = a[i][k];
    return coeffs;
}

std::optional<ColumnsCertificate> columns_condition(const QMatrix& m, std::size_t max_cols) {
    if (m.cols() == 0) throw std::invalid_argument("columns_condition: matrix has no columns");
    if (m.cols() > max_cols || m.cols() > 31) {
        throw DimensionLimitExceeded("columns_condition: " + std::to_string(m.cols()) + " columns exceeds cap " +
                                     std::to_string(std::min<std::size_t>(max_cols, 31)));
    }
    const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << m.cols()) - 1);
    ColumnSearch search{m, m.cols(), full, std::vector<char>(std::size_t{full} + 1, 0), {}, {}};
    if (!search.run(0)) return std::nullopt;
    ColumnsCertificate cert;
    cert.blocks = std::move(search.blocks);
    // Block 0 sums to zero; its witness is the empty combination.
    for (auto& w : search.witnesses) {
        if (w.block > 0) cert.span_witnesses.push_back(std::move(w));
    }
    return cert;
}

std::optional<ColumnsCertificate> certify_partition(const QMatrix& m,
                                                    const std::vector<std::vector<std::size_t>>& blocks) {
    std::vector<char> seen(m.cols(), 0);
    for (const auto& b : blocks) {
        if (b.empty()) return std::nullopt;
        for (std::size_t c : b) {
            if (c >= m.cols() || seen[c]) return std::nullopt;
            seen[c] = 1;
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return std::nullopt;

    ColumnsCertificate cert;
    cert.blocks = blocks;
    std::vector<std::size_t> earlier;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        auto w = span_witness(m, earlier, blocks[i], i);
        if (!w) return std::nullopt;
        if (i > 0) cert.span_witnesses.push_back(std::move(*w));
        earlier.insert(earlier.end(), blocks[i].begin(), blocks[i].end());
        std::sort(earlier.begin(), earlier.end());
    }
    return cert;
}

bool verify_certificate(const QMatrix& m, const ColumnsCertificate& cert) {
    if (cert.blocks.empty()) return false;
    std::vector<int> block_of(m.cols(), -1);
    for (std::size_t i = 0; i < cert.blocks.size(); ++i) {
        if (cert.blocks[i].empty()) return false;
        for (std::size_t c : cert.blocks[i]) {
            if (c >= m.cols() || block_of[c] != -1) return false;
            block_of[c] = static_cast<int>(i);
        }
    }
    if (std::count(block_of.begin(), block_of.end(), -1) != 0) return false;

    auto s1 = block_sum(m, cert.blocks[0]);
    if (!std::all_of(s1.begin(), s1.end(), [](const Rat& v) { return v.is_zero(); })) return false;
    if (cert.span_witnesses.size() != cert.blocks.size() - 1) return false;

    for (const auto& w : cert.span_witnesses) {
        if (w.block == 0 || w.block >= cert.blocks.size()) return false;
        std::vector<Rat> combo(m.rows());
        for (const auto& [c, coeff] : w.combination) {
            if (c >= m.cols() || block_of[c] < 0 || static_cast<std::size_t>(block_of[c]) >= w.block) return false;
            for (std::size_t r = 0; r < m.rows(); ++r) combo[r] += coeff * m.at(r, c);
        }
        if (combo != block_sum(m, cert.blocks[w.block])) return false;
    }
    for (std::size_t i = 1; i < cert.blocks.size(); ++i) {
        if (cert.span_witnesses[i - 1].block != i) return false;
    }
    return true;
}

std::optional<std::vector<std::size_t>> single_equation_pr(std::span<const std::int64_t> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("single_equation_pr: empty coefficient list");
    if (coeffs.size() > kSubsetCap) {
        throw DimensionLimitExceeded("single_equation_pr: more than " + std::to_string(kSubsetCap) + " coefficients");
    }
    // Preorder DFS over increasing index sequences visits subsets in lexicographic order.
    std::vector<std::size_t> stack;
    std::optional<std::vector<std::size_t>> result;
    auto dfs = [&](auto&& self, std::size_t start, i128 sum) -> bool {
        for (std::size_t i = start; i < coeffs.size(); ++i) {
            stack.push_back(i);
            const i128 s = sum + coeffs[i];
            if (s == 0) {
                result = stack;
                return true;
            }
            if (self(self, i + 1, s)) return true;
            stack.pop_back();
        }
        return false;
    };
    dfs(dfs, 0, 0);
    return result;
}

std::optional<BigInt> inhomogeneous_constant_solution(std::span<const std::int64_t> coeffs, std::int64_t rhs) {
    if (coeffs.empty()) throw std::invalid_argument("inhomogeneous_constant_solution: empty coefficient list");
    BigInt s = 0;
    for (std::int64_t c : coeffs) s += BigInt(std::to_string(c), 10);
    const BigInt r(std::to_string(rhs), 10);
    if (s == 0) {
        if (r == 0) return BigInt(0);
        return std::nullopt;
    }
    if (!mpz_divisible_p(r.get_mpz_t(), s.get_mpz_t())) return std::nullopt;
    BigInt t = r / s;
    return t;
}

QMatrix brauer_system(std::int64_t h, std::span<const std::int64_t> j) {
    if (h == 0 || j.empty()) throw std::invalid_argument("brauer_system: need h != 0 and at least one shift");
    const std::size_t ell = j.size();
    QMatrix m(ell + 2, ell + 5);
    const Rat hh(static_cast<long>(h));
    // Column k holds variable x_{k+1}.
    for (std::size_t i = 0; i < ell; ++i) {
        m.at(i, i + 2) = hh;
        m.at(i, 1) = -hh;
        m.at(i, 0) = Rat(static_cast<long>(-j[i]));
    }
    m.at(ell, ell + 2) = hh;
    m.at(ell, 1) = Rat(-1);
    m.at(ell, ell + 4) = -hh;
    m.at(ell + 1, ell + 3) = hh;
    m.at(ell + 1, 1) = -hh;
    m.at(ell + 1, 0) = Rat(-1);
    return m;
}

std::vector<std::vector<std::size_t>> brauer_partition(std::size_t ell) {
    std::vector<std::size_t> second;
    for (std::size_t k = 1; k <= ell + 1; ++k) second.push_back(k);
    second.push_back(ell + 3);
    return {{ell + 2, ell + 4}, second, {0}};
}

} // namespace parreg
