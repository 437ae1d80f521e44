#include "qocd/compare.hpp"

#include "qocd/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qocd {

namespace {

double h(std::uint64_t count, double n)
{
    if (count == 0) return 0.0;
    const double p = static_cast<double>(count) / n;
    return -p * std::log2(p);
}

double normalized_term(double hx, double best_conditional)
{
    if (!(hx > 0.0)) return 0.0;
    return std::clamp(best_conditional / hx, 0.0, 1.0);
}

// Mean normalized conditional entropy of the rows of `x` given the rows of `y`.
// overlap[l] is built per row of x by walking the memberships of its members.
double mean_term(const Covering& x, const Covering& y)
{
    const auto rows_x = x.rows();
    const auto rows_y = y.rows();
    const std::uint64_t n = x.universe_size();
    std::vector<std::uint64_t> y_size(rows_y.size());
    for (std::size_t l = 0; l < rows_y.size(); ++l) y_size[l] = rows_y[l].size();

    std::vector<std::uint64_t> overlap(rows_y.size(), 0);
    double total = 0.0;
    for (const auto& row : rows_x) {
        std::fill(overlap.begin(), overlap.end(), 0);
        for (NodeIndex v : row) {
            for (std::size_t l : y.memberships(v)) ++overlap[l];
        }
        const std::uint64_t nx = row.size();
        const double hx = h(nx, static_cast<double>(n)) + h(n - nx, static_cast<double>(n));
        double best = hx;
        for (std::size_t l = 0; l < rows_y.size(); ++l) {
            const std::uint64_t n11 = overlap[l];
            const auto pe = pair_entropies(n11, nx - n11, y_size[l] - n11, n - nx - y_size[l] + n11);
            if (pe.admissible()) best = std::min(best, pe.conditional());
        }
        total += normalized_term(hx, best);
    }
    return rows_x.empty() ? 0.0 : total / static_cast<double>(rows_x.size());
}

} // namespace

PairEntropies pair_entropies(std::uint64_t n11, std::uint64_t n10, std::uint64_t n01, std::uint64_t n00)
{
    const std::uint64_t total = n11 + n10 + n01 + n00;
    if (total == 0) throw std::invalid_argument("rows must be non-empty");
    const double n = static_cast<double>(total);
    PairEntropies pe;
    pe.h00 = h(n00, n);
    pe.h01 = h(n01, n);
    pe.h10 = h(n10, n);
    pe.h11 = h(n11, n);
    pe.hx = h(n11 + n10, n) + h(n01 + n00, n);
    pe.hy = h(n11 + n01, n) + h(n10 + n00, n);
    return pe;
}

PairEntropies pair_entropies(std::span<const std::uint8_t> row_x, std::span<const std::uint8_t> row_y)
{
    if (row_x.size() != row_y.size()) throw std::invalid_argument("rows differ in length");
    std::uint64_t c[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t i = 0; i < row_x.size(); ++i) ++c[row_x[i] ? 1 : 0][row_y[i] ? 1 : 0];
    return pair_entropies(c[1][1], c[1][0], c[0][1], c[0][0]);
}

double conditional_term(std::span<const std::uint8_t> row_x, std::span<const std::vector<std::uint8_t>> rows_y)
{
    if (row_x.empty()) throw std::invalid_argument("rows must be non-empty");
    const std::uint64_t n = row_x.size();
    const auto nx = static_cast<std::uint64_t>(std::count_if(row_x.begin(), row_x.end(), [](auto b) { return b != 0; }));
    const double hx = h(nx, static_cast<double>(n)) + h(n - nx, static_cast<double>(n));
    double best = hx;
    for (const auto& row_y : rows_y) {
        const auto pe = pair_entropies(row_x, row_y);
        if (pe.admissible()) best = std::min(best, pe.conditional());
    }
    return normalized_term(hx, best);
}

double nmi(const Covering& a, const Covering& b)
{
    if (a.universe_size() != b.universe_size() ||
        !std::equal(a.universe().begin(), a.universe().end(), b.universe().begin())) {
        throw DataError("coverings are over different node universes");
    }
    if (a.universe_size() == 0) throw DataError("coverings have an empty universe");
    const double value = 1.0 - 0.5 * (mean_term(a, b) + mean_term(b, a));
    return std::clamp(value, 0.0, 1.0);
}

} // namespace qocd
