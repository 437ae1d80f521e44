#pragma once

#include "qocd/communities.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qocd {

/// Entropy contributions (bits) of the joint membership of two binary rows.
/// h00..h11 are -P log2 P for each cell; hx and hy are the marginal entropies.
struct PairEntropies {
    double h00 = 0.0;
    double h01 = 0.0;
    double h10 = 0.0;
    double h11 = 0.0;
    double hx = 0.0;
    double hy = 0.0;

    /// H(X|Y) = H(X,Y) - H(Y).
    double conditional() const { return h00 + h01 + h10 + h11 - hy; }
    /// Rules out matching a row against the complement of another.
    bool admissible() const { return h11 + h00 > h01 + h10; }
};

/// From cell counts (n11 = both 1, n10 = x only, n01 = y only, n00 = neither).
PairEntropies pair_entropies(std::uint64_t n11, std::uint64_t n10, std::uint64_t n01, std::uint64_t n00);

/// From dense 0/1 rows of equal length n >= 1.
PairEntropies pair_entropies(std::span<const std::uint8_t> row_x, std::span<const std::uint8_t> row_y);

/// min over admissible candidates of H(X_k|Y_l), or H(X_k) if none is
/// admissible, divided by H(X_k). Zero when H(X_k) = 0.
double conditional_term(std::span<const std::uint8_t> row_x, std::span<const std::vector<std::uint8_t>> rows_y);

/// 1 - (mean_k term(X_k|Y) + mean_l term(Y_l|X)) / 2 with singleton rows
/// included. Throws DataError if the universes differ.
double nmi(const Covering& a, const Covering& b);

} // namespace qocd
