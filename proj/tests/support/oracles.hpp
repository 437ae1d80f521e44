#pragma once

// Slow reference implementations used to pin the library against values that
// were computed a different way. Nothing here is shared with src/.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Bits = std::vector<std::uint8_t>;

// Miller-Madow entropy in bits from a histogram keyed by arbitrary tuples.
template <typename Key>
double mm_entropy_bits(const std::map<Key, std::size_t>& hist)
{
    std::size_t n = 0;
    for (const auto& [k, c] : hist) n += c;
    double h = 0.0;
    for (const auto& [k, c] : hist) {
        const double p = static_cast<double>(c) / static_cast<double>(n);
        h -= p * std::log(p);
    }
    h /= std::log(2.0);
    return h + (static_cast<double>(hist.size()) - 1.0) / (2.0 * static_cast<double>(n));
}

// H[X_t | X_past] - H[X_t | X_past, Y_past] with every joint entropy adjusted separately.
inline double transfer_entropy(const Bits& x, const Bits& y, int k)
{
    using V = std::vector<int>;
    std::map<V, std::size_t> fx, px, fxy, pxy;
    for (std::size_t t = static_cast<std::size_t>(k); t < x.size(); ++t) {
        V xp, yp;
        for (int j = 1; j <= k; ++j) {
            xp.push_back(x[t - j]);
            yp.push_back(y[t - j]);
        }
        V a = xp;
        a.push_back(x[t]);
        V b = xp;
        b.insert(b.end(), yp.begin(), yp.end());
        V c = b;
        c.push_back(x[t]);
        ++fx[a];
        ++px[xp];
        ++fxy[c];
        ++pxy[b];
    }
    const double cond_x = mm_entropy_bits(fx) - mm_entropy_bits(px);
    const double cond_xy = mm_entropy_bits(fxy) - mm_entropy_bits(pxy);
    return cond_x - cond_xy;
}

// Overlapping-cover NMI evaluated straight from dense 0/1 membership rows.
inline double h(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

inline double cover_term(const std::vector<Bits>& xs, const std::vector<Bits>& ys)
{
    double sum = 0.0;
    for (const auto& x : xs) {
        const double n = static_cast<double>(x.size());
        double ones = 0;
        for (auto v : x) ones += v;
        const double hx = h(ones / n) + h((n - ones) / n);
        double best = hx;
        for (const auto& y : ys) {
            double c[2][2] = {{0, 0}, {0, 0}};
            for (std::size_t i = 0; i < x.size(); ++i) c[x[i]][y[i]] += 1;
            const double h11 = h(c[1][1] / n), h00 = h(c[0][0] / n);
            const double h10 = h(c[1][0] / n), h01 = h(c[0][1] / n);
            if (!(h11 + h00 > h01 + h10)) continue;
            const double ny = c[0][1] + c[1][1];
            const double hy = h(ny / n) + h((n - ny) / n);
            best = std::min(best, h11 + h00 + h01 + h10 - hy);
        }
        sum += hx > 0.0 ? best / hx : 0.0;
    }
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

inline double cover_nmi(const std::vector<Bits>& a, const std::vector<Bits>& b)
{
    return 1.0 - 0.5 * (cover_term(a, b) + cover_term(b, a));
}

// Rows for a covering given as member index lists, singletons appended as their own rows.
inline std::vector<Bits> dense_rows(std::size_t n, const std::vector<std::vector<std::size_t>>& comms)
{
    std::vector<Bits> rows;
    std::vector<bool> covered(n, false);
    std::set<std::vector<std::size_t>> seen;
    for (auto c : comms) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        if (c.size() < 2 || !seen.insert(c).second) continue;
        Bits r(n, 0);
        for (auto v : c) {
            r[v] = 1;
            covered[v] = true;
        }
        rows.push_back(r);
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (covered[v]) continue;
        Bits r(n, 0);
        r[v] = 1;
        rows.push_back(r);
    }
    return rows;
}

inline Bits random_bits(std::mt19937_64& rng, std::size_t n, double p = 0.5)
{
    std::bernoulli_distribution d(p);
    Bits b(n);
    for (auto& v : b) v = d(rng) ? 1 : 0;
    return b;
}

} // namespace oracle

namespace testing {

// Fresh scratch directory under the build tree, removed on destruction.
class ScratchDir {
public:
    explicit ScratchDir(const std::string& name)
        : path_(std::filesystem::temp_directory_path() / ("qocd_test_" + name))
    {
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~ScratchDir() { std::filesystem::remove_all(path_); }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

private:
    std::filesystem::path path_;
};

} // namespace testing
