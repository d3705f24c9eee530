#pragma once

// Reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

inline double f1(double x) { return x <= 0.25 ? 4.0 * x : 1.25 - x; }

inline double f2(double x) {
    if (x <= 0.25) return 0.25 - x;
    if (x <= 0.5) return 4.0 * x - 1.0;
    return 2.0 - 2.0 * x;
}

inline double f2_after_f1(double x) {
    if (x <= 1.0 / 16) return 0.25 - 4.0 * x;
    if (x <= 1.0 / 8) return 16.0 * x - 1.0;
    if (x <= 0.25) return 2.0 - 8.0 * x;
    if (x <= 0.75) return 2.0 * x - 0.5;
    return 4.0 - 4.0 * x;
}

/// Sum over |j| <= w of |x_j - y_j| 2^-|j|, symbols read from maps (absent = 0).
inline double symbolic(const std::map<std::int64_t, int>& x, const std::map<std::int64_t, int>& y, int w) {
    auto at = [](const std::map<std::int64_t, int>& m, std::int64_t j) {
        auto it = m.find(j);
        return it == m.end() ? 0 : it->second;
    };
    double total = 0.0;
    for (std::int64_t j = -w; j <= w; ++j)
        if (at(x, j) != at(y, j)) total += std::ldexp(1.0, -static_cast<int>(std::llabs(j)));
    return total;
}

inline double hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
    auto one_way = [](const std::vector<double>& p, const std::vector<double>& q) {
        double worst = 0.0;
        for (double u : p) {
            double best = 1e300;
            for (double v : q) best = std::min(best, std::fabs(u - v));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_way(a, b), one_way(b, a));
}

/// Shift power composed after each of the first `steps` maps of the block sequence
/// (block r: 2^r identities, sigma^r, sigma^-r), by direct simulation.
inline std::vector<std::int64_t> block_powers(std::int64_t steps) {
    std::vector<std::int64_t> out;
    std::int64_t power = 0;
    for (int r = 1; static_cast<std::int64_t>(out.size()) < steps; ++r) {
        for (std::int64_t i = 0; i < (std::int64_t{1} << r); ++i) out.push_back(power);
        power += r;
        out.push_back(power);
        power -= r;
        out.push_back(power);
    }
    out.resize(static_cast<std::size_t>(steps));
    return out;
}

} // namespace oracle
