#pragma once

// Brute-force TOPSIS used only as a test oracle. Deliberately shares no code
// with the library: plain nested vectors, one pass per textbook step.

#include <cmath>
#include <vector>

namespace trajplan::testing {

struct ReferenceResult {
    std::vector<double> scores;
    bool degenerate = false;
};

// `benefit[j]` true for larger-is-better columns; `weights` already sum to 1.
inline ReferenceResult reference_topsis(const std::vector<std::vector<double>>& x,
                                        const std::vector<double>& weights,
                                        const std::vector<bool>& benefit) {
    const std::size_t m = x.size();
    const std::size_t n = weights.size();
    std::vector<std::vector<double>> v(m, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) total += std::pow(x[i][j], 2);
        const double len = std::sqrt(total);
        for (std::size_t i = 0; i < m; ++i) v[i][j] = len > 0.0 ? weights[j] * (x[i][j] / len) : 0.0;
    }

    std::vector<double> best(n), worst(n);
    for (std::size_t j = 0; j < n; ++j) {
        double hi = v[0][j], lo = v[0][j];
        for (std::size_t i = 0; i < m; ++i) {
            hi = std::fmax(hi, v[i][j]);
            lo = std::fmin(lo, v[i][j]);
        }
        best[j] = benefit[j] ? hi : lo;
        worst[j] = benefit[j] ? lo : hi;
    }

    ReferenceResult out;
    for (std::size_t i = 0; i < m; ++i) {
        double to_best = 0.0, to_worst = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            to_best += (v[i][j] - best[j]) * (v[i][j] - best[j]);
            to_worst += (v[i][j] - worst[j]) * (v[i][j] - worst[j]);
        }
        to_best = std::sqrt(to_best);
        to_worst = std::sqrt(to_worst);
        if (to_best + to_worst == 0.0) {
            out.scores.push_back(1.0);
            out.degenerate = true;
        } else {
            out.scores.push_back(to_worst / (to_best + to_worst));
        }
    }
    return out;
}

}  // namespace trajplan::testing
