#include <cmath>

#include "trajplan/mcda/kernels.hpp"

namespace trajplan::mcda {

Execution resolve(Execution exec, std::size_t cells) {
    if (exec != Execution::Auto) return exec;
    return cells >= kParallelCellThreshold ? Execution::Parallel : Execution::Serial;
}

namespace serial {

NormalizedMatrix normalize_columns(const DenseMatrix& raw) {
    const std::size_t m = raw.rows(), n = raw.cols();
    std::vector<double> sumsq(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) sumsq[j] += raw(i, j) * raw(i, j);

    NormalizedMatrix out{DenseMatrix(m, n), {}};
    for (std::size_t j = 0; j < n; ++j) {
        const double norm = std::sqrt(sumsq[j]);
        if (norm == 0.0) {
            out.zero_columns.push_back(j);
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) out.values(i, j) = raw(i, j) / norm;
    }
    return out;
}

DenseMatrix weight_columns(const DenseMatrix& normalized, std::span<const double> weights) {
    DenseMatrix out(normalized.rows(), normalized.cols());
    for (std::size_t i = 0; i < normalized.rows(); ++i)
        for (std::size_t j = 0; j < normalized.cols(); ++j)
            out(i, j) = weights[j] * normalized(i, j);
    return out;
}

void column_extremes(const DenseMatrix& v, std::vector<double>& max, std::vector<double>& min) {
    const std::size_t n = v.cols();
    max.assign(n, 0.0);
    min.assign(n, 0.0);
    if (v.rows() == 0) return;
    for (std::size_t j = 0; j < n; ++j) max[j] = min[j] = v(0, j);
    for (std::size_t i = 1; i < v.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (v(i, j) > max[j]) max[j] = v(i, j);
            if (v(i, j) < min[j]) min[j] = v(i, j);
        }
    }
}

Separations separations(const DenseMatrix& v, std::span<const double> positive_ideal,
                        std::span<const double> negative_ideal) {
    Separations out{std::vector<double>(v.rows()), std::vector<double>(v.rows())};
    for (std::size_t i = 0; i < v.rows(); ++i) {
        double sp = 0.0, sn = 0.0;
        for (std::size_t j = 0; j < v.cols(); ++j) {
            const double dp = v(i, j) - positive_ideal[j];
            const double dn = v(i, j) - negative_ideal[j];
            sp += dp * dp;
            sn += dn * dn;
        }
        out.positive[i] = std::sqrt(sp);
        out.negative[i] = std::sqrt(sn);
    }
    return out;
}

}  // namespace serial
}  // namespace trajplan::mcda
