#include <cmath>
#include <cstddef>

#ifdef TRAJPLAN_HAVE_OPENMP
#include <omp.h>
#endif

#include "trajplan/mcda/kernels.hpp"

// Work is split over whole columns or whole rows. Every per-column or per-row
// sum runs in ascending element order inside one thread, which keeps the
// results identical to the serial kernels.

namespace trajplan::mcda::parallel {

using Index = std::ptrdiff_t;

int worker_count() {
#ifdef TRAJPLAN_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

NormalizedMatrix normalize_columns(const DenseMatrix& raw) {
    const Index m = static_cast<Index>(raw.rows());
    const Index n = static_cast<Index>(raw.cols());
    std::vector<double> norms(raw.cols(), 0.0);

#pragma omp parallel for schedule(static)
    for (Index j = 0; j < n; ++j) {
        double sumsq = 0.0;
        for (Index k = 0; k < m; ++k) sumsq += raw(k, j) * raw(k, j);
        norms[j] = std::sqrt(sumsq);
    }

    NormalizedMatrix out{DenseMatrix(raw.rows(), raw.cols()), {}};
    for (Index j = 0; j < n; ++j)
        if (norms[j] == 0.0) out.zero_columns.push_back(static_cast<std::size_t>(j));

#pragma omp parallel for schedule(static)
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (norms[j] != 0.0) out.values(i, j) = raw(i, j) / norms[j];
        }
    }
    return out;
}

DenseMatrix weight_columns(const DenseMatrix& normalized, std::span<const double> weights) {
    const Index m = static_cast<Index>(normalized.rows());
    const Index n = static_cast<Index>(normalized.cols());
    DenseMatrix out(normalized.rows(), normalized.cols());
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) out(i, j) = weights[j] * normalized(i, j);
    return out;
}

void column_extremes(const DenseMatrix& v, std::vector<double>& max, std::vector<double>& min) {
    const Index m = static_cast<Index>(v.rows());
    const Index n = static_cast<Index>(v.cols());
    max.assign(v.cols(), 0.0);
    min.assign(v.cols(), 0.0);
    if (m == 0) return;
#pragma omp parallel for schedule(static)
    for (Index j = 0; j < n; ++j) {
        double hi = v(0, j), lo = v(0, j);
        for (Index k = 1; k < m; ++k) {
            if (v(k, j) > hi) hi = v(k, j);
            if (v(k, j) < lo) lo = v(k, j);
        }
        max[j] = hi;
        min[j] = lo;
    }
}

Separations separations(const DenseMatrix& v, std::span<const double> positive_ideal,
                        std::span<const double> negative_ideal) {
    const Index m = static_cast<Index>(v.rows());
    const Index n = static_cast<Index>(v.cols());
    Separations out{std::vector<double>(v.rows()), std::vector<double>(v.rows())};
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < m; ++i) {
        double sp = 0.0, sn = 0.0;
        for (Index j = 0; j < n; ++j) {
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

}  // namespace trajplan::mcda::parallel
