#include "randsub/series.hpp"

#include "randsub/error.hpp"

#include <cmath>

namespace randsub {

// Both directions come from f' = g' f with f = exp(g):
//   n f_n = Σ_{k=1..n} k g_k f_{n−k}.

PowerSeries PowerSeries::exp() const {
    if (coeffs_.empty())
        return PowerSeries({1.0});
    if (coeffs_[0] != 0.0)
        throw Error(ErrorKind::InvalidArgument, "exp needs a series with zero constant term");
    const std::size_t n = coeffs_.size();
    std::vector<double> f(n, 0.0);
    f[0] = 1.0;
    for (std::size_t m = 1; m < n; ++m) {
        double s = 0.0;
        for (std::size_t k = 1; k <= m; ++k)
            s += static_cast<double>(k) * coeffs_[k] * f[m - k];
        f[m] = s / static_cast<double>(m);
    }
    return PowerSeries(std::move(f));
}

PowerSeries PowerSeries::log() const {
    if (coeffs_.empty() || std::abs(coeffs_[0] - 1.0) > 1e-15)
        throw Error(ErrorKind::InvalidArgument, "log needs a series with constant term 1");
    const std::size_t n = coeffs_.size();
    std::vector<double> g(n, 0.0);
    for (std::size_t m = 1; m < n; ++m) {
        double s = static_cast<double>(m) * coeffs_[m];
        for (std::size_t k = 1; k < m; ++k)
            s -= static_cast<double>(k) * g[k] * coeffs_[m - k];
        g[m] = s / static_cast<double>(m);
    }
    return PowerSeries(std::move(g));
}

} // namespace randsub
