#pragma once

#include <cstddef>
#include <vector>

namespace randsub {

/// Truncated formal power series Σ c_k z^k, k = 0 … degree().
class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {}

    std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

    /// exp(f) for f with zero constant term.
    PowerSeries exp() const;
    /// log(f) for f with constant term 1.
    PowerSeries log() const;

private:
    std::vector<double> coeffs_;
};

} // namespace randsub
