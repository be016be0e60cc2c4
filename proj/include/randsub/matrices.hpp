#pragma once

#include "randsub/core.hpp"

#include <cstddef>
#include <vector>

namespace randsub {

/// Dense square matrix with non-negative entries. Entry (i, j) is indexed by
/// (target letter, source letter), so column j describes the image of a_j.
class NonnegMatrix {
public:
    NonnegMatrix() = default;
    explicit NonnegMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {}
    NonnegMatrix(std::size_t dim, std::vector<double> row_major);

    std::size_t dim() const noexcept { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }

    double column_sum(std::size_t j) const;
    std::vector<double> apply(const std::vector<double>& x) const;            // M x
    std::vector<double> apply_transpose(const std::vector<double>& x) const;  // Mᵀ x

    bool operator==(const NonnegMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> entries_;
};

struct PerronData {
    double lambda = 0.0;
    std::vector<double> right;  // ‖R‖₁ = 1
    std::vector<double> left;   // ⟨L, R⟩ = 1
    double residual = 0.0;      // ‖MR − λR‖∞
    std::size_t iterations = 0;
};

inline constexpr double kDefaultPerronTolerance = 1e-12;
inline constexpr std::size_t kPerronIterationCap = 1'000'000;

/// M_ij = Σ_q p_jq · |w^(j,q)|_{a_i}.
NonnegMatrix substitution_matrix(const RandomSubstitution& sub);

/// 0/1 matrix: entry (i, j) is 1 iff a_i occurs in some image of a_j,
/// whatever its probability.
NonnegMatrix support_matrix(const RandomSubstitution& sub);

// Primitivity and irreducibility only look at the positive pattern.
bool is_primitive_matrix(const NonnegMatrix& m);
bool is_irreducible_matrix(const NonnegMatrix& m);

bool is_primitive(const RandomSubstitution& sub);
bool is_irreducible(const RandomSubstitution& sub);

/// Perron–Frobenius data by power iteration on M and Mᵀ from the uniform
/// vector, stopping once successive normalised iterates differ by less than
/// `tol` in the ∞-norm.
///
/// With `require_primitive` unset, a non-primitive matrix is accepted as long
/// as the iteration converges; this serves degenerate substitutions whose
/// support is primitive but whose expected matrix is not.
PerronData perron_data(const NonnegMatrix& m, double tol = kDefaultPerronTolerance,
                       bool require_primitive = true);

} // namespace randsub
