#include "randsub/matrices.hpp"

#include "randsub/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

namespace randsub {

NonnegMatrix::NonnegMatrix(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
    if (entries_.size() != dim_ * dim_)
        throw Error(ErrorKind::InvalidArgument, "matrix entry count does not match dimension");
    for (double x : entries_)
        if (!(x >= 0.0))
            throw Error(ErrorKind::InvalidArgument, "matrix entries must be non-negative");
}

double NonnegMatrix::column_sum(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        s += (*this)(i, j);
    return s;
}

std::vector<double> NonnegMatrix::apply(const std::vector<double>& x) const {
    std::vector<double> y(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j)
            s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<double> NonnegMatrix::apply_transpose(const std::vector<double>& x) const {
    std::vector<double> y(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            y[j] += (*this)(i, j) * x[i];
    return y;
}

NonnegMatrix substitution_matrix(const RandomSubstitution& sub) {
    NonnegMatrix m(sub.size());
    for (const auto& rule : sub.rules())
        for (const auto& im : rule.images)
            for (Letter a : im.word)
                m(a, rule.source) += im.probability;
    return m;
}

NonnegMatrix support_matrix(const RandomSubstitution& sub) {
    NonnegMatrix m(sub.size());
    for (const auto& rule : sub.rules())
        for (const auto& im : rule.images)
            for (Letter a : im.word)
                m(a, rule.source) = 1.0;
    return m;
}

namespace {

// Boolean square matrix with bit-packed rows.
class BoolMatrix {
public:
    explicit BoolMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    static BoolMatrix pattern(const NonnegMatrix& m) {
        BoolMatrix b(m.dim());
        for (std::size_t i = 0; i < m.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j)
                if (m(i, j) > 0.0)
                    b.set(i, j);
        return b;
    }

    void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
    bool get(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U; }

    BoolMatrix operator*(const BoolMatrix& rhs) const {
        BoolMatrix out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            std::uint64_t* dst = &out.bits_[i * words_];
            for (std::size_t k = 0; k < n_; ++k) {
                if (!get(i, k))
                    continue;
                const std::uint64_t* src = &rhs.bits_[k * words_];
                for (std::size_t w = 0; w < words_; ++w)
                    dst[w] |= src[w];
            }
        }
        return out;
    }

    bool all_set() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (!get(i, j))
                    return false;
        return true;
    }

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

} // namespace

bool is_primitive_matrix(const NonnegMatrix& m) {
    const std::size_t n = m.dim();
    if (n == 0)
        return false;
    // Wielandt: a primitive matrix has A^k > 0 for every k ≥ n² − 2n + 2, and a
    // non-primitive one never has a positive power. Squaring reaches such k.
    const std::size_t bound = n * n - 2 * n + 2;
    BoolMatrix power = BoolMatrix::pattern(m);
    for (std::size_t k = 1; k < bound; k *= 2)
        power = power * power;
    return power.all_set();
}

bool is_irreducible_matrix(const NonnegMatrix& m) {
    const std::size_t n = m.dim();
    if (n == 0)
        return false;
    BoolMatrix power = BoolMatrix::pattern(m);
    for (std::size_t i = 0; i < n; ++i)
        power.set(i, i);
    // (I + A)^k is monotone in k, so any k ≥ n − 1 decides.
    for (std::size_t k = 1; k < n - 1; k *= 2)
        power = power * power;
    return power.all_set();
}

bool is_primitive(const RandomSubstitution& sub) { return is_primitive_matrix(support_matrix(sub)); }

bool is_irreducible(const RandomSubstitution& sub) { return is_irreducible_matrix(support_matrix(sub)); }

namespace {

double normalise_l1(std::vector<double>& x) {
    double s = 0.0;
    for (double v : x)
        s += v;
    if (s > 0.0)
        for (double& v : x)
            v /= s;
    return s;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

template <typename Step>
std::vector<double> power_iterate(std::size_t n, double tol, Step step, std::size_t& iterations) {
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    for (std::size_t it = 1; it <= kPerronIterationCap; ++it) {
        std::vector<double> y = step(x);
        if (normalise_l1(y) == 0.0)
            throw Error(ErrorKind::NoConvergence, "power iteration collapsed to the zero vector");
        double diff = max_abs_diff(x, y);
        x = std::move(y);
        if (diff < tol) {
            // Keep iterating while the iterates still move closer together,
            // which drives the error to rounding level at little cost.
            for (std::size_t extra = 0; extra < 256 && diff > 0.0; ++extra, ++it) {
                y = step(x);
                normalise_l1(y);
                double next = max_abs_diff(x, y);
                if (next >= diff)
                    break;
                diff = next;
                x = std::move(y);
            }
            iterations = std::max(iterations, it);
            return x;
        }
    }
    throw Error(ErrorKind::NoConvergence,
                "power iteration did not converge within " + std::to_string(kPerronIterationCap) + " iterations");
}

} // namespace

PerronData perron_data(const NonnegMatrix& m, double tol, bool require_primitive) {
    const std::size_t n = m.dim();
    if (n == 0)
        throw Error(ErrorKind::InvalidArgument, "empty matrix");
    if (!(tol > 0.0))
        throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (require_primitive && !is_primitive_matrix(m))
        throw Error(ErrorKind::NotPrimitiveMatrix, "matrix is not primitive");

    PerronData pd;
    pd.right = power_iterate(n, tol, [&](const std::vector<double>& x) { return m.apply(x); }, pd.iterations);
    std::vector<double> left =
        power_iterate(n, tol, [&](const std::vector<double>& x) { return m.apply_transpose(x); }, pd.iterations);

    // With ‖R‖₁ = 1 and R ≥ 0, λ = Σ_i (MR)_i.
    std::vector<double> mr = m.apply(pd.right);
    pd.lambda = 0.0;
    for (double v : mr)
        pd.lambda += v;
    pd.residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        pd.residual = std::max(pd.residual, std::abs(mr[i] - pd.lambda * pd.right[i]));

    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        dot += left[i] * pd.right[i];
    if (!(dot > 0.0))
        throw Error(ErrorKind::NoConvergence, "left and right eigenvectors are orthogonal");
    for (double& v : left)
        v /= dot;
    pd.left = std::move(left);
    return pd;
}

} // namespace randsub
