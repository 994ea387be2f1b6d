#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "cbpenta/errors.hpp"

namespace cbpenta {

/// Small vectors (block rows of x and f, coupling unknowns u and v)
/// are plain contiguous doubles.
using SmallVec = std::vector<double>;

/// Relative pivot tolerance used by mat_invert and the coupling-system
/// factorization: a pivot counts as zero when its magnitude is at most
/// tolerance * ||A||_inf.
inline constexpr double kPivotTol = 1e2 * std::numeric_limits<double>::epsilon();

/// Dense m-by-m real matrix, row-major. The atomic unit of the banded
/// structure; every band of the system is a sequence of these.
class Block {
public:
    Block() = default;

    /// Zero block of the given dimension.
    explicit Block(int dim);

    /// Row-major entries; size must be dim*dim and all values finite.
    Block(int dim, std::initializer_list<double> entries);

    Block(const Block&) = default;
    Block& operator=(const Block&) = default;
    // moved-from blocks are empty (dim 0), never a dangling dimension
    Block(Block&& other) noexcept
        : dim_(std::exchange(other.dim_, 0)), a_(std::move(other.a_)) {}
    Block& operator=(Block&& other) noexcept {
        dim_ = std::exchange(other.dim_, 0);
        a_ = std::move(other.a_);
        return *this;
    }

    static Block identity(int dim);

    int dim() const noexcept { return dim_; }
    bool empty() const noexcept { return dim_ == 0; }

    double& operator()(int i, int j) noexcept { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    double operator()(int i, int j) const noexcept { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

    double* data() noexcept { return a_.data(); }
    const double* data() const noexcept { return a_.data(); }
    std::span<const double> entries() const noexcept { return a_; }

    bool all_finite() const noexcept;

    Block& operator+=(const Block& rhs);
    Block& operator-=(const Block& rhs);
    Block& operator*=(double s) noexcept;

    friend Block operator+(Block lhs, const Block& rhs) { return lhs += rhs; }
    friend Block operator-(Block lhs, const Block& rhs) { return lhs -= rhs; }
    friend Block operator*(double s, Block b) { return b *= s; }
    friend bool operator==(const Block&, const Block&) = default;

private:
    int dim_ = 0;
    std::vector<double> a_;
};

/// out = a * b. out must not alias a or b; it is resized as needed.
void mul_into(const Block& a, const Block& b, Block& out);

/// acc += a * b and acc -= a * b. acc must not alias a or b.
void mul_add_into(const Block& a, const Block& b, Block& acc);
void mul_sub_into(const Block& a, const Block& b, Block& acc);

/// Standard matrix product. Throws UsageError on dimension mismatch.
Block mat_mul(const Block& a, const Block& b);

/// Inverse by row-pivoted elimination. Throws SingularBlockError (stage 0)
/// when a pivot magnitude falls to pivot_tol * ||a||_inf or below.
Block mat_invert(const Block& a, double pivot_tol = kPivotTol);

/// Circulant matrix from its first row: entry (i,j) = first_row[(j-i) mod m],
/// so row i is the first row rotated right by i.
Block circulant(std::span<const double> first_row);

/// y = a*x, y += a*x, y -= a*x for an m-vector x. Spans must not alias.
void matvec_into(const Block& a, std::span<const double> x, std::span<double> y);
void matvec_add_into(const Block& a, std::span<const double> x, std::span<double> y);
void matvec_sub_into(const Block& a, std::span<const double> x, std::span<double> y);

/// Maximum absolute entry; 0 for an empty sequence.
double inf_norm_vec(std::span<const double> v) noexcept;

/// Matrix infinity norm (maximum absolute row sum).
double inf_norm(const Block& a) noexcept;

}  // namespace cbpenta
