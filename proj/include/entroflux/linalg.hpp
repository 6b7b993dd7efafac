// linalg.hpp: small dense real linear algebra for the two-mode Gaussian model.
//
// Everything here works on tiny matrices (4x4, the 16x16 vectorized Lyapunov
// system, the 8x8 physicality embedding), so plain row-major storage and
// textbook algorithms are used throughout.

#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace entroflux::linalg {

namespace tol {
inline constexpr double solve_residual = 1e-10;
inline constexpr double pivot = 1e-14;
inline constexpr double psd_slack = 1e-12;
inline constexpr double hurwitz_margin = 1e-12;
}  // namespace tol

class RealMatrix {
public:
    RealMatrix(std::size_t rows, std::size_t cols);
    RealMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static RealMatrix identity(std::size_t n);
    static RealMatrix diagonal(std::span<const double> d);
    static RealMatrix diagonal(std::initializer_list<double> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> data() const noexcept { return data_; }

    RealMatrix transposed() const;
    double trace() const;
    // Max absolute row sum.
    double norm_inf() const;
    // Largest absolute entry.
    double max_abs() const;

    // Sub-block starting at (r0, c0).
    RealMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    friend RealMatrix operator+(const RealMatrix& a, const RealMatrix& b);
    friend RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);
    friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
    friend RealMatrix operator*(double s, const RealMatrix& a);
    friend std::vector<double> operator*(const RealMatrix& a, std::span<const double> x);
    friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

// Monic characteristic polynomial det(lambda I - A) of a 4x4 matrix;
// c[k] multiplies lambda^k, so c[4] == 1.
struct QuarticCoeffs {
    std::array<double, 5> c{};
};

// Gaussian elimination with partial pivoting (ties go to the lowest row).
// Throws SingularMatrix when a pivot falls below tol::pivot * ||M||_inf.
std::vector<double> linear_solve(const RealMatrix& m, std::span<const double> b);

double determinant(const RealMatrix& m);

// Solves A V + V A^T + D = 0 through the 16x16 Kronecker system
// (A (x) I + I (x) A) vec(V) = -vec(D), then symmetrizes.
RealMatrix solve_lyapunov(const RealMatrix& a, const RealMatrix& d);

// ||A V + V A^T + D||_inf
double lyapunov_residual(const RealMatrix& a, const RealMatrix& v, const RealMatrix& d);

// Faddeev-LeVerrier recursion.
QuarticCoeffs characteristic_quartic(const RealMatrix& a);

// Strict Routh-Hurwitz test for a monic quartic; anything within
// tol::hurwitz_margin of a boundary counts as unstable.
bool routh_hurwitz_stable(const QuarticCoeffs& q);

// Largest sigma such that every eigenvalue of A satisfies Re(lambda) <= -sigma,
// located by bisection on Routh-Hurwitz applied to A + sigma I. Returns 0 for
// matrices that are not strictly stable.
double stability_margin(const RealMatrix& a);

// Positive semidefiniteness through all principal minors (>= -tol); exact
// nested determinants for every subset, so only meant for n <= 12.
bool is_symmetric_psd(const RealMatrix& m, double tol = tol::psd_slack);

bool is_symmetric(const RealMatrix& m, double tol = 0.0);

}  // namespace entroflux::linalg
