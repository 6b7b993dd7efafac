#include "entroflux/linalg.hpp"

#include "entroflux/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace entroflux::linalg {

namespace {

void require_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("RealMatrix: non-finite entry");
        }
    }
}

void require_same_shape(const RealMatrix& a, const RealMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch");
    }
}

}  // namespace

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("RealMatrix: dimensions must be positive");
    }
}

RealMatrix::RealMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    if (rows_ == 0 || cols_ == 0) {
        throw std::invalid_argument("RealMatrix: dimensions must be positive");
    }
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("RealMatrix: ragged initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_);
}

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

RealMatrix RealMatrix::diagonal(std::span<const double> d) {
    require_finite(d);
    RealMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

RealMatrix RealMatrix::diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
}

RealMatrix RealMatrix::transposed() const {
    RealMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double RealMatrix::trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
}

double RealMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

double RealMatrix::max_abs() const {
    double best = 0.0;
    for (double x : data_) best = std::max(best, std::abs(x));
    return best;
}

RealMatrix RealMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw std::out_of_range("RealMatrix::block: out of range");
    }
    RealMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

RealMatrix operator+(const RealMatrix& a, const RealMatrix& b) {
    require_same_shape(a, b, "operator+");
    RealMatrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
    return r;
}

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b) {
    require_same_shape(a, b, "operator-");
    RealMatrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
    return r;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols_ != b.rows_) {
        throw std::invalid_argument("operator*: dimension mismatch");
    }
    RealMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

RealMatrix operator*(double s, const RealMatrix& a) {
    RealMatrix r = a;
    for (double& x : r.data_) x *= s;
    return r;
}

std::vector<double> operator*(const RealMatrix& a, std::span<const double> x) {
    if (a.cols_ != x.size()) {
        throw std::invalid_argument("operator*: vector length mismatch");
    }
    std::vector<double> y(a.rows_, 0.0);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
}

std::vector<double> linear_solve(const RealMatrix& m, std::span<const double> b) {
    if (!m.square()) throw std::invalid_argument("linear_solve: matrix must be square");
    const std::size_t n = m.rows();
    if (b.size() != n) throw std::invalid_argument("linear_solve: rhs length mismatch");
    require_finite(m.data());
    require_finite(b);

    const double threshold = tol::pivot * m.norm_inf();
    RealMatrix lu = m;
    std::vector<double> x(b.begin(), b.end());

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            // strict '>' keeps the lowest row index on ties
            if (std::abs(lu(i, k)) > best) {
                best = std::abs(lu(i, k));
                p = i;
            }
        }
        if (best < threshold || best == 0.0) {
            throw SingularMatrix("linear_solve: pivot " + std::to_string(best) + " below threshold at column " +
                                 std::to_string(k));
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(x[k], x[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / lu(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
            x[i] -= f * x[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = x[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= lu(k, j) * x[j];
        x[k] = s / lu(k, k);
    }
    return x;
}

double determinant(const RealMatrix& m) {
    if (!m.square()) throw std::invalid_argument("determinant: matrix must be square");
    const std::size_t n = m.rows();
    switch (n) {
        case 1:
            return m(0, 0);
        case 2:
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        default:
            break;
    }
    // Elimination with partial pivoting; no singularity threshold, a zero
    // pivot simply yields det = 0.
    RealMatrix lu = m;
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
        if (lu(p, k) == 0.0) return 0.0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            det = -det;
        }
        det *= lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / lu(k, k);
            for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return det;
}

RealMatrix solve_lyapunov(const RealMatrix& a, const RealMatrix& d) {
    if (!a.square() || !d.square() || a.rows() != d.rows()) {
        throw std::invalid_argument("solve_lyapunov: A and D must be square and of equal size");
    }
    const std::size_t n = a.rows();
    const std::size_t nn = n * n;

    // Row-major vec: V(i,j) -> index i*n + j. Then (A V)(i,j) = sum_k A(i,k) V(k,j)
    // and (V A^T)(i,j) = sum_k A(j,k) V(i,k).
    RealMatrix k(nn, nn);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t row = i * n + j;
            for (std::size_t m = 0; m < n; ++m) {
                k(row, m * n + j) += a(i, m);
                k(row, i * n + m) += a(j, m);
            }
        }
    std::vector<double> rhs(nn);
    for (std::size_t i = 0; i < nn; ++i) rhs[i] = -d.data()[i];

    const std::vector<double> x = linear_solve(k, rhs);
    RealMatrix v(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v(i, j) = 0.5 * (x[i * n + j] + x[j * n + i]);
    return v;
}

double lyapunov_residual(const RealMatrix& a, const RealMatrix& v, const RealMatrix& d) {
    return (a * v + v * a.transposed() + d).norm_inf();
}

QuarticCoeffs characteristic_quartic(const RealMatrix& a) {
    if (a.rows() != 4 || a.cols() != 4) {
        throw std::invalid_argument("characteristic_quartic: A must be 4x4");
    }
    // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
    QuarticCoeffs q;
    q.c[4] = 1.0;
    RealMatrix m(4, 4);
    const RealMatrix id = RealMatrix::identity(4);
    for (int step = 1; step <= 4; ++step) {
        m = a * m + q.c[static_cast<std::size_t>(4 - step + 1)] * id;
        q.c[static_cast<std::size_t>(4 - step)] = -(a * m).trace() / step;
    }
    return q;
}

bool routh_hurwitz_stable(const QuarticCoeffs& q) {
    const auto& c = q.c;
    if (c[4] != 1.0) {
        throw std::invalid_argument("routh_hurwitz_stable: quartic must be monic");
    }
    for (std::size_t k = 0; k < 4; ++k) {
        if (!(c[k] > tol::hurwitz_margin)) return false;
    }
    const double hurwitz3 = c[3] * c[2] * c[1] - c[1] * c[1] - c[3] * c[3] * c[0];
    return hurwitz3 > tol::hurwitz_margin;
}

double stability_margin(const RealMatrix& a) {
    if (!routh_hurwitz_stable(characteristic_quartic(a))) return 0.0;
    // The eigenvalue real parts average to tr(A)/4, so the slowest one cannot be
    // further left than that.
    double lo = 0.0;
    double hi = -a.trace() / 4.0;
    const RealMatrix id = RealMatrix::identity(4);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (routh_hurwitz_stable(characteristic_quartic(a + mid * id)))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

bool is_symmetric(const RealMatrix& m, double tol) {
    if (!m.square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol) return false;
    return true;
}

bool is_symmetric_psd(const RealMatrix& m, double tol) {
    if (!m.square()) throw std::invalid_argument("is_symmetric_psd: matrix must be square");
    const std::size_t n = m.rows();
    if (n > 12) throw std::invalid_argument("is_symmetric_psd: principal-minor test limited to n <= 12");
    if (!is_symmetric(m, tol)) return false;

    std::vector<std::size_t> idx;
    idx.reserve(n);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        idx.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        RealMatrix sub(idx.size(), idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = m(idx[r], idx[c]);
        if (determinant(sub) < -tol) return false;
    }
    return true;
}

}  // namespace entroflux::linalg
