#include "entroflux/oracle.hpp"

#include "entroflux/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace entroflux::oracle {

namespace {

constexpr double kDivergence = 1e12;

using Mat4 = std::array<double, 16>;

Mat4 to_array(const RealMatrix& m) {
    Mat4 out{};
    std::copy(m.data().begin(), m.data().end(), out.begin());
    return out;
}

// A V + V A^T + D
void rhs(const Mat4& a, const Mat4& d, const Mat4& v, Mat4& out) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = d[i * 4 + j];
            for (int k = 0; k < 4; ++k) s += a[i * 4 + k] * v[k * 4 + j] + v[i * 4 + k] * a[j * 4 + k];
            out[i * 4 + j] = s;
        }
}

}  // namespace

OdeConfig default_config(const RealMatrix& a) {
    const double margin = linalg::stability_margin(a);
    if (!(margin > 0.0)) throw Unstable("default_config: drift matrix is not strictly stable");
    OdeConfig cfg;
    cfg.dt = 0.01 / a.max_abs();
    cfg.t_max = 50.0 / margin;
    return cfg;
}

model::CovMatrix integrate_covariance(const RealMatrix& a, const RealMatrix& d, const OdeConfig& cfg) {
    if (a.rows() != 4 || !a.square() || d.rows() != 4 || !d.square()) {
        throw std::invalid_argument("integrate_covariance: expected 4x4 matrices");
    }
    if (!(cfg.dt > 0.0) || !(cfg.t_max >= 0.0)) throw std::invalid_argument("integrate_covariance: bad time grid");

    const Mat4 am = to_array(a);
    const Mat4 dm = to_array(d);
    Mat4 v = to_array(cfg.v0 ? cfg.v0->matrix() : model::CovMatrix::vacuum().matrix());
    Mat4 k1, k2, k3, k4, tmp;

    const auto steps = static_cast<long long>(std::ceil(cfg.t_max / cfg.dt - 1e-9));
    const double h = steps > 0 ? cfg.t_max / static_cast<double>(steps) : 0.0;

    for (long long s = 0; s < steps; ++s) {
        rhs(am, dm, v, k1);
        for (int i = 0; i < 16; ++i) tmp[i] = v[i] + 0.5 * h * k1[i];
        rhs(am, dm, tmp, k2);
        for (int i = 0; i < 16; ++i) tmp[i] = v[i] + 0.5 * h * k2[i];
        rhs(am, dm, tmp, k3);
        for (int i = 0; i < 16; ++i) tmp[i] = v[i] + h * k3[i];
        rhs(am, dm, tmp, k4);
        double norm = 0.0;
        for (int i = 0; i < 16; ++i) v[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        for (int i = 0; i < 4; ++i) {
            double row = 0.0;
            for (int j = 0; j < 4; ++j) {
                if (j > i) {
                    const double m = 0.5 * (v[i * 4 + j] + v[j * 4 + i]);
                    v[i * 4 + j] = v[j * 4 + i] = m;
                }
            }
            for (int j = 0; j < 4; ++j) row += std::abs(v[i * 4 + j]);
            norm = std::max(norm, row);
        }
        if (!(norm <= kDivergence)) {
            throw Diverged("integrate_covariance: ||V|| exceeded 1e12 at t = " + std::to_string((s + 1) * h));
        }
    }

    RealMatrix out(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) out(i, j) = v[i * 4 + j];
    return model::CovMatrix(out);
}

}  // namespace entroflux::oracle
