#include "nsfp/galerkin/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace nsfp {

std::vector<Wavevector> half_space_wavevectors(const Torus& torus, int max_index) {
    std::vector<Wavevector> out;
    const int R = max_index;
    const int zr = torus.dim == 3 ? R : 0;
    for (int i = -R; i <= R; ++i) {
        for (int j = -R; j <= R; ++j) {
            for (int l = -zr; l <= zr; ++l) {
                const Eigen::Vector3i n(i, j, l);
                int first = 0;
                for (int a = 0; a < 3; ++a) {
                    if (n(a) != 0) {
                        first = n(a);
                        break;
                    }
                }
                if (first <= 0) continue;
                Wavevector w;
                w.n = n;
                for (int a = 0; a < torus.dim; ++a) w.k(a) = 2.0 * kPi * n(a) / torus.lengths(a);
                w.k2 = w.k.squaredNorm();
                out.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Wavevector& a, const Wavevector& b) {
        if (std::abs(a.k2 - b.k2) > 1e-12 * std::max(a.k2, b.k2)) return a.k2 < b.k2;
        return std::lexicographical_compare(a.n.data(), a.n.data() + 3, b.n.data(), b.n.data() + 3);
    });
    int shell = 0;
    double last = -1.0;
    for (auto& w : out) {
        if (std::abs(w.k2 - last) > 1e-12 * std::max(w.k2, 1.0)) {
            ++shell;
            last = w.k2;
        }
        w.shell = shell;
    }
    return out;
}

int default_grid_size(int max_index) { return std::max(8, 4 * max_index); }

PhaseTable::PhaseTable(const Torus& torus, int max_index, const Vec3& x)
    : dim_(torus.dim), r_(max_index) {
    for (int a = 0; a < dim_; ++a) {
        auto& ax = axis_[static_cast<std::size_t>(a)];
        ax.assign(static_cast<std::size_t>(2 * r_ + 1), 1.0);
        const std::complex<double> base = std::polar(1.0, 2.0 * kPi * x(a) / torus.lengths(a));
        std::complex<double> p = 1.0;
        for (int n = 1; n <= r_; ++n) {
            p *= base;
            ax[static_cast<std::size_t>(r_ + n)] = p;
            ax[static_cast<std::size_t>(r_ - n)] = std::conj(p);
        }
    }
}

std::complex<double> PhaseTable::phase(const Eigen::Vector3i& n) const {
    std::complex<double> v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= axis_[static_cast<std::size_t>(a)][static_cast<std::size_t>(r_ + n(a))];
    return v;
}

} // namespace nsfp
