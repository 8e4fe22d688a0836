#include "nsfp/galerkin/velocity_basis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace nsfp {

namespace {

// Wavevectors whose whole |k| shell lies inside the index box.
std::vector<Wavevector> complete_shells(const Torus& torus, int max_index) {
    double kcap2 = std::numeric_limits<double>::infinity();
    for (int a = 0; a < torus.dim; ++a) {
        const double kc = 2.0 * kPi * max_index / torus.lengths(a);
        kcap2 = std::min(kcap2, kc * kc);
    }
    std::vector<Wavevector> out;
    for (const auto& w : half_space_wavevectors(torus, max_index)) {
        if (w.k2 <= kcap2 * (1 + 1e-12)) out.push_back(w);
    }
    return out;
}

std::vector<Vec3> polarizations(const Wavevector& w, int dim) {
    const Vec3 khat = w.k.normalized();
    if (dim == 2) return {Vec3(-khat(1), khat(0), 0.0)};
    // Cross with the coordinate axis least aligned with k.
    int axis = 0;
    for (int a = 1; a < 3; ++a) {
        if (std::abs(khat(a)) < std::abs(khat(axis))) axis = a;
    }
    Vec3 ref = Vec3::Zero();
    ref(axis) = 1.0;
    const Vec3 e1 = khat.cross(ref).normalized();
    const Vec3 e2 = khat.cross(e1).normalized();
    return {e1, e2};
}

} // namespace

int VelocityBasis::capacity(const Torus& torus, int max_index) {
    return static_cast<int>(complete_shells(torus, max_index).size()) * (torus.dim == 2 ? 2 : 4);
}

VelocityBasis::VelocityBasis(const Torus& torus, int m, int grid_n, int max_index) : torus_(torus) {
    if (m < 1) throw DomainError("velocity basis needs at least one mode");
    const int cap = capacity(torus, max_index);
    if (m > cap) {
        std::ostringstream msg;
        msg << "velocity basis: m = " << m << " exceeds the shell capacity " << cap
            << " (max wavevector index " << max_index << ")";
        throw DomainError(msg.str());
    }
    const auto all = complete_shells(torus, max_index);
    for (std::size_t w = 0; w < all.size() && static_cast<int>(modes_.size()) < m; ++w) {
        for (const Vec3& e : polarizations(all[w], torus.dim)) {
            for (bool sine : {false, true}) {
                if (static_cast<int>(modes_.size()) == m) break;
                modes_.push_back({static_cast<int>(w), e, sine});
            }
        }
        kmax_ = std::max(kmax_, all[w].max_index());
    }
    waves_.assign(all.begin(), all.begin() + (modes_.back().wave + 1));
    amp_ = std::sqrt(2.0 / torus.volume());

    const int n = grid_n > 0 ? grid_n : default_grid_size(kmax_);
    if (n < 2 * kmax_ + 1) {
        std::ostringstream msg;
        msg << "velocity basis: grid of " << n << " points per axis cannot resolve wavevector index "
            << kmax_;
        throw DomainError(msg.str());
    }
    grid_ = std::make_shared<const TorusGrid>(torus, n);

    const int np = grid_->size();
    values_.assign(3, MatrixXd::Zero(np, m));
    grads_.assign(9, MatrixXd::Zero(np, m));
    Eigen::Matrix<double, 3, Eigen::Dynamic> vals;
    std::vector<Mat3> g;
    for (int p = 0; p < np; ++p) {
        evaluate(grid_->point(p), vals, &g);
        for (int i = 0; i < m; ++i) {
            for (int a = 0; a < 3; ++a) {
                values_[static_cast<std::size_t>(a)](p, i) = vals(a, i);
                for (int b = 0; b < 3; ++b) {
                    grads_[static_cast<std::size_t>(a * 3 + b)](p, i) = g[static_cast<std::size_t>(i)](a, b);
                }
            }
        }
    }
}

const Wavevector& VelocityBasis::wavevector(int i) const {
    return waves_.at(static_cast<std::size_t>(modes_.at(static_cast<std::size_t>(i)).wave));
}

void VelocityBasis::evaluate(const Vec3& x, Eigen::Matrix<double, 3, Eigen::Dynamic>& values,
                             std::vector<Mat3>* grads) const {
    const PhaseTable table(torus_, kmax_, x);
    const int m = size();
    values.resize(3, m);
    if (grads) grads->resize(static_cast<std::size_t>(m));
    int cached = -1;
    std::complex<double> ph;
    for (int i = 0; i < m; ++i) {
        const Mode& mode = modes_[static_cast<std::size_t>(i)];
        if (mode.wave != cached) {
            ph = table.phase(waves_[static_cast<std::size_t>(mode.wave)].n);
            cached = mode.wave;
        }
        const double trig = mode.sine ? ph.imag() : ph.real();
        values.col(i) = amp_ * trig * mode.e;
        if (grads) {
            const Vec3& k = waves_[static_cast<std::size_t>(mode.wave)].k;
            const double dtrig = mode.sine ? ph.real() : -ph.imag();
            (*grads)[static_cast<std::size_t>(i)] = amp_ * dtrig * mode.e * k.transpose();
        }
    }
}

MatrixXd VelocityBasis::field(const VectorXd& c) const {
    MatrixXd v(grid_->size(), 3);
    for (int a = 0; a < 3; ++a) v.col(a) = values_[static_cast<std::size_t>(a)] * c;
    return v;
}

std::vector<Mat3> VelocityBasis::field_gradient(const VectorXd& c) const {
    std::vector<Mat3> out(static_cast<std::size_t>(grid_->size()), Mat3::Zero());
    for (int a = 0; a < dim(); ++a) {
        for (int b = 0; b < dim(); ++b) {
            const VectorXd col = grads_[static_cast<std::size_t>(a * 3 + b)] * c;
            for (int p = 0; p < grid_->size(); ++p) out[static_cast<std::size_t>(p)](a, b) = col(p);
        }
    }
    return out;
}

int ScalarFourierSet::capacity(const Torus& torus, int max_index) {
    return 1 + 2 * static_cast<int>(complete_shells(torus, max_index).size());
}

ScalarFourierSet::ScalarFourierSet(const Torus& torus, int count, int max_index) : torus_(torus) {
    if (count < 1) throw DomainError("scalar Fourier set needs at least the constant function");
    const auto all = complete_shells(torus, max_index);
    const int cap = 1 + 2 * static_cast<int>(all.size());
    if (count > cap) {
        std::ostringstream msg;
        msg << "spatial PDF modes: " << count << " exceeds the shell capacity " << cap;
        throw DomainError(msg.str());
    }
    entries_.push_back({Wavevector{}, 0, 0});
    for (const auto& w : all) {
        for (int kind : {1, 2}) {
            if (static_cast<int>(entries_.size()) == count) break;
            entries_.push_back({w, kind, w.shell});
            kmax_ = std::max(kmax_, w.max_index());
        }
        if (static_cast<int>(entries_.size()) == count) break;
    }
    amp0_ = 1.0 / std::sqrt(torus.volume());
    amp_ = std::sqrt(2.0 / torus.volume());
}

double ScalarFourierSet::value(int a, const Vec3& x) const {
    const Entry& e = entries_.at(static_cast<std::size_t>(a));
    if (e.kind == 0) return amp0_;
    const double arg = e.wave.k.dot(x);
    return amp_ * (e.kind == 1 ? std::cos(arg) : std::sin(arg));
}

Vec3 ScalarFourierSet::gradient(int a, const Vec3& x) const {
    const Entry& e = entries_.at(static_cast<std::size_t>(a));
    if (e.kind == 0) return Vec3::Zero();
    const double arg = e.wave.k.dot(x);
    return amp_ * (e.kind == 1 ? -std::sin(arg) : std::cos(arg)) * e.wave.k;
}

void ScalarFourierSet::tabulate(const TorusGrid& grid, MatrixXd& values, std::vector<MatrixXd>& grads) const {
    const int np = grid.size();
    values.resize(np, size());
    grads.assign(static_cast<std::size_t>(grid.dim()), MatrixXd(np, size()));
    for (int p = 0; p < np; ++p) {
        for (int a = 0; a < size(); ++a) {
            values(p, a) = value(a, grid.point(p));
            const Vec3 g = gradient(a, grid.point(p));
            for (int b = 0; b < grid.dim(); ++b) grads[static_cast<std::size_t>(b)](p, a) = g(b);
        }
    }
}

} // namespace nsfp
