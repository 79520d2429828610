#include "nmsse/hierarchy.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nmsse {

HierarchyOperator::HierarchyOperator(const SystemModel& model, const BasisSet& basis,
                                     const FockSpace& space, Formulation formulation)
    : dim_sys_(model.dim()), formulation_(formulation) {
    const int n_fock = space.size();
    const int n_modes = space.num_modes();
    if (n_modes != basis.size)
        throw std::invalid_argument("pseudo-Fock mode count must match the basis size");
    dim_ = dim_sys_ * n_fock;

    ComplexVector sqrt_d(basis.size);
    if (formulation == Formulation::ExponentialRescaledD) {
        for (int k = 0; k < basis.size; ++k) {
            for (int kp = 0; kp < basis.size; ++kp) {
                if (k != kp && std::abs(basis.eta(k, kp)) > 1e-14)
                    throw std::invalid_argument(
                        "sqrt(d) rescaling requires a diagonal eta (exponential basis)");
            }
            sqrt_d(k) = std::sqrt(basis.d(k));  // principal branch
        }
    }
    const bool rescaled = formulation != Formulation::ExtendedUnscaled;

    std::vector<Eigen::Triplet<Complex>> drift_t, coupling_t;
    drift_t.reserve(static_cast<size_t>(n_fock) *
                    (dim_sys_ * dim_sys_ + 2 * n_modes * dim_sys_ + n_modes * n_modes));
    coupling_t.reserve(static_cast<size_t>(n_fock) * dim_sys_ * dim_sys_);

    auto add_f_block = [&](int dst_fock, int src_fock, Complex coef) {
        for (int s = 0; s < dim_sys_; ++s)
            for (int sp = 0; sp < dim_sys_; ++sp) {
                const Complex v = coef * model.f(s, sp);
                if (v != Complex{0.0, 0.0})
                    drift_t.emplace_back(dst_fock * dim_sys_ + s, src_fock * dim_sys_ + sp, v);
            }
    };

    for (int i = 0; i < n_fock; ++i) {
        const auto& n = space.state(i);

        Complex diag{0.0, 0.0};
        for (int k = 0; k < n_modes; ++k) diag += basis.eta(k, k) * static_cast<double>(n[k]);
        for (int s = 0; s < dim_sys_; ++s) {
            for (int sp = 0; sp < dim_sys_; ++sp) {
                Complex v = -kI * model.h(s, sp);
                if (s == sp) v += diag;
                if (v != Complex{0.0, 0.0})
                    drift_t.emplace_back(i * dim_sys_ + s, i * dim_sys_ + sp, v);
                const Complex cv = -kI * model.f(s, sp);
                if (cv != Complex{0.0, 0.0})
                    coupling_t.emplace_back(i * dim_sys_ + s, i * dim_sys_ + sp, cv);
            }
        }

        for (int k = 0; k < n_modes; ++k) {
            const int up = space.neighbor(i, k, +1);
            if (up >= 0) {
                Complex coef;
                switch (formulation) {
                    case Formulation::ExtendedRescaled:
                        coef = basis.d(k) * std::sqrt(n[k] + 1.0);
                        break;
                    case Formulation::ExtendedUnscaled:
                        coef = basis.d(k);
                        break;
                    case Formulation::ExponentialRescaledD:
                        coef = sqrt_d(k) * std::sqrt(n[k] + 1.0);
                        break;
                }
                add_f_block(i, up, coef);
            }
            if (n[k] >= 1) {
                const int down = space.neighbor(i, k, -1);
                if (down >= 0) {
                    Complex coef;
                    switch (formulation) {
                        case Formulation::ExtendedRescaled:
                            coef = -basis.phi0(k) * std::sqrt(static_cast<double>(n[k]));
                            break;
                        case Formulation::ExtendedUnscaled:
                            coef = -basis.phi0(k) * static_cast<double>(n[k]);
                            break;
                        case Formulation::ExponentialRescaledD:
                            coef = -sqrt_d(k) * std::sqrt(static_cast<double>(n[k]));
                            break;
                    }
                    add_f_block(i, down, coef);
                }
            }
        }

        // inter-mode mixing from the off-diagonal eta entries
        for (int k = 0; k < n_modes; ++k) {
            if (n[k] < 1) continue;
            for (int kp = 0; kp < n_modes; ++kp) {
                if (kp == k || basis.eta(k, kp) == Complex{0.0, 0.0}) continue;
                const int src = space.shift(i, k, kp);
                if (src < 0) continue;
                const Complex coef =
                    rescaled ? basis.eta(k, kp) * std::sqrt(n[k] * (n[kp] + 1.0))
                             : basis.eta(k, kp) * static_cast<double>(n[k]);
                for (int s = 0; s < dim_sys_; ++s)
                    drift_t.emplace_back(i * dim_sys_ + s, src * dim_sys_ + s, coef);
            }
        }
    }

    drift_.resize(dim_, dim_);
    drift_.setFromTriplets(drift_t.begin(), drift_t.end());
    drift_.makeCompressed();
    coupling_.resize(dim_, dim_);
    coupling_.setFromTriplets(coupling_t.begin(), coupling_t.end());
    coupling_.makeCompressed();
}

ComplexVector HierarchyOperator::derivative(const ComplexVector& psi, Complex z) const {
    if (psi.size() != dim_) throw std::invalid_argument("state dimension mismatch");
    return drift_ * psi + z * (coupling_ * psi);
}

ComplexVector HierarchyOperator::initial_state(const SystemModel& model) const {
    ComplexVector psi = ComplexVector::Zero(dim_);
    psi.head(dim_sys_) = model.psi0;
    return psi;
}

ComplexVector apply_heff(const HierarchyState& state, double t, const NoiseRealization& noise,
                         const SystemModel& model, const BasisSet& basis, const FockSpace& space) {
    const HierarchyOperator op(model, basis, space, state.formulation);
    const auto [zp, zm] = noise.eval(t);
    const Complex z = state.direction == Direction::Forward ? zp : zm;
    return op.derivative(state.amplitudes, z);
}

}  // namespace nmsse
