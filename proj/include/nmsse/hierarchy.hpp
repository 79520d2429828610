// hierarchy.hpp — effective non-Hermitian generator on the enlarged space
// (system ⊗ truncated pseudo-Fock), assembled once as sparse operators

#pragma once

#include <Eigen/SparseCore>

#include "nmsse/basis.hpp"
#include "nmsse/fock_space.hpp"
#include "nmsse/models.hpp"
#include "nmsse/noise.hpp"
#include "nmsse/types.hpp"

namespace nmsse {

enum class Formulation {
    ExtendedRescaled,      // sqrt(n!) rescaling; general eta
    ExtendedUnscaled,      // bare recursion; general eta
    ExponentialRescaledD,  // sqrt(n! ) and sqrt(d_k) rescaling; diagonal eta only
};

enum class Direction { Forward, Backward };

struct HierarchyState {
    ComplexVector amplitudes;  // flat layout: offset = fock * dim_sys + sys
    Direction direction{Direction::Forward};
    Formulation formulation{Formulation::ExtendedRescaled};
};

using SparseOp = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// d/dt psi = drift * psi + Z(t) * (coupling * psi). The drift collects the
// system Hamiltonian, the ladder couplings with the terminator applied at the
// truncation boundary, and the eta mixing; coupling is -i f ⊗ I.
class HierarchyOperator {
public:
    HierarchyOperator(const SystemModel& model, const BasisSet& basis, const FockSpace& space,
                      Formulation formulation);

    int dim() const { return dim_; }
    int dim_sys() const { return dim_sys_; }
    Formulation formulation() const { return formulation_; }
    const SparseOp& drift() const { return drift_; }
    const SparseOp& coupling() const { return coupling_; }

    ComplexVector derivative(const ComplexVector& psi, Complex z) const;

    // flat initial state psi0 ⊗ |0>
    ComplexVector initial_state(const SystemModel& model) const;

private:
    int dim_sys_{0};
    int dim_{0};
    Formulation formulation_;
    SparseOp drift_;
    SparseOp coupling_;
};

// Single-step RHS used by the unit tests; builds the operator on the fly and
// evaluates the trajectory's own noise at time t.
ComplexVector apply_heff(const HierarchyState& state, double t, const NoiseRealization& noise,
                         const SystemModel& model, const BasisSet& basis, const FockSpace& space);

}  // namespace nmsse
