// models.hpp — system Hamiltonians, coupling operators, initial states

#pragma once

#include "nmsse/types.hpp"

namespace nmsse {

struct SystemModel {
    ComplexMatrix h;     // Hermitian system Hamiltonian
    ComplexMatrix f;     // Hermitian coupling operator
    ComplexVector psi0;  // normalized initial state

    int dim() const { return static_cast<int>(h.rows()); }
};

// Spin-boson: H = eps sigma_z + delta sigma_x, f = sigma_z, psi0 = |1>.
SystemModel spin_boson(double eps, double delta);

// Which operator couples the transfer model to the bath. The reorganization
// shift sits on the acceptor, so the acceptor projector is the default.
enum class TransferCoupling { Acceptor, SigmaZ, AcceptorMinus };

// Donor-acceptor transfer: H = [[E_D, J], [J, E_A + lambda]], psi0 = |D>.
SystemModel transfer(double e_donor, double e_acceptor, double lambda, double j_coupling,
                     TransferCoupling coupling = TransferCoupling::Acceptor);

}  // namespace nmsse
