#include "nmsse/models.hpp"

#include <stdexcept>

namespace nmsse {

namespace {

void check_model(const SystemModel& m) {
    if ((m.h - m.h.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("system Hamiltonian must be Hermitian");
    if ((m.f - m.f.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("coupling operator must be Hermitian");
    if (std::abs(m.psi0.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("initial state must be normalized");
}

}  // namespace

SystemModel spin_boson(double eps, double delta) {
    SystemModel m;
    m.h = ComplexMatrix(2, 2);
    m.h << eps, delta, delta, -eps;
    m.f = ComplexMatrix::Zero(2, 2);
    m.f(0, 0) = 1.0;
    m.f(1, 1) = -1.0;
    m.psi0 = ComplexVector::Zero(2);
    m.psi0(0) = 1.0;
    check_model(m);
    return m;
}

SystemModel transfer(double e_donor, double e_acceptor, double lambda, double j_coupling,
                     TransferCoupling coupling) {
    SystemModel m;
    m.h = ComplexMatrix(2, 2);
    m.h << e_donor, j_coupling, j_coupling, e_acceptor + lambda;
    m.f = ComplexMatrix::Zero(2, 2);
    switch (coupling) {
        case TransferCoupling::Acceptor:
            m.f(1, 1) = 1.0;
            break;
        case TransferCoupling::SigmaZ:
            m.f(0, 0) = 1.0;
            m.f(1, 1) = -1.0;
            break;
        case TransferCoupling::AcceptorMinus:
            m.f(1, 1) = -1.0;
            break;
    }
    m.psi0 = ComplexVector::Zero(2);
    m.psi0(0) = 1.0;
    check_model(m);
    return m;
}

}  // namespace nmsse
