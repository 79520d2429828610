#include "nmsse/exp_fit.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nmsse {

ExpFitResult fit_exponentials(const std::vector<double>& times,
                              const std::vector<Complex>& values, int order) {
    const int m = static_cast<int>(values.size());
    if (times.size() != values.size()) throw std::invalid_argument("times/values size mismatch");
    if (order < 1 || 2 * order > m) throw std::invalid_argument("order must satisfy 1 <= order <= samples/2");
    const double dt = times[1] - times[0];
    for (int j = 1; j + 1 < m; ++j) {
        if (std::abs((times[j + 1] - times[j]) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw std::invalid_argument("fit_exponentials requires a uniform time grid");
    }

    // Hankel pencil Y1 v = z Y0 v
    const int pencil = std::max(order, m / 2);
    const int rows = m - pencil;
    ComplexMatrix y0(rows, pencil), y1(rows, pencil);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < pencil; ++j) {
            y0(i, j) = values[i + j];
            y1(i, j) = values[i + j + 1];
        }
    }

    Eigen::JacobiSVD<ComplexMatrix> svd(y0, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(order - 1) / sv(0) < 1e-13)
        throw std::runtime_error("pencil rank below requested order");

    const ComplexMatrix u = svd.matrixU().leftCols(order);
    const ComplexMatrix v = svd.matrixV().leftCols(order);
    const ComplexVector sinv = sv.head(order).cwiseInverse().cast<Complex>();
    const ComplexMatrix reduced = u.adjoint() * y1 * v * sinv.asDiagonal();

    Eigen::ComplexEigenSolver<ComplexMatrix> eig(reduced);
    ExpFitResult out;
    out.nu.resize(order);
    for (int k = 0; k < order; ++k) out.nu(k) = -std::log(eig.eigenvalues()(k)) / dt;

    // amplitudes by least squares on the full sample set
    ComplexMatrix vand(m, order);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < order; ++k) vand(i, k) = std::exp(-out.nu(k) * times[i]);
    ComplexVector rhs(m);
    for (int i = 0; i < m; ++i) rhs(i) = values[i];
    out.d = vand.colPivHouseholderQr().solve(rhs);
    out.residual = (vand * out.d - rhs).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace nmsse
