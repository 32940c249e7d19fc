#include "dualjc/density_matrix.hpp"

#include <sstream>

#include "dualjc/model.hpp"

namespace dualjc {

double DensityMatrix::min_eigenvalue() const {
    const Eigen::Matrix4cd herm = 0.5 * (entries + entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void check_density_invariants(const DensityMatrix& rho) {
    if (!rho.entries.allFinite()) throw ConfigError("density matrix has non-finite entries");
    std::ostringstream msg;
    if (const double h = rho.hermiticity_error(); h > kHermitianTol) {
        msg << "density matrix is not Hermitian (max |rho - rho^dagger| = " << h << ")";
        throw ConfigError(msg.str());
    }
    if (const double tr = rho.trace(); std::abs(tr - 1.0) > kTraceTol) {
        msg << "density matrix trace is " << tr << ", expected 1";
        throw ConfigError(msg.str());
    }
    if (const double e = rho.min_eigenvalue(); e < -kPsdTol) {
        msg << "density matrix has negative eigenvalue " << e;
        throw ConfigError(msg.str());
    }
}

}  // namespace dualjc
