#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>

namespace dualjc {

/// Two-qubit reduced state in the standard basis (excited/occupied first):
/// |uu>, |ud>, |du>, |dd>. For a cavity mode "u" means one photon.
struct DensityMatrix {
    Eigen::Matrix4cd entries = Eigen::Matrix4cd::Zero();
    std::array<std::string, 4> basis_labels{"|↑↑⟩", "|↑↓⟩", "|↓↑⟩", "|↓↓⟩"};

    double trace() const { return entries.trace().real(); }
    double hermiticity_error() const { return (entries - entries.adjoint()).cwiseAbs().maxCoeff(); }
    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Throws ConfigError unless Hermitian, unit trace and PSD within tolerances.
void check_density_invariants(const DensityMatrix& rho);

}  // namespace dualjc
