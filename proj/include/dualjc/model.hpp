#pragma once

// Physical parameters, dressed-state constants, the truncated tensor basis
// (atomA ⊗ atomB ⊗ modeA ⊗ modeB) and the two initial-state families of
// the double Jaynes-Cummings model. Units: hbar = 1.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace dualjc {

using Complex = std::complex<double>;

/// Raised for invalid parameters or malformed inputs.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Frequencies shared by both atom-cavity pairs.
struct ModelParams {
    double omega = 10.0;  // atomic transition
    double nu = 10.0;     // cavity mode
    double g = 0.5;       // coupling; G = 2g

    /// Parameterize by detuning Delta = omega - nu and G = 2g.
    static ModelParams from_detuning(double delta, double big_g, double nu);

    void validate() const;
};

struct JCConstants {
    double delta = 0.0;         // Delta = omega - nu
    double big_g = 0.0;         // G = 2g
    double rabi = 0.0;          // sqrt(Delta^2 + G^2) = lambda+ - lambda-
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double l_coef = 0.0;
    double m_coef = 0.0;
    double n_coef = 0.0;

    /// Fundamental period 2*pi/rabi of every observable in the single
    /// excitation sector.
    double period() const;
};

JCConstants derive_constants(const ModelParams& params);

inline constexpr int kMaxCutoff = 4;

/// Occupations of one tensor basis element. Atom level 0 is ground, 1 excited.
struct BasisIndex {
    int atom_a = 0;
    int atom_b = 0;
    int photons_a = 0;
    int photons_b = 0;

    friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// Flattening of the tensor basis at a fixed Fock cutoff:
/// index = ((atom_a*2 + atom_b)*(c+1) + photons_a)*(c+1) + photons_b.
class FockBasis {
public:
    explicit FockBasis(int cutoff);

    int cutoff() const { return cutoff_; }
    std::size_t dimension() const { return 4 * levels_ * levels_; }

    std::size_t flatten(const BasisIndex& b) const;
    BasisIndex unflatten(std::size_t index) const;

private:
    int cutoff_;
    std::size_t levels_;
};

enum class Family { PsiAlpha, PhiAlpha, Custom };

/// Atom pair prepared in cos a|ud> + sin a|du> (Psi) or
/// cos a|uu> + sin a|dd> (Phi); both cavities in vacuum.
struct InitialState {
    Family family = Family::PsiAlpha;
    double alpha = 0.0;
    std::vector<Complex> custom_amplitudes;

    static InitialState psi(double alpha) { return {Family::PsiAlpha, alpha, {}}; }
    static InitialState phi(double alpha) { return {Family::PhiAlpha, alpha, {}}; }
    static InitialState custom(std::vector<Complex> amplitudes) {
        return {Family::Custom, 0.0, std::move(amplitudes)};
    }

    bool is_named() const { return family != Family::Custom; }
};

/// Complex amplitudes over FockBasis order.
struct PureState {
    Eigen::VectorXcd amplitudes;
    int cutoff = 1;

    double norm() const { return amplitudes.norm(); }
};

PureState initial_state_vector(const InitialState& init, int cutoff);

}  // namespace dualjc
