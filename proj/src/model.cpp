#include "dualjc/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dualjc {

ModelParams ModelParams::from_detuning(double delta, double big_g, double nu) {
    ModelParams p{nu + delta, nu, big_g / 2.0};
    p.validate();
    return p;
}

void ModelParams::validate() const {
    if (!(g > 0.0) || !std::isfinite(g)) throw ConfigError("coupling must be positive");
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw ConfigError("atomic frequency omega must be positive");
    if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("mode frequency nu must be positive");
}

double JCConstants::period() const { return 2.0 * std::numbers::pi / rabi; }

JCConstants derive_constants(const ModelParams& params) {
    params.validate();
    JCConstants c;
    c.delta = params.omega - params.nu;
    c.big_g = 2.0 * params.g;
    c.rabi = std::hypot(c.delta, c.big_g);
    c.lambda_plus = params.nu + c.delta / 2.0 + c.rabi / 2.0;
    c.lambda_minus = params.nu + c.delta / 2.0 - c.rabi / 2.0;
    const double ratio = c.delta / c.rabi;
    c.l_coef = 0.5 * (1.0 + ratio);
    c.m_coef = 0.5 * (1.0 - ratio);
    c.n_coef = c.big_g / (2.0 * c.rabi);
    return c;
}

FockBasis::FockBasis(int cutoff) : cutoff_(cutoff), levels_(static_cast<std::size_t>(cutoff) + 1) {
    if (cutoff < 1 || cutoff > kMaxCutoff)
        throw ConfigError("Fock cutoff must be in [1, " + std::to_string(kMaxCutoff) + "]");
}

std::size_t FockBasis::flatten(const BasisIndex& b) const {
    if (b.atom_a < 0 || b.atom_a > 1 || b.atom_b < 0 || b.atom_b > 1 || b.photons_a < 0 ||
        b.photons_a > cutoff_ || b.photons_b < 0 || b.photons_b > cutoff_)
        throw ConfigError("basis index out of range");
    const auto atoms = static_cast<std::size_t>(b.atom_a * 2 + b.atom_b);
    return (atoms * levels_ + static_cast<std::size_t>(b.photons_a)) * levels_ +
           static_cast<std::size_t>(b.photons_b);
}

BasisIndex FockBasis::unflatten(std::size_t index) const {
    if (index >= dimension()) throw ConfigError("flattened index out of range");
    BasisIndex b;
    b.photons_b = static_cast<int>(index % levels_);
    index /= levels_;
    b.photons_a = static_cast<int>(index % levels_);
    index /= levels_;
    b.atom_b = static_cast<int>(index % 2);
    b.atom_a = static_cast<int>(index / 2);
    return b;
}

PureState initial_state_vector(const InitialState& init, int cutoff) {
    const FockBasis basis(cutoff);
    PureState state{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension())), cutoff};
    auto at = [&](int a, int b) -> Complex& {
        return state.amplitudes[static_cast<Eigen::Index>(basis.flatten({a, b, 0, 0}))];
    };
    const double c = std::cos(init.alpha);
    const double s = std::sin(init.alpha);
    switch (init.family) {
        case Family::PsiAlpha:
            at(1, 0) = c;
            at(0, 1) = s;
            break;
        case Family::PhiAlpha:
            at(1, 1) = c;
            at(0, 0) = s;
            break;
        case Family::Custom: {
            if (init.custom_amplitudes.size() != basis.dimension())
                throw ConfigError("custom amplitude vector has length " +
                                  std::to_string(init.custom_amplitudes.size()) + ", expected " +
                                  std::to_string(basis.dimension()));
            for (std::size_t i = 0; i < basis.dimension(); ++i)
                state.amplitudes[static_cast<Eigen::Index>(i)] = init.custom_amplitudes[i];
            if (std::abs(state.norm() - 1.0) > 1e-12)
                throw ConfigError("custom amplitude vector is not normalized");
            break;
        }
    }
    return state;
}

}  // namespace dualjc
