#include "dualjc/closed_form.hpp"

#include <algorithm>
#include <cmath>

namespace dualjc {
namespace {

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("time must be non-negative and finite");
}

/// Phase factors exp(-i lambda+- t).
struct DressedPhases {
    Complex plus;
    Complex minus;
};

DressedPhases phases(const JCConstants& c, double t) {
    return {std::polar(1.0, -c.lambda_plus * t), std::polar(1.0, -c.lambda_minus * t)};
}

// Single-pair factors: |u0> -> stay |u0>, transfer to |d1>.
Complex stay(const JCConstants& c, const DressedPhases& e) { return c.l_coef * e.plus + c.m_coef * e.minus; }
Complex transfer(const JCConstants& c, const DressedPhases& e) { return c.n_coef * (e.plus - e.minus); }

double half_rabi_sin2(const JCConstants& c, double t) {
    const double s = std::sin(0.5 * c.rabi * t);
    return s * s;
}

}  // namespace

PsiAmplitudes psi_amplitudes(double alpha, const JCConstants& c, double t) {
    require_time(t);
    const auto e = phases(c, t);
    const Complex u = stay(c, e);
    const Complex w = transfer(c, e);
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    return {u * ca, u * sa, w * ca, w * sa, t};
}

PhiAmplitudes phi_amplitudes(double alpha, const JCConstants& c, double t) {
    require_time(t);
    const auto e = phases(c, t);
    const Complex u = stay(c, e);
    const Complex w = transfer(c, e);
    const Complex diff = e.plus - e.minus;
    const double ca = std::cos(alpha);
    const Complex cross = w * u * ca;
    return {u * u * ca, c.l_coef * c.m_coef * diff * diff * ca, cross, cross, Complex(std::sin(alpha), 0.0), t};
}

PureState to_state(const PsiAmplitudes& x, int cutoff) {
    const FockBasis basis(cutoff);
    PureState s{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension())), cutoff};
    auto at = [&](BasisIndex b) -> Complex& { return s.amplitudes[static_cast<Eigen::Index>(basis.flatten(b))]; };
    at({1, 0, 0, 0}) = x.x1;
    at({0, 1, 0, 0}) = x.x2;
    at({0, 0, 1, 0}) = x.x3;
    at({0, 0, 0, 1}) = x.x4;
    return s;
}

PureState to_state(const PhiAmplitudes& x, int cutoff) {
    const FockBasis basis(cutoff);
    PureState s{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension())), cutoff};
    auto at = [&](BasisIndex b) -> Complex& { return s.amplitudes[static_cast<Eigen::Index>(basis.flatten(b))]; };
    at({1, 1, 0, 0}) = x.x1;
    at({0, 0, 1, 1}) = x.x2;
    at({1, 0, 0, 1}) = x.x3;
    at({0, 1, 1, 0}) = x.x4;
    at({0, 0, 0, 0}) = x.x5;
    return s;
}

DensityMatrix psi_reduced_density(double alpha, const JCConstants& c, double t) {
    const auto x = psi_amplitudes(alpha, c, t);
    DensityMatrix rho;
    rho.entries(1, 1) = std::norm(x.x1);
    rho.entries(1, 2) = x.x1 * std::conj(x.x2);
    rho.entries(2, 1) = std::conj(x.x1) * x.x2;
    rho.entries(2, 2) = std::norm(x.x2);
    rho.entries(3, 3) = std::norm(x.x3) + std::norm(x.x4);
    return rho;
}

DensityMatrix phi_reduced_density(double alpha, const JCConstants& c, double t) {
    const auto x = phi_amplitudes(alpha, c, t);
    DensityMatrix rho;
    rho.entries(0, 0) = std::norm(x.x1);
    rho.entries(0, 3) = x.x1 * std::conj(x.x5);
    rho.entries(3, 0) = std::conj(x.x1) * x.x5;
    rho.entries(1, 1) = std::norm(x.x3);
    rho.entries(2, 2) = std::norm(x.x4);
    rho.entries(3, 3) = std::norm(x.x2) + std::norm(x.x5);
    return rho;
}

double psi_concurrence(double alpha, const JCConstants& c, double t) {
    require_time(t);
    const double n2 = c.n_coef * c.n_coef;
    return std::abs(std::sin(2.0 * alpha)) * (1.0 - 4.0 * n2 * half_rabi_sin2(c, t));
}

double phi_f(double alpha, const JCConstants& c, double t) {
    require_time(t);
    const double n2 = c.n_coef * c.n_coef;
    const double s = half_rabi_sin2(c, t);
    const double ca = std::cos(alpha);
    return (1.0 - 4.0 * n2 * s) * (std::abs(std::sin(2.0 * alpha)) - 8.0 * n2 * s * ca * ca);
}

double phi_concurrence(double alpha, const JCConstants& c, double t) {
    return std::max(0.0, phi_f(alpha, c, t));
}

}  // namespace dualjc
