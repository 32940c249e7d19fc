#include "dualjc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace dualjc {
namespace {

int level_of(const BasisIndex& b, Subsystem s) {
    switch (s) {
        case Subsystem::AtomA: return b.atom_a;
        case Subsystem::AtomB: return b.atom_b;
        case Subsystem::ModeA: return b.photons_a;
        case Subsystem::ModeB: return b.photons_b;
    }
    return 0;
}

bool is_mode(Subsystem s) { return s == Subsystem::ModeA || s == Subsystem::ModeB; }

int local_dim(Subsystem s, int cutoff) { return is_mode(s) ? cutoff + 1 : 2; }

char label_char(Subsystem s) {
    switch (s) {
        case Subsystem::AtomA: return 'A';
        case Subsystem::AtomB: return 'B';
        case Subsystem::ModeA: return 'a';
        case Subsystem::ModeB: return 'b';
    }
    return '?';
}

std::string local_label(Subsystem s, int standard_index) {
    if (is_mode(s)) return standard_index == 0 ? "1" : "0";
    return standard_index == 0 ? "↑" : "↓";
}

const Eigen::Matrix4d& spin_flip() {
    static const Eigen::Matrix4d y = [] {
        Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
        m(0, 3) = -1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 0) = -1.0;
        return m;
    }();
    return y;
}

/// For any X with X X^dagger = rho, the Wootters l_i are the singular values
/// of the complex-symmetric X^T (sy⊗sy) X.
double signed_from_factor(const Eigen::MatrixXcd& x) {
    const Eigen::MatrixXcd tau = x.transpose() * spin_flip().cast<Complex>() * x;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(tau);
    const Eigen::VectorXd& sv = svd.singularValues();  // descending
    double c = sv.size() > 0 ? sv[0] : 0.0;
    for (Eigen::Index i = 1; i < std::min<Eigen::Index>(sv.size(), 4); ++i) c -= sv[i];
    return c;
}

double clamp_unit(double c) { return std::clamp(c, 0.0, 1.0); }

/// Rows: retained pair in standard order; columns: everything traced out.
/// rho = factor * factor^dagger.
Eigen::MatrixXcd purification_factor(const PureState& state, SubsystemPair pair) {
    const FockBasis basis(state.cutoff);
    if (static_cast<std::size_t>(state.amplitudes.size()) != basis.dimension())
        throw ConfigError("state dimension does not match its cutoff");

    std::array<Subsystem, 2> rest{};
    int n = 0;
    for (Subsystem s : {Subsystem::AtomA, Subsystem::AtomB, Subsystem::ModeA, Subsystem::ModeB})
        if (s != pair.first() && s != pair.second()) rest[static_cast<std::size_t>(n++)] = s;
    const int rest_dim2 = local_dim(rest[1], state.cutoff);
    const int columns = local_dim(rest[0], state.cutoff) * rest_dim2;

    Eigen::MatrixXcd factor = Eigen::MatrixXcd::Zero(4, columns);
    double leak = 0.0;
    for (std::size_t k = 0; k < basis.dimension(); ++k) {
        const BasisIndex b = basis.unflatten(k);
        const Complex amp = state.amplitudes[static_cast<Eigen::Index>(k)];
        const int l1 = level_of(b, pair.first());
        const int l2 = level_of(b, pair.second());
        if (l1 > 1 || l2 > 1) {
            leak += std::norm(amp);
            continue;
        }
        const int row = (1 - l1) * 2 + (1 - l2);
        const int col = level_of(b, rest[0]) * rest_dim2 + level_of(b, rest[1]);
        factor(row, col) = amp;
    }
    if (leak > kQubitLeakTol) {
        std::ostringstream msg;
        msg << "retained mode population above one photon is " << leak << " (> " << kQubitLeakTol
            << "); the mode is not equivalent to a qubit";
        throw QubitEquivalenceError(msg.str());
    }
    return factor;
}

}  // namespace

HermitianOperator build_hamiltonian(const ModelParams& params, int cutoff) {
    // g = 0 (decoupled pairs) is allowed here, unlike in derive_constants.
    if (!(params.g >= 0.0) || !std::isfinite(params.g) || !std::isfinite(params.omega) || !std::isfinite(params.nu))
        throw ConfigError("Hamiltonian parameters must be finite with g >= 0");
    const FockBasis basis(cutoff);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    HermitianOperator h{Eigen::MatrixXcd::Zero(dim, dim), cutoff};
    for (std::size_t k = 0; k < basis.dimension(); ++k) {
        const BasisIndex b = basis.unflatten(k);
        const auto i = static_cast<Eigen::Index>(k);
        h.entries(i, i) = params.omega * (b.atom_a + b.atom_b) + params.nu * (b.photons_a + b.photons_b);
        // a s+_A : |d, n> -> sqrt(n) |u, n-1>, and its conjugate.
        if (b.atom_a == 0 && b.photons_a >= 1) {
            const auto j = static_cast<Eigen::Index>(basis.flatten({1, b.atom_b, b.photons_a - 1, b.photons_b}));
            const double amp = params.g * std::sqrt(static_cast<double>(b.photons_a));
            h.entries(j, i) = amp;
            h.entries(i, j) = amp;
        }
        if (b.atom_b == 0 && b.photons_b >= 1) {
            const auto j = static_cast<Eigen::Index>(basis.flatten({b.atom_a, 1, b.photons_a, b.photons_b - 1}));
            const double amp = params.g * std::sqrt(static_cast<double>(b.photons_b));
            h.entries(j, i) = amp;
            h.entries(i, j) = amp;
        }
    }
    return h;
}

HermitianOperator excitation_number(int cutoff) {
    const FockBasis basis(cutoff);
    const auto dim = static_cast<Eigen::Index>(basis.dimension());
    HermitianOperator n{Eigen::MatrixXcd::Zero(dim, dim), cutoff};
    for (std::size_t k = 0; k < basis.dimension(); ++k) {
        const BasisIndex b = basis.unflatten(k);
        const auto i = static_cast<Eigen::Index>(k);
        n.entries(i, i) = b.atom_a + b.atom_b + b.photons_a + b.photons_b;
    }
    return n;
}

double expectation(const HermitianOperator& op, const PureState& state) {
    if (op.entries.rows() != state.amplitudes.size()) throw ConfigError("operator and state dimensions differ");
    return state.amplitudes.dot(op.entries * state.amplitudes).real();
}

Propagator::Propagator(const HermitianOperator& h) : dimension_(h.entries.rows()), cutoff_(h.cutoff) {
    if (h.entries.rows() != h.entries.cols()) throw ConfigError("operator is not square");
    if ((h.entries - h.entries.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
        throw ConfigError("operator is not Hermitian");

    // Connected components of the coupling graph.
    std::vector<Eigen::Index> component(static_cast<std::size_t>(dimension_), -1);
    Eigen::Index count = 0;
    for (Eigen::Index seed = 0; seed < dimension_; ++seed) {
        if (component[static_cast<std::size_t>(seed)] >= 0) continue;
        Block block;
        std::vector<Eigen::Index> stack{seed};
        component[static_cast<std::size_t>(seed)] = count;
        while (!stack.empty()) {
            const Eigen::Index i = stack.back();
            stack.pop_back();
            block.indices.push_back(i);
            for (Eigen::Index j = 0; j < dimension_; ++j)
                if (h.entries(i, j) != Complex(0.0) && component[static_cast<std::size_t>(j)] < 0) {
                    component[static_cast<std::size_t>(j)] = count;
                    stack.push_back(j);
                }
        }
        std::sort(block.indices.begin(), block.indices.end());
        ++count;

        const auto n = static_cast<Eigen::Index>(block.indices.size());
        Eigen::MatrixXcd sub(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b) sub(a, b) = h.entries(block.indices[a], block.indices[b]);
        block.offset = sub.diagonal().real().mean();
        sub.diagonal().array() -= block.offset;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sub);
        if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigendecomposition failed");
        block.shifted_energies = solver.eigenvalues();
        block.vectors = solver.eigenvectors();
        blocks_.push_back(std::move(block));
    }
}

PureState Propagator::evolve(const PureState& state0, double t) const {
    if (state0.amplitudes.size() != dimension_) throw ConfigError("state and operator dimensions differ");
    if (!std::isfinite(t)) throw ConfigError("time must be finite");
    Eigen::VectorXcd out(dimension_);
    for (const auto& block : blocks_) {
        const auto n = static_cast<Eigen::Index>(block.indices.size());
        Eigen::VectorXcd local(n);
        for (Eigen::Index a = 0; a < n; ++a) local[a] = state0.amplitudes[block.indices[a]];
        Eigen::VectorXcd coeffs = block.vectors.adjoint() * local;
        const Complex common = std::polar(1.0, -block.offset * t);
        for (Eigen::Index i = 0; i < n; ++i) coeffs[i] *= common * std::polar(1.0, -block.shifted_energies[i] * t);
        local = block.vectors * coeffs;
        for (Eigen::Index a = 0; a < n; ++a) out[block.indices[a]] = local[a];
    }
    return {out, state0.cutoff};
}

Eigen::VectorXd Propagator::energies() const {
    Eigen::VectorXd e(dimension_);
    Eigen::Index k = 0;
    for (const auto& block : blocks_)
        for (Eigen::Index i = 0; i < block.shifted_energies.size(); ++i) e[k++] = block.offset + block.shifted_energies[i];
    return e;
}

Eigen::MatrixXcd Propagator::eigenvectors() const {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(dimension_, dimension_);
    Eigen::Index k = 0;
    for (const auto& block : blocks_)
        for (Eigen::Index i = 0; i < block.vectors.cols(); ++i, ++k)
            for (Eigen::Index a = 0; a < block.vectors.rows(); ++a) v(block.indices[a], k) = block.vectors(a, i);
    return v;
}

PureState evolve(const HermitianOperator& h, const PureState& state0, double t) {
    return Propagator(h).evolve(state0, t);
}

SubsystemPair::SubsystemPair(Subsystem first, Subsystem second) : first_(first), second_(second) {
    if (first == second) throw ConfigError("subsystem pair needs two distinct subsystems");
}

std::string SubsystemPair::name() const { return {label_char(first_), label_char(second_)}; }

SubsystemPair SubsystemPair::parse(std::string_view name) {
    for (const auto& p : all())
        if (p.name() == name) return p;
    throw ConfigError("unknown subsystem pair '" + std::string(name) + "' (expected AB, ab, Aa, Bb, Ab or Ba)");
}

std::array<SubsystemPair, 6> SubsystemPair::all() {
    using S = Subsystem;
    return {SubsystemPair{S::AtomA, S::AtomB}, SubsystemPair{S::ModeA, S::ModeB},
            SubsystemPair{S::AtomA, S::ModeA}, SubsystemPair{S::AtomB, S::ModeB},
            SubsystemPair{S::AtomA, S::ModeB}, SubsystemPair{S::AtomB, S::ModeA}};
}

DensityMatrix partial_trace_pair(const PureState& state, SubsystemPair pair) {
    const Eigen::MatrixXcd factor = purification_factor(state, pair);
    DensityMatrix rho;
    rho.entries = factor * factor.adjoint();
    for (int i = 0; i < 4; ++i)
        rho.basis_labels[static_cast<std::size_t>(i)] =
            "|" + local_label(pair.first(), i / 2) + local_label(pair.second(), i % 2) + "⟩";
    return rho;
}

double signed_concurrence(const DensityMatrix& rho) {
    check_density_invariants(rho);
    const Eigen::Matrix4cd herm = 0.5 * (rho.entries + rho.entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(herm);
    Eigen::Vector4d weights = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXcd factor = solver.eigenvectors() * weights.cast<Complex>().asDiagonal();
    return signed_from_factor(factor);
}

double wootters_concurrence(const DensityMatrix& rho) { return clamp_unit(signed_concurrence(rho)); }

// rho = F F^dagger exactly, so the pure-state factor is used directly instead
// of re-factorizing the reduced matrix.
double pair_signed_concurrence(const PureState& state, SubsystemPair pair) {
    return signed_from_factor(purification_factor(state, pair));
}

double pair_concurrence(const PureState& state, SubsystemPair pair) {
    return clamp_unit(pair_signed_concurrence(state, pair));
}

}  // namespace dualjc
