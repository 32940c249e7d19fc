#pragma once

// Brute-force reference: the full Hamiltonian on the truncated tensor space,
// exact propagation by Hermitian eigendecomposition, partial traces onto any
// pair of subsystems, and Wootters concurrence.

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dualjc/density_matrix.hpp"
#include "dualjc/model.hpp"

namespace dualjc {

/// A retained mode carries population above one photon, so it is no longer
/// equivalent to a qubit.
class QubitEquivalenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HermitianOperator {
    Eigen::MatrixXcd entries;
    int cutoff = 1;
};

/// H = w|u><u|_A + w|u><u|_B + v a^+a + v b^+b + g(a^+ s-_A + a s+_A) + g(b^+ s-_B + b s+_B),
/// with the ground-state energy of each atom set to zero.
HermitianOperator build_hamiltonian(const ModelParams& params, int cutoff);

/// Total excitation number |u><u|_A + |u><u|_B + a^+a + b^+b.
HermitianOperator excitation_number(int cutoff);

/// <state|op|state>.
double expectation(const HermitianOperator& op, const PureState& state);

/// exp(-iHt) from one eigendecomposition per invariant block of H. Each block
/// is diagonalized relative to its mean diagonal energy, so the eigen-solver
/// works at the scale of the couplings rather than of the bare frequencies.
/// Shareable across threads.
class Propagator {
public:
    explicit Propagator(const HermitianOperator& h);

    PureState evolve(const PureState& state0, double t) const;
    int cutoff() const { return cutoff_; }
    /// Eigenpairs assembled over all blocks (block order, not sorted).
    Eigen::VectorXd energies() const;
    Eigen::MatrixXcd eigenvectors() const;

private:
    struct Block {
        std::vector<Eigen::Index> indices;
        double offset = 0.0;
        Eigen::VectorXd shifted_energies;
        Eigen::MatrixXcd vectors;
    };
    std::vector<Block> blocks_;
    Eigen::Index dimension_ = 0;
    int cutoff_;
};

PureState evolve(const HermitianOperator& h, const PureState& state0, double t);

enum class Subsystem { AtomA, AtomB, ModeA, ModeB };

/// Unordered pair of distinct subsystems; the retained 4x4 state is ordered
/// (first ⊗ second).
class SubsystemPair {
public:
    SubsystemPair(Subsystem first, Subsystem second);

    Subsystem first() const { return first_; }
    Subsystem second() const { return second_; }

    /// Short label: AB, ab, Aa, Bb, Ab, Ba.
    std::string name() const;
    static SubsystemPair parse(std::string_view name);
    /// The six pairs in the order AB, ab, Aa, Bb, Ab, Ba.
    static std::array<SubsystemPair, 6> all();

    friend bool operator==(const SubsystemPair&, const SubsystemPair&) = default;

private:
    Subsystem first_;
    Subsystem second_;
};

inline constexpr double kQubitLeakTol = 1e-10;

/// Reduced state of the retained pair. Throws QubitEquivalenceError if a
/// retained mode has more than kQubitLeakTol population above one photon.
DensityMatrix partial_trace_pair(const PureState& state, SubsystemPair pair);

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}, where l_i^2 are the
/// eigenvalues of rho (sy⊗sy) rho^* (sy⊗sy) in descending order. Uses
/// sy = [[0, -i], [i, 0]] in the {|u>, |d>} ordering.
double wootters_concurrence(const DensityMatrix& rho);

/// l1 - l2 - l3 - l4 before clamping at zero. Negative inside sudden-death
/// intervals; at an isolated zero it touches zero without changing sign.
double signed_concurrence(const DensityMatrix& rho);

/// Concurrence of the pair's reduced state.
double pair_concurrence(const PureState& state, SubsystemPair pair);
double pair_signed_concurrence(const PureState& state, SubsystemPair pair);

}  // namespace dualjc
