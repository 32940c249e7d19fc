#pragma once

// Analytic solution of the double Jaynes-Cummings model for the two named
// initial-state families. All functions are pure; t must be non-negative.

#include "dualjc/density_matrix.hpp"
#include "dualjc/model.hpp"

namespace dualjc {

/// |Psi(t)> = x1|ud00> + x2|du00> + x3|dd10> + x4|dd01>.
struct PsiAmplitudes {
    Complex x1, x2, x3, x4;
    double t = 0.0;
};

/// |Phi(t)> = x1|uu00> + x2|dd11> + x3|ud01> + x4|du10> + x5|dd00>.
struct PhiAmplitudes {
    Complex x1, x2, x3, x4, x5;
    double t = 0.0;
};

PsiAmplitudes psi_amplitudes(double alpha, const JCConstants& c, double t);
PhiAmplitudes phi_amplitudes(double alpha, const JCConstants& c, double t);

/// Embed the analytic amplitudes in the full tensor basis.
PureState to_state(const PsiAmplitudes& x, int cutoff);
PureState to_state(const PhiAmplitudes& x, int cutoff);

DensityMatrix psi_reduced_density(double alpha, const JCConstants& c, double t);

/// Atom-atom state for the Phi family. The |dd><dd| entry is |x2|^2 + |x5|^2.
DensityMatrix phi_reduced_density(double alpha, const JCConstants& c, double t);

/// |sin 2a| (1 - 4 N^2 sin^2(delta t / 2)).
double psi_concurrence(double alpha, const JCConstants& c, double t);

/// Signed pre-concurrence 2|x1||x5| - 2|x3||x4|, evaluated as
/// (1 - 4N^2 s) (|sin 2a| - 8 N^2 s cos^2 a) with s = sin^2(delta t / 2).
/// At zero detuning: cos^2(Gt/2) (|sin 2a| - 2 sin^2(Gt/2) cos^2 a).
double phi_f(double alpha, const JCConstants& c, double t);

/// max{0, phi_f}.
double phi_concurrence(double alpha, const JCConstants& c, double t);

}  // namespace dualjc
