// Reduced density matrices of the swap state and their von Neumann entropy.
//
// The global state is pure, so the atomic and field reductions share a
// spectrum (Araki-Lieb). The atomic 9x9 matrix has a fixed sparsity pattern:
// four lone diagonal entries plus one 2x2 Hermitian block on {|g,e>, |e,g>},
// which gives the six-eigenvalue closed form of analytic_spectrum. The
// numeric_spectrum path is an independent dense eigensolve used to check it.

#pragma once

#include <array>
#include <vector>

#include "qswap/swap_protocol.hpp"

namespace qswap {

using Matrix9cd = Eigen::Matrix<Complex, 9, 9>;
using Matrix10cd = Eigen::Matrix<Complex, 10, 10>;

// Row index of the ordered atom pair (a1, a2), e < f < g: 3*a1 + a2.
int atom_pair_index(Level a1, Level a2);

// Row index of the cavity pair (n3, n4) over n3 in 0..4, n4 in {0, 2},
// lexicographic: 2*n3 + (n4 == 2).
int field_pair_index(int n3, int n4);

// Two-atom reduced density matrix, Hermitian, trace 1, PSD.
struct AtomPairDensity {
    Matrix9cd m = Matrix9cd::Zero();
};

// Two-cavity reduced density matrix over the 10-state occupied basis.
struct FieldPairDensity {
    Matrix10cd m = Matrix10cd::Zero();
};

// Closed-form spectrum of the atomic reduction.
// lambda[0..3]: diagonal entries rho_{ee,ee}, rho_{ef,ef}, rho_{gf,gf},
// rho_{gg,gg}; lambda[4], lambda[5]: eigenvalues of the {|g,e>, |e,g>} block,
// (a+b -/+ eta)/2, so lambda[5] >= lambda[4].
struct EigenSpectrum {
    std::array<double, 6> lambda;
    double eta;
};

AtomPairDensity reduce_to_atoms(const CompositeKet& ket);
FieldPairDensity reduce_to_fields(const CompositeKet& ket);

EigenSpectrum analytic_spectrum(const BellCoefficients& coeffs,
                                const CouplingParams& params, double t);

// Full real spectrum, descending, via a dense Hermitian eigensolve.
// Eigenvalues are verified to sit in [-1e-9, 1+1e-9] and clamped to [0, 1].
std::vector<double> numeric_spectrum(const AtomPairDensity& density);
std::vector<double> numeric_spectrum(const FieldPairDensity& density);

// -sum lambda log2 lambda in bits, with 0 log 0 = 0; eigenvalues below 1e-15
// are treated as exact zeros, values in [-1e-9, 0) are clamped, anything more
// negative throws (it signals an upstream bug).
double von_neumann_entropy(const EigenSpectrum& spectrum);
double von_neumann_entropy(const std::vector<double>& eigenvalues);

}  // namespace qswap
