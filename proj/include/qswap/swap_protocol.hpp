// Entanglement-swapping protocol state: two entangled atoms (1, 2), two
// entangled cavities (3, 4), atom 2 sent through cavity 3 for time t.
// Atom 1 and cavity 4 are spectators; cavity 3 couples to atom 2 through
// the two-photon cascade model of qed_core.hpp.

#pragma once

#include <compare>
#include <iosfwd>
#include <map>

#include "qswap/qed_core.hpp"

namespace qswap {

// Amplitudes of the initial pairs
//   |phi>_12 = alpha1 |g>_1 |e>_2 + beta1 |e>_1 |g>_2
//   |psi>_34 = alpha2 |2>_3 |0>_4 + beta2 |0>_3 |2>_4
struct BellCoefficients {
    Complex alpha1 = 0.7071067811865476;
    Complex beta1 = 0.7071067811865476;
    Complex alpha2 = 0.7071067811865476;
    Complex beta2 = 0.7071067811865476;

    static BellCoefficients balanced() { return {}; }
    bool normalized(double tol = 1e-9) const;
    void require_normalized(double tol = 1e-9) const;  // throws std::invalid_argument
};

// One basis ket |a1>_1 |a2>_2 |n3>_3 |n4>_4. The protocol never populates
// n3 > 4 (two photons in plus two emissions from (e,2)) or n4 outside {0,2}.
// Ordering is lexicographic in (a1, a2, n3, n4) with e < f < g, which fixes
// the serialization order of state dumps.
struct CompositeBasisState {
    Level a1;
    Level a2;
    int n3;
    int n4;

    CompositeBasisState(Level a1, Level a2, int n3, int n4);
    friend auto operator<=>(const CompositeBasisState&, const CompositeBasisState&) = default;
};

// Sparse amplitude map over the composite basis. At most 10 of the 90
// composite states are ever populated, so a map keeps both the footprint
// and the serialization order under control.
class CompositeKet {
public:
    // Accumulates into the basis state; exact-zero results are not stored.
    void add(const CompositeBasisState& basis, Complex amplitude);
    Complex amplitude(const CompositeBasisState& basis) const;  // 0 if absent
    double norm() const;
    std::size_t size() const { return amps_.size(); }
    const std::map<CompositeBasisState, Complex>& amplitudes() const { return amps_; }

private:
    std::map<CompositeBasisState, Complex> amps_;
};

// Tensor product of the two initial pairs: four basis states with amplitudes
// alpha1*alpha2, alpha1*beta2, beta1*alpha2, beta1*beta2.
CompositeKet build_initial_state(const BellCoefficients& coeffs);

// Exact four-party state after atom 2 crossed cavity 3 for time t.
// Branches: (e,2) evolves in manifold n=2, (e,0) and (g,2) in manifold n=0,
// and (g,0) is dark.
CompositeKet evolve_swap(const BellCoefficients& coeffs, const CouplingParams& params,
                         double t);

// Amplitude of one basis state of evolve_swap; zero for unpopulated states.
Complex branch_amplitude(const BellCoefficients& coeffs, const CouplingParams& params,
                         double t, const CompositeBasisState& basis);

// One line per populated basis state: a1,a2,n3,n4,re,im with 17 significant
// digits, in basis order. Bit-stable for identical inputs.
void write_state_dump(const CompositeKet& ket, std::ostream& out);

}  // namespace qswap
