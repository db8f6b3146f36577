#include "qswap/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qswap {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kEigenvalueSlack = 1e-9;
constexpr double kZeroEigenvalue = 1e-15;

void require_normalized(const CompositeKet& ket, const char* where) {
    if (std::abs(ket.norm() - 1.0) > kNormTol) {
        throw std::invalid_argument(std::string(where) + ": ket is not normalized");
    }
}

// Shared dense path for both reductions.
std::vector<double> hermitian_spectrum(const Eigen::MatrixXcd& m, const char* where) {
    const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-9) {
        throw std::invalid_argument(std::string(where) + ": matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error(std::string(where) + ": eigensolver failed");
    }
    std::vector<double> eig(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    for (double& v : eig) {
        if (v < -kEigenvalueSlack || v > 1.0 + kEigenvalueSlack) {
            throw std::runtime_error(std::string(where) +
                                     ": eigenvalue outside [0,1] beyond tolerance");
        }
        v = std::clamp(v, 0.0, 1.0);
    }
    return eig;
}

}  // namespace

int atom_pair_index(Level a1, Level a2) {
    return 3 * static_cast<int>(a1) + static_cast<int>(a2);
}

int field_pair_index(int n3, int n4) {
    return 2 * n3 + (n4 == 2 ? 1 : 0);
}

AtomPairDensity reduce_to_atoms(const CompositeKet& ket) {
    require_normalized(ket, "reduce_to_atoms");
    AtomPairDensity rho;
    // rho[(a1,a2),(b1,b2)] = sum over shared (n3,n4) of psi * conj(psi').
    for (const auto& [bi, ai] : ket.amplitudes()) {
        for (const auto& [bj, aj] : ket.amplitudes()) {
            if (bi.n3 != bj.n3 || bi.n4 != bj.n4) continue;
            rho.m(atom_pair_index(bi.a1, bi.a2), atom_pair_index(bj.a1, bj.a2)) +=
                ai * std::conj(aj);
        }
    }
    return rho;
}

FieldPairDensity reduce_to_fields(const CompositeKet& ket) {
    require_normalized(ket, "reduce_to_fields");
    FieldPairDensity rho;
    for (const auto& [bi, ai] : ket.amplitudes()) {
        for (const auto& [bj, aj] : ket.amplitudes()) {
            if (bi.a1 != bj.a1 || bi.a2 != bj.a2) continue;
            rho.m(field_pair_index(bi.n3, bi.n4), field_pair_index(bj.n3, bj.n4)) +=
                ai * std::conj(aj);
        }
    }
    return rho;
}

EigenSpectrum analytic_spectrum(const BellCoefficients& coeffs,
                                const CouplingParams& params, double t) {
    coeffs.require_normalized();
    const Eigen::Matrix3cd u0 = manifold_propagator(params, ManifoldIndex(0), t).u;
    const Eigen::Matrix3cd u2 = manifold_propagator(params, ManifoldIndex(2), t).u;

    // Amplitudes C^{(initial)}_{final}: column = initial state of the manifold.
    const Complex c_e2_e2 = u2(0, 0);
    const Complex c_f3_e2 = u2(1, 0);
    const Complex c_g4_e2 = u2(2, 0);
    const Complex c_e0_e0 = u0(0, 0);
    const Complex c_f1_e0 = u0(1, 0);
    const Complex c_g2_e0 = u0(2, 0);
    const Complex c_e0_g2 = u0(0, 2);
    const Complex c_f1_g2 = u0(1, 2);
    const Complex c_g2_g2 = u0(2, 2);

    const double w_a1 = std::norm(coeffs.alpha1);
    const double w_b1 = std::norm(coeffs.beta1);
    const double w_a2 = std::norm(coeffs.alpha2);
    const double w_b2 = std::norm(coeffs.beta2);

    EigenSpectrum spec{};
    // Lone diagonal entries. The |e,e> entry uses the (g,2)-branch amplitude
    // C^{(g,2)}_{e,0}; using C^{(e,0)}_{e,0} here would make the t = 0 state
    // mixed, contradicting the purity of the initial product state.
    spec.lambda[0] = w_a2 * w_b1 * std::norm(c_e0_g2);                              // ee
    spec.lambda[1] = w_a2 * w_b1 * std::norm(c_f1_g2);                              // ef
    spec.lambda[2] = w_a1 * (w_b2 * std::norm(c_f1_e0) + w_a2 * std::norm(c_f3_e2));  // gf
    spec.lambda[3] = w_a1 * (w_b2 * std::norm(c_g2_e0) + w_a2 * std::norm(c_g4_e2));  // gg

    // 2x2 block on {|g,e>, |e,g>}.
    const double block_ge = w_a1 * (w_b2 * std::norm(c_e0_e0) + w_a2 * std::norm(c_e2_e2));
    const double block_eg = w_b1 * (w_b2 + w_a2 * std::norm(c_g2_g2));
    const Complex coherence =
        coeffs.alpha1 * std::conj(coeffs.beta1) *
        (w_b2 * c_e0_e0 + w_a2 * c_e2_e2 * std::conj(c_g2_g2));

    const double diff = block_ge - block_eg;
    spec.eta = std::sqrt(std::max(0.0, diff * diff + 4.0 * std::norm(coherence)));
    spec.lambda[4] = 0.5 * (block_ge + block_eg - spec.eta);
    spec.lambda[5] = 0.5 * (block_ge + block_eg + spec.eta);
    return spec;
}

std::vector<double> numeric_spectrum(const AtomPairDensity& density) {
    return hermitian_spectrum(density.m, "numeric_spectrum(atoms)");
}

std::vector<double> numeric_spectrum(const FieldPairDensity& density) {
    return hermitian_spectrum(density.m, "numeric_spectrum(fields)");
}

double von_neumann_entropy(const std::vector<double>& eigenvalues) {
    double s = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda < -kEigenvalueSlack) {
            throw std::invalid_argument(
                "von_neumann_entropy: negative eigenvalue beyond tolerance");
        }
        if (lambda < kZeroEigenvalue) continue;  // 0 log 0 = 0
        lambda = std::min(lambda, 1.0);  // rounding can push a pure state past 1
        s -= lambda * std::log2(lambda);
    }
    return s;
}

double von_neumann_entropy(const EigenSpectrum& spectrum) {
    return von_neumann_entropy(
        std::vector<double>(spectrum.lambda.begin(), spectrum.lambda.end()));
}

}  // namespace qswap
