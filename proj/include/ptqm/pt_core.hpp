#pragma once

#include <span>

#include "ptqm/linalg.hpp"

namespace ptqm {

/// Guard band below the exceptional point at |alpha| = pi/2, where the
/// eigenvector normalization 1/sqrt(2 cos alpha) diverges.
inline constexpr double kAlphaLimit = (kPi / 2.0) * (1.0 - 1e-9);

bool alpha_unbroken(double alpha);

/// The (s, alpha) family  H = s [[i sin a, 1], [1, -i sin a]].
/// Construction rejects the broken-symmetry region |alpha| >= pi/2.
struct PTHamiltonian {
  double s;
  double alpha;
  PTHamiltonian(double s, double alpha);
};

CMatrix hamiltonian_matrix(const PTHamiltonian& h);

/// 2x2 parity operator [[0,1],[1,0]]. Time reversal is the antilinear
/// entrywise conjugation and is applied as an action, never as a matrix.
CMatrix parity_2x2();

/// Eigenpairs with the textbook normalization 1/sqrt(2 cos alpha); each
/// eigenvector has unit CPT norm, and e_plus = s cos(alpha) = -e_minus.
struct Spectrum2 {
  double e_plus;
  double e_minus;
  CVector psi_plus;
  CVector psi_minus;
};

Spectrum2 eigensystem(const PTHamiltonian& h);

/// Spectral construction of C: the PT-norm-signed sum of plain-transpose
/// outer products, C = sum_n psi_n psi_n^T / ((PT psi_n)^T psi_n). The sign
/// in the denominator is what distinguishes C from the identity; it equals
/// the closed form c_closed_form() on the unbroken family.
CMatrix build_c_spectral(const Spectrum2& spec);

/// Closed form C = (1/cos a) [[i sin a, 1], [1, -i sin a]].
CMatrix c_closed_form(const PTHamiltonian& h);

/// Operator bundle defining the CPT metric: P, C and C^dagger = conj(C).
struct CPTFrame {
  std::size_t dim;
  CMatrix p_op;
  CMatrix c_op;
  CMatrix c_dagger_op;
};

CPTFrame cpt_frame(const PTHamiltonian& h);

enum class Prescription { Hilbert, CPT };

const char* to_string(Prescription p);

/// Phi = C^dagger P psi, the dual vector with <Phi|psi> equal to the CPT norm.
CVector phi_of(const CVector& state, const CPTFrame& frame);

/// CPT branch: (C P conj(a))^T b.  Hilbert branch: conj(a)^T b.
Complex inner(const CVector& a, const CVector& b, const CPTFrame& frame, Prescription p);

/// |<Phi_a|b>|^2 / (<Phi_a|a> <Phi_b|b>); throws if either CPT norm vanishes.
double transition_probability(const CVector& a, const CVector& b, const CPTFrame& frame);

/// Weighted mixture: CPT uses |psi><Phi| terms, Hilbert uses |psi><psi|.
/// Weights must be nonnegative and sum to one (no implicit 1/N).
CMatrix density_matrix(std::span<const CVector> states, std::span<const double> weights,
                       const CPTFrame& frame, Prescription p);

}  // namespace ptqm
