#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ptqm/pt_core.hpp"

namespace ptqm {

/// Alice's pre-measurement operation: Plus is the identity, Minus the
/// bit flip sigma_x.
enum class AliceChoice { Plus, Minus };

CMatrix choice_operator(AliceChoice c);

/// Two-qubit composite with Alice always the first tensor factor, basis
/// order |00>, |01>, |10>, |11>. When side_b is absent Bob's dynamics is
/// the identity and the lifted operators are X_{2x2} (x) I.
struct BipartiteSystem {
  PTHamiltonian side_a;
  std::optional<PTHamiltonian> side_b;
  CMatrix lifted_p;         // 4x4
  CMatrix lifted_c_dagger;  // 4x4
  double tau;               // pi / (E+ - E-) of side A

  static BipartiteSystem one_sided(const PTHamiltonian& a);
  static BipartiteSystem two_sided(const PTHamiltonian& a, const PTHamiltonian& b);

  bool two_sided_system() const { return side_b.has_value(); }
  double tau_b() const;  // pi / (E+ - E-) of side B (two-sided only)
};

/// Lifted 4x4 (P, C^dagger): one-sided uses identity on side B, two-sided
/// the per-side tensor products.
std::pair<CMatrix, CMatrix> lift_frame(const BipartiteSystem& sys);

/// H_A (x) H_B as written for the two-sided composite. Informational: its
/// eigenvectors are tensor pairs, but the evolution used everywhere is the
/// local product U_A(tau_A) (x) U_B(tau_B).
CMatrix product_hamiltonian(const BipartiteSystem& sys);

/// Maximally entangled (|00> + |11>)/sqrt(2).
CVector bell_state();
/// Separable |00>.
CVector separable_00();

/// Four eigenpairs of the composite. One-sided: the PT-real convention
/// (an i phase on the negative branch, Bob factors (1,+-1)/sqrt(2)),
/// eigenvalues {+s cos a (x2), -s cos a (x2)}. Two-sided: tensor pairs of
/// the per-side eigenvectors (same i convention), eigenvalues the products.
std::vector<Eigenpair> composite_eigensystem(const BipartiteSystem& sys);

struct FinalStatePair {
  CVector psi_f;
  CVector phi_f;  // C^dagger_4x4 P_4x4 psi_f, with <phi_f|phi_f> = 1
  double alpha_a;
  std::optional<double> alpha_b;
  AliceChoice choice_a;
  std::optional<AliceChoice> choice_b;
};

/// (U(tau) A_choice (x) I) applied to the shared entangled state.
FinalStatePair evolve_entangled(const BipartiteSystem& sys, AliceChoice choice);
/// Same evolution from an arbitrary 4-component initial state.
FinalStatePair evolve_state(const BipartiteSystem& sys, AliceChoice choice,
                            const CVector& initial);

/// (U_A(tau_A) A_i (x) U_B(tau_B) B_j) applied to the entangled state.
FinalStatePair evolve_entangled_two_sided(const BipartiteSystem& sys, AliceChoice choice_a,
                                          AliceChoice choice_b);
FinalStatePair evolve_state_two_sided(const BipartiteSystem& sys, AliceChoice choice_a,
                                      AliceChoice choice_b, const CVector& initial);

// Closed forms, kept as an independent route against the evolution.
CVector final_state_closed_form(double alpha, AliceChoice choice);
CVector final_phi_closed_form(AliceChoice choice);
CVector two_sided_final_closed_form(double alpha_a, double alpha_b, AliceChoice choice_a,
                                    AliceChoice choice_b);
CVector two_sided_phi_closed_form(AliceChoice choice_a, AliceChoice choice_b);

/// Multiply v by the unit phase aligning it with ref at ref's
/// largest-modulus entry. State comparisons go through this; probabilities
/// never do.
CVector align_global_phase(const CVector& v, const CVector& ref);
double max_abs_diff_up_to_phase(const CVector& a, const CVector& b);

}  // namespace ptqm
