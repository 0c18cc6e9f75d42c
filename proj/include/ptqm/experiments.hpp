#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ptqm/composite.hpp"

namespace ptqm {

enum class YOutcome { PlusY, MinusY };

const char* to_string(YOutcome o);

/// |+y> = (|0> + i|1>)/sqrt(2), |-y> = (|0> - i|1>)/sqrt(2).
CVector y_state(YOutcome o);

/// |a><a| (x) |b><b| in the y basis: Hermitian, idempotent, trace one.
struct YProjector {
  YOutcome a_outcome;
  YOutcome b_outcome;
  CMatrix matrix;  // 4x4
};

YProjector y_projector(YOutcome a, YOutcome b);

/// The four product-state eigenvectors eta_1..eta_4 of the y projectors,
/// in a fixed order and phase convention; 1/4 sum |eta><eta| = I/4.
std::array<CVector, 4> eta_basis();

/// Which party's outcomes the marginal sums over.
enum class MarginalOver { AliceOutcomes, BobOutcomes };

/// Hilbert-prescription marginal sum_a <psi_f|a,b><a,b|psi_f> / <psi_f|psi_f>
/// for the one-sided entangled experiment. Alpha-dependent: equals
/// (1 -+ sin a)^2 / (2 (1 + sin^2 a)) at b = +y.
double marginal_hilbert(double alpha, AliceChoice choice, YOutcome b,
                        MarginalOver over = MarginalOver::AliceOutcomes);
double marginal_hilbert_closed_form(double alpha, AliceChoice choice);

/// CPT-prescription marginal sum over one party of <Phi_f|a,b><a,b|Phi_f>:
/// 1/2 independent of alpha, choice, and direction.
double marginal_cpt(double alpha, AliceChoice choice, YOutcome fixed,
                    MarginalOver over = MarginalOver::AliceOutcomes);
double marginal_cpt(double alpha_a, double alpha_b, AliceChoice choice_a, AliceChoice choice_b,
                    YOutcome fixed, MarginalOver over = MarginalOver::AliceOutcomes);

/// The pair density 1/2(|psi+_f><Phi+_f| + |psi-_f><Phi-_f|) in its
/// closed form: ones on the diagonal, 2i sin(a)/cos^2(a) and
/// (1+sin^2 a)/cos^2(a) off-diagonals, all over 4. Tracing out the second
/// factor gives I/2; tracing out the first leaves i sin(a)/cos^2(a)
/// off-diagonals (both directions are exercised in the tests).
CMatrix cpt_pair_density(double alpha);

/// Hilbert-prescription reduced state of the evolved entangled pair at the
/// quarter period (E+ - E-) t = pi/2, which is where the closed form below
/// is reproduced.
CMatrix hilbert_reduced_density(double alpha);
/// 1/2 [[1 + sin a cos a, i sin a], [-i sin a, 1 - sin a cos a]].
CMatrix hilbert_reduced_closed_form(double alpha);

struct EntanglementReport {
  Prescription prescription;
  double alpha;
  CMatrix reduced;                     // 2x2
  std::array<double, 2> eigenvalues;   // descending
  std::optional<double> entropy_bits;  // absent when the diagnostic fires
  std::string diagnostic;              // empty when entropy is valid
};

/// CPT branch: eigenvalues 1/2, entropy one bit for every unbroken alpha.
/// Hilbert branch: eigenvalues (1 +- sqrt(1 - cos^4 a))/2.
EntanglementReport entanglement_report(double alpha, Prescription p);

/// Base-2 entropy -sum lambda log2 lambda with 0 log 0 = 0; nullopt if an
/// eigenvalue falls outside [0, 1].
std::optional<double> entropy_bits(std::array<double, 2> eigenvalues);

/// Measurement-basis rotations by input bit. The standard assignment is
/// theta_A = {0, pi/4}, theta_B = {pi/8, -pi/8}; the zeta family keeps the
/// relative angle zeta except 3 zeta on input (1,1).
struct ChshStrategy {
  std::array<double, 2> theta_a;
  std::array<double, 2> theta_b;
  double zeta;
  static ChshStrategy standard();
  static ChshStrategy from_zeta(double z);
};

/// Counterclockwise rotation [[cos t, -sin t], [sin t, cos t]].
CMatrix rotation(double theta);

/// CPT image of the CHSH final state (U_tau R_A (x) U_tau R_B) psi_0.
/// Independent of both alpha values; equals
/// (-cos d, -sin d, sin d, -cos d)/sqrt(2) with d = theta_A - theta_B.
CVector chsh_final_phi(const ChshStrategy& strategy, int input_a, int input_b, double alpha_a,
                       double alpha_b);

/// P(ab|AB) via computational-basis projectors on the CPT final state.
double chsh_marginal(const ChshStrategy& strategy, int input_a, int input_b, int a, int b,
                     double alpha_a = kPi / 6.0, double alpha_b = kPi / 8.0);
/// 1/2 [cos^2 d delta_ab + sin^2 d (1 - delta_ab)].
double chsh_marginal_closed_form(const ChshStrategy& strategy, int input_a, int input_b, int a,
                                 int b);

/// 1/4 [3 cos^2 z + sin^2(3z)].
double chsh_win_probability(double zeta);
/// Same quantity assembled from the zeta-family marginals with win
/// condition a xor b = A and B.
double chsh_win_probability_via_marginals(double zeta, double alpha_a = kPi / 6.0,
                                          double alpha_b = kPi / 8.0);

struct ChshOptimum {
  double zeta_star;
  double p_star;
};

/// Golden-section maximum of the winning probability on [lo, hi]
/// (default [0, pi/4], where the optimum sits at pi/8).
ChshOptimum chsh_optimize(double lo = 0.0, double hi = kPi / 4.0);

enum class InitialState { Entangled, Separable00 };

struct NoSignalConfig {
  Prescription prescription = Prescription::CPT;
  double alpha_a = kPi / 6.0;
  std::optional<double> alpha_b;
  InitialState initial = InitialState::Entangled;
};

struct JointEntry {
  AliceChoice choice_a;
  std::optional<AliceChoice> choice_b;
  YOutcome a;
  YOutcome b;
  double probability;
};

struct JointProbabilityTable {
  Prescription prescription;
  double alpha_a;
  std::optional<double> alpha_b;
  InitialState initial;
  std::vector<JointEntry> entries;
  /// max over outcomes of |sum-marginal - its mean across the other party's
  /// settings|; zero (to tolerance) exactly when no signaling is possible.
  double signaling_deviation;
};

JointProbabilityTable nosignaling_report(const NoSignalConfig& config);

}  // namespace ptqm
