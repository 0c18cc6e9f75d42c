#include "ptqm/experiments.hpp"

#include <cmath>
#include <stdexcept>

namespace ptqm {

namespace {

const Complex kI(0.0, 1.0);

double sandwich(const CVector& v, const CMatrix& m) { return dot(v, m * v).real(); }

CVector basis_state(int k) {
  CVector v(2);
  v[static_cast<std::size_t>(k)] = 1.0;
  return v;
}

CMatrix computational_projector(int a, int b) {
  const CVector ea = basis_state(a), eb = basis_state(b);
  return tensor(outer(ea, ea), outer(eb, eb));
}

double normalized_sandwich(const CVector& v, const CMatrix& m) {
  const double n = dot(v, v).real();
  if (n < 1e-14) throw std::domain_error("probability on a vanishing state");
  return sandwich(v, m) / n;
}

}  // namespace

const char* to_string(YOutcome o) { return o == YOutcome::PlusY ? "+y" : "-y"; }

CVector y_state(YOutcome o) {
  const double r = 1.0 / std::sqrt(2.0);
  return o == YOutcome::PlusY ? CVector{r, r * kI} : CVector{r, -r * kI};
}

YProjector y_projector(YOutcome a, YOutcome b) {
  const CVector va = y_state(a), vb = y_state(b);
  return YProjector{a, b, tensor(outer(va, va), outer(vb, vb))};
}

std::array<CVector, 4> eta_basis() {
  return {
      CVector{0.5, -0.5 * kI, 0.5 * kI, 0.5},
      CVector{0.5, 0.5 * kI, 0.5 * kI, -0.5},
      CVector{0.5, 0.5 * kI, -0.5 * kI, 0.5},
      CVector{-0.5, 0.5 * kI, 0.5 * kI, 0.5},
  };
}

namespace {

double marginal_sum(const CVector& state, YOutcome fixed, MarginalOver over, bool normalize) {
  double total = 0.0;
  for (YOutcome running : {YOutcome::PlusY, YOutcome::MinusY}) {
    const YProjector proj = (over == MarginalOver::AliceOutcomes)
                                ? y_projector(running, fixed)
                                : y_projector(fixed, running);
    total += normalize ? normalized_sandwich(state, proj.matrix) : sandwich(state, proj.matrix);
  }
  return total;
}

}  // namespace

double marginal_hilbert(double alpha, AliceChoice choice, YOutcome b, MarginalOver over) {
  const auto sys = BipartiteSystem::one_sided(PTHamiltonian(1.0, alpha));
  const FinalStatePair fin = evolve_entangled(sys, choice);
  return marginal_sum(fin.psi_f, b, over, /*normalize=*/true);
}

double marginal_hilbert_closed_form(double alpha, AliceChoice choice) {
  const double s = std::sin(alpha);
  const double sign = (choice == AliceChoice::Plus) ? -1.0 : 1.0;
  return (1.0 + sign * s) * (1.0 + sign * s) / (2.0 * (1.0 + s * s));
}

double marginal_cpt(double alpha, AliceChoice choice, YOutcome fixed, MarginalOver over) {
  const auto sys = BipartiteSystem::one_sided(PTHamiltonian(1.0, alpha));
  const FinalStatePair fin = evolve_entangled(sys, choice);
  return marginal_sum(fin.phi_f, fixed, over, /*normalize=*/false);
}

double marginal_cpt(double alpha_a, double alpha_b, AliceChoice choice_a, AliceChoice choice_b,
                    YOutcome fixed, MarginalOver over) {
  const auto sys =
      BipartiteSystem::two_sided(PTHamiltonian(1.0, alpha_a), PTHamiltonian(1.0, alpha_b));
  const FinalStatePair fin = evolve_entangled_two_sided(sys, choice_a, choice_b);
  return marginal_sum(fin.phi_f, fixed, over, /*normalize=*/false);
}

CMatrix cpt_pair_density(double alpha) {
  if (!alpha_unbroken(alpha)) throw std::domain_error("broken PT symmetry: require |alpha| < pi/2");
  const double c2 = std::cos(alpha) * std::cos(alpha);
  const double s = std::sin(alpha);
  const Complex q = 2.0 * kI * s / c2;        // (1,2)-type off-diagonal
  const Complex r((1.0 + s * s) / c2);        // (1,4)-type off-diagonal
  const Complex one(1.0), zero(0.0);
  CMatrix rho(4, 4,
              {one, q, zero, r,    //
               q, one, r, zero,    //
               zero, r, one, q,    //
               r, zero, q, one});
  return Complex(0.25) * rho;
}

CMatrix hilbert_reduced_density(double alpha) {
  const PTHamiltonian h(1.0, alpha);
  const Spectrum2 spec = eigensystem(h);
  // Quarter period: (E+ - E-) t = pi/2.
  const double t = (kPi / 2.0) / (spec.e_plus - spec.e_minus);
  const CMatrix u = spectral_exp(hamiltonian_matrix(h), Complex(0.0, -t));
  CVector chi = tensor(u, CMatrix::identity(2)) * bell_state();
  chi = Complex(1.0 / norm(chi)) * chi;
  return partial_trace(outer(chi, chi), Keep::Second);
}

CMatrix hilbert_reduced_closed_form(double alpha) {
  if (!alpha_unbroken(alpha)) throw std::domain_error("broken PT symmetry: require |alpha| < pi/2");
  const double s = std::sin(alpha), c = std::cos(alpha);
  return Complex(0.5) * CMatrix(2, 2,
                                {Complex(1.0 + s * c), kI * s,  //
                                 -kI * s, Complex(1.0 - s * c)});
}

std::optional<double> entropy_bits(std::array<double, 2> eigenvalues) {
  double total = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -1e-9 || lambda > 1.0 + 1e-9) return std::nullopt;
    if (lambda <= 0.0) continue;  // 0 log 0 = 0
    total -= lambda * std::log2(lambda);
  }
  return total;
}

EntanglementReport entanglement_report(double alpha, Prescription p) {
  EntanglementReport report;
  report.prescription = p;
  report.alpha = alpha;
  report.reduced = (p == Prescription::CPT) ? partial_trace(cpt_pair_density(alpha), Keep::First)
                                            : hilbert_reduced_density(alpha);
  const auto pairs = eig_2x2(report.reduced);
  report.eigenvalues = {pairs[0].value.real(), pairs[1].value.real()};
  const auto entropy = entropy_bits(report.eigenvalues);
  if (entropy) {
    report.entropy_bits = *entropy;
  } else {
    report.diagnostic = "reduced-density eigenvalue outside [0, 1]";
  }
  return report;
}

ChshStrategy ChshStrategy::standard() { return from_zeta(kPi / 8.0); }

ChshStrategy ChshStrategy::from_zeta(double z) {
  if (!std::isfinite(z)) throw std::invalid_argument("ChshStrategy: zeta must be finite");
  return ChshStrategy{{0.0, 2.0 * z}, {z, -z}, z};
}

CMatrix rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return CMatrix(2, 2, {Complex(c), Complex(-s), Complex(s), Complex(c)});
}

CVector chsh_final_phi(const ChshStrategy& strategy, int input_a, int input_b, double alpha_a,
                       double alpha_b) {
  if ((input_a & ~1) || (input_b & ~1)) throw std::invalid_argument("chsh: inputs are bits");
  const auto sys =
      BipartiteSystem::two_sided(PTHamiltonian(1.0, alpha_a), PTHamiltonian(1.0, alpha_b));
  const CMatrix ua = spectral_exp(hamiltonian_matrix(sys.side_a), Complex(0.0, -sys.tau));
  const CMatrix ub = spectral_exp(hamiltonian_matrix(*sys.side_b), Complex(0.0, -sys.tau_b()));
  const CMatrix op = tensor(ua * rotation(strategy.theta_a[static_cast<std::size_t>(input_a)]),
                            ub * rotation(strategy.theta_b[static_cast<std::size_t>(input_b)]));
  const CVector psi_f = op * bell_state();
  return sys.lifted_c_dagger * (sys.lifted_p * psi_f);
}

double chsh_marginal(const ChshStrategy& strategy, int input_a, int input_b, int a, int b,
                     double alpha_a, double alpha_b) {
  if ((a & ~1) || (b & ~1)) throw std::invalid_argument("chsh: outputs are bits");
  const CVector phi = chsh_final_phi(strategy, input_a, input_b, alpha_a, alpha_b);
  return sandwich(phi, computational_projector(a, b));
}

double chsh_marginal_closed_form(const ChshStrategy& strategy, int input_a, int input_b, int a,
                                 int b) {
  const double d = strategy.theta_a[static_cast<std::size_t>(input_a)] -
                   strategy.theta_b[static_cast<std::size_t>(input_b)];
  const double c2 = std::cos(d) * std::cos(d);
  return 0.5 * (a == b ? c2 : 1.0 - c2);
}

double chsh_win_probability(double zeta) {
  const double c = std::cos(zeta), s3 = std::sin(3.0 * zeta);
  return 0.25 * (3.0 * c * c + s3 * s3);
}

double chsh_win_probability_via_marginals(double zeta, double alpha_a, double alpha_b) {
  const ChshStrategy strategy = ChshStrategy::from_zeta(zeta);
  double total = 0.0;
  for (int input_a : {0, 1}) {
    for (int input_b : {0, 1}) {
      for (int a : {0, 1}) {
        for (int b : {0, 1}) {
          if ((a ^ b) != (input_a & input_b)) continue;  // win when parity matches product
          total += 0.25 * chsh_marginal(strategy, input_a, input_b, a, b, alpha_a, alpha_b);
        }
      }
    }
  }
  return total;
}

ChshOptimum chsh_optimize(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("chsh_optimize: invalid interval");
  }
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = chsh_win_probability(x1);
  double f2 = chsh_win_probability(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = chsh_win_probability(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = chsh_win_probability(x1);
    }
  }
  const double zeta = 0.5 * (a + b);
  return ChshOptimum{zeta, chsh_win_probability(zeta)};
}

namespace {

struct SettingPair {
  AliceChoice choice_a;
  std::optional<AliceChoice> choice_b;
};

double joint_probability(const BipartiteSystem& sys, const SettingPair& setting,
                         const CVector& initial, Prescription p, YOutcome a, YOutcome b) {
  const FinalStatePair fin =
      setting.choice_b ? evolve_state_two_sided(sys, setting.choice_a, *setting.choice_b, initial)
                       : evolve_state(sys, setting.choice_a, initial);
  const CVector& state = (p == Prescription::CPT) ? fin.phi_f : fin.psi_f;
  return normalized_sandwich(state, y_projector(a, b).matrix);
}

}  // namespace

JointProbabilityTable nosignaling_report(const NoSignalConfig& config) {
  const auto sys = config.alpha_b
                       ? BipartiteSystem::two_sided(PTHamiltonian(1.0, config.alpha_a),
                                                    PTHamiltonian(1.0, *config.alpha_b))
                       : BipartiteSystem::one_sided(PTHamiltonian(1.0, config.alpha_a));
  const CVector initial =
      (config.initial == InitialState::Entangled) ? bell_state() : separable_00();

  std::vector<SettingPair> settings;
  for (AliceChoice ca : {AliceChoice::Plus, AliceChoice::Minus}) {
    if (config.alpha_b) {
      for (AliceChoice cb : {AliceChoice::Plus, AliceChoice::Minus}) {
        settings.push_back({ca, cb});
      }
    } else {
      settings.push_back({ca, std::nullopt});
    }
  }

  JointProbabilityTable table;
  table.prescription = config.prescription;
  table.alpha_a = config.alpha_a;
  table.alpha_b = config.alpha_b;
  table.initial = config.initial;
  for (const SettingPair& setting : settings) {
    for (YOutcome a : {YOutcome::PlusY, YOutcome::MinusY}) {
      for (YOutcome b : {YOutcome::PlusY, YOutcome::MinusY}) {
        table.entries.push_back(
            {setting.choice_a, setting.choice_b, a, b,
             joint_probability(sys, setting, initial, config.prescription, a, b)});
      }
    }
  }

  auto lookup = [&](const SettingPair& setting, YOutcome a, YOutcome b) {
    for (const JointEntry& e : table.entries) {
      if (e.choice_a == setting.choice_a && e.choice_b == setting.choice_b && e.a == a &&
          e.b == b) {
        return e.probability;
      }
    }
    throw std::logic_error("nosignaling_report: missing table entry");
  };

  // Bob's marginal must not move when Alice changes setting, and vice versa.
  double deviation = 0.0;
  const std::vector<std::optional<AliceChoice>> bob_settings =
      config.alpha_b ? std::vector<std::optional<AliceChoice>>{AliceChoice::Plus, AliceChoice::Minus}
                     : std::vector<std::optional<AliceChoice>>{std::nullopt};
  for (const auto& cb : bob_settings) {
    for (YOutcome b : {YOutcome::PlusY, YOutcome::MinusY}) {
      double sums[2];
      int k = 0;
      for (AliceChoice ca : {AliceChoice::Plus, AliceChoice::Minus}) {
        sums[k++] = lookup({ca, cb}, YOutcome::PlusY, b) + lookup({ca, cb}, YOutcome::MinusY, b);
      }
      const double mean = 0.5 * (sums[0] + sums[1]);
      deviation = std::max({deviation, std::abs(sums[0] - mean), std::abs(sums[1] - mean)});
    }
  }
  if (config.alpha_b) {
    for (AliceChoice ca : {AliceChoice::Plus, AliceChoice::Minus}) {
      for (YOutcome a : {YOutcome::PlusY, YOutcome::MinusY}) {
        double sums[2];
        int k = 0;
        for (AliceChoice cb : {AliceChoice::Plus, AliceChoice::Minus}) {
          sums[k++] = lookup({ca, cb}, a, YOutcome::PlusY) + lookup({ca, cb}, a, YOutcome::MinusY);
        }
        const double mean = 0.5 * (sums[0] + sums[1]);
        deviation = std::max({deviation, std::abs(sums[0] - mean), std::abs(sums[1] - mean)});
      }
    }
  }
  table.signaling_deviation = deviation;
  return table;
}

}  // namespace ptqm
