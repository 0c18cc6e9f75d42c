#include "ptqm/composite.hpp"

#include <cmath>
#include <stdexcept>

namespace ptqm {

namespace {

const Complex kI(0.0, 1.0);

CMatrix evolution_2x2(const PTHamiltonian& h, double t) {
  return spectral_exp(hamiltonian_matrix(h), Complex(0.0, -t));
}

double tau_of(const PTHamiltonian& h) {
  const Spectrum2 spec = eigensystem(h);
  return kPi / (spec.e_plus - spec.e_minus);
}

}  // namespace

CMatrix choice_operator(AliceChoice c) {
  return c == AliceChoice::Plus ? CMatrix::identity(2) : parity_2x2();
}

BipartiteSystem BipartiteSystem::one_sided(const PTHamiltonian& a) {
  BipartiteSystem sys{a, std::nullopt, CMatrix(), CMatrix(), tau_of(a)};
  auto [p4, cd4] = lift_frame(sys);
  sys.lifted_p = std::move(p4);
  sys.lifted_c_dagger = std::move(cd4);
  return sys;
}

BipartiteSystem BipartiteSystem::two_sided(const PTHamiltonian& a, const PTHamiltonian& b) {
  BipartiteSystem sys{a, b, CMatrix(), CMatrix(), tau_of(a)};
  auto [p4, cd4] = lift_frame(sys);
  sys.lifted_p = std::move(p4);
  sys.lifted_c_dagger = std::move(cd4);
  return sys;
}

double BipartiteSystem::tau_b() const {
  if (!side_b) throw std::invalid_argument("tau_b: system has no PT Hamiltonian on side B");
  return tau_of(*side_b);
}

std::pair<CMatrix, CMatrix> lift_frame(const BipartiteSystem& sys) {
  const CPTFrame frame_a = cpt_frame(sys.side_a);
  if (!sys.side_b) {
    return {tensor(frame_a.p_op, CMatrix::identity(2)),
            tensor(frame_a.c_dagger_op, CMatrix::identity(2))};
  }
  const CPTFrame frame_b = cpt_frame(*sys.side_b);
  return {tensor(frame_a.p_op, frame_b.p_op),
          tensor(frame_a.c_dagger_op, frame_b.c_dagger_op)};
}

CMatrix product_hamiltonian(const BipartiteSystem& sys) {
  if (!sys.side_b) throw std::invalid_argument("product_hamiltonian: two-sided systems only");
  return tensor(hamiltonian_matrix(sys.side_a), hamiltonian_matrix(*sys.side_b));
}

CVector bell_state() {
  const double r = 1.0 / std::sqrt(2.0);
  return CVector{r, 0.0, 0.0, r};
}

CVector separable_00() { return CVector{1.0, 0.0, 0.0, 0.0}; }

std::vector<Eigenpair> composite_eigensystem(const BipartiteSystem& sys) {
  const Spectrum2 sa = eigensystem(sys.side_a);
  // PT-real convention: the negative branch carries an i phase so that
  // P T psi = psi holds entrywise.
  const CVector minus_a = kI * sa.psi_minus;
  if (!sys.side_b) {
    const double r = 1.0 / std::sqrt(2.0);
    const CVector xp{r, r};
    const CVector xm{r, -r};
    return {
        {Complex(sa.e_plus), tensor(sa.psi_plus, xp)},
        {Complex(sa.e_plus), tensor(sa.psi_plus, xm)},
        {Complex(sa.e_minus), tensor(minus_a, xp)},
        {Complex(sa.e_minus), tensor(minus_a, xm)},
    };
  }
  const Spectrum2 sb = eigensystem(*sys.side_b);
  const CVector minus_b = kI * sb.psi_minus;
  // Eigenvalues of the product Hamiltonian H_A (x) H_B.
  return {
      {Complex(sa.e_plus * sb.e_plus), tensor(sa.psi_plus, sb.psi_plus)},
      {Complex(sa.e_plus * sb.e_minus), tensor(sa.psi_plus, minus_b)},
      {Complex(sa.e_minus * sb.e_plus), tensor(minus_a, sb.psi_plus)},
      {Complex(sa.e_minus * sb.e_minus), tensor(minus_a, minus_b)},
  };
}

FinalStatePair evolve_state(const BipartiteSystem& sys, AliceChoice choice,
                            const CVector& initial) {
  if (initial.dim() != 4) throw std::invalid_argument("evolve_state: initial state must have dim 4");
  const CMatrix u = evolution_2x2(sys.side_a, sys.tau);
  const CMatrix op = tensor(u * choice_operator(choice), CMatrix::identity(2));
  FinalStatePair out;
  out.psi_f = op * initial;
  out.phi_f = sys.lifted_c_dagger * (sys.lifted_p * out.psi_f);
  out.alpha_a = sys.side_a.alpha;
  out.choice_a = choice;
  return out;
}

FinalStatePair evolve_entangled(const BipartiteSystem& sys, AliceChoice choice) {
  if (sys.side_b) {
    throw std::invalid_argument("evolve_entangled: one-sided systems only; use the two-sided overload");
  }
  return evolve_state(sys, choice, bell_state());
}

FinalStatePair evolve_state_two_sided(const BipartiteSystem& sys, AliceChoice choice_a,
                                      AliceChoice choice_b, const CVector& initial) {
  if (!sys.side_b) throw std::invalid_argument("evolve_state_two_sided: system has no side B");
  if (initial.dim() != 4) throw std::invalid_argument("evolve_state: initial state must have dim 4");
  const CMatrix ua = evolution_2x2(sys.side_a, sys.tau);
  const CMatrix ub = evolution_2x2(*sys.side_b, sys.tau_b());
  const CMatrix op = tensor(ua * choice_operator(choice_a), ub * choice_operator(choice_b));
  FinalStatePair out;
  out.psi_f = op * initial;
  out.phi_f = sys.lifted_c_dagger * (sys.lifted_p * out.psi_f);
  out.alpha_a = sys.side_a.alpha;
  out.alpha_b = sys.side_b->alpha;
  out.choice_a = choice_a;
  out.choice_b = choice_b;
  return out;
}

FinalStatePair evolve_entangled_two_sided(const BipartiteSystem& sys, AliceChoice choice_a,
                                          AliceChoice choice_b) {
  return evolve_state_two_sided(sys, choice_a, choice_b, bell_state());
}

CVector final_state_closed_form(double alpha, AliceChoice choice) {
  if (!alpha_unbroken(alpha)) throw std::domain_error("broken PT symmetry: require |alpha| < pi/2");
  const double n = 1.0 / (std::sqrt(2.0) * std::cos(alpha));
  const Complex s(std::sin(alpha));
  if (choice == AliceChoice::Plus) {
    return CVector{n * s, -n * kI, -n * kI, -n * s};
  }
  return CVector{-n * kI, n * s, -n * s, -n * kI};
}

CVector final_phi_closed_form(AliceChoice choice) {
  const double r = 1.0 / std::sqrt(2.0);
  if (choice == AliceChoice::Plus) return CVector{0.0, -r * kI, -r * kI, 0.0};
  return CVector{-r * kI, 0.0, 0.0, -r * kI};
}

CVector two_sided_final_closed_form(double alpha_a, double alpha_b, AliceChoice choice_a,
                                    AliceChoice choice_b) {
  if (!alpha_unbroken(alpha_a) || !alpha_unbroken(alpha_b)) {
    throw std::domain_error("broken PT symmetry: require |alpha| < pi/2");
  }
  const double n = 1.0 / (std::sqrt(2.0) * std::cos(alpha_a) * std::cos(alpha_b));
  const double sa = std::sin(alpha_a), sb = std::sin(alpha_b);
  if (choice_a == choice_b) {
    // Identical for (+,+) and (-,-): sigma_x (x) sigma_x leaves the
    // entangled state invariant.
    return CVector{Complex(n * (sa * sb - 1.0)), n * kI * (sb - sa), n * kI * (sa - sb),
                   Complex(n * (sa * sb - 1.0))};
  }
  return CVector{-n * kI * (sa + sb), Complex(-n * (1.0 + sa * sb)),
                 Complex(-n * (1.0 + sa * sb)), n * kI * (sa + sb)};
}

CVector two_sided_phi_closed_form(AliceChoice choice_a, AliceChoice choice_b) {
  const double r = 1.0 / std::sqrt(2.0);
  if (choice_a == choice_b) return CVector{-r, 0.0, 0.0, -r};
  return CVector{0.0, -r, -r, 0.0};
}

CVector align_global_phase(const CVector& v, const CVector& ref) {
  if (v.dim() != ref.dim()) throw std::invalid_argument("align_global_phase: dimension mismatch");
  std::size_t k = 0;
  for (std::size_t i = 1; i < ref.dim(); ++i)
    if (std::abs(ref[i]) > std::abs(ref[k])) k = i;
  if (std::abs(v[k]) < 1e-14 || std::abs(ref[k]) < 1e-14) return v;
  Complex phase = ref[k] / v[k];
  phase /= std::abs(phase);
  return phase * v;
}

double max_abs_diff_up_to_phase(const CVector& a, const CVector& b) {
  return max_abs_diff(align_global_phase(a, b), b);
}

}  // namespace ptqm
