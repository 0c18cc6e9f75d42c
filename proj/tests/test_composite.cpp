#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "ptqm/composite.hpp"

using namespace ptqm;

namespace {

const Complex kI(0.0, 1.0);

// Closed-form composite eigenfunctions for H (x) I.
std::array<CVector, 4> reference_composite_eigenvectors(double alpha) {
  const double n = 1.0 / (2.0 * std::sqrt(std::cos(alpha)));
  const Complex e = std::exp(kI * alpha / 2.0);
  const Complex eb = std::exp(-kI * alpha / 2.0);
  return {
      CVector{n * e, n * e, n * eb, n * eb},
      CVector{n * e, -n * e, n * eb, -n * eb},
      CVector{n * kI * eb, n * kI * eb, -n * kI * e, -n * kI * e},
      CVector{n * kI * eb, -n * kI * eb, -n * kI * e, n * kI * e},
  };
}

const std::array<double, 5> kAlphaGrid = {0.0, kPi / 12.0, kPi / 6.0, kPi / 4.0,
                                          0.49 * kPi * 0.99};

}  // namespace

TEST_CASE("one-sided system construction") {
  const auto sys = BipartiteSystem::one_sided(PTHamiltonian(1.0, kPi / 6.0));
  CHECK_FALSE(sys.two_sided_system());
  CHECK(sys.tau == doctest::Approx(kPi / (2.0 * std::cos(kPi / 6.0))).epsilon(1e-14));

  const CPTFrame frame = cpt_frame(sys.side_a);
  CHECK(max_abs_diff(sys.lifted_p, tensor(frame.p_op, CMatrix::identity(2))) == 0.0);
  CHECK(max_abs_diff(sys.lifted_c_dagger, tensor(frame.c_dagger_op, CMatrix::identity(2))) ==
        0.0);
  CHECK_THROWS_AS(sys.tau_b(), std::invalid_argument);

  // Hermitian limit: C^dagger lift reduces to P (x) I.
  const auto sys0 = BipartiteSystem::one_sided(PTHamiltonian(1.0, 0.0));
  CHECK(max_abs_diff(sys0.lifted_c_dagger, tensor(parity_2x2(), CMatrix::identity(2))) < 1e-14);
}

TEST_CASE("two-sided lift") {
  const auto sys =
      BipartiteSystem::two_sided(PTHamiltonian(1.0, kPi / 6.0), PTHamiltonian(1.0, kPi / 8.0));
  CHECK(sys.two_sided_system());
  const CPTFrame fa = cpt_frame(sys.side_a);
  const CPTFrame fb = cpt_frame(*sys.side_b);
  CHECK(max_abs_diff(sys.lifted_p, tensor(fa.p_op, fb.p_op)) == 0.0);
  CHECK(max_abs_diff(sys.lifted_c_dagger, tensor(fa.c_dagger_op, fb.c_dagger_op)) == 0.0);
  CHECK(sys.tau_b() == doctest::Approx(kPi / (2.0 * std::cos(kPi / 8.0))).epsilon(1e-14));

  // Applying the lift to the closed-form (+,-) final state reproduces its
  // closed-form CPT counterpart.
  const CVector psi = two_sided_final_closed_form(kPi / 6.0, kPi / 6.0, AliceChoice::Plus,
                                                  AliceChoice::Minus);
  const auto sys66 =
      BipartiteSystem::two_sided(PTHamiltonian(1.0, kPi / 6.0), PTHamiltonian(1.0, kPi / 6.0));
  const CVector phi = sys66.lifted_c_dagger * (sys66.lifted_p * psi);
  CHECK(max_abs_diff(phi, two_sided_phi_closed_form(AliceChoice::Plus, AliceChoice::Minus)) <
        1e-12);
}

TEST_CASE("composite eigensystem matches the closed-form vectors") {
  for (double alpha : kAlphaGrid) {
    const auto sys = BipartiteSystem::one_sided(PTHamiltonian(1.0, alpha));
    const auto pairs = composite_eigensystem(sys);
    const auto reference = reference_composite_eigenvectors(alpha);
    const CMatrix h4 = tensor(hamiltonian_matrix(sys.side_a), CMatrix::identity(2));
    REQUIRE(pairs.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(max_abs_diff(pairs[j].vector, reference[j]) < 1e-12);
      CHECK(max_abs_diff(h4 * pairs[j].vector, pairs[j].value * pairs[j].vector) < 1e-12);
      // PT reality: P_4x4 conj(psi) = psi.
      CHECK(max_abs_diff(sys.lifted_p * conjugate(pairs[j].vector), pairs[j].vector) < 1e-12);
    }
    const double e = std::cos(alpha);
    CHECK(pairs[0].value.real() == doctest::Approx(e).epsilon(1e-12));
    CHECK(pairs[3].value.real() == doctest::Approx(-e).epsilon(1e-12));
  }

  // Hermitian limit: +-1 patterned columns over 2.
  const auto pairs0 =
      composite_eigensystem(BipartiteSystem::one_sided(PTHamiltonian(1.0, 0.0)));
  CHECK(max_abs_diff(pairs0[0].vector, CVector{0.5, 0.5, 0.5, 0.5}) < 1e-14);
  CHECK(max_abs_diff(pairs0[1].vector, CVector{0.5, -0.5, 0.5, -0.5}) < 1e-14);
  CHECK(max_abs_diff(pairs0[2].vector, CVector{0.5 * kI, 0.5 * kI, -0.5 * kI, -0.5 * kI}) <
        1e-14);
}

TEST_CASE("composite biorthogonality and the diagonal mixture") {
  for (double alpha : kAlphaGrid) {
    const auto sys = BipartiteSystem::one_sided(PTHamiltonian(1.0, alpha));
    const auto pairs = composite_eigensystem(sys);
    std::vector<CVector> phis;
    for (const auto& p : pairs) phis.push_back(sys.lifted_c_dagger * (sys.lifted_p * p.vector));

    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(dot(phis[j], pairs[k].vector) - Complex(j == k ? 1.0 : 0.0)) < 1e-12);
      }
    }

    CMatrix mixture(4, 4);
    for (std::size_t j = 0; j < 4; ++j) {
      mixture = mixture + Complex(0.25) * outer(phis[j], pairs[j].vector);
    }
    CHECK(max_abs_diff(mixture, Complex(0.25) * CMatrix::identity(4)) < 1e-12);
  }
}

TEST_CASE("two-sided eigensystem diagonalizes the product Hamiltonian") {
  const auto sys =
      BipartiteSystem::two_sided(PTHamiltonian(1.0, kPi / 6.0), PTHamiltonian(1.5, kPi / 8.0));
  const CMatrix h = product_hamiltonian(sys);
  const auto pairs = composite_eigensystem(sys);
  REQUIRE(pairs.size() == 4);
  for (const auto& [value, vector] : pairs) {
    CHECK(max_abs_diff(h * vector, value * vector) < 1e-12);
  }
  // Biorthogonality under the two-sided lift.
  for (std::size_t j = 0; j < 4; ++j) {
    const CVector phi = sys.lifted_c_dagger * (sys.lifted_p * pairs[j].vector);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(std::abs(dot(phi, pairs[k].vector) - Complex(j == k ? 1.0 : 0.0)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(product_hamiltonian(BipartiteSystem::one_sided(PTHamiltonian(1.0, 0.1))),
                  std::invalid_argument);
}

TEST_CASE("evolved entangled states match the closed forms") {
  for (double alpha : kAlphaGrid) {
    const auto sys = BipartiteSystem::one_sided(PTHamiltonian(1.0, alpha));
    for (AliceChoice choice : {AliceChoice::Plus, AliceChoice::Minus}) {
      const FinalStatePair fin = evolve_entangled(sys, choice);
      CHECK(max_abs_diff_up_to_phase(fin.psi_f, final_state_closed_form(alpha, choice)) < 1e-10);
      CHECK(max_abs_diff_up_to_phase(fin.phi_f, final_phi_closed_form(choice)) < 1e-10);
      CHECK(std::abs(dot(fin.phi_f, fin.phi_f) - Complex(1.0)) < 1e-12);
    }
    // The two phi branches are orthogonal.
    const FinalStatePair plus = evolve_entangled(sys, AliceChoice::Plus);
    const FinalStatePair minus = evolve_entangled(sys, AliceChoice::Minus);
    CHECK(std::abs(dot(plus.phi_f, minus.phi_f)) < 1e-12);
  }

  // alpha = 0: psi_f+ reduces to -i(|01> + |10>)/sqrt(2).
  const auto sys0 = BipartiteSystem::one_sided(PTHamiltonian(1.0, 0.0));
  const FinalStatePair fin0 = evolve_entangled(sys0, AliceChoice::Plus);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(fin0.psi_f, CVector{0.0, -r * kI, -r * kI, 0.0}) < 1e-12);
}

TEST_CASE("phi of the final state is alpha independent") {
  const CVector reference = evolve_entangled(BipartiteSystem::one_sided(PTHamiltonian(1.0, 0.0)),
                                             AliceChoice::Plus)
                                .phi_f;
  for (double alpha : kAlphaGrid) {
    const auto sys = BipartiteSystem::one_sided(PTHamiltonian(1.0, alpha));
    CHECK(max_abs_diff(evolve_entangled(sys, AliceChoice::Plus).phi_f, reference) < 1e-10);
  }
}

TEST_CASE("evolution computed two ways") {
  // Spectral exponential of the lifted Hamiltonian against the closed form.
  for (double alpha : {kPi / 12.0, kPi / 6.0, kPi / 4.0}) {
    const auto sys = BipartiteSystem::one_sided(PTHamiltonian(1.0, alpha));
    const CMatrix h2 = hamiltonian_matrix(sys.side_a);
    const auto lifted_pairs = tensor_eigensystem(eig_2x2(h2), eig_2x2(CMatrix::identity(2)));
    const CMatrix u4 = spectral_exp(lifted_pairs, Complex(0.0, -sys.tau));
    for (AliceChoice choice : {AliceChoice::Plus, AliceChoice::Minus}) {
      const CVector psi =
          u4 * (tensor(choice_operator(choice), CMatrix::identity(2)) * bell_state());
      CHECK(max_abs_diff_up_to_phase(psi, final_state_closed_form(alpha, choice)) < 1e-10);
    }
  }
}

TEST_CASE("two-sided evolution reproduces the closed-form final states") {
  const double aa = kPi / 6.0, ab = kPi / 8.0;
  const auto sys = BipartiteSystem::two_sided(PTHamiltonian(1.0, aa), PTHamiltonian(1.0, ab));
  for (AliceChoice ca : {AliceChoice::Plus, AliceChoice::Minus}) {
    for (AliceChoice cb : {AliceChoice::Plus, AliceChoice::Minus}) {
      const FinalStatePair fin = evolve_entangled_two_sided(sys, ca, cb);
      CHECK(max_abs_diff_up_to_phase(fin.psi_f, two_sided_final_closed_form(aa, ab, ca, cb)) <
            1e-10);
      CHECK(max_abs_diff_up_to_phase(fin.phi_f, two_sided_phi_closed_form(ca, cb)) < 1e-10);
      CHECK(std::abs(dot(fin.phi_f, fin.phi_f) - Complex(1.0)) < 1e-12);
    }
  }

  // The closed forms coincide pairwise: sigma_x (x) sigma_x fixes the
  // entangled state, so (+,+) equals (-,-) and (+,-) equals (-,+).
  CHECK(max_abs_diff(
            two_sided_final_closed_form(aa, ab, AliceChoice::Plus, AliceChoice::Plus),
            two_sided_final_closed_form(aa, ab, AliceChoice::Minus, AliceChoice::Minus)) == 0.0);
  const FinalStatePair pm = evolve_entangled_two_sided(sys, AliceChoice::Plus, AliceChoice::Minus);
  const FinalStatePair mp = evolve_entangled_two_sided(sys, AliceChoice::Minus, AliceChoice::Plus);
  CHECK(max_abs_diff(pm.psi_f, mp.psi_f) < 1e-12);

  // Zero angles on both sides: Bell-type final states.
  const auto sys0 = BipartiteSystem::two_sided(PTHamiltonian(1.0, 0.0), PTHamiltonian(1.0, 0.0));
  const FinalStatePair fin0 = evolve_entangled_two_sided(sys0, AliceChoice::Plus, AliceChoice::Plus);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(fin0.psi_f, CVector{-r, 0.0, 0.0, -r}) < 1e-12);
}

TEST_CASE("general initial states") {
  const auto sys = BipartiteSystem::one_sided(PTHamiltonian(1.0, kPi / 6.0));
  const FinalStatePair fin = evolve_state(sys, AliceChoice::Plus, separable_00());
  CHECK(std::abs(dot(fin.phi_f, fin.phi_f) - Complex(1.0)) < 1e-12);
  CHECK_THROWS_AS(evolve_state(sys, AliceChoice::Plus, CVector(2)), std::invalid_argument);
  CHECK_THROWS_AS(evolve_entangled_two_sided(sys, AliceChoice::Plus, AliceChoice::Plus),
                  std::invalid_argument);

  const auto sys2 =
      BipartiteSystem::two_sided(PTHamiltonian(1.0, kPi / 6.0), PTHamiltonian(1.0, kPi / 8.0));
  CHECK_THROWS_AS(evolve_entangled(sys2, AliceChoice::Plus), std::invalid_argument);
}

TEST_CASE("global phase alignment") {
  const CVector v{Complex(0.0, 1.0), Complex(0.0, 2.0)};
  const CVector ref{1.0, 2.0};
  CHECK(max_abs_diff(align_global_phase(v, ref), ref) < 1e-15);
  CHECK(max_abs_diff_up_to_phase(v, ref) < 1e-15);
}
