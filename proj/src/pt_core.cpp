#include "ptqm/pt_core.hpp"

#include <cmath>
#include <stdexcept>

namespace ptqm {

bool alpha_unbroken(double alpha) {
  return std::isfinite(alpha) && std::abs(alpha) < kAlphaLimit;
}

PTHamiltonian::PTHamiltonian(double s_in, double alpha_in) : s(s_in), alpha(alpha_in) {
  if (!std::isfinite(s)) throw std::invalid_argument("PTHamiltonian: s must be finite");
  if (!alpha_unbroken(alpha)) {
    throw std::domain_error("broken PT symmetry: require |alpha| < pi/2");
  }
}

CMatrix hamiltonian_matrix(const PTHamiltonian& h) {
  const Complex is = Complex(0.0, h.s * std::sin(h.alpha));
  return CMatrix(2, 2, {is, Complex(h.s), Complex(h.s), -is});
}

CMatrix parity_2x2() { return CMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }

Spectrum2 eigensystem(const PTHamiltonian& h) {
  const double n = 1.0 / std::sqrt(2.0 * std::cos(h.alpha));
  const Complex ep = std::exp(Complex(0.0, h.alpha / 2.0));
  const Complex em = std::exp(Complex(0.0, -h.alpha / 2.0));
  Spectrum2 out;
  out.e_plus = h.s * std::cos(h.alpha);
  out.e_minus = -out.e_plus;
  out.psi_plus = CVector{n * ep, n * em};
  out.psi_minus = CVector{n * em, -n * ep};
  return out;
}

namespace {

// (PT psi)^T psi with T the entrywise conjugation. Real for PT-symmetric
// eigenvectors; its sign is the PT norm sign the C operator measures.
Complex pt_norm(const CVector& psi) {
  return dot_unconjugated(matvec(parity_2x2(), conjugate(psi)), psi);
}

}  // namespace

CMatrix build_c_spectral(const Spectrum2& spec) {
  CMatrix c(2, 2);
  for (const CVector* psi : {&spec.psi_plus, &spec.psi_minus}) {
    const Complex n = pt_norm(*psi);
    if (std::abs(n) < 1e-14) {
      throw std::domain_error("build_c_spectral: eigenvector has vanishing PT norm");
    }
    c = c + (Complex(1.0) / n) * outer_unconjugated(*psi, *psi);
  }
  return c;
}

CMatrix c_closed_form(const PTHamiltonian& h) {
  const double inv_c = 1.0 / std::cos(h.alpha);
  const Complex is = Complex(0.0, std::sin(h.alpha) * inv_c);
  return CMatrix(2, 2, {is, Complex(inv_c), Complex(inv_c), -is});
}

CPTFrame cpt_frame(const PTHamiltonian& h) {
  CPTFrame frame;
  frame.dim = 2;
  frame.p_op = parity_2x2();
  frame.c_op = build_c_spectral(eigensystem(h));
  frame.c_dagger_op = conjugate(frame.c_op);  // C^dagger = TCT
  return frame;
}

const char* to_string(Prescription p) {
  return p == Prescription::CPT ? "cpt" : "hilbert";
}

CVector phi_of(const CVector& state, const CPTFrame& frame) {
  if (state.dim() != frame.dim) throw std::invalid_argument("phi_of: dimension mismatch");
  return matvec(frame.c_dagger_op, matvec(frame.p_op, state));
}

Complex inner(const CVector& a, const CVector& b, const CPTFrame& frame, Prescription p) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  if (p == Prescription::Hilbert) return dot(a, b);
  if (a.dim() != frame.dim) throw std::invalid_argument("inner: dimension mismatch");
  const CVector cpt_a = matvec(frame.c_op, matvec(frame.p_op, conjugate(a)));
  return dot_unconjugated(cpt_a, b);
}

double transition_probability(const CVector& a, const CVector& b, const CPTFrame& frame) {
  const Complex na = dot(phi_of(a, frame), a);
  const Complex nb = dot(phi_of(b, frame), b);
  if (na.real() < 1e-14 || nb.real() < 1e-14) {
    throw std::domain_error("state outside CPT-normalizable sector");
  }
  const Complex amp = dot(phi_of(a, frame), b);
  return std::norm(amp) / (na.real() * nb.real());
}

CMatrix density_matrix(std::span<const CVector> states, std::span<const double> weights,
                       const CPTFrame& frame, Prescription p) {
  if (states.size() != weights.size() || states.empty()) {
    throw std::invalid_argument("density_matrix: states/weights size mismatch");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("density_matrix: weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("density_matrix: weights must sum to 1");
  }
  CMatrix rho(frame.dim, frame.dim);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const CVector& psi = states[i];
    const CVector& ket = psi;
    const CVector bra = (p == Prescription::CPT) ? phi_of(psi, frame) : psi;
    rho = rho + Complex(weights[i]) * outer(ket, bra);
  }
  return rho;
}

}  // namespace ptqm
