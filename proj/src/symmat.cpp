#include "shiftspace/symmat.hpp"

#include <cmath>

#include "shiftspace/errors.hpp"
#include "shiftspace/utils.hpp"

namespace shiftspace {

CMat check_signature(const CMat& J, double tolerance) {
  if (J.rows() != J.cols()) throw NotSignature("J must be square");
  const double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
  if ((J - J.adjoint()).cwiseAbs().maxCoeff() > tolerance * scale) {
    throw NotSignature("J must be Hermitian");
  }
  if ((J * J - CMat::Identity(J.rows(), J.cols())).cwiseAbs().maxCoeff() >
      tolerance * scale * scale) {
    throw NotSignature("J must be an involution");
  }
  return J;
}

XMatrixReport assoc_sym_matrix(const StateBasis& basis, const CMat& J,
                               std::optional<Complex> alpha) {
  check_signature(J);
  const int p = static_cast<int>(J.rows());
  const int N = basis.N();
  XMatrixReport report;
  report.alpha_used = alpha.value_or(basis.r().default_alpha());

  const auto pf = basis.r().partial_fraction(report.alpha_used);
  CMat X = CMat::Zero(N * p, N * p);
  for (size_t n = 0; n < pf.poles.size(); ++n) {
    const CMat Zn = kron_row(basis.eval_Z(pf.poles[n]), p);  // p x Np
    X += pf.residues[n] * (Zn.transpose() * J * Zn);
  }
  report.X = X;
  report.symmetry_defect = (X - X.transpose()).cwiseAbs().maxCoeff();
  report.imag_defect = X.imag().cwiseAbs().maxCoeff();

  Eigen::JacobiSVD<CMat> svd(X);
  report.min_singular = svd.singularValues().minCoeff();
  report.max_singular = svd.singularValues().maxCoeff();
  if (report.min_singular < 1e-12 * report.max_singular) {
    throw SingularX("associated symmetric matrix is numerically singular");
  }
  return report;
}

AlphaIndependenceReport alpha_independence(const StateBasis& basis, const CMat& J,
                                           const std::vector<Complex>& alphas) {
  AlphaIndependenceReport report;
  std::optional<CMat> first;
  for (const auto& a : alphas) {
    if (!basis.r().in_omega(a)) continue;
    const CMat X = assoc_sym_matrix(basis, J, a).X;
    if (!first) {
      first = X;
    } else {
      report.max_deviation =
          std::max(report.max_deviation, (X - *first).cwiseAbs().maxCoeff());
    }
    report.alphas_used.push_back(a);
  }
  if (report.alphas_used.size() < 2) {
    throw DegenerateAlpha("need at least two regular values for the comparison");
  }
  return report;
}

std::vector<Complex> hankel_moments(const Poly& p) {
  const int N = p.degree();
  if (N < 1) throw Error("hankel moments need deg p >= 1");
  const auto roots = poly_roots(p);
  double big = 0.0;
  for (const auto& w : roots) big = std::max(big, std::abs(w));
  for (size_t i = 0; i < roots.size(); ++i) {
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (std::abs(roots[i] - roots[j]) <= 1e-8 * (1.0 + big)) {
        throw MultipleRoots("moment formula requires pairwise distinct roots");
      }
    }
  }
  const Poly dp = p.derivative();
  std::vector<Complex> h(static_cast<size_t>(2 * N - 1), Complex{0.0, 0.0});
  for (const auto& w : roots) {
    const Complex weight = 1.0 / dp.eval(w);
    Complex wp{1.0, 0.0};
    for (auto& hn : h) {
      hn += wp * weight;
      wp *= w;
    }
  }
  return h;
}

CMat blaschke_X(const std::vector<Complex>& zeros) {
  const RationalFn r = RationalFn::blaschke(zeros);
  const int N = static_cast<int>(zeros.size());
  CMat X = CMat::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    const Complex an = zeros[static_cast<size_t>(n)];
    const Complex weight = 1.0 / r.derivative(an);
    for (int u = 0; u < N; ++u) {
      for (int v = 0; v < N; ++v) {
        X(u, v) += weight / ((1.0 - an * std::conj(zeros[static_cast<size_t>(u)])) *
                             (1.0 - an * std::conj(zeros[static_cast<size_t>(v)])));
      }
    }
  }
  return X;
}

SignatureFactorization factor_signature(const CMat& X, double tolerance) {
  const double scale = std::max(1.0, X.cwiseAbs().maxCoeff());
  if (X.imag().cwiseAbs().maxCoeff() > tolerance * scale) {
    throw NotRealRational("signature factorization requires a real symmetric matrix");
  }
  RMat Xr = X.real();
  if ((Xr - Xr.transpose()).cwiseAbs().maxCoeff() > tolerance * scale) {
    throw NotRealRational("signature factorization requires a symmetric matrix");
  }
  Xr = 0.5 * (Xr + Xr.transpose());

  Eigen::SelfAdjointEigenSolver<RMat> eig(Xr);
  const RVec lambda = eig.eigenvalues();
  const RMat Q = eig.eigenvectors();
  const double lmax = lambda.cwiseAbs().maxCoeff();
  const int n = static_cast<int>(lambda.size());

  // Positive eigenvalues first, then negative, largest magnitude first in
  // each block.
  std::vector<int> order;
  for (int k = n - 1; k >= 0; --k) {
    if (lambda(k) > 0) order.push_back(k);
  }
  const int positives = static_cast<int>(order.size());
  for (int k = 0; k < n; ++k) {
    if (lambda(k) <= 0) order.push_back(k);
  }

  SignatureFactorization out;
  out.positives = positives;
  out.negatives = n - positives;
  out.J0 = RMat::Zero(n, n);
  out.Y = RMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int k = order[static_cast<size_t>(i)];
    if (std::abs(lambda(k)) < 1e-10 * lmax) {
      throw SingularX("zero eigenvalue: quadratic form is degenerate");
    }
    out.J0(i, i) = lambda(k) > 0 ? 1.0 : -1.0;
    out.Y.row(i) = std::sqrt(std::abs(lambda(k))) * Q.col(k).transpose();
  }
  return out;
}

}  // namespace shiftspace
