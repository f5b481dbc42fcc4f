#include "shiftspace/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "shiftspace/analytic_fn.hpp"
#include "shiftspace/errors.hpp"
#include "shiftspace/resolvent.hpp"
#include "shiftspace/utils.hpp"

namespace shiftspace {

namespace {

constexpr double kSingularRel = 1e-12;
constexpr double kDiagonalTol = 1e-12;

CMat hermitize(const CMat& A) { return 0.5 * (A + A.adjoint()); }

// Inverse through an SVD so near-singularity is detected reliably on the
// small matrices used here. Throws the supplied error type via `thrower`.
template <typename Thrower>
CMat invert_checked(const CMat& S, Thrower thrower) {
  Eigen::JacobiSVD<CMat> svd(S, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= kSingularRel * (1.0 + sv(0))) {
    thrower();
  }
  return svd.solve(CMat::Identity(S.rows(), S.cols()));
}

Complex domain_denominator(KernelDomain domain, Complex left, Complex right) {
  return domain == KernelDomain::Line ? -kI * (left - std::conj(right))
                                      : 1.0 - left * std::conj(right);
}

Complex checked_denominator(KernelDomain domain, Complex left, Complex right) {
  Complex denom = domain_denominator(domain, left, right);
  if (std::abs(denom) < kDiagonalTol) {
    throw DiagonalSingularity("kernel denominator vanishes at the requested pair");
  }
  return denom;
}

int block_size(const StateBasis& basis, Eigen::Index rows, const char* what) {
  const int N = basis.N();
  if (rows <= 0 || rows % N != 0) {
    throw Error(std::string(what) + " must have N*p rows for the state dimension N");
  }
  return static_cast<int>(rows) / N;
}

CMat checked_square(const CMat& V, Eigen::Index expected, const char* what) {
  if (V.rows() != expected || V.cols() != expected) {
    throw Error(std::string(what) + " evaluator returned a wrong shape");
  }
  return V;
}

// W = M J M^* with J = diag(+-1), positive eigenvalues first.
struct JFactor {
  CMat M;
  CMat J;
  int positives = 0;
  int negatives = 0;
};

JFactor jfactor(const CMat& W) {
  Eigen::SelfAdjointEigenSolver<CMat> es(W);
  const Eigen::Index n = W.rows();
  std::vector<int> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return es.eigenvalues()(a) > es.eigenvalues()(b); });
  JFactor out;
  out.M = CMat::Zero(n, n);
  out.J = CMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double lambda = es.eigenvalues()(order[i]);
    out.M.col(i) = es.eigenvectors().col(order[i]) * std::sqrt(std::abs(lambda));
    out.J(i, i) = lambda >= 0 ? 1.0 : -1.0;
    (lambda >= 0 ? out.positives : out.negatives) += 1;
  }
  return out;
}

}  // namespace

void InvariantSubspaceData::validate(int N) const {
  const Eigen::Index dim = A.rows();
  if (A.cols() != dim || B.rows() != dim || B.cols() != dim || P.rows() != dim ||
      P.cols() != dim) {
    throw Error("A, B, P must be square matrices of a common size");
  }
  if (m < 1) {
    throw Error("block size m must be at least 1");
  }
  if (C.rows() != static_cast<Eigen::Index>(m) * N || C.cols() != dim) {
    throw Error("C must be (m N) x M");
  }
  double scale = P.cwiseAbs().maxCoeff();
  if ((P - P.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale)) {
    throw Error("P must be Hermitian");
  }
  Eigen::JacobiSVD<CMat> svd(P);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= kSingularRel * (1.0 + sv(0))) {
    throw Error("P must be invertible");
  }
  const Complex probes[] = {{0.0, 0.0}, {0.37, 0.21}, {-1.3, 0.77}, {2.1, -1.9}};
  for (Complex v : probes) {
    Eigen::JacobiSVD<CMat> pencil(A - v * B);
    const auto& ps = pencil.singularValues();
    if (ps(ps.size() - 1) > kSingularRel * (1.0 + ps(0))) {
      return;
    }
  }
  throw SingularPencil("A - vB is singular at every probe value");
}

CMat invariant_frame(const StateBasis& basis, const InvariantSubspaceData& data, Complex z) {
  Complex rz = basis.r().eval(z);
  CMat pencil_inv = invert_checked(data.A - rz * data.B, [&] {
    throw SingularPencil("A - r(z)B is singular at the requested point");
  });
  return kron_row(basis.eval_Z(z), data.m) * data.C * pencil_inv;
}

CMat invariant_kernel(const StateBasis& basis, const InvariantSubspaceData& data, Complex z,
                      Complex w) {
  data.validate(basis.N());
  CMat Mz = invariant_frame(basis, data, z);
  CMat Mw = invariant_frame(basis, data, w);
  return Mz * data.P.partialPivLu().solve(Mw.adjoint());
}

CovarianceReport check_invariant_covariance(const StateBasis& basis,
                                            const InvariantSubspaceData& data, Complex alpha,
                                            const std::vector<Complex>& samples) {
  data.validate(basis.N());
  CMat shift = data.B * invert_checked(data.A - alpha * data.B, [&] {
                 throw SingularPencil("A - alpha B is singular");
               });
  CovarianceReport report;
  for (int j = 0; j < data.M(); ++j) {
    AnalyticFn column(data.m, [basis, data, j](Complex z) -> CVec {
      return invariant_frame(basis, data, z).col(j);
    });
    ResolventApplication applied = apply_resolvent(basis.r(), column, alpha);
    for (Complex z : samples) {
      if (basis.r().near_pole(z, 1e-10)) continue;
      CVec lhs = applied.eval(z);
      CVec rhs = (invariant_frame(basis, data, z) * shift).col(j);
      double scale = 1.0 + std::max(lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff());
      report.max_residual =
          std::max(report.max_residual, (lhs - rhs).cwiseAbs().maxCoeff() / scale);
      ++report.samples_used;
    }
  }
  return report;
}

SteinSolution solve_stein(const CMat& A, const CMat& B, const CMat& C, const CMat& J) {
  const Eigen::Index dim = A.rows();
  if (A.cols() != dim || B.rows() != dim || B.cols() != dim || C.cols() != dim) {
    throw Error("A, B must be square and C column-compatible");
  }
  if (J.rows() != C.rows() || J.cols() != C.rows()) {
    throw Error("J must match the row dimension of C");
  }
  // vec(A^*PA) = (A^T (x) A^*) vec(P), column-major vec.
  CMat op = kron(A.transpose(), A.adjoint()) - kron(B.transpose(), B.adjoint());
  CMat rhs_mat = C.adjoint() * J * C;
  CVec rhs = Eigen::Map<const CVec>(rhs_mat.data(), dim * dim);
  Eigen::JacobiSVD<CMat> svd(op, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= kSingularRel * (1.0 + sv(0))) {
    throw SingularSteinOperator("P -> A*PA - B*PB is numerically singular");
  }
  CVec x = svd.solve(rhs);
  CMat P = Eigen::Map<const CMat>(x.data(), dim, dim);
  SteinSolution out;
  out.hermiticity_defect = (P - P.adjoint()).cwiseAbs().maxCoeff();
  out.P = hermitize(P);
  out.residual =
      (A.adjoint() * out.P * A - B.adjoint() * out.P * B - rhs_mat).cwiseAbs().maxCoeff();
  return out;
}

GridCheckReport theta_kernel_check(const StateBasis& basis, const InvariantSubspaceData& data,
                                   const CMat& J, const MatrixFn& Theta,
                                   const std::vector<Complex>& grid) {
  data.validate(basis.N());
  const Eigen::Index mn = static_cast<Eigen::Index>(data.m) * basis.N();
  if (J.rows() != mn || J.cols() != mn) {
    throw Error("J must be (m N) x (m N)");
  }
  GridCheckReport report;
  for (Complex z : grid) {
    if (basis.r().near_pole(z, 1e-10)) continue;
    Complex rz = basis.r().eval(z);
    CMat Tz = checked_square(Theta(rz), mn, "Theta");
    CMat Ez = kron_row(basis.eval_Z(z), data.m);
    for (Complex w : grid) {
      if (basis.r().near_pole(w, 1e-10)) continue;
      Complex rw = basis.r().eval(w);
      Complex denom = 1.0 - rz * std::conj(rw);
      if (std::abs(denom) < kDiagonalTol) continue;
      CMat Tw = checked_square(Theta(rw), mn, "Theta");
      CMat Ew = kron_row(basis.eval_Z(w), data.m);
      CMat theta_form = Ez * ((J - Tz * J * Tw.adjoint()) / denom) * Ew.adjoint();
      CMat direct = invariant_kernel(basis, data, z, w);
      double scale =
          1.0 + std::max(theta_form.cwiseAbs().maxCoeff(), direct.cwiseAbs().maxCoeff());
      report.max_residual =
          std::max(report.max_residual, (theta_form - direct).cwiseAbs().maxCoeff() / scale);
      ++report.pairs;
    }
  }
  return report;
}

namespace {

CMat theta_core(const StateBasis& basis, const CMat& X, const MatrixFn& Theta,
                KernelDomain domain, Complex z, Complex w) {
  if (X.rows() != X.cols()) throw Error("X must be square");
  const int p = block_size(basis, X.rows(), "X");
  Complex rz = basis.r().eval(z);
  Complex rw = basis.r().eval(w);
  Complex denom = checked_denominator(domain, rz, rw);
  CMat Xinv = invert_checked(X, [] { throw SingularX("X is numerically singular"); });
  CMat Tz = checked_square(Theta(rz), X.rows(), "Theta");
  CMat Tw = checked_square(Theta(rw), X.rows(), "Theta");
  CMat Ez = kron_row(basis.eval_Z(z), p);
  CMat Ew = kron_row(basis.eval_Z(w), p);
  return Ez * ((Xinv - Tz * X * Tw.adjoint()) / denom) * Ew.adjoint();
}

}  // namespace

CMat line_theta_kernel(const StateBasis& basis, const CMat& X, const MatrixFn& Theta, Complex z,
                       Complex w) {
  return theta_core(basis, X, Theta, KernelDomain::Line, z, w);
}

CMat circle_theta_kernel(const StateBasis& basis, const CMat& X, const MatrixFn& Theta, Complex z,
                         Complex w) {
  return theta_core(basis, X, Theta, KernelDomain::Circle, z, w);
}

GridCheckReport theta_split_check(const StateBasis& basis, const CMat& X, const MatrixFn& Theta1,
                                  const MatrixFn& Theta2, KernelDomain domain,
                                  const std::vector<Complex>& grid) {
  if (X.rows() != X.cols()) throw Error("X must be square");
  const int p = block_size(basis, X.rows(), "X");
  MatrixFn product = [&Theta1, &Theta2](Complex v) -> CMat { return Theta1(v) * Theta2(v); };
  GridCheckReport report;
  for (Complex z : grid) {
    if (basis.r().near_pole(z, 1e-10)) continue;
    Complex rz = basis.r().eval(z);
    CMat T1z = checked_square(Theta1(rz), X.rows(), "Theta1");
    CMat T2z = checked_square(Theta2(rz), X.rows(), "Theta2");
    CMat Ez = kron_row(basis.eval_Z(z), p);
    for (Complex w : grid) {
      if (basis.r().near_pole(w, 1e-10)) continue;
      Complex rw = basis.r().eval(w);
      Complex denom = domain_denominator(domain, rz, rw);
      if (std::abs(denom) < kDiagonalTol) continue;
      CMat whole = theta_core(basis, X, product, domain, z, w);
      CMat head = theta_core(basis, X, Theta1, domain, z, w);
      CMat T1w = checked_square(Theta1(rw), X.rows(), "Theta1");
      CMat T2w = checked_square(Theta2(rw), X.rows(), "Theta2");
      CMat Ew = kron_row(basis.eval_Z(w), p);
      CMat tail = Ez * (T1z * ((X - T2z * X * T2w.adjoint()) / denom) * T1w.adjoint()) *
                  Ew.adjoint();
      double scale = 1.0 + std::max(whole.cwiseAbs().maxCoeff(),
                                    (head + tail).cwiseAbs().maxCoeff());
      report.max_residual =
          std::max(report.max_residual, (whole - head - tail).cwiseAbs().maxCoeff() / scale);
      ++report.pairs;
    }
  }
  return report;
}

CMat s_kernel(const StateBasis& basis, const CMat& X, const MatrixFn& S, Complex z, Complex w) {
  if (X.rows() != X.cols()) throw Error("X must be square");
  const int p = block_size(basis, X.rows(), "X");
  Complex rz = basis.r().eval(z);
  Complex rw = basis.r().eval(w);
  Complex denom = checked_denominator(KernelDomain::Circle, rz, rw);
  CMat Xinv = invert_checked(X, [] { throw SingularX("X is numerically singular"); });
  CMat Sz = checked_square(S(rz), X.rows(), "S");
  CMat Sw = checked_square(S(rw), X.rows(), "S");
  CMat Ez = kron_row(basis.eval_Z(z), p);
  CMat Ew = kron_row(basis.eval_Z(w), p);
  return Ez * ((Xinv - Sz * Sw.adjoint()) / denom) * Ew.adjoint();
}

namespace {

CMat epm_numerator(const MatrixFn& E_plus, const MatrixFn& E_minus, const CMat& J, Complex left,
                   Complex right) {
  CMat Pz = E_plus(left);
  CMat Pw = E_plus(right);
  CMat Mz = E_minus(left);
  CMat Mw = E_minus(right);
  if (Pz.cols() != J.rows() || Mz.cols() != J.rows() || J.rows() != J.cols()) {
    throw Error("E+/E- column counts must match the signature size");
  }
  if (Pz.rows() != Mz.rows()) {
    throw Error("E+ and E- must produce the same number of rows");
  }
  return Pz * J * Pw.adjoint() - Mz * J * Mw.adjoint();
}

}  // namespace

CMat epm_kernel(const MatrixFn& E_plus, const MatrixFn& E_minus, const CMat& J,
                KernelDomain domain, Complex z, Complex w) {
  Complex denom = checked_denominator(domain, z, w);
  return epm_numerator(E_plus, E_minus, J, z, w) / denom;
}

CMat epm_kernel_composed(const StateBasis& basis, const MatrixFn& E_plus, const MatrixFn& E_minus,
                         const CMat& J, KernelDomain domain, Complex z, Complex w) {
  Complex rz = basis.r().eval(z);
  Complex rw = basis.r().eval(w);
  Complex denom = checked_denominator(domain, rz, rw);
  CMat num = epm_numerator(E_plus, E_minus, J, rz, rw);
  const int p = block_size(basis, num.rows(), "E+/E- values");
  CMat Ez = kron_row(basis.eval_Z(z), p);
  CMat Ew = kron_row(basis.eval_Z(w), p);
  return Ez * (num / denom) * Ew.adjoint();
}

CMat lnspace_kernel(const MatrixFn& N, Complex z, Complex w) {
  Complex denom = z - std::conj(w);
  if (std::abs(denom) < kDiagonalTol) {
    throw DiagonalSingularity("kernel denominator vanishes at the requested pair");
  }
  CMat Nz = N(z);
  CMat Nw = N(w);
  if (Nz.rows() != Nz.cols() || Nw.rows() != Nz.rows() || Nw.cols() != Nz.cols()) {
    throw Error("N evaluator must return square matrices of a fixed size");
  }
  return (Nz - Nw.adjoint()) / denom;
}

CMat nevanlinna_kernel(const StateBasis& basis, const MatrixFn& N, Complex z, Complex w) {
  Complex rz = basis.r().eval(z);
  Complex rw = basis.r().eval(w);
  Complex denom = rz - std::conj(rw);
  if (std::abs(denom) < kDiagonalTol) {
    throw DiagonalSingularity("kernel denominator vanishes at the requested pair");
  }
  CMat Nz = N(rz);
  CMat Nw = N(rw);
  if (Nz.rows() != Nz.cols() || Nw.rows() != Nz.rows()) {
    throw Error("N evaluator must return square matrices of a fixed size");
  }
  const int p = block_size(basis, Nz.rows(), "N values");
  CMat Ez = kron_row(basis.eval_Z(z), p);
  CMat Ew = kron_row(basis.eval_Z(w), p);
  return Ez * ((Nz - Nw.adjoint()) / denom) * Ew.adjoint();
}

CMat hardy_kernel(const StateBasis& basis, Complex z, Complex w) {
  Complex rz = basis.r().eval(z);
  Complex rw = basis.r().eval(w);
  Complex denom = checked_denominator(KernelDomain::Line, rz, rw);
  Eigen::RowVectorXcd Zz = basis.eval_Z(z);
  Eigen::RowVectorXcd Zw = basis.eval_Z(w);
  CMat out(1, 1);
  out(0, 0) = (Zz * Zw.adjoint())(0) / denom;
  return out;
}

CMat hardy_circle_kernel(const StateBasis& basis, const CMat& X, Complex z, Complex w) {
  if (X.rows() != X.cols()) throw Error("X must be square");
  const int p = block_size(basis, X.rows(), "X");
  Complex rz = basis.r().eval(z);
  Complex rw = basis.r().eval(w);
  Complex denom = checked_denominator(KernelDomain::Circle, rz, rw);
  CMat Xinv = invert_checked(X, [] { throw SingularX("X is numerically singular"); });
  CMat Ez = kron_row(basis.eval_Z(z), p);
  CMat Ew = kron_row(basis.eval_Z(w), p);
  return Ez * (Xinv / denom) * Ew.adjoint();
}

MatrixFn nevanlinna_from_kernel(const KernelFn& K, Complex alpha) {
  CMat Kaa = K(alpha, alpha);
  CMat shift = 0.5 * (alpha - std::conj(alpha)) * Kaa;
  return [K, alpha, shift](Complex z) -> CMat {
    return (z - std::conj(alpha)) * K(z, alpha) - shift;
  };
}

CMat DeBrangesSplit::reconstruct(Complex z, Complex w) const {
  Complex denom = checked_denominator(domain, z, w);
  return (F_plus(z) * W_plus * F_plus(w).adjoint() -
          F_minus(z) * W_minus * F_minus(w).adjoint()) /
         denom;
}

DeBrangesSplit de_branges_split(const KernelFn& K, Complex alpha, KernelDomain domain) {
  double scale2 = 0.0;
  Complex mirror;
  if (domain == KernelDomain::Line) {
    if (alpha.imag() <= 0.0) {
      throw Error("line split requires an anchor with positive imaginary part");
    }
    mirror = std::conj(alpha);
    scale2 = 2.0 * alpha.imag();
  } else {
    double a = std::abs(alpha);
    if (a <= 0.0 || a >= 1.0) {
      throw Error("circle split requires an anchor with 0 < |alpha| < 1");
    }
    mirror = 1.0 / std::conj(alpha);
    scale2 = 1.0 - a * a;
  }
  const double root = std::sqrt(scale2);

  CMat Kaa = hermitize(K(alpha, alpha));
  CMat Kmm = hermitize(K(mirror, mirror));
  CMat Wp = invert_checked(Kaa, [] {
    throw RankDeficientAtAlpha("K(alpha, alpha) is numerically singular");
  });
  CMat Wm = invert_checked(Kmm, [] {
    throw RankDeficientAtAlpha("K at the mirror anchor is numerically singular");
  });

  DeBrangesSplit split;
  split.domain = domain;
  split.alpha = alpha;
  split.mirror = mirror;
  split.W_plus = hermitize(Wp);
  split.W_minus = hermitize(Wm);
  split.F_plus = [K, alpha, domain, root](Complex z) -> CMat {
    Complex factor = domain == KernelDomain::Line ? z - std::conj(alpha)
                                                  : 1.0 - z * std::conj(alpha);
    return (factor / root) * K(z, alpha);
  };
  split.F_minus = [K, alpha, mirror, root](Complex z) -> CMat {
    return ((z - alpha) / root) * K(z, mirror);
  };

  JFactor plus = jfactor(split.W_plus);
  JFactor minus = jfactor(split.W_minus);
  split.J_plus = plus.J;
  split.J_minus = minus.J;
  split.same_signature =
      plus.positives == minus.positives && plus.negatives == minus.negatives;
  MatrixFn f_plus = split.F_plus;
  MatrixFn f_minus = split.F_minus;
  CMat Mp = plus.M;
  CMat Mm = minus.M;
  split.E_plus = [f_plus, Mp](Complex z) -> CMat { return f_plus(z) * Mp; };
  split.E_minus = [f_minus, Mm](Complex z) -> CMat { return f_minus(z) * Mm; };
  return split;
}

GramReport kernel_gram(const KernelFn& K, const std::vector<Complex>& grid, double neg_tol) {
  if (grid.empty()) throw Error("kernel_gram requires a nonempty grid");
  const int g = static_cast<int>(grid.size());
  CMat probe = K(grid[0], grid[0]);
  const Eigen::Index p = probe.rows();
  if (probe.cols() != p) throw Error("kernel evaluator must return square blocks");
  GramReport report;
  report.gram = CMat::Zero(g * p, g * p);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      CMat block = (i == 0 && j == 0) ? probe : K(grid[i], grid[j]);
      if (block.rows() != p || block.cols() != p) {
        throw Error("kernel evaluator must return blocks of a fixed size");
      }
      report.gram.block(i * p, j * p, p, p) = block;
    }
  }
  report.hermitian_defect = (report.gram - report.gram.adjoint()).cwiseAbs().maxCoeff();
  report.gram = hermitize(report.gram);
  Eigen::SelfAdjointEigenSolver<CMat> es(report.gram);
  report.eigenvalues = es.eigenvalues();
  double norm = std::max(1.0, report.eigenvalues.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
    if (report.eigenvalues(i) < -neg_tol * norm) ++report.negatives;
    if (report.eigenvalues(i) > neg_tol * norm) ++report.positives;
  }
  return report;
}

double hermitian_swap_defect(const KernelFn& K, const std::vector<Complex>& grid) {
  double defect = 0.0;
  for (Complex z : grid) {
    for (Complex w : grid) {
      defect = std::max(defect, (K(z, w) - K(w, z).adjoint()).cwiseAbs().maxCoeff());
    }
  }
  return defect;
}

}  // namespace shiftspace
