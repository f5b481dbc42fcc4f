#include "shiftspace/representation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiftspace/errors.hpp"

namespace shiftspace {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Minimum of |r| over the circle |z - c| = R: dense sampling followed by a
// golden-section refinement of the argument around the best sample.
double circle_min_abs(const RationalFn& r, Complex c, double R, int samples) {
  auto value = [&](double theta) {
    const Complex z = c + R * Complex{std::cos(theta), std::sin(theta)};
    if (r.near_pole(z)) return std::numeric_limits<double>::infinity();
    return std::abs(r.eval(z));
  };
  double best = std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  const double step = 2.0 * kPi / samples;
  for (int k = 0; k < samples; ++k) {
    const double theta = k * step;
    const double v = value(theta);
    if (v < best) {
      best = v;
      best_theta = theta;
    }
  }
  double lo = best_theta - step;
  double hi = best_theta + step;
  const double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = value(x1);
  double f2 = value(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = value(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = value(x2);
    }
  }
  return std::min(best, std::min(f1, f2));
}

// Grid check: every box point with |r(z)| < rho lies inside some disk.
bool grid_certifies(const RationalFn& r, const DiskCover& cover, double rho, int grid) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (size_t l = 0; l < cover.centers.size(); ++l) {
    xmin = std::min(xmin, cover.centers[l].real() - cover.radii[l]);
    xmax = std::max(xmax, cover.centers[l].real() + cover.radii[l]);
    ymin = std::min(ymin, cover.centers[l].imag() - cover.radii[l]);
    ymax = std::max(ymax, cover.centers[l].imag() + cover.radii[l]);
  }
  const double pad = 0.25 * std::max(xmax - xmin, ymax - ymin) + 0.25;
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const Complex z{xmin + (xmax - xmin) * i / (grid - 1),
                      ymin + (ymax - ymin) * j / (grid - 1)};
      if (r.near_pole(z, 1e-11)) continue;  // |r| is large there anyway
      if (std::abs(r.eval(z)) < rho && !cover.contains(z)) return false;
    }
  }
  return true;
}

// Preimage check: for sampled |v| < rho, every preimage of v lies strictly
// inside a disk. Values outside the distinct-preimage set are skipped.
bool preimages_certify(const RationalFn& r, const DiskCover& cover, double rho, int angles) {
  const double fracs[] = {0.25, 0.5, 0.75, 0.97};
  for (double frac : fracs) {
    for (int k = 0; k < angles; ++k) {
      const double theta = 2.0 * kPi * (k + 0.31830988618) / angles;
      const Complex v = rho * frac * Complex{std::cos(theta), std::sin(theta)};
      std::vector<Complex> pre;
      try {
        pre = r.preimages(v);
      } catch (const DegenerateAlpha&) {
        continue;
      }
      for (const Complex& w : pre) {
        bool inside = false;
        for (size_t l = 0; l < cover.centers.size() && !inside; ++l) {
          inside = std::abs(w - cover.centers[l]) < cover.radii[l] * (1.0 - 1e-9);
        }
        if (!inside) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool DiskCover::contains(Complex z) const {
  for (size_t l = 0; l < centers.size(); ++l) {
    if (std::abs(z - centers[l]) < radii[l]) return true;
  }
  return false;
}

DiskCover build_cover(const RationalFn& r, const CoverOptions& opts) {
  DiskCover cover;
  const auto zero_clusters = cluster_roots(poly_roots(r.p()));
  std::vector<Complex> poles;
  if (r.q().degree() >= 1) poles = poly_roots(r.q());

  for (const auto& cl : zero_clusters) cover.centers.push_back(cl.center);
  for (size_t l = 0; l < cover.centers.size(); ++l) {
    double nearest = std::numeric_limits<double>::infinity();
    for (size_t m = 0; m < cover.centers.size(); ++m) {
      if (m != l) nearest = std::min(nearest, std::abs(cover.centers[l] - cover.centers[m]));
    }
    for (const Complex& pole : poles) {
      nearest = std::min(nearest, std::abs(cover.centers[l] - pole));
    }
    cover.radii.push_back(std::isfinite(nearest) ? 0.45 * nearest : 1.0);
  }

  double rho = std::numeric_limits<double>::infinity();
  for (size_t l = 0; l < cover.centers.size(); ++l) {
    rho = std::min(rho, circle_min_abs(r, cover.centers[l], cover.radii[l],
                                       opts.boundary_samples));
  }
  // When r is finite at infinity, values near r(inf) have preimages escaping
  // to infinity; keep rho safely below |r(inf)|.
  if (!r.pole_at_infinity()) {
    rho = std::min(rho, 0.75 * std::abs(r.value_at_infinity()));
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw CoverConstructionFailed("no positive certified radius at the disk boundaries");
  }

  const double floor_rho = 1e-12 * rho;
  for (int attempt = 0; attempt <= opts.max_shrinks; ++attempt) {
    if (grid_certifies(r, cover, rho, opts.grid_size) &&
        preimages_certify(r, cover, rho, opts.preimage_angles)) {
      cover.rho = rho;
      cover.shrink_steps = attempt;
      return cover;
    }
    rho *= 0.7;
    if (rho < floor_rho) break;
  }
  throw CoverConstructionFailed("could not certify the cover after shrinking rho");
}

Decomposition::Decomposition(StateBasis basis, AnalyticFn f, const DecomposeOptions& opts)
    : basis_(std::move(basis)), f_(std::move(f)), cover_(build_cover(basis_.r(), opts.cover)),
      p_(f_.dim()) {
  const auto& real = basis_.realization();
  const int N = real.N();
  const CMat I = CMat::Identity(N, N);
  node_r_.reserve(cover_.centers.size() * static_cast<size_t>(opts.nodes));
  node_data_.reserve(node_r_.capacity());
  for (size_t l = 0; l < cover_.centers.size(); ++l) {
    const Complex c = cover_.centers[l];
    const double R = cover_.radii[l];
    for (int k = 0; k < opts.nodes; ++k) {
      const double theta = 2.0 * kPi * k / opts.nodes;
      const Complex unit{std::cos(theta), std::sin(theta)};
      const Complex s = c + R * unit;
      const Complex weight = R * unit / static_cast<double>(opts.nodes);
      const CVec mu = (I - (s - real.center) * real.T).partialPivLu().solve(real.b);
      const CVec fval = f_(s);
      CVec data(N * p_);
      for (int n = 0; n < N; ++n) data.segment(n * p_, p_) = (weight * mu(n)) * fval;
      node_r_.push_back(basis_.r().eval(s));
      node_data_.push_back(std::move(data));
    }
  }
}

CVec Decomposition::evalF(Complex v) const {
  if (std::abs(v) >= cover_.rho) {
    throw EvalOutsideRho("value lies outside the certified disk of radius rho");
  }
  CVec out = CVec::Zero(dim());
  for (size_t j = 0; j < node_r_.size(); ++j) {
    out += node_data_[j] / (node_r_[j] - v);
  }
  return out;
}

CVec Decomposition::reconstruct(Complex z) const {
  const CVec F = evalF(basis_.r().eval(z));
  const auto Z = basis_.eval_Z(z);
  CVec out = CVec::Zero(p_);
  for (int n = 0; n < basis_.N(); ++n) out += Z(n) * F.segment(n * p_, p_);
  return out;
}

std::vector<CVec> Decomposition::taylor_coeffs(int count, double circle_frac,
                                               int circle_nodes) const {
  const double R = circle_frac * cover_.rho;
  std::vector<CVec> coeffs(static_cast<size_t>(count), CVec::Zero(dim()).eval());
  for (int j = 0; j < circle_nodes; ++j) {
    const double theta = 2.0 * kPi * j / circle_nodes;
    const Complex v = R * Complex{std::cos(theta), std::sin(theta)};
    const CVec F = evalF(v);
    Complex vpow{1.0, 0.0};  // v^{-k}
    for (int k = 0; k < count; ++k) {
      coeffs[static_cast<size_t>(k)] += F * (vpow / static_cast<double>(circle_nodes));
      vpow /= v;
    }
  }
  return coeffs;
}

AnalyticFn Decomposition::as_fn() const {
  return AnalyticFn(dim(), [copy = *this](Complex v) { return copy.evalF(v); });
}

Decomposition decompose(const StateBasis& basis, const AnalyticFn& f,
                        const DecomposeOptions& opts) {
  return Decomposition(basis, f, opts);
}

RoundtripReport check_roundtrip(const Decomposition& dec, const std::vector<Complex>& points,
                                double safety) {
  RoundtripReport report;
  double max_diff = 0.0;
  for (const Complex& z : points) {
    if (dec.basis().r().near_pole(z, 1e-10)) continue;
    if (std::abs(dec.basis().r().eval(z)) > safety * dec.rho()) continue;
    const CVec want = dec.fn()(z);
    const CVec got = dec.reconstruct(z);
    max_diff = std::max(max_diff, (want - got).cwiseAbs().maxCoeff());
    report.max_abs_f = std::max(report.max_abs_f, want.cwiseAbs().maxCoeff());
    ++report.samples_used;
  }
  report.max_residual = max_diff / (1.0 + report.max_abs_f);
  return report;
}

InterpolationResult multipoint_interpolate(const StateBasis& basis,
                                           const std::vector<Complex>& nodes,
                                           const std::vector<Complex>& coeffs, Complex gamma) {
  if (nodes.size() != coeffs.size() || nodes.empty()) {
    throw Error("multipoint_interpolate: nodes and coeffs must be nonempty and equal-sized");
  }
  Eigen::RowVectorXcd c = Eigen::RowVectorXcd::Zero(basis.N());
  double scale = 0.0;
  for (size_t n = 0; n < nodes.size(); ++n) {
    const auto Z = basis.eval_Z(nodes[n]);
    c += coeffs[n] * Z;
    scale += std::abs(coeffs[n]) * Z.cwiseAbs().maxCoeff();
  }
  if (c.norm() <= 1e-10 * (1.0 + scale)) {
    throw ZeroFunctional("the interpolation functional vanishes on the state space");
  }
  InterpolationResult result;
  result.functional = c;
  result.x = c.adjoint() * (gamma / c.squaredNorm());
  Complex applied{0.0, 0.0};
  for (size_t n = 0; n < nodes.size(); ++n) {
    applied += coeffs[n] * (basis.eval_Z(nodes[n]) * result.x)(0);
  }
  result.residual = std::abs(applied - gamma) / (1.0 + std::abs(gamma));
  return result;
}

}  // namespace shiftspace
