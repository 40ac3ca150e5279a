#include "kstab/surface.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

namespace kstab::surface {

namespace {

Eigen::MatrixXd to_double(const RMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

Eigen::VectorXd to_double(const RVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).to_double();
  return out;
}

}  // namespace

NumericZariski numeric_zariski_oracle(const Eigen::VectorXd& d, const DPLattice& lattice, double tol) {
  const Eigen::MatrixXd gram = to_double(lattice.gram());
  const auto k = static_cast<Eigen::Index>(lattice.negative_curves().size());
  Eigen::MatrixXd curves(lattice.rank(), k);
  for (Eigen::Index e = 0; e < k; ++e) curves.col(e) = to_double(lattice.negative_curves()[e].coords);

  NumericZariski out;
  out.coefficients = Eigen::VectorXd::Zero(k);
  std::vector<Eigen::Index> support;
  Eigen::VectorXd p = d;

  for (Eigen::Index round = 0; round <= k; ++round) {
    if (!support.empty()) {
      Eigen::MatrixXd c_s(lattice.rank(), static_cast<Eigen::Index>(support.size()));
      for (std::size_t s = 0; s < support.size(); ++s) c_s.col(static_cast<Eigen::Index>(s)) = curves.col(support[s]);
      Eigen::MatrixXd g_s = c_s.transpose() * gram * c_s;
      Eigen::LLT<Eigen::MatrixXd> llt(-g_s);
      if (llt.info() != Eigen::Success) return out;  // support not negative definite
      Eigen::VectorXd c = llt.solve(-(c_s.transpose() * gram * d));
      p = d - c_s * c;
      out.coefficients.setZero();
      for (std::size_t s = 0; s < support.size(); ++s) out.coefficients(support[s]) = c(static_cast<Eigen::Index>(s));
    }
    Eigen::VectorXd pairings = curves.transpose() * gram * p;
    bool grew = false;
    for (Eigen::Index e = 0; e < k; ++e) {
      if (pairings(e) < -tol && std::find(support.begin(), support.end(), e) == support.end()) {
        support.push_back(e);
        grew = true;
      }
    }
    if (!grew) break;
  }

  double self = p.dot(gram * p);
  double degree = p.dot(gram * to_double(lattice.anticanonical()));
  out.big = self > tol && degree > tol;
  out.volume = out.big ? self : 0.0;
  return out;
}

NumericZariski numeric_zariski_oracle(const SurfaceClass& d, const DPLattice& lattice, double u, double v,
                                      double tol) {
  Eigen::VectorXd x(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) x(i) = d(i).eval(u, v);
  return numeric_zariski_oracle(x, lattice, tol);
}

}  // namespace kstab::surface
