#ifndef GPFW_OBJECTIVE_HPP_
#define GPFW_OBJECTIVE_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gpfw/errors.hpp"
#include "gpfw/spectrum.hpp"

namespace gpfw {

/// Objective oracle with Lipschitz metadata. L bounds ||f'|| on the region of
/// interest, L1 is a Lipschitz constant of the gradient. hess may be empty;
/// solvers that need second order information reject such objectives.
struct Objective {
  std::function<double(const Vector&)> f;
  std::function<Vector(const Vector&)> grad;
  std::function<Matrix(const Vector&)> hess;  // optional
  double L = 0.0;
  double L1 = 0.0;
  // Lipschitz constant of the Hessian field (0 for quadratics); consumed by
  // the Newton-phase switch threshold.
  double hess_lipschitz = 0.0;

  bool has_hessian() const { return static_cast<bool>(hess); }
};

struct Evaluation {
  double f;
  Vector grad;
};

inline Evaluation eval(const Objective& obj, const Vector& x) {
  return Evaluation{obj.f(x), obj.grad(x)};
}

/// f(x) = (Ax, x) with symmetric A; spectrum computed once at construction by
/// the Jacobi eigensolver. On the unit sphere f0 = lambda_1.
class QuadraticForm {
 public:
  explicit QuadraticForm(const Matrix& A) : A_(A) {
    if (!is_symmetric(A))
      throw NotSymmetric("QuadraticForm: matrix is not symmetric");
    A_ = 0.5 * (A + A.transpose());  // scrub rounding asymmetry
    spectrum_ = jacobi_spectrum(A_);
  }

  const Matrix& matrix() const { return A_; }
  const Vector& eigenvalues() const { return spectrum_.eigenvalues; }
  const Matrix& eigenvectors() const { return spectrum_.eigenvectors; }
  double lambda_min() const { return spectrum_.eigenvalues(0); }
  double lambda_max() const { return spectrum_.eigenvalues(spectrum_.eigenvalues.size() - 1); }

  double f0_on_unit_sphere() const { return lambda_min(); }

  // gradient Lipschitz constant valid for arbitrary spectra
  double generic_L1() const { return 2.0 * std::max(std::abs(lambda_min()), std::abs(lambda_max())); }

  Objective objective() const {
    const Matrix A = A_;
    Objective obj;
    obj.f = [A](const Vector& x) { return x.dot(A * x); };
    obj.grad = [A](const Vector& x) { return Vector(2.0 * A * x); };
    obj.hess = [A](const Vector&) { return Matrix(2.0 * A); };
    obj.L = 2.0 * std::max(std::abs(lambda_min()), std::abs(lambda_max()));  // on S_1
    obj.L1 = generic_L1();
    obj.hess_lipschitz = 0.0;
    return obj;
  }

 private:
  Matrix A_;
  Spectrum spectrum_;
};

inline Spectrum quadratic_spectrum(const Matrix& A) { return jacobi_spectrum(A); }

/// Central-difference gradient check; returns the max componentwise relative
/// error with denominator max(1, ||grad(x)||).
inline double fd_gradient_check(const Objective& obj, const Vector& x, double h) {
  const Vector g = obj.grad(x);
  const double denom = std::max(1.0, g.norm());
  double worst = 0.0;
  Vector xp = x, xm = x;
  for (int i = 0; i < x.size(); ++i) {
    xp(i) = x(i) + h;
    xm(i) = x(i) - h;
    const double fd = (obj.f(xp) - obj.f(xm)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - g(i)) / denom);
    xp(i) = x(i);
    xm(i) = x(i);
  }
  return worst;
}

/// Plain-text matrix ingestion: whitespace-separated entries, one row per
/// line. Symmetry is checked with absolute tolerance 1e-12 * max|A_ij|.
inline Matrix parse_matrix_text(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!ls.eof() && ls.fail())
      throw ParseError("matrix: non-numeric entry in line: " + line);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix: no rows");
  const std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n)
      throw ParseError("matrix: not square (" + std::to_string(n) + " rows, row with " +
                       std::to_string(r.size()) + " entries)");
  Matrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = rows[i][j];
  if (!is_symmetric(A)) throw NotSymmetric("matrix: not symmetric");
  return A;
}

inline Matrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file: " + path);
  return parse_matrix_text(in);
}

}  // namespace gpfw

#endif  // GPFW_OBJECTIVE_HPP_
