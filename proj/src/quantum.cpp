#include "congames/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "congames/valuation.hpp"

namespace congames {

Matrix::Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n)) {
  if (n < 0 || n > kMaxDim) throw InputError("matrix dimension " + std::to_string(n) + " outside 0.." + std::to_string(kMaxDim));
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  Matrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.n_; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.n_) throw InputError("matrix is not square");
    for (int j = 0; j < m.n_; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (n_ != o.n_) throw InputError("matrix dimensions differ");
  Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      Complex a = (*this)(i, k);
      if (a == Complex{}) continue;
      for (int j = 0; j < n_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (n_ != o.n_) throw InputError("matrix dimensions differ");
  Matrix r(n_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

Matrix Matrix::adjoint() const {
  Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Complex Matrix::trace() const {
  Complex t;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::norm() const {
  double s = 0;
  for (const auto& c : a_) s += std::norm(c);
  return std::sqrt(s);
}

std::vector<double> Matrix::hermitian_eigenvalues() const {
  // Real symmetric embedding [[Re, -Im], [Im, Re]]; each eigenvalue appears
  // twice. Cyclic Jacobi rotations.
  const int m = 2 * n_;
  std::vector<double> s(static_cast<std::size_t>(m * m));
  auto at = [&](int i, int j) -> double& { return s[static_cast<std::size_t>(i * m + j)]; };
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Complex c = (*this)(i, j);
      at(i, j) = c.real();
      at(i + n_, j + n_) = c.real();
      at(i, j + n_) = -c.imag();
      at(i + n_, j) = c.imag();
    }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        double theta = (at(q, q) - at(p, p)) / (2 * at(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), sn = t * c;
        for (int k = 0; k < m; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - sn * akq;
          at(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - sn * aqk;
          at(q, k) = sn * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev;
  for (int i = 0; i < m; ++i) ev.push_back(at(i, i));
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < ev.size(); i += 2) out.push_back((ev[i] + ev[i + 1]) / 2);
  return out;
}

Report validate_qes(const QuantumES& q, double tol) {
  Report r;
  const auto& es = q.es;
  if (q.dim < 1 || q.dim > Matrix::kMaxDim) {
    r.push_back({"dimension", "dimension must be in 1.." + std::to_string(Matrix::kMaxDim), {}});
    return r;
  }
  if (static_cast<int>(q.assign.size()) != es.size()) {
    r.push_back({"operator total", "every event needs an operator", {}});
    return r;
  }
  bool shapes = true;
  for (int e = 0; e < es.size(); ++e)
    if (q.assign[static_cast<std::size_t>(e)].m.dim() != q.dim) {
      r.push_back({"shape", "operator has the wrong dimension", {es.name(e)}});
      shapes = false;
    }
  if (q.rho.dim() != q.dim) {
    r.push_back({"shape", "density matrix has the wrong dimension", {}});
    shapes = false;
  }
  if (!shapes) return r;
  Matrix id = Matrix::identity(q.dim);
  for (int e = 0; e < es.size(); ++e) {
    const auto& op = q.assign[static_cast<std::size_t>(e)];
    if (op.kind == OpKind::kUnitary) {
      if ((op.m.adjoint() * op.m - id).norm() > tol) r.push_back({"unitary", "U†U differs from I", {es.name(e)}});
    } else {
      if ((op.m * op.m - op.m).norm() > tol || (op.m.adjoint() - op.m).norm() > tol)
        r.push_back({"projection", "P is not a self-adjoint idempotent", {es.name(e)}});
    }
  }
  if ((q.rho.adjoint() - q.rho).norm() > tol) r.push_back({"density", "rho is not self-adjoint", {}});
  if (std::abs(q.rho.trace() - Complex(1)) > tol) r.push_back({"density", "trace of rho differs from 1", {}});
  if (r.empty() || r.back().rule != "density") {
    auto ev = q.rho.hermitian_eigenvalues();
    if (!ev.empty() && ev.front() < -tol) r.push_back({"density", "rho is not positive semidefinite", {}});
  }
  for (int a = 0; a < es.size(); ++a)
    for (int b = a + 1; b < es.size(); ++b) {
      if (!es.concurrent(a, b)) continue;
      const Matrix& qa = q.assign[static_cast<std::size_t>(a)].m;
      const Matrix& qb = q.assign[static_cast<std::size_t>(b)].m;
      if ((qa * qb - qb * qa).norm() > tol)
        r.push_back({"commutation", "operators of concurrent events do not commute", {es.name(a), es.name(b)}});
    }
  return r;
}

Matrix serialize(const QuantumES& q, const std::vector<int>& order) {
  Matrix a = Matrix::identity(q.dim);
  for (int e : order) a = q.assign[static_cast<std::size_t>(e)].m * a;
  return a;
}

namespace {

// Kahn's algorithm restricted to x; picks the smallest or largest ready event.
std::vector<int> kahn(const EventStructure& es, const Configuration& x, bool largest) {
  std::vector<int> order;
  EventSet done;
  while (done != x) {
    int pick = -1;
    (x - done).for_each([&](int e) {
      if (!(es.down(e).without(e)).subset_of(done)) return;
      if (pick < 0 || largest) pick = e;
    });
    order.push_back(pick);
    done.insert(pick);
  }
  return order;
}

}  // namespace

std::vector<std::vector<int>> linear_extensions(const EventStructure& es, const Configuration& x, std::size_t limit) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(EventSet)> go = [&](EventSet done) {
    if (out.size() >= limit) return;
    if (done == x) {
      out.push_back(cur);
      return;
    }
    (x - done).for_each([&](int e) {
      if (!(es.down(e).without(e)).subset_of(done)) return;
      cur.push_back(e);
      go(done.with(e));
      cur.pop_back();
    });
  };
  go({});
  return out;
}

ConfigOperator config_operator_and_weight(const QuantumES& q, const Configuration& x) {
  if (!q.es.is_configuration(x)) throw InputError(q.es.format(x) + " is not a configuration");
  Matrix a = serialize(q, kahn(q.es, x, false));
  Matrix b = serialize(q, kahn(q.es, x, true));
  if ((a - b).norm() > kSerializationTolerance)
    throw InternalError("serializations of " + q.es.format(x) + " disagree");
  return {a, (a.adjoint() * a * q.rho).trace().real()};
}

namespace {

Report valuation_check(const QuantumES& q, const EventSet& keep, double tol) {
  auto [sub, old] = project(q.es, keep);
  RealValuation v;
  v.subject = sub;
  for (const auto& x : configurations(sub)) {
    Configuration y;
    x.for_each([&](int e) { y.insert(old[static_cast<std::size_t>(e)]); });
    v.values[x] = config_operator_and_weight(q, y).weight;
  }
  return validate_valuation(v, tol);
}

}  // namespace

Report local_valuation_check(const QuantumES& q, const Configuration& w, double tol) {
  if (!q.es.is_configuration(w)) throw InputError(q.es.format(w) + " is not a configuration");
  return valuation_check(q, w, tol);
}

Report whole_valuation_check(const QuantumES& q, double tol) { return valuation_check(q, q.es.all(), tol); }

}  // namespace congames
