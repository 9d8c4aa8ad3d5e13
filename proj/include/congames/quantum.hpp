#ifndef CONGAMES_QUANTUM_HPP
#define CONGAMES_QUANTUM_HPP

#include <complex>
#include <vector>

#include "congames/event_structure.hpp"

namespace congames {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major.
class Matrix {
 public:
  static constexpr int kMaxDim = 64;

  Matrix() = default;
  explicit Matrix(int n);  // zero matrix; throws InputError past kMaxDim
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<Complex>>& rows);

  int dim() const { return n_; }
  Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const Complex& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix adjoint() const;
  Complex trace() const;
  // Frobenius norm.
  double norm() const;
  // Eigenvalues of a Hermitian matrix, ascending.
  std::vector<double> hermitian_eigenvalues() const;

 private:
  int n_ = 0;
  std::vector<Complex> a_;
};

enum class OpKind { kUnitary, kProjection };

struct Operator {
  OpKind kind = OpKind::kUnitary;
  Matrix m;
};

struct QuantumES {
  EventStructure es;
  int dim = 1;
  std::vector<Operator> assign;  // per event index
  Matrix rho;
};

inline constexpr double kStructuralTolerance = 1e-9;
inline constexpr double kSerializationTolerance = 1e-12;

// Shapes, unitarity / projection, rho a density matrix, and commuting
// operators on every concurrent pair.
Report validate_qes(const QuantumES& q, double tolerance = kStructuralTolerance);

// Q_{e_n} ··· Q_{e_1} for the given serialization.
Matrix serialize(const QuantumES& q, const std::vector<int>& order);

// Linear extensions of the configuration x (at most `limit`).
std::vector<std::vector<int>> linear_extensions(const EventStructure& es, const Configuration& x,
                                                std::size_t limit = 100000);

struct ConfigOperator {
  Matrix a;
  double weight = 0;  // Re Tr(A† A rho)
};

// Computed along two different linear extensions; throws InternalError if
// they disagree beyond 1e-12.
ConfigOperator config_operator_and_weight(const QuantumES& q, const Configuration& x);

// The weights restricted to the events of configuration w form a valid
// all-positive configuration-valuation.
Report local_valuation_check(const QuantumES& q, const Configuration& w, double tolerance = kStructuralTolerance);
// Same check on the whole structure (may fail where every local check holds).
Report whole_valuation_check(const QuantumES& q, double tolerance = kStructuralTolerance);

}  // namespace congames

#endif  // CONGAMES_QUANTUM_HPP
