#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "../support/fixtures.hpp"
#include "congames/quantum.hpp"

using namespace congames;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

Matrix m2(Complex a, Complex b, Complex c, Complex d) { return Matrix::from_rows({{a, b}, {c, d}}); }
Matrix pauli_x() { return m2(0, 1, 1, 0); }
Matrix pauli_z() { return m2(1, 0, 0, -1); }
Matrix hadamard() { return m2(kR, kR, kR, -kR); }
Matrix p0() { return m2(1, 0, 0, 0); }
Matrix p_plus() { return m2(0.5, 0.5, 0.5, 0.5); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < b.dim(); ++k)
        for (int l = 0; l < b.dim(); ++l) r(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
  return r;
}

Operator unitary(Matrix m) { return {OpKind::kUnitary, std::move(m)}; }
Operator projection(Matrix m) { return {OpKind::kProjection, std::move(m)}; }

Matrix pure(const std::vector<Complex>& psi) {
  Matrix r(static_cast<int>(psi.size()));
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = psi[i] * std::conj(psi[j]);
  return r;
}

// ops in the sorted order of the event names.
QuantumES qes(EventStructure es, std::vector<Operator> ops, Matrix rho) {
  QuantumES q;
  q.dim = rho.dim();
  q.es = std::move(es);
  q.assign = std::move(ops);
  q.rho = std::move(rho);
  return q;
}

bool has_rule(const Report& r, const std::string& rule) {
  for (const auto& v : r)
    if (v.rule == rule) return true;
  return false;
}

Matrix random_diagonal_unitary(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> angle(0, 6.283185307179586);
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = std::polar(1.0, angle(rng));
  return m;
}

Matrix random_unitary_2(std::mt19937& rng) {
  std::uniform_real_distribution<double> angle(0, 6.283185307179586);
  double t = angle(rng), a = angle(rng), b = angle(rng);
  return m2(std::cos(t), -std::polar(std::sin(t), b), std::polar(std::sin(t), a), std::polar(std::cos(t), a + b));
}

}  // namespace

TEST(Matrix, Basics) {
  EXPECT_LT((pauli_x() * pauli_x() - Matrix::identity(2)).norm(), 1e-12);
  EXPECT_LT((pauli_x() * pauli_z() - (Matrix(2) - pauli_z() * pauli_x())).norm(), 1e-12);
  auto ev = (pauli_z()).hermitian_eigenvalues();
  EXPECT_NEAR(ev[0], -1, 1e-12);
  EXPECT_NEAR(ev[1], 1, 1e-12);
  EXPECT_THROW(Matrix(Matrix::kMaxDim + 1), InputError);
}

TEST(Validate, Commutation) {
  Matrix rho = pure({1, 0, 0, 0});
  QuantumES split = qes(fx::es({"e1", "e2"}), {unitary(kron(pauli_x(), Matrix::identity(2))), unitary(kron(Matrix::identity(2), pauli_z()))}, rho);
  EXPECT_TRUE(validate_qes(split).empty());
  QuantumES clash = qes(fx::es({"e1", "e2"}), {unitary(pauli_x()), unitary(pauli_z())}, pure({1, 0}));
  Report r = validate_qes(clash);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].witness, (std::vector<std::string>{"e1", "e2"}));
  QuantumES ordered = qes(fx::es({"e1", "e2"}, {{"e1", "e2"}}), {unitary(pauli_x()), unitary(pauli_z())}, pure({1, 0}));
  EXPECT_TRUE(validate_qes(ordered).empty());
  QuantumES conflicting = qes(fx::es({"e1", "e2"}, {}, {{"e1", "e2"}}), {unitary(pauli_x()), unitary(pauli_z())}, pure({1, 0}));
  EXPECT_TRUE(validate_qes(conflicting).empty());
}

TEST(Validate, OperatorKindsAndDensity) {
  QuantumES q = qes(fx::es({"e"}), {unitary(p0())}, pure({1, 0}));
  EXPECT_FALSE(validate_qes(q).empty());
  q.assign[0] = projection(pauli_x());
  EXPECT_FALSE(validate_qes(q).empty());
  q.assign[0] = projection(p_plus());
  EXPECT_TRUE(validate_qes(q).empty());
  q.rho = m2(1, 0, 0, 1);
  EXPECT_FALSE(validate_qes(q).empty());
  q.rho = m2(1.5, 0, 0, -0.5);
  EXPECT_FALSE(validate_qes(q).empty());
  q.rho = pure({1, 0, 0, 0});
  EXPECT_FALSE(validate_qes(q).empty());
}

TEST(Weight, Examples) {
  QuantumES q = qes(fx::es({"e"}), {projection(p0())}, pure({kR, kR}));
  ConfigOperator none = config_operator_and_weight(q, Configuration{});
  EXPECT_LT((none.a - Matrix::identity(2)).norm(), 1e-12);
  EXPECT_NEAR(none.weight, 1, 1e-12);
  EXPECT_NEAR(config_operator_and_weight(q, q.es.set_of({"e"})).weight, 0.5, 1e-12);
  std::mt19937 rng(2);
  for (int i = 0; i < 20; ++i) {
    QuantumES u = qes(fx::es({"e"}), {unitary(random_unitary_2(rng))}, pure({kR, Complex(0, kR)}));
    ASSERT_TRUE(validate_qes(u).empty());
    EXPECT_NEAR(config_operator_and_weight(u, u.es.set_of({"e"})).weight, 1, 1e-9);
  }
}

TEST(Weight, SerializationInvariance) {
  std::mt19937 rng(8);
  for (int round = 0; round < 30; ++round) {
    // Six events: one concurrent diagonal unitary per event, a few causal links.
    std::vector<std::pair<std::string, std::string>> edges;
    std::bernoulli_distribution link(0.3);
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        if (link(rng)) edges.emplace_back("e" + std::to_string(i), "e" + std::to_string(j));
    EventStructure es = fx::es({"e0", "e1", "e2", "e3", "e4", "e5"}, edges);
    std::vector<Operator> ops;
    for (int i = 0; i < 6; ++i) ops.push_back(unitary(random_diagonal_unitary(rng, 4)));
    QuantumES q = qes(es, ops, pure({0.5, 0.5, 0.5, 0.5}));
    ASSERT_TRUE(validate_qes(q).empty());
    for (const auto& x : configurations(es)) {
      Matrix first = config_operator_and_weight(q, x).a;
      for (const auto& order : linear_extensions(es, x)) EXPECT_LT((serialize(q, order) - first).norm(), 1e-12);
      EXPECT_NEAR(config_operator_and_weight(q, x).weight, 1, 1e-9);
    }
  }
}

TEST(Weight, ProjectionChainIsMonotone) {
  EventStructure chain = fx::es({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  QuantumES q = qes(chain, {projection(p_plus()), projection(p0()), projection(p_plus())}, pure({0.6, 0.8}));
  ASSERT_TRUE(validate_qes(q).empty());
  double last = 1;
  for (const auto& x : configurations(chain)) {
    double w = config_operator_and_weight(q, x).weight;
    EXPECT_LE(w, last + 1e-12);
    last = w;
  }
}

TEST(Local, ChainOfProjections) {
  EventStructure chain = fx::es({"a", "b"}, {{"a", "b"}});
  QuantumES q = qes(chain, {projection(p0()), projection(p0())}, pure({kR, kR}));
  ASSERT_TRUE(validate_qes(q).empty());
  EXPECT_TRUE(local_valuation_check(q, chain.all()).empty());
  EXPECT_TRUE(whole_valuation_check(q).empty());
  EXPECT_NEAR(config_operator_and_weight(q, chain.all()).weight, 0.5, 1e-12);
}

TEST(Local, BranchesFailOnlyGlobally) {
  // Two conflicting measurements that both succeed with certainty.
  EventStructure branches = fx::es({"l", "r"}, {}, {{"l", "r"}});
  QuantumES q = qes(branches, {projection(p0()), projection(p0())}, pure({1, 0}));
  ASSERT_TRUE(validate_qes(q).empty());
  for (const auto& w : configurations(branches)) EXPECT_TRUE(local_valuation_check(q, w).empty());
  Report whole = whole_valuation_check(q);
  ASSERT_FALSE(whole.empty());
  EXPECT_TRUE(has_rule(whole, "drop"));
}

TEST(Local, UnitaryOnly) {
  EventStructure es = fx::es({"a", "b"}, {}, {{"a", "b"}});
  QuantumES q = qes(es, {unitary(hadamard()), unitary(pauli_x())}, pure({1, 0}));
  for (const auto& w : configurations(es)) EXPECT_TRUE(local_valuation_check(q, w).empty());
}
