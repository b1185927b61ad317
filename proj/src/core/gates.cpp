// Copyright 2026 The imlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gates.hpp"

#include <cmath>
#include <string>

#include "json.hpp"

#include "errors.hpp"

namespace imlab {

namespace {

constexpr double kUnitaryTol = 1e-8;
constexpr double kNormTol = 1e-12;

void require_unitary(const Mat& u, int index, const char* what) {
  const double r = unitarity_residual(u);
  if (!(r <= kUnitaryTol))
    fail(ErrorKind::NonUnitary, std::string(what) + " index " +
                                    std::to_string(index) + " residual " +
                                    std::to_string(r));
}

}  // namespace

ControlledGateSet make_gate_set(int q, const std::vector<Mat>& unitaries) {
  if (q < 2) fail(ErrorKind::DimensionMismatch, "q must be >= 2");
  if (static_cast<int>(unitaries.size()) != q)
    fail(ErrorKind::DimensionMismatch,
         "expected " + std::to_string(q) + " controlled unitaries, got " +
             std::to_string(unitaries.size()));
  for (int a = 0; a < q; ++a) {
    const Mat& u = unitaries[static_cast<size_t>(a)];
    if (u.rows() != q || u.cols() != q)
      fail(ErrorKind::DimensionMismatch,
           "unitary " + std::to_string(a) + " is not q x q");
    require_unitary(u, a, "controlled unitary");
  }
  ControlledGateSet gs;
  gs.q_ = q;
  gs.u_ = unitaries;
  // U[(b, i), (a, b)] = (u_b)_{i a}
  gs.U_ = Mat::Zero(q * q, q * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int i = 0; i < q; ++i)
        gs.U_(b * q + i, a * q + b) = unitaries[static_cast<size_t>(b)](i, a);
  return gs;
}

ControlledGateSet model_a(double K) {
  return make_gate_set(2, {su2_exp(K * M_PI, 0, 0, 1),
                           su2_exp(-K * M_PI, 0, 0, 1)});
}

ControlledGateSet model_b(double K) {
  return make_gate_set(2, {su2_exp(K * M_PI, 0, 0, 1), pauli_x()});
}

ControlledGateSet model_c(double theta) {
  return make_gate_set(2, {su2_exp(theta, 0, 0, 1), su2_exp(theta, 1, 0, 0)});
}

ControlledGateSet conjugate_deform(const ControlledGateSet& gs, const Mat& v) {
  if (v.rows() != gs.q() || v.cols() != gs.q())
    fail(ErrorKind::DimensionMismatch, "deformation is not q x q");
  if (!(unitarity_residual(v) <= 1e-10))
    fail(ErrorKind::NonUnitary, "deformation v is not unitary");
  std::vector<Mat> us;
  for (const Mat& u : gs.controlled()) us.push_back(v * u * v.adjoint());
  return make_gate_set(gs.q(), us);
}

std::string gate_set_to_json(const ControlledGateSet& gs) {
  nlohmann::json j;
  j["q"] = gs.q();
  nlohmann::json list = nlohmann::json::array();
  for (const Mat& u : gs.controlled()) {
    nlohmann::json m = nlohmann::json::array();
    for (int r = 0; r < u.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < u.cols(); ++c)
        row.push_back({u(r, c).real(), u(r, c).imag()});
      m.push_back(row);
    }
    list.push_back(m);
  }
  j["controlled"] = list;
  return j.dump();
}

ControlledGateSet gate_set_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  try {
    const int q = j.at("q").get<int>();
    std::vector<Mat> us;
    for (const auto& m : j.at("controlled")) {
      if (static_cast<int>(m.size()) != q)
        fail(ErrorKind::DimensionMismatch, "controlled matrix row count != q");
      Mat u(q, q);
      for (int r = 0; r < q; ++r) {
        if (static_cast<int>(m[r].size()) != q)
          fail(ErrorKind::DimensionMismatch, "controlled matrix column count != q");
        for (int c = 0; c < q; ++c)
          u(r, c) = cplx(m[r][c].at(0).get<double>(), m[r][c].at(1).get<double>());
      }
      us.push_back(u);
    }
    return make_gate_set(q, us);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("gate set: ") + e.what());
  }
}

ProductInitialState make_product_state(const Vec& psi_e, const Vec& psi_o) {
  if (psi_e.size() != psi_o.size() || psi_e.size() < 2)
    fail(ErrorKind::DimensionMismatch, "state vectors must both have length q");
  if (std::abs(psi_e.norm() - 1.0) > kNormTol ||
      std::abs(psi_o.norm() - 1.0) > kNormTol)
    fail(ErrorKind::NotNormalized, "product state vectors must have unit norm");
  return {psi_e, psi_o};
}

BathState::BathState(const ProductInitialState& p) {
  const ProductInitialState checked = make_product_state(p.psi_e, p.psi_o);
  q_ = static_cast<int>(checked.psi_e.size());
  product_ = true;
  prod_ = checked;
  const Vec v = kron(checked.psi_o, checked.psi_e);
  rho_ = v * v.adjoint();
}

BathState BathState::pair_density(int q, const Mat& rho) {
  if (rho.rows() != q * q || rho.cols() != q * q)
    fail(ErrorKind::DimensionMismatch, "pair density must be q^2 x q^2");
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-10)
    fail(ErrorKind::NotNormalized, "pair density must have unit trace");
  require_density(rho, 1e-10, "pair density");
  BathState s;
  s.q_ = q;
  s.rho_ = rho;
  return s;
}

BathState BathState::pair_vector(int q, const Vec& psi) {
  if (psi.size() != q * q)
    fail(ErrorKind::DimensionMismatch, "pair vector must have length q^2");
  if (std::abs(psi.norm() - 1.0) > kNormTol)
    fail(ErrorKind::NotNormalized, "pair vector must have unit norm");
  return pair_density(q, psi * psi.adjoint());
}

const ProductInitialState& BathState::product() const {
  if (!product_) fail(ErrorKind::InvalidArgument, "bath state is not a product");
  return prod_;
}

Mat BathState::even_given_odd(int c) const {
  return rho_.block(c * q_, c * q_, q_, q_);
}

Mat BathState::even_marginal() const {
  Mat m = Mat::Zero(q_, q_);
  for (int c = 0; c < q_; ++c) m += even_given_odd(c);
  return m;
}

RVec BathState::odd_probabilities() const {
  RVec p(q_);
  for (int c = 0; c < q_; ++c) p(c) = even_given_odd(c).trace().real();
  return p;
}

ImpurityObservable make_observable(const Mat& m, const std::string& label) {
  if (m.rows() != m.cols() || m.rows() < 2)
    fail(ErrorKind::DimensionMismatch, "observable must be square");
  if (hermiticity_residual(m) > 1e-12)
    fail(ErrorKind::InvalidArgument, "observable is not Hermitian");
  return {m, label};
}

}  // namespace imlab
