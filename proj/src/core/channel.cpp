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

#include "channel.hpp"

#include <cmath>

#include "errors.hpp"
#include "json.hpp"

namespace imlab {

Mat QuantumChannel::apply(const Mat& x) const {
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (const Mat& k : kraus) out += k * x * k.adjoint();
  return out;
}

bool QuantumChannel::homogeneous(RVec* r) const {
  const int d = q();
  RVec ref(d);
  // diag(K[|i⟩⟨j|]) must vanish for i ≠ j and be i-independent for i = j.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Mat e = Mat::Zero(d, d);
      e(i, j) = 1.0;
      const Mat out = apply(e);
      for (int b = 0; b < d; ++b) {
        const cplx v = out(b, b);
        if (i != j) {
          if (std::abs(v) > 1e-12) return false;
        } else if (i == 0) {
          if (std::abs(v.imag()) > 1e-12) return false;
          ref(b) = v.real();
        } else if (std::abs(v - cplx(ref(b))) > 1e-12) {
          return false;
        }
      }
    }
  }
  if (r) *r = ref;
  return true;
}

double trace_preservation_residual(const std::vector<Mat>& kraus) {
  if (kraus.empty()) return INFINITY;
  const auto n = kraus.front().rows();
  Mat s = Mat::Zero(n, n);
  for (const Mat& k : kraus) s += k.adjoint() * k;
  return max_abs(s - Mat::Identity(n, n));
}

QuantumChannel make_channel(std::vector<Mat> kraus, const std::string& label) {
  if (kraus.empty()) fail(ErrorKind::InvalidArgument, "channel has no Kraus operators");
  const auto n = kraus.front().rows();
  for (const Mat& k : kraus)
    if (k.rows() != n || k.cols() != n)
      fail(ErrorKind::DimensionMismatch, "Kraus operators must be q x q");
  const double r = trace_preservation_residual(kraus);
  if (!(r <= 1e-10))
    fail(ErrorKind::NonTracePreserving,
         label + ": sum K^dag K deviates from I by " + std::to_string(r));
  return {std::move(kraus), label};
}

QuantumChannel identity_channel(int q) {
  return make_channel({Mat::Identity(q, q)}, "identity");
}

namespace {

std::vector<Mat> prepare_kraus(const Mat& rho_re, double weight) {
  require_density(rho_re, 1e-10, "rho_re");
  const int q = static_cast<int>(rho_re.rows());
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho_re + rho_re.adjoint()));
  std::vector<Mat> out;
  for (int k = 0; k < q; ++k) {
    const double lam = es.eigenvalues()(k) * weight;
    if (lam <= 1e-15) continue;
    for (int i = 0; i < q; ++i) {
      Mat K = Mat::Zero(q, q);
      K.col(i) = std::sqrt(lam) * es.eigenvectors().col(k);
      out.push_back(K);
    }
  }
  return out;
}

}  // namespace

QuantumChannel causal_break_channel(const Mat& rho_re) {
  return make_channel(prepare_kraus(rho_re, 1.0), "break");
}

QuantumChannel mixed_channel(double p, const Mat& rho_re) {
  if (!(p >= 0.0 && p <= 1.0))
    fail(ErrorKind::POutOfRange, "mixing rate must lie in [0, 1]");
  const int q = static_cast<int>(rho_re.rows());
  std::vector<Mat> kraus;
  if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * Mat::Identity(q, q));
  if (p > 0.0)
    for (Mat& k : prepare_kraus(rho_re, p)) kraus.push_back(std::move(k));
  else
    require_density(rho_re, 1e-10, "rho_re");
  return make_channel(std::move(kraus), "mix:p=" + std::to_string(p));
}

Mat plus_state_density(int q) {
  return Mat::Constant(q, q, cplx(1.0 / q));
}

QuantumChannel channel_preset(const std::string& name, int q) {
  if (name == "identity") return identity_channel(q);
  if (name == "break:+") {
    QuantumChannel c = causal_break_channel(plus_state_density(q));
    c.label = name;
    return c;
  }
  if (name == "break:0") {
    Mat r = Mat::Zero(q, q);
    r(0, 0) = 1.0;
    QuantumChannel c = causal_break_channel(r);
    c.label = name;
    return c;
  }
  const std::string mix = "mix:p=";
  if (name.rfind(mix, 0) == 0) {
    double p = 0;
    try {
      size_t used = 0;
      p = std::stod(name.substr(mix.size()), &used);
      if (used != name.size() - mix.size()) throw std::invalid_argument(name);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad mixing preset: " + name);
    }
    QuantumChannel c = mixed_channel(p, plus_state_density(q));
    c.label = name;
    return c;
  }
  fail(ErrorKind::ParseError, "unknown channel preset: " + name);
}

QuantumChannel channel_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    std::vector<Mat> kraus;
    for (const auto& m : j.at("kraus")) {
      const int n = static_cast<int>(m.size());
      Mat k(n, n);
      for (int r = 0; r < n; ++r) {
        if (static_cast<int>(m[r].size()) != n)
          fail(ErrorKind::DimensionMismatch, "Kraus operator is not square");
        for (int c = 0; c < n; ++c)
          k(r, c) = cplx(m[r][c].at(0).get<double>(), m[r][c].at(1).get<double>());
      }
      kraus.push_back(k);
    }
    return make_channel(std::move(kraus), j.value("label", std::string("custom")));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("channel: ") + e.what());
  }
}

}  // namespace imlab
