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

#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "errors.hpp"
#include "json.hpp"

namespace imlab {

namespace {

// M ← G_{x,x+1} M for a two-site gate on adjacent sites x, x+1.
void apply_bond(Mat& m, const Mat& g, int q, int L, int x) {
  const Eigen::Index lo = static_cast<Eigen::Index>(std::pow(q, L - x - 2));
  const Eigen::Index hi = static_cast<Eigen::Index>(std::pow(q, x));
  const int q2 = q * q;
  std::vector<cplx> buf(static_cast<size_t>(q2));
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    cplx* c = m.col(col).data();
    for (Eigen::Index h = 0; h < hi; ++h)
      for (Eigen::Index l = 0; l < lo; ++l) {
        const Eigen::Index base = h * q2 * lo + l;
        for (int k = 0; k < q2; ++k) buf[static_cast<size_t>(k)] = c[base + k * lo];
        for (int i = 0; i < q2; ++i) {
          cplx s = 0;
          for (int k = 0; k < q2; ++k) s += g(i, k) * buf[static_cast<size_t>(k)];
          c[base + i * lo] = s;
        }
      }
  }
}

std::vector<double> spacings(std::vector<double> phases, bool wrap) {
  std::sort(phases.begin(), phases.end());
  std::vector<double> s;
  for (size_t i = 0; i + 1 < phases.size(); ++i) s.push_back(phases[i + 1] - phases[i]);
  if (wrap && !phases.empty())
    s.push_back(phases.front() + 2 * M_PI - phases.back());
  return s;
}

void require_levels(const std::vector<double>& phases) {
  if (phases.size() < 3)
    fail(ErrorKind::TooFewLevels, "need at least 3 phases, got " +
                                      std::to_string(phases.size()));
}

}  // namespace

Mat build_floquet_obc(const ControlledGateSet& gs, int L, int max_L) {
  if (L % 2 != 0) fail(ErrorKind::OddL, "L must be even, got " + std::to_string(L));
  if (L < 2) fail(ErrorKind::InvalidArgument, "L must be >= 2");
  if (L > max_L)
    fail(ErrorKind::TooLarge, "L=" + std::to_string(L) + " exceeds cap " +
                                  std::to_string(max_L));
  const int q = gs.q();
  const double dim = std::pow(q, L);
  if (dim * dim * sizeof(cplx) > 8.0 * (1ULL << 30))
    fail(ErrorKind::TooLarge, "Floquet matrix too large for dense storage");
  const Eigen::Index n = static_cast<Eigen::Index>(dim);
  Mat m = Mat::Identity(n, n);
  for (int x = 0; x + 1 < L; x += 2) apply_bond(m, gs.two_qudit(), q, L, x);
  for (int x = 1; x + 2 < L; x += 2) apply_bond(m, gs.two_qudit(), q, L, x);
  return m;
}

std::vector<double> spacing_ratios(std::vector<double> phases, bool wrap) {
  require_levels(phases);
  const std::vector<double> s = spacings(std::move(phases), wrap);
  const size_t n = wrap ? s.size() : s.size() - 1;
  std::vector<double> r;
  r.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const double a = s[i], b = s[(i + 1) % s.size()];
    const double hi = std::max(a, b);
    r.push_back(hi < kDegenerateSpacing ? 0.0 : std::min(a, b) / hi);
  }
  return r;
}

size_t degenerate_spacings(std::vector<double> phases, bool wrap) {
  const std::vector<double> s = spacings(std::move(phases), wrap);
  return static_cast<size_t>(std::count_if(
      s.begin(), s.end(), [](double x) { return x < kDegenerateSpacing; }));
}

std::function<double(double)> reference_distribution(RatioEnsemble kind) {
  if (kind == RatioEnsemble::Poisson)
    return [](double r) { return 2.0 / ((1.0 + r) * (1.0 + r)); };
  return [](double r) {
    return 27.0 / 4.0 * (r + r * r) / std::pow(1.0 + r + r * r, 2.5);
  };
}

std::vector<double> ratio_histogram(const std::vector<double>& ratios, int bins) {
  std::vector<double> d(static_cast<size_t>(bins), 0.0);
  if (ratios.empty()) return d;
  for (double r : ratios) {
    int k = static_cast<int>(r * bins);
    k = std::clamp(k, 0, bins - 1);
    d[static_cast<size_t>(k)] += 1.0;
  }
  const double scale = bins / static_cast<double>(ratios.size());
  for (double& x : d) x *= scale;
  return d;
}

SpectrumResult lss_report(const ControlledGateSet& gs, int L, bool wrap, int max_L) {
  SpectrumResult out;
  out.L = L;
  const Vec ev = eigenvalues_general(build_floquet_obc(gs, L, max_L));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    out.unimodularity_error =
        std::max(out.unimodularity_error, std::abs(std::abs(ev(i)) - 1.0));
    double ph = std::arg(ev(i));
    if (ph <= -M_PI) ph = M_PI;
    out.phases.push_back(ph);
  }
  if (out.unimodularity_error > 1e-8)
    fail(ErrorKind::NumericalFailure, "eigenvalues are not unimodular");
  std::sort(out.phases.begin(), out.phases.end());
  out.ratios = spacing_ratios(out.phases, wrap);
  out.mean_ratio = std::accumulate(out.ratios.begin(), out.ratios.end(), 0.0) /
                   static_cast<double>(out.ratios.size());
  for (int k = 0; k <= kRatioBins; ++k)
    out.bin_edges.push_back(static_cast<double>(k) / kRatioBins);
  out.densities = ratio_histogram(out.ratios);
  out.degenerate_count = degenerate_spacings(out.phases, wrap);
  const size_t ns = wrap ? out.phases.size() : out.phases.size() - 1;
  out.degenerate_fraction = static_cast<double>(out.degenerate_count) / static_cast<double>(ns);
  return out;
}

std::string spectrum_csv(const SpectrumResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << "r_bin_left,r_bin_right,density\n";
  for (size_t k = 0; k < r.densities.size(); ++k)
    os << r.bin_edges[k] << ',' << r.bin_edges[k + 1] << ',' << r.densities[k] << '\n';
  return os.str();
}

std::string spectrum_summary_json(const SpectrumResult& r) {
  nlohmann::json j;
  j["L"] = r.L;
  j["mean_ratio"] = r.mean_ratio;
  j["degenerate_fraction"] = r.degenerate_fraction;
  j["degenerate_count"] = r.degenerate_count;
  j["levels"] = r.phases.size();
  j["unimodularity_error"] = r.unimodularity_error;
  return j.dump(2);
}

}  // namespace imlab
