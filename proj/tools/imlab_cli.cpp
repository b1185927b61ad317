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

// Command-line front end. Links only against the C API.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "imlab/imlab.h"
#include "json.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

// Validation failure raised by the front end itself.
struct ConfigError : std::runtime_error {
  std::string kind;
  ConfigError(std::string k, const std::string& detail)
      : std::runtime_error(detail), kind(std::move(k)) {}
};

// Failure reported by the library.
struct LibError : std::runtime_error {
  int status;
  LibError(int s, const std::string& detail) : std::runtime_error(detail), status(s) {}
};

void check(int status) {
  if (status != IMLAB_OK) throw LibError(status, imlab_last_error());
}

std::string take(char* s) {
  std::string out = s ? s : "";
  imlab_string_free(s);
  return out;
}

// Symbolic parameters. ln2 = 0.6931471805599453, golden = (1 + √5)/2,
// pi/<n> = π/n, and plain numbers or fractions "a/b".
double resolve_param(const std::string& field, const std::string& text) {
  auto number = [&](const std::string& s) -> std::optional<double> {
    try {
      size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    return std::nullopt;
  };
  if (text == "ln2") return std::log(2.0);
  if (text == "golden") return (std::sqrt(5.0) + 1.0) / 2.0;
  if (text == "pi") return M_PI;
  if (auto v = number(text)) return *v;
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    const auto d = number(den);
    if (d && *d != 0) {
      if (num == "pi") return M_PI / *d;
      if (auto n = number(num)) return *n / *d;
    }
  }
  throw ConfigError("ParseError", "field '" + field + "': cannot parse '" + text + "'");
}

struct RunConfig {
  std::string command;
  std::string model = "c";
  std::string param_text;
  std::optional<double> param;
  std::string gates;  // gate-set JSON path
  double deform_y = 0;
  int T = 0;
  int L = 12;
  int chi = 0;
  std::string channel = "identity";
  long long n_samples = 100000;
  std::optional<unsigned long long> seed;
  std::string obs = "x";
  std::string o_prime;
  std::string psi_e = "plus";
  std::string psi_o = "plus";
  std::string rho_imp = "plus";
  int q = 3;
  double delta = 0.5;
  bool wrap = true;
  double tol = 0;
  std::string out;
  std::string format = "csv";
};

const std::vector<std::string> kCommands = {"growth",   "tee",        "montecarlo",
                                            "exact",    "spectrum",   "negativity",
                                            "covering"};

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["model"] = c.model;
  if (c.param) j["param"] = *c.param;
  if (!c.param_text.empty()) j["param_text"] = c.param_text;
  if (!c.gates.empty()) j["gates"] = c.gates;
  j["deform_y"] = c.deform_y;
  j["T"] = c.T;
  j["L"] = c.L;
  j["chi"] = c.chi;
  j["channel"] = c.channel;
  j["N"] = c.n_samples;
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["obs"] = c.obs;
  j["o_prime"] = c.o_prime;
  j["psi_e"] = c.psi_e;
  j["psi_o"] = c.psi_o;
  j["rho_imp"] = c.rho_imp;
  j["q"] = c.q;
  j["delta"] = c.delta;
  j["wrap"] = c.wrap;
  j["tol"] = c.tol;
  j["out"] = c.out;
  j["format"] = c.format;
  return j;
}

template <typename T>
void read_field(const json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("ParseError", std::string("field '") + key + "': " + e.what());
  }
}

// Reads a config document mirroring the command-line flags.
RunConfig config_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("ParseError", "cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("ParseError", "config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("ParseError", "config must be a JSON object");
  static const std::vector<std::string> known = {
      "command", "model", "K", "theta", "param", "gates", "deform_y", "T", "L",
      "chi", "channel", "N", "seed", "obs", "o_prime", "psi_e", "psi_o", "psi",
      "rho_imp", "q", "delta", "wrap", "tol", "out", "format"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw ConfigError("ParseError", "unknown field '" + it.key() + "'");
  RunConfig c;
  read_field(j, "command", c.command);
  read_field(j, "model", c.model);
  for (const char* key : {"K", "theta", "param"}) {
    if (!j.contains(key)) continue;
    const json& v = j.at(key);
    if (v.is_number()) c.param_text = v.dump();
    else if (v.is_string()) c.param_text = v.get<std::string>();
    else throw ConfigError("ParseError", std::string("field '") + key + "' must be a number or keyword");
  }
  read_field(j, "gates", c.gates);
  read_field(j, "deform_y", c.deform_y);
  read_field(j, "T", c.T);
  read_field(j, "L", c.L);
  read_field(j, "chi", c.chi);
  read_field(j, "channel", c.channel);
  read_field(j, "N", c.n_samples);
  if (j.contains("seed") && !j.at("seed").is_null()) {
    unsigned long long s = 0;
    read_field(j, "seed", s);
    c.seed = s;
  }
  read_field(j, "obs", c.obs);
  read_field(j, "o_prime", c.o_prime);
  if (j.contains("psi")) {
    read_field(j, "psi", c.psi_e);
    c.psi_o = c.psi_e;
  }
  read_field(j, "psi_e", c.psi_e);
  read_field(j, "psi_o", c.psi_o);
  read_field(j, "rho_imp", c.rho_imp);
  read_field(j, "q", c.q);
  read_field(j, "delta", c.delta);
  read_field(j, "wrap", c.wrap);
  read_field(j, "tol", c.tol);
  read_field(j, "out", c.out);
  read_field(j, "format", c.format);
  return c;
}

// Fills defaults, resolves keywords and checks per-command requirements.
void normalize(RunConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    throw ConfigError("ParseError", "field 'command': unknown command '" + c.command + "'");
  if (c.format != "csv" && c.format != "json")
    throw ConfigError("ParseError", "field 'format': expected csv or json");
  if (c.model != "a" && c.model != "b" && c.model != "c")
    throw ConfigError("ParseError", "field 'model': expected a, b or c");
  if (c.param_text.empty()) c.param_text = c.model == "c" ? "pi/3" : "ln2";
  c.param = resolve_param(c.model == "c" ? "theta" : "K", c.param_text);
  const bool needs_T = c.command == "growth" || c.command == "tee" ||
                       c.command == "montecarlo" || c.command == "exact";
  if (needs_T && c.T < 1) throw ConfigError("ParseError", "field 'T': must be >= 1");
  if ((c.command == "montecarlo" || c.command == "negativity") && !c.seed)
    throw ConfigError("ParseError", "field 'seed': required for " + c.command);
  if (c.command == "montecarlo" && c.n_samples < 1)
    throw ConfigError("ParseError", "field 'N': must be >= 1");
  if (c.command == "negativity" && c.n_samples < 1)
    throw ConfigError("ParseError", "field 'N': must be >= 1");
}

std::vector<double> named_state(const std::string& field, const std::string& name,
                                int q) {
  std::vector<double> v(static_cast<size_t>(2 * q), 0.0);
  if (name == "plus") {
    for (int i = 0; i < q; ++i) v[static_cast<size_t>(2 * i)] = 1.0 / std::sqrt(q);
  } else if (name.size() == 1 && std::isdigit(static_cast<unsigned char>(name[0])) &&
             name[0] - '0' < q) {
    v[static_cast<size_t>(2 * (name[0] - '0'))] = 1.0;
  } else {
    throw ConfigError("ParseError", "field '" + field + "': unknown state '" + name + "'");
  }
  return v;
}

std::vector<double> named_density(const std::string& field, const std::string& name,
                                  int q) {
  std::vector<double> m(static_cast<size_t>(2 * q * q), 0.0);
  if (name == "mixed") {
    for (int i = 0; i < q; ++i) m[static_cast<size_t>(2 * (i * q + i))] = 1.0 / q;
    return m;
  }
  const std::vector<double> v = named_state(field, name, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      m[static_cast<size_t>(2 * (i * q + j))] =
          v[static_cast<size_t>(2 * i)] * v[static_cast<size_t>(2 * j)];
  return m;
}

std::vector<double> named_operator(const std::string& field, const std::string& name,
                                   int q) {
  std::vector<double> m(static_cast<size_t>(2 * q * q), 0.0);
  auto set = [&](int i, int j, double re, double im) {
    m[static_cast<size_t>(2 * (i * q + j))] = re;
    m[static_cast<size_t>(2 * (i * q + j) + 1)] = im;
  };
  if (name == "i") {
    for (int i = 0; i < q; ++i) set(i, i, 1, 0);
    return m;
  }
  if (q != 2)
    throw ConfigError("ParseError", "field '" + field + "': Pauli operators need q = 2");
  if (name == "x") { set(0, 1, 1, 0); set(1, 0, 1, 0); }
  else if (name == "y") { set(0, 1, 0, -1); set(1, 0, 0, 1); }
  else if (name == "z") { set(0, 0, 1, 0); set(1, 1, -1, 0); }
  else throw ConfigError("ParseError", "field '" + field + "': unknown operator '" + name + "'");
  return m;
}

struct GateSet {
  imlab_gateset* p = nullptr;
  ~GateSet() { imlab_gateset_free(p); }
};

struct Channel {
  imlab_channel* p = nullptr;
  ~Channel() { imlab_channel_free(p); }
};

void load_gates(const RunConfig& c, GateSet& gs) {
  if (!c.gates.empty()) {
    std::ifstream in(c.gates);
    if (!in) throw ConfigError("ParseError", "field 'gates': cannot open '" + c.gates + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    check(imlab_gateset_from_json(ss.str().c_str(), &gs.p));
  } else {
    check(imlab_gateset_model(c.model[0], *c.param, &gs.p));
  }
  if (c.deform_y != 0) {
    if (imlab_gateset_q(gs.p) != 2)
      throw ConfigError("ParseError", "field 'deform_y': needs q = 2");
    // v = exp(−i·a·σ^y)
    const double a = c.deform_y;
    const double v[8] = {std::cos(a), 0, -std::sin(a), 0, std::sin(a), 0, std::cos(a), 0};
    GateSet out;
    check(imlab_gateset_deform(gs.p, v, &out.p));
    std::swap(gs.p, out.p);
  }
}

void load_channel(const RunConfig& c, int q, Channel& ch) {
  const std::string& s = c.channel;
  if (s.size() > 5 && s.substr(s.size() - 5) == ".json") {
    std::ifstream in(s);
    if (!in) throw ConfigError("ParseError", "field 'channel': cannot open '" + s + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    check(imlab_channel_from_json(ss.str().c_str(), &ch.p));
  } else if (!s.empty() && s[0] == '{') {
    check(imlab_channel_from_json(s.c_str(), &ch.p));
  } else {
    check(imlab_channel_preset(s.c_str(), q, &ch.p));
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x + 0.0;
  return os.str();
}

struct Artifact {
  std::string body;          // CSV unless json_body is set
  bool json_body = false;
  std::optional<json> summary;
};

Artifact run(const RunConfig& c) {
  Artifact art;
  if (c.command == "negativity") {
    double mean = 0, frac = 0;
    char* csv = nullptr;
    char* summary = nullptr;
    check(imlab_negativity_histogram(c.q, c.n_samples, *c.seed, &mean, &frac, &csv,
                                     &summary));
    art.body = take(csv);
    art.summary = json::parse(take(summary));
    return art;
  }
  if (c.command == "covering") {
    int dims[3];
    uint64_t n = 0;
    char* js = nullptr;
    check(imlab_covering(c.delta, dims, &n, &js));
    const json j = json::parse(take(js));
    std::ostringstream os;
    os << "index,w,x,y,z\n";
    size_t i = 0;
    for (const auto& p : j.at("points"))
      os << i++ << ',' << fmt(p[0]) << ',' << fmt(p[1]) << ',' << fmt(p[2]) << ','
         << fmt(p[3]) << '\n';
    art.body = os.str();
    art.summary = json{{"delta", c.delta},
                       {"grid_dims", {dims[0], dims[1], dims[2]}},
                       {"points", n}};
    return art;
  }

  GateSet gs;
  load_gates(c, gs);
  const int q = imlab_gateset_q(gs.p);

  if (c.command == "growth") {
    char* csv = nullptr;
    char* verdict = nullptr;
    check(imlab_growth_report(gs.p, c.T, c.tol, &csv, &verdict));
    art.body = take(csv);
    art.summary = json::parse(take(verdict));
    return art;
  }
  if (c.command == "spectrum") {
    char* csv = nullptr;
    char* summary = nullptr;
    check(imlab_spectrum(gs.p, c.L, c.wrap ? 1 : 0, nullptr, nullptr, &csv, &summary));
    art.body = take(csv);
    art.summary = json::parse(take(summary));
    return art;
  }

  const auto psi_e = named_state("psi_e", c.psi_e, q);
  const auto psi_o = named_state("psi_o", c.psi_o, q);
  if (c.command == "tee") {
    char* csv = nullptr;
    check(imlab_tee_csv(gs.p, psi_e.data(), psi_o.data(), c.T, c.chi, &csv));
    art.body = take(csv);
    return art;
  }

  Channel ch;
  load_channel(c, q, ch);
  const auto rho = named_density("rho_imp", c.rho_imp, q);
  const auto obs = named_operator("obs", c.obs, q);
  const size_t T = static_cast<size_t>(c.T);
  std::ostringstream os;
  os.precision(17);
  if (c.command == "montecarlo") {
    const std::string seed = std::to_string(*c.seed);
    if (c.o_prime.empty()) {
      std::vector<double> mean(T), err(T);
      check(imlab_mc_series(gs.p, psi_e.data(), psi_o.data(), rho.data(), ch.p,
                            obs.data(), c.T, c.n_samples, *c.seed, mean.data(),
                            err.data()));
      os << "T,mean,stderr,n,seed\n";
      for (size_t t = 0; t < T; ++t)
        os << t + 1 << ',' << mean[t] << ',' << err[t] << ',' << c.n_samples << ','
           << seed << '\n';
    } else {
      const auto op = named_operator("o_prime", c.o_prime, q);
      std::vector<double> rm(T), re(T), im(T), ie(T);
      check(imlab_mc_two_point(gs.p, psi_e.data(), psi_o.data(), rho.data(), ch.p,
                               op.data(), obs.data(), c.T, c.n_samples, *c.seed,
                               rm.data(), re.data(), im.data(), ie.data()));
      os << "T,mean,stderr,mean_im,stderr_im,n,seed\n";
      for (size_t t = 0; t < T; ++t)
        os << t + 1 << ',' << rm[t] << ',' << re[t] << ',' << im[t] << ',' << ie[t]
           << ',' << c.n_samples << ',' << seed << '\n';
    }
  } else {  // exact
    if (c.o_prime.empty()) {
      std::vector<double> v(T);
      check(imlab_exact_series(gs.p, psi_e.data(), psi_o.data(), rho.data(), ch.p,
                               obs.data(), c.T, v.data()));
      os << "T,value\n";
      for (size_t t = 0; t < T; ++t) os << t + 1 << ',' << v[t] << '\n';
    } else {
      const auto op = named_operator("o_prime", c.o_prime, q);
      std::vector<double> v(2 * T);
      check(imlab_exact_two_point(gs.p, psi_e.data(), psi_o.data(), rho.data(), ch.p,
                                  op.data(), obs.data(), c.T, v.data()));
      os << "T,value,value_im\n";
      for (size_t t = 0; t < T; ++t)
        os << t + 1 << ',' << v[2 * t] << ',' << v[2 * t + 1] << '\n';
    }
  }
  art.body = os.str();
  return art;
}

// CSV rows as an array of objects; numeric cells become numbers.
std::string csv_to_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> header;
  json rows = json::array();
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (header.empty()) {
      header = cells;
      continue;
    }
    json row;
    for (size_t i = 0; i < cells.size() && i < header.size(); ++i) {
      try {
        size_t pos = 0;
        if (cells[i].find_first_of(".eEn") == std::string::npos) {
          const long long n = std::stoll(cells[i], &pos);
          if (pos == cells[i].size()) {
            row[header[i]] = n;
            continue;
          }
        }
        const double v = std::stod(cells[i], &pos);
        if (pos == cells[i].size()) {
          row[header[i]] = v;
          continue;
        }
      } catch (const std::exception&) {
      }
      row[header[i]] = cells[i];
    }
    rows.push_back(row);
  }
  return rows.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("InvalidArgument", "cannot write '" + path + "'");
  out << text;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

int report(const std::string& kind, const std::string& detail, int code) {
  std::cerr << json{{"error", kind}, {"detail", detail}}.dump() << std::endl;
  return code;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--model", c.model, "named model: a, b or c");
  sub->add_option("--K,--theta,--param", c.param_text,
                  "model parameter; keywords ln2, golden, pi, pi/<n>, a/b");
  sub->add_option("--gates", c.gates, "gate-set JSON file (overrides --model)");
  sub->add_option("--deform-y", c.deform_y, "conjugate controls by exp(-i a sigma^y)");
  sub->add_option("--out,-o", c.out, "output path (default stdout)");
  sub->add_option("--format", c.format, "csv or json");
  sub->add_option("--tol", c.tol, "group dedup tolerance (default 1e-9)");
}

void add_walk(CLI::App* sub, RunConfig& c) {
  sub->add_option("--T", c.T, "number of time steps")->required();
  sub->add_option("--channel", c.channel, "preset, inline JSON or .json file");
  sub->add_option("--obs", c.obs, "observable: x, y, z or i");
  sub->add_option("--o-prime", c.o_prime, "insert O' at time 0 (two-point)");
  sub->add_option("--psi-e", c.psi_e, "even-site state: plus or a basis digit");
  sub->add_option("--psi-o", c.psi_o, "odd-site state: plus or a basis digit");
  sub->add_option("--rho-imp", c.rho_imp, "impurity state: plus, mixed or a digit");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"influence-matrix laboratory"};
  app.require_subcommand(0, 1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config mirroring the flags");

  RunConfig c;
  unsigned long long seed = 0;
  auto* growth = app.add_subcommand("growth", "reachable-set counts and verdict");
  add_common(growth, c);
  growth->add_option("--T", c.T, "largest word length")->required();

  auto* tee = app.add_subcommand("tee", "temporal entanglement per cut");
  add_common(tee, c);
  tee->add_option("--T", c.T, "largest horizon")->required();
  tee->add_option("--chi", c.chi, "bond cap (0: exact IM)");
  tee->add_option("--psi-e", c.psi_e, "even-site state");
  tee->add_option("--psi-o", c.psi_o, "odd-site state");

  auto* mc = app.add_subcommand("montecarlo", "stochastic walk estimates");
  add_common(mc, c);
  add_walk(mc, c);
  mc->add_option("--N", c.n_samples, "trajectories");
  auto* mc_seed = mc->add_option("--seed", seed, "base seed");

  auto* exact = app.add_subcommand("exact", "transfer-operator reference");
  add_common(exact, c);
  add_walk(exact, c);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "level-spacing ratios of the Floquet operator");
  add_common(spectrum_cmd, c);
  spectrum_cmd->add_option("--L", c.L, "even chain length");
  spectrum_cmd->add_flag("!--no-wrap", c.wrap, "drop the wrap-around spacing");

  auto* neg = app.add_subcommand("negativity", "Haar negativity histogram");
  neg->add_option("--q", c.q, "local dimension (2, 3 or 4)");
  neg->add_option("--N", c.n_samples, "samples");
  auto* neg_seed = neg->add_option("--seed", seed, "base seed");
  neg->add_option("--out,-o", c.out, "output path");
  neg->add_option("--format", c.format, "csv or json");

  auto* cov = app.add_subcommand("covering", "delta-covering grid of PU(2)");
  cov->add_option("--delta", c.delta, "covering radius");
  cov->add_option("--out,-o", c.out, "output path");
  cov->add_option("--format", c.format, "csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("ParseError", e.what(), kExitValidation);
  }

  const auto t0 = std::chrono::steady_clock::now();
  const std::string started = utc_now();
  try {
    if (!config_path.empty()) {
      RunConfig from_file = config_from_json(config_path);
      if (from_file.command.empty() && !app.get_subcommands().empty())
        from_file.command = app.get_subcommands().front()->get_name();
      c = from_file;
    } else {
      if (app.get_subcommands().empty())
        throw ConfigError("ParseError", "no command given");
      c.command = app.get_subcommands().front()->get_name();
      if ((c.command == "montecarlo" && mc_seed->count()) ||
          (c.command == "negativity" && neg_seed->count()))
        c.seed = seed;
      if (c.command == "negativity" && c.n_samples == 100000) c.n_samples = 10000;
    }
    normalize(c);
    Artifact art = run(c);
    const std::string body = c.format == "json" ? csv_to_json(art.body) : art.body;
    if (c.out.empty()) {
      std::cout << body;
      if (art.summary) std::cerr << art.summary->dump(2) << std::endl;
    } else {
      write_file(c.out, body);
      write_file(c.out + ".config.json", to_json(c).dump(2) + "\n");
      if (art.summary) write_file(c.out + ".summary.json", art.summary->dump(2) + "\n");
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const char* threads = std::getenv("IM_LAB_THREADS");
      write_file(c.out + ".meta.json",
                 json{{"version", imlab_version()},
                      {"started_utc", started},
                      {"elapsed_seconds", secs},
                      {"IM_LAB_THREADS", threads ? json(threads) : json(nullptr)}}
                         .dump(2) + "\n");
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    return report(e.kind, e.what(), kExitValidation);
  } catch (const LibError& e) {
    return report(imlab_status_name(e.status), e.what(),
                  e.status == IMLAB_E_INTERNAL ? kExitInternal
                  : imlab_status_is_resource(e.status) ? kExitResource
                                                       : kExitValidation);
  } catch (const json::exception& e) {
    return report("ParseError", e.what(), kExitValidation);
  } catch (const std::exception& e) {
    return report("Internal", e.what(), kExitInternal);
  }
}
