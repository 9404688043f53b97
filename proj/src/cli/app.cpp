// Copyright 2026 The catbox Authors
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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "catbox/cli.hpp"
#include "catbox/protocol.hpp"

namespace catbox::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunFlags {
  std::vector<std::string> targets;
  std::string format = "json";
  std::string output;
  std::optional<std::string> alpha;
  std::optional<double> g, t, t_prime, lambda;
  std::optional<std::size_t> fock_dim;
  std::optional<std::string> coeffs;
  std::optional<std::size_t> dim;
  std::optional<std::string> with_r2, with_detection, with_erasure;
  std::optional<std::uint64_t> sample;
  bool dump_matrices = false;
  int jobs = 1;
};

cplx parse_alpha(const std::string& text) {
  const auto comma = text.find(',');
  if (comma != std::string::npos) {
    const auto re = protocol::parse_real(std::string_view(text).substr(0, comma));
    const auto im = protocol::parse_real(std::string_view(text).substr(comma + 1));
    if (re && im) return {*re, *im};
  } else if (const auto c = protocol::parse_complex(text)) {
    return *c;
  }
  throw UsageError("--alpha: expected 're,im' or a complex literal, got '" + text + "'");
}

std::optional<bool> parse_bool(const std::optional<std::string>& text,
                               std::string_view flag) {
  if (!text) return std::nullopt;
  if (*text == "true" || *text == "1" || *text == "yes") return true;
  if (*text == "false" || *text == "0" || *text == "no") return false;
  throw UsageError(std::string(flag) + ": expected true or false, got '" + *text + "'");
}

std::optional<std::size_t> env_fock_dim() {
  const char* v = std::getenv("CATBOX_FOCK_DIM");
  if (!v || !*v) return std::nullopt;
  const auto d = protocol::parse_real(v);
  if (!d || *d < 2 || *d != std::floor(*d) || *d > 1e6) {
    throw UsageError(std::string("CATBOX_FOCK_DIM: expected an integer >= 2, got '") + v + "'");
  }
  return static_cast<std::size_t>(*d);
}

scenarios::Parameters to_parameters(const RunFlags& f) {
  scenarios::Parameters p;
  if (f.alpha) p.alpha = parse_alpha(*f.alpha);
  const auto finite = [](std::optional<double> v, std::string_view flag) {
    if (v && !std::isfinite(*v)) throw UsageError(std::string(flag) + " must be finite");
    return v;
  };
  if (finite(f.g, "--g")) p.g = *f.g;
  if (finite(f.t_prime, "--t-prime")) p.t_prime = *f.t_prime;
  if (finite(f.t, "--t")) {
    if (*f.t < 0) throw UsageError("--t must be >= 0");
    p.t = *f.t;
  }
  if (finite(f.lambda, "--lambda")) {
    if (!(*f.lambda > 0)) throw UsageError("--lambda must be > 0");
    p.lambda = *f.lambda;
  }
  p.fock_dim = f.fock_dim ? f.fock_dim : env_fock_dim();
  if (p.fock_dim && *p.fock_dim < 2) throw UsageError("--fock-dim must be >= 2");
  if (f.dim) {
    if (*f.dim < 1) throw UsageError("--dim must be >= 1");
    p.dim = *f.dim;
  }
  if (f.coeffs) {
    std::stringstream ss(*f.coeffs);
    std::string part;
    double total = 0.0;
    while (std::getline(ss, part, ',')) {
      const auto c = protocol::parse_complex(part);
      if (!c) throw UsageError("--coeffs: malformed number '" + part + "'");
      p.coeffs.push_back(*c);
      total += std::norm(*c);
    }
    if (p.coeffs.empty() || std::abs(total - 1.0) > tol::kNorm) {
      throw UsageError("--coeffs must be normalized (sum |c|^2 = 1)");
    }
    if (f.dim && *f.dim != p.coeffs.size()) {
      throw UsageError("--dim disagrees with the number of --coeffs");
    }
  }
  p.with_r2 = parse_bool(f.with_r2, "--with-r2");
  p.with_detection = parse_bool(f.with_detection, "--with-detection");
  p.with_erasure = parse_bool(f.with_erasure, "--with-erasure");
  return p;
}

bool is_script(std::string_view target) {
  return target.size() > protocol::kExtension.size() &&
         target.substr(target.size() - protocol::kExtension.size()) == protocol::kExtension;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

std::string diagnostics_text(const std::string& path,
                             const std::vector<protocol::Diagnostic>& ds) {
  std::string s;
  for (const auto& d : ds) {
    s += path + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
         d.message + "\n";
  }
  return s;
}

RunReport run_script_text(const std::string& name, const std::string& text,
                          std::string source, const scenarios::ParamList& params,
                          const std::optional<std::uint64_t>& seed) {
  const auto parsed = protocol::parse(text);
  if (!parsed.ok()) throw std::runtime_error(diagnostics_text(name, parsed.diagnostics));
  protocol::InterpretOptions opts;
  opts.sample_seed = seed;
  return {name, std::move(source), params, protocol::interpret(*parsed.protocol, opts)};
}

RunReport run_target(const std::string& target, const scenarios::Parameters& p,
                     const RunFlags& f) {
  if (is_script(target)) {
    const auto text = read_file(target);
    if (!text) throw std::runtime_error("cannot read script '" + target + "'");
    scenarios::ParamList params;
    if (f.sample) params.emplace_back("sample_seed", static_cast<double>(*f.sample));
    return run_script_text(target, *text, "script", params, f.sample);
  }
  auto params = scenarios::resolved_parameters(target, p);
  if (f.sample) {
    params.emplace_back("sample_seed", static_cast<double>(*f.sample));
    return run_script_text(target, scenarios::script_twin(target, p), "twin", params,
                           f.sample);
  }
  return {target, "native", std::move(params), scenarios::run_native(target, p)};
}

int do_run(const RunFlags& f, std::ostream& out, std::ostream& err) {
  scenarios::Parameters p;
  try {
    p = to_parameters(f);
    for (const auto& t : f.targets) {
      if (!is_script(t) && !scenarios::is_scenario(t)) {
        throw UsageError("unknown scenario '" + t + "' (see `catbox list`)");
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  const auto n = static_cast<long>(f.targets.size());
  std::vector<RunReport> reports(f.targets.size());
  std::vector<std::string> errors(f.targets.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, f.jobs)) if (f.jobs > 1)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      reports[k] = run_target(f.targets[k], p, f);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (errors[k].empty()) continue;
    std::string msg = errors[k];
    if (!msg.empty() && msg.back() == '\n') msg.pop_back();
    err << "error: " << f.targets[k] << ": " << msg << "\n";
    return kScenarioError;
  }

  const WriteOptions wo{f.dump_matrices};
  const std::string text = f.format == "csv" ? to_csv(reports, wo) : to_json(reports, wo);
  if (f.output.empty() || f.output == "-") {
    out << text;
    return out ? kOk : kScenarioError;
  }
  std::ofstream file(f.output, std::ios::binary);
  file << text;
  if (!file) {
    err << "error: cannot write '" << f.output << "'\n";
    return kScenarioError;
  }
  return kOk;
}

int do_check(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot read script '" << path << "'\n";
    return kScenarioError;
  }
  const auto parsed = protocol::parse(*text);
  if (!parsed.ok()) {
    err << diagnostics_text(path, parsed.diagnostics);
    return kScenarioError;
  }
  out << path << ": ok, " << parsed.protocol->instructions.size() << " instructions\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduced-state simulations of entangled quantum systems", "catbox"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kGenerator));

  RunFlags f;
  auto* run_cmd = app.add_subcommand("run", "Run built-in scenarios or .qproto scripts");
  run_cmd->add_option("targets", f.targets, "Scenario names or script paths")->required();
  run_cmd->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  run_cmd->add_option("-o,--output", f.output, "Output file (default stdout)");
  run_cmd->add_option("--alpha", f.alpha, "Coherent amplitude, 're,im' or a literal");
  run_cmd->add_option("--g", f.g, "Vacuum Rabi frequency");
  run_cmd->add_option("--t", f.t, "Decay time in seconds");
  run_cmd->add_option("--t-prime", f.t_prime, "Jaynes-Cummings interaction time");
  run_cmd->add_option("--lambda", f.lambda, "Decay rate in 1/s");
  run_cmd->add_option("--fock-dim", f.fock_dim, "Fock space dimension (cutoff + 1)");
  run_cmd->add_option("--coeffs", f.coeffs, "System coefficients c1,c2,... (vonneumann)");
  run_cmd->add_option("--dim", f.dim, "System dimension with uniform coefficients");
  run_cmd->add_option("--with-r2", f.with_r2, "paris: second Ramsey zone (true/false)");
  run_cmd->add_option("--with-detection", f.with_detection,
                      "paris: detect the first atom before the probe (true/false)");
  run_cmd->add_option("--with-erasure", f.with_erasure, "garching: erase (true/false)");
  run_cmd->add_option("--sample", f.sample,
                      "Seed; keep one sampled outcome per detection");
  run_cmd->add_flag("--dump-matrices", f.dump_matrices, "Include density matrices");
  run_cmd->add_option("--jobs", f.jobs, "Run targets in parallel")
      ->check(CLI::PositiveNumber);

  auto* list_cmd = app.add_subcommand("list", "List built-in scenarios");
  std::string script;
  auto* check_cmd = app.add_subcommand("check", "Parse a script and report diagnostics");
  check_cmd->add_option("script", script, "Path to a .qproto file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help / --version
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kUsageError;
    }
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  if (list_cmd->parsed()) {
    for (const auto& s : scenarios::catalog()) out << s.name << "\t" << s.summary << "\n";
    return kOk;
  }
  if (check_cmd->parsed()) return do_check(script, out, err);
  return do_run(f, out, err);
}

}  // namespace catbox::cli
