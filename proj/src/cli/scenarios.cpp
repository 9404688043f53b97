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

#include "catbox/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "catbox/cavity.hpp"
#include "catbox/measurement.hpp"
#include "catbox/protocol.hpp"

namespace catbox::scenarios {

namespace {

using protocol::format_complex;
using protocol::format_real;

struct Resolved {
  cavity::ParisOptions paris;
  cavity::GarchingOptions garching;
  std::vector<cplx> coeffs;
};

std::vector<cplx> coefficients(const Parameters& p) {
  if (!p.coeffs.empty()) return p.coeffs;
  if (p.dim < 1) throw DimensionError("system dimension must be >= 1");
  return std::vector<cplx>(p.dim, 1.0 / std::sqrt(static_cast<double>(p.dim)));
}

Resolved resolve(std::string_view name, const Parameters& p) {
  if (!is_scenario(name)) {
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
  }
  Resolved r;
  const bool modified = name == "paris-modified";
  r.paris.alpha = p.alpha;
  r.paris.with_r2 = p.with_r2.value_or(!modified);
  r.paris.with_detection = p.with_detection.value_or(!modified);
  r.paris.fock_dim = cavity::resolve_fock_dim(p.alpha, p.fock_dim);
  r.garching.g = p.g;
  r.garching.t_prime = p.t_prime;
  r.garching.with_erasure = p.with_erasure.value_or(name != "garching-noerase");
  r.garching.fock_dim = cavity::resolve_fock_dim(0.0, p.fock_dim);
  if (name == "vonneumann") r.coeffs = coefficients(p);
  return r;
}

std::string join_complex(const std::vector<cplx>& xs, char sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += format_complex(xs[i]);
  }
  return s;
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) {
    if (!s.empty()) s += ',';
    s += x;
  }
  return s;
}

}  // namespace

const std::vector<Scenario>& catalog() {
  static const std::vector<Scenario> kCatalog = {
      {"cat", "nucleus decay entangled with a cat; reduced cat state at time t"},
      {"paris", "cat preparation in a cavity probed by a second atom"},
      {"paris-modified", "paris without the second Ramsey zone or first-atom detection"},
      {"garching", "Jaynes-Cummings emission followed by which-path erasure"},
      {"garching-noerase", "Jaynes-Cummings emission without erasure"},
      {"vonneumann", "system premeasured by a pointer apparatus"},
  };
  return kCatalog;
}

bool is_scenario(std::string_view name) {
  const auto& c = catalog();
  return std::any_of(c.begin(), c.end(), [&](const Scenario& s) { return s.name == name; });
}

ParamList resolved_parameters(std::string_view name, const Parameters& p) {
  const auto r = resolve(name, p);
  if (name == "cat") return {{"t", p.t}, {"lambda", p.lambda}};
  if (name == "paris" || name == "paris-modified") {
    return {{"alpha", format_complex(p.alpha)},
            {"fock_dim", static_cast<double>(*r.paris.fock_dim)},
            {"with_r2", r.paris.with_r2},
            {"with_detection", r.paris.with_detection}};
  }
  if (name == "vonneumann") {
    return {{"coeffs", join_complex(r.coeffs, ',')},
            {"dim", static_cast<double>(r.coeffs.size())}};
  }
  return {{"g", p.g},
          {"t_prime", p.t_prime},
          {"fock_dim", static_cast<double>(*r.garching.fock_dim)},
          {"with_erasure", r.garching.with_erasure}};
}

ReportRows run_native(std::string_view name, const Parameters& p) {
  const auto r = resolve(name, p);
  if (name == "cat") return cat::cat_protocol({p.lambda, p.t});
  if (name == "paris" || name == "paris-modified") return cavity::paris_protocol(r.paris);
  if (name == "vonneumann") {
    return measurement::vonneumann_protocol(measurement::PointerChain(r.coeffs));
  }
  return cavity::garching_protocol(r.garching);
}

std::string script_twin(std::string_view name, const Parameters& p) {
  const auto r = resolve(name, p);
  std::string s = "# name: " + std::string(name) + "\nVERSION 1\n";
  if (name == "cat") {
    s += "SPACE nucleus levels=" + join(cat::CatBasis::nucleus_levels()) + "\n";
    s += "SPACE cat levels=" + join(cat::CatBasis::cat_levels()) + "\n";
    s += "INIT nucleus=up cat=alive\n";
    s += "DECAY nucleus cat lambda=" + format_real(p.lambda) + " t=" + format_real(p.t) + "\n";
    s += "TRACE keep=cat\n";
    s += "REPORT stage=final populations coherence=0,1 purity dump\n";
    return s;
  }
  if (name == "paris" || name == "paris-modified") {
    const auto& o = r.paris;
    const std::string a = format_complex(o.alpha);
    const std::string shift = " field=field phi_e=0 phi_g=" + format_real(cavity::kCatPhase) + "\n";
    s += "SPACE atom1 levels=e,g\n";
    s += "SPACE field fock=" + std::to_string(*o.fock_dim - 1) + "\n";
    s += "SPACE atom2 levels=e,g\n";
    s += "INIT atom1=e field=coherent:" + a + " atom2=e\n";
    s += "PULSE atom1\nTRACE keep=field\n";
    s += "REPORT stage=prep_r1 fringe=" + a + "\n";
    s += "DISPERSE atom1" + shift;
    s += "REPORT stage=prep_dispersive fringe=" + a + "\n";
    if (o.with_r2) s += "PULSE atom1\nREPORT stage=prep_r2 fringe=" + a + "\n";
    if (o.with_detection) {
      s += "DETECT atom1\nREPORT stage=prep_detect fringe=" + a + " catfid=" + a + "\n";
    }
    s += "PULSE atom2\nDISPERSE atom2" + shift + "PULSE atom2\nDETECT atom2\n";
    if (!o.with_detection) s += "DETECT atom1\n";
    s += "REPORT stage=probe fringe=" + a + "\n";
    s += "REPORT stage=summary correlation=atom1,atom2 marginal=atom2\n";
    return s;
  }
  if (name == "vonneumann") {
    const auto n = r.coeffs.size();
    s += "SPACE system levels=" + join(measurement::system_levels(n)) + "\n";
    s += "SPACE apparatus levels=" + join(measurement::apparatus_levels(n)) + "\n";
    s += "INIT system=amps:" + join_complex(r.coeffs, ';') + " apparatus=a0\n";
    s += "PULSE system gate=premeasure pointer=apparatus\n";
    s += "TRACE keep=apparatus\n";
    s += "REPORT stage=final populations offdiag purity dump\n";
    return s;
  }
  const auto& o = r.garching;
  s += "SPACE atom levels=e,g,a\n";
  s += "SPACE field fock=" + std::to_string(*o.fock_dim - 1) + "\n";
  s += "INIT atom=e field=vac\n";
  s += "JC atom field=field g=" + format_real(o.g) + " t=" + format_real(o.t_prime) + "\n";
  if (o.with_erasure) s += "ERASE atom\nDETECT atom\n";
  s += "TRACE keep=field\n";
  s += "REPORT stage=final populations coherence=0,1 purity";
  s += o.with_erasure ? " erasure dump\n" : " dump\n";
  return s;
}

}  // namespace catbox::scenarios
