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

#pragma once

// Line-oriented scenario language (.qproto).
//
//   # name: garching
//   VERSION 1
//   SPACE atom levels=e,g,a
//   SPACE field fock=12
//   INIT atom=e field=vac
//   JC g=1 t=0.7853981633974483
//   ERASE atom
//   DETECT atom
//   TRACE keep=field
//   REPORT coherence=0,1
//
// One instruction per line, `OPCODE [label] key=value ...`, `#` starts a
// comment. Numbers are plain floating literals; complex values are written
// `re+imi` (`2`, `0.5-1i`, `3i`). There are no expressions.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "catbox/errors.hpp"
#include "catbox/report.hpp"
#include "catbox/state.hpp"

namespace catbox::protocol {

inline constexpr int kVersion = 1;
inline constexpr std::string_view kExtension = ".qproto";

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

std::string to_string(const Diagnostic& d);

// --- kets accepted by INIT --------------------------------------------------

struct LevelKet {
  std::string level;  // `e`, `|e>`, `|e⟩`
  bool operator==(const LevelKet&) const = default;
};
struct FockKet {
  std::size_t n = 0;  // `vac`, `fock:3`
  bool operator==(const FockKet&) const = default;
};
struct CoherentKet {
  cplx alpha;  // `coherent:2+0i`
  bool operator==(const CoherentKet&) const = default;
};
struct AmplitudeKet {
  std::vector<cplx> amplitudes;  // `amps:0.6;0.8i`, must be normalized
  bool operator==(const AmplitudeKet&) const = default;
};
using Ket = std::variant<LevelKet, FockKet, CoherentKet, AmplitudeKet>;

// --- operations -------------------------------------------------------------

// `SPACE label levels=a,b,c` | `SPACE label fock=N` | `SPACE label dim=n`
struct SpaceOp {
  std::string label;
  std::vector<std::string> levels;  // Fock spaces get "0".."N"
  bool fock = false;
  bool operator==(const SpaceOp&) const = default;
};

// `INIT label=ket ...`, one ket for every declared space.
struct InitOp {
  std::vector<std::pair<std::string, Ket>> kets;
  bool operator==(const InitOp&) const = default;
};

enum class Gate { kRamsey, kPremeasure };

// `PULSE atom` (Ramsey pi/2) or `PULSE system gate=premeasure pointer=dev`.
struct PulseOp {
  std::string target;
  Gate gate = Gate::kRamsey;
  std::string pointer;
  bool operator==(const PulseOp&) const = default;
};

// `DISPERSE atom field=f phi_e=0 phi_g=3.141592653589793`
struct DisperseOp {
  std::string atom;
  std::string field;
  double phi_e = 0.0;
  double phi_g = 0.0;
  bool operator==(const DisperseOp&) const = default;
};

// `JC [atom] [field=f] g=1 t=0.5`; atom/field default to the unique
// atom-like and Fock spaces.
struct JcOp {
  std::string atom;
  std::string field;
  double g = 0.0;
  double t = 0.0;
  bool operator==(const JcOp&) const = default;
};

struct EraseOp {
  std::string atom;
  bool operator==(const EraseOp&) const = default;
};

struct DetectOp {
  std::string atom;
  bool operator==(const DetectOp&) const = default;
};

// `DECAY nucleus cat t=3600 [lambda=...]`, two 2-level spaces.
struct DecayOp {
  std::string nucleus;
  std::string cat;
  double lambda = 0.0;
  double t = 0.0;
  bool operator==(const DecayOp&) const = default;
};

// `TRACE keep=a,b`: the factors later REPORT items look at, taken in
// declaration order.
struct TraceOp {
  std::vector<std::string> keep;
  bool operator==(const TraceOp&) const = default;
};

namespace item {
struct Populations { bool operator==(const Populations&) const = default; };
struct Coherence {
  std::size_t row = 0, col = 0;
  bool operator==(const Coherence&) const = default;
};
struct Purity { bool operator==(const Purity&) const = default; };
struct Fringe {
  cplx alpha;
  bool operator==(const Fringe&) const = default;
};
struct CatFidelity {
  cplx alpha;
  bool operator==(const CatFidelity&) const = default;
};
struct MaxOffDiagonal { bool operator==(const MaxOffDiagonal&) const = default; };
struct ErasureNorm { bool operator==(const ErasureNorm&) const = default; };
struct Dump { bool operator==(const Dump&) const = default; };
// Summary items, computed over all branches.
struct Correlation {
  std::string first, second;
  bool operator==(const Correlation&) const = default;
};
struct Marginal {
  std::string label;
  bool operator==(const Marginal&) const = default;
};
}  // namespace item

using ReportItem =
    std::variant<item::Populations, item::Coherence, item::Purity, item::Fringe,
                 item::CatFidelity, item::MaxOffDiagonal, item::ErasureNorm,
                 item::Dump, item::Correlation, item::Marginal>;

bool is_summary_item(const ReportItem& item);

// `REPORT [stage=name] populations coherence=0,1 purity fringe=2 catfid=2
//         offdiag erasure dump correlation=a,b marginal=a`
struct ReportOp {
  std::string stage = "final";
  std::vector<ReportItem> items;
  bool operator==(const ReportOp&) const = default;
};

using Operation = std::variant<SpaceOp, InitOp, PulseOp, DisperseOp, JcOp,
                               EraseOp, DetectOp, DecayOp, TraceOp, ReportOp>;

std::string_view opcode_name(const Operation& op);

struct Instruction {
  int line = 0;
  Operation op;

  // Source position is not part of an instruction's meaning.
  friend bool operator==(const Instruction& a, const Instruction& b) {
    return a.op == b.op;
  }
};

struct Protocol {
  int version = kVersion;
  std::string name;
  std::string description;
  std::vector<Instruction> instructions;

  bool operator==(const Protocol&) const = default;
};

struct ParseResult {
  std::optional<Protocol> protocol;  // set only when diagnostics is empty
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return protocol.has_value(); }
};

// Total: never throws, every problem becomes a diagnostic with a line.
ParseResult parse(std::string_view source);

// Canonical text; parse(unparse(p)) == p.
std::string unparse(const Protocol& protocol);

// `re+imi` literals; nullopt on anything malformed.
std::optional<cplx> parse_complex(std::string_view text);
std::optional<double> parse_real(std::string_view text);
std::string format_complex(cplx value);
std::string format_real(double value);

struct InterpretOptions {
  // When set, DETECT keeps one sampled outcome per branch instead of
  // enumerating all of them.
  std::optional<std::uint64_t> sample_seed;
};

// Failure while executing an instruction.
class RuntimeError : public Error {
 public:
  RuntimeError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

ReportRows interpret(const Protocol& protocol, const InterpretOptions& options = {});

}  // namespace catbox::protocol
