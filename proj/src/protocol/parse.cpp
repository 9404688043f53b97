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
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>

#include "catbox/catmodel.hpp"
#include "catbox/protocol.hpp"

namespace catbox::protocol {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_level_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::optional<std::size_t> parse_count(std::string_view s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    return std::nullopt;
  }
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto k = s.find(sep, start);
    out.push_back(s.substr(start, k == std::string_view::npos ? k : k - start));
    if (k == std::string_view::npos) break;
    start = k + 1;
  }
  return out;
}

// `|e>`, `|e⟩` and `e` all name level e.
std::string_view strip_ket(std::string_view s) {
  if (!s.empty() && s.front() == '|') s.remove_prefix(1);
  constexpr std::string_view kAngle = "\xE2\x9F\xA9";  // U+27E9
  if (s.size() >= kAngle.size() && s.substr(s.size() - kAngle.size()) == kAngle) {
    s.remove_suffix(kAngle.size());
  } else if (!s.empty() && s.back() == '>') {
    s.remove_suffix(1);
  }
  return s;
}

struct Token {
  std::string_view text;
  int column = 0;
};

struct Arg {
  std::string_view key;    // empty for bare words
  std::string_view value;  // the bare word itself when key is empty
  int column = 0;
  bool used = false;
};

struct Space {
  std::string label;
  std::vector<std::string> levels;
  bool fock = false;

  bool atom_like() const {
    return !fock && std::find(levels.begin(), levels.end(), "e") != levels.end() &&
           std::find(levels.begin(), levels.end(), "g") != levels.end();
  }
  bool has_level(std::string_view l) const {
    return std::find(levels.begin(), levels.end(), l) != levels.end();
  }
};

class Parser {
 public:
  ParseResult run(std::string_view source);

 private:
  void parse_line(int line, std::string_view text);
  void diag(int column, std::string message) {
    diagnostics_.push_back({line_, column, std::move(message)});
  }

  // Argument bookkeeping for the current instruction.
  void load_args(const std::vector<Token>& tokens);
  Arg* keyed(std::string_view key);
  Arg* bare(std::size_t index);
  Arg* require(std::string_view key);
  Arg* label_arg(std::string_view key, std::size_t bare_index);
  void reject_unused();

  const Space* space(const Arg& arg);
  std::optional<double> real(const Arg& arg);
  std::optional<cplx> complex(const Arg& arg);
  std::optional<std::string> atom_arg(std::string_view key, std::size_t bare_index,
                                      bool required);
  std::optional<std::string> field_arg(std::string_view key);
  bool require_init();

  std::optional<Operation> parse_space();
  std::optional<Operation> parse_init();
  std::optional<Operation> parse_pulse();
  std::optional<Operation> parse_disperse();
  std::optional<Operation> parse_jc();
  std::optional<Operation> parse_erase();
  std::optional<Operation> parse_detect();
  std::optional<Operation> parse_decay();
  std::optional<Operation> parse_trace();
  std::optional<Operation> parse_report();
  std::optional<Ket> parse_ket(const Space& s, const Arg& arg);

  Protocol protocol_;
  std::vector<Diagnostic> diagnostics_;
  std::vector<Space> spaces_;
  std::vector<std::string> view_;
  bool seen_instruction_ = false;
  bool initialized_ = false;

  int line_ = 0;
  std::string_view opcode_;
  int opcode_column_ = 0;
  std::vector<Arg> args_;
};

ParseResult Parser::run(std::string_view source) {
  int line = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    const auto end = source.find('\n', start);
    std::string_view text = source.substr(
        start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    ++line;
    try {
      parse_line(line, text);
    } catch (const std::exception& e) {
      diagnostics_.push_back({line, 1, std::string("internal error: ") + e.what()});
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  ParseResult result;
  result.diagnostics = std::move(diagnostics_);
  if (result.diagnostics.empty()) result.protocol = std::move(protocol_);
  return result;
}

void Parser::parse_line(int line, std::string_view text) {
  line_ = line;
  const auto hash = text.find('#');
  if (hash != std::string_view::npos) {
    if (!seen_instruction_) {
      const auto comment = trim(text.substr(hash + 1));
      const auto colon = comment.find(':');
      if (colon != std::string_view::npos) {
        const auto key = trim(comment.substr(0, colon));
        const auto value = trim(comment.substr(colon + 1));
        if (key == "name") protocol_.name = std::string(value);
        if (key == "description") protocol_.description = std::string(value);
      }
    }
    text = text.substr(0, hash);
  }

  std::vector<Token> tokens;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    tokens.push_back({text.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  if (tokens.empty()) return;

  opcode_ = tokens.front().text;
  opcode_column_ = tokens.front().column;
  load_args(tokens);

  if (opcode_ == "VERSION") {
    if (seen_instruction_) {
      diag(opcode_column_, "VERSION must come before any instruction");
      return;
    }
    seen_instruction_ = true;
    auto* v = bare(0);
    if (!v) {
      diag(opcode_column_, "missing argument version");
      return;
    }
    const auto n = parse_count(v->value);
    if (!n) {
      diag(v->column, "malformed number '" + std::string(v->value) + "' for version");
    } else if (*n != static_cast<std::size_t>(kVersion)) {
      diag(v->column, "unsupported version " + std::string(v->value));
    }
    reject_unused();
    return;
  }
  seen_instruction_ = true;

  std::optional<Operation> op;
  if (opcode_ == "SPACE") op = parse_space();
  else if (opcode_ == "INIT") op = parse_init();
  else if (opcode_ == "PULSE") op = parse_pulse();
  else if (opcode_ == "DISPERSE") op = parse_disperse();
  else if (opcode_ == "JC") op = parse_jc();
  else if (opcode_ == "ERASE") op = parse_erase();
  else if (opcode_ == "DETECT") op = parse_detect();
  else if (opcode_ == "DECAY") op = parse_decay();
  else if (opcode_ == "TRACE") op = parse_trace();
  else if (opcode_ == "REPORT") op = parse_report();
  else {
    diag(opcode_column_, "unknown opcode '" + std::string(opcode_) + "'");
    return;
  }
  reject_unused();
  if (op) protocol_.instructions.push_back({line, std::move(*op)});
}

void Parser::load_args(const std::vector<Token>& tokens) {
  args_.clear();
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto t = tokens[i];
    const auto eq = t.text.find('=');
    Arg a;
    a.column = t.column;
    if (eq == std::string_view::npos) {
      a.value = t.text;
    } else {
      a.key = t.text.substr(0, eq);
      a.value = t.text.substr(eq + 1);
      if (a.key.empty()) {
        diag(t.column, "argument '" + std::string(t.text) + "' has no name");
        continue;
      }
      const bool dup = std::any_of(args_.begin(), args_.end(),
                                   [&](const Arg& b) { return b.key == a.key; });
      if (dup) {
        diag(t.column, "duplicate argument " + std::string(a.key));
        continue;
      }
    }
    args_.push_back(a);
  }
}

Arg* Parser::keyed(std::string_view key) {
  for (auto& a : args_) {
    if (a.key == key) {
      a.used = true;
      return &a;
    }
  }
  return nullptr;
}

Arg* Parser::bare(std::size_t index) {
  std::size_t k = 0;
  for (auto& a : args_) {
    if (!a.key.empty()) continue;
    if (k++ == index) {
      a.used = true;
      return &a;
    }
  }
  return nullptr;
}

Arg* Parser::require(std::string_view key) {
  auto* a = keyed(key);
  if (!a) diag(opcode_column_, "missing argument " + std::string(key));
  return a;
}

// A label given either as `key=label` or as the bare word at `bare_index`.
Arg* Parser::label_arg(std::string_view key, std::size_t bare_index) {
  auto* k = keyed(key);
  if (k) return k;
  return bare(bare_index);
}

void Parser::reject_unused() {
  for (const auto& a : args_) {
    if (a.used) continue;
    if (a.key.empty()) {
      diag(a.column, "unexpected argument '" + std::string(a.value) + "' for " +
                         std::string(opcode_));
    } else {
      diag(a.column, "unknown argument " + std::string(a.key) + " for " +
                         std::string(opcode_));
    }
  }
}

const Space* Parser::space(const Arg& arg) {
  for (const auto& s : spaces_) {
    if (s.label == arg.value) return &s;
  }
  diag(arg.column, "undeclared label '" + std::string(arg.value) + "'");
  return nullptr;
}

std::optional<double> Parser::real(const Arg& arg) {
  auto v = parse_real(arg.value);
  if (!v) {
    diag(arg.column, "malformed number '" + std::string(arg.value) + "' for " +
                         std::string(arg.key));
  }
  return v;
}

std::optional<cplx> Parser::complex(const Arg& arg) {
  auto v = parse_complex(arg.value);
  if (!v) {
    diag(arg.column, "malformed number '" + std::string(arg.value) + "' for " +
                         std::string(arg.key));
  }
  return v;
}

bool Parser::require_init() {
  if (initialized_) return true;
  diag(opcode_column_, std::string(opcode_) + " before INIT");
  return false;
}

std::optional<std::string> Parser::atom_arg(std::string_view key,
                                            std::size_t bare_index, bool required) {
  auto* a = label_arg(key, bare_index);
  if (!a) {
    if (!required) {
      std::vector<const Space*> atoms;
      for (const auto& s : spaces_) {
        if (s.atom_like()) atoms.push_back(&s);
      }
      if (atoms.size() == 1) return atoms.front()->label;
      diag(opcode_column_, "missing argument " + std::string(key) + " (" +
                               std::to_string(atoms.size()) +
                               " atom spaces declared)");
      return std::nullopt;
    }
    diag(opcode_column_, "missing argument " + std::string(key));
    return std::nullopt;
  }
  const auto* s = space(*a);
  if (!s) return std::nullopt;
  if (!s->atom_like()) {
    diag(a->column, "'" + s->label + "' is not an atom with levels e and g");
    return std::nullopt;
  }
  return s->label;
}

std::optional<std::string> Parser::field_arg(std::string_view key) {
  auto* a = keyed(key);
  if (!a) {
    std::vector<const Space*> fields;
    for (const auto& s : spaces_) {
      if (s.fock) fields.push_back(&s);
    }
    if (fields.size() == 1) return fields.front()->label;
    diag(opcode_column_, "missing argument " + std::string(key) + " (" +
                             std::to_string(fields.size()) +
                             " Fock spaces declared)");
    return std::nullopt;
  }
  const auto* s = space(*a);
  if (!s) return std::nullopt;
  if (!s->fock) {
    diag(a->column, "'" + s->label + "' is not a Fock space");
    return std::nullopt;
  }
  return s->label;
}

std::optional<Operation> Parser::parse_space() {
  auto* name = bare(0);
  if (!name) {
    diag(opcode_column_, "missing argument label");
    return std::nullopt;
  }
  if (initialized_) {
    diag(opcode_column_, "SPACE after INIT");
    return std::nullopt;
  }
  if (!is_identifier(name->value)) {
    diag(name->column, "space label '" + std::string(name->value) +
                           "' is not an identifier");
    return std::nullopt;
  }
  for (const auto& s : spaces_) {
    if (s.label == name->value) {
      diag(name->column, "space '" + s.label + "' already declared");
      return std::nullopt;
    }
  }
  auto* levels = keyed("levels");
  auto* fock = keyed("fock");
  auto* dim = keyed("dim");
  const int given = (levels != nullptr) + (fock != nullptr) + (dim != nullptr);
  if (given != 1) {
    diag(opcode_column_, given == 0 ? "missing argument levels, fock or dim"
                                    : "SPACE takes exactly one of levels, fock, dim");
    return std::nullopt;
  }
  SpaceOp op;
  op.label = std::string(name->value);
  if (levels) {
    for (auto l : split(levels->value, ',')) {
      if (!is_level_name(l)) {
        diag(levels->column, "malformed level name '" + std::string(l) + "'");
        return std::nullopt;
      }
      if (std::find(op.levels.begin(), op.levels.end(), l) != op.levels.end()) {
        diag(levels->column, "level '" + std::string(l) + "' listed twice");
        return std::nullopt;
      }
      op.levels.emplace_back(l);
    }
  } else {
    Arg* a = fock ? fock : dim;
    const auto n = parse_count(a->value);
    if (!n) {
      diag(a->column, "malformed number '" + std::string(a->value) + "' for " +
                          std::string(a->key));
      return std::nullopt;
    }
    const std::size_t count = fock ? *n + 1 : *n;
    if ((fock && *n < 1) || count < 1 || count > 100000) {
      diag(a->column, std::string(a->key) + " out of range: " + std::string(a->value));
      return std::nullopt;
    }
    for (std::size_t k = 0; k < count; ++k) op.levels.push_back(std::to_string(k));
    op.fock = fock != nullptr;
  }
  spaces_.push_back({op.label, op.levels, op.fock});
  return op;
}

std::optional<Ket> Parser::parse_ket(const Space& s, const Arg& arg) {
  const auto v = arg.value;
  const auto colon = v.find(':');
  const auto kind = colon == std::string_view::npos ? std::string_view{} : v.substr(0, colon);
  const auto body = colon == std::string_view::npos ? v : v.substr(colon + 1);
  if (kind == "amps") {
    AmplitudeKet k;
    for (auto part : split(body, ';')) {
      auto c = parse_complex(part);
      if (!c) {
        diag(arg.column, "malformed number '" + std::string(part) + "' in amps");
        return std::nullopt;
      }
      k.amplitudes.push_back(*c);
    }
    if (k.amplitudes.size() != s.levels.size()) {
      diag(arg.column, "amps for '" + s.label + "' needs " +
                           std::to_string(s.levels.size()) + " values, got " +
                           std::to_string(k.amplitudes.size()));
      return std::nullopt;
    }
    double total = 0.0;
    for (auto c : k.amplitudes) total += std::norm(c);
    if (!(std::abs(total - 1.0) <= tol::kNorm)) {
      diag(arg.column, "amps for '" + s.label + "' are not normalized (sum |c|^2 = " +
                           format_real(total) + ")");
      return std::nullopt;
    }
    return k;
  }
  if (kind == "coherent") {
    if (!s.fock) {
      diag(arg.column, "coherent ket needs a Fock space, '" + s.label + "' is not one");
      return std::nullopt;
    }
    auto c = parse_complex(body);
    if (!c) {
      diag(arg.column, "malformed number '" + std::string(body) + "' for coherent");
      return std::nullopt;
    }
    return CoherentKet{*c};
  }
  if (kind == "fock") {
    const auto n = parse_count(body);
    if (!n) {
      diag(arg.column, "malformed number '" + std::string(body) + "' for fock");
      return std::nullopt;
    }
    if (!s.fock || *n >= s.levels.size()) {
      diag(arg.column, "no number state " + std::string(body) + " in '" + s.label + "'");
      return std::nullopt;
    }
    return FockKet{*n};
  }
  if (!kind.empty()) {
    diag(arg.column, "unknown ket kind '" + std::string(kind) + "'");
    return std::nullopt;
  }
  const auto level = strip_ket(v);
  if (s.fock) {
    if (level == "vac") return FockKet{0};
    const auto n = parse_count(level);
    if (n && *n < s.levels.size()) return FockKet{*n};
  } else if (s.has_level(level)) {
    return LevelKet{std::string(level)};
  }
  diag(arg.column, "'" + s.label + "' has no level '" + std::string(level) + "'");
  return std::nullopt;
}

std::optional<Operation> Parser::parse_init() {
  if (spaces_.empty()) {
    diag(opcode_column_, "INIT before any SPACE");
    return std::nullopt;
  }
  InitOp op;
  bool ok = true;
  for (auto& a : args_) {
    a.used = true;
    if (a.key.empty()) {
      diag(a.column, "INIT expects label=ket, got '" + std::string(a.value) + "'");
      ok = false;
      continue;
    }
    Arg label{{}, a.key, a.column, true};
    const auto* s = space(label);
    if (!s) {
      ok = false;
      continue;
    }
    auto ket = parse_ket(*s, a);
    if (!ket) {
      ok = false;
      continue;
    }
    op.kets.emplace_back(s->label, std::move(*ket));
  }
  if (!ok) return std::nullopt;
  // Kets are stored in declaration order so the product state is canonical.
  std::vector<std::pair<std::string, Ket>> ordered;
  for (const auto& s : spaces_) {
    const auto it = std::find_if(op.kets.begin(), op.kets.end(),
                                 [&](const auto& k) { return k.first == s.label; });
    if (it == op.kets.end()) {
      diag(opcode_column_, "INIT does not set '" + s.label + "'");
      ok = false;
    } else {
      ordered.push_back(*it);
    }
  }
  if (!ok) return std::nullopt;
  op.kets = std::move(ordered);
  initialized_ = true;
  return op;
}

std::optional<Operation> Parser::parse_pulse() {
  const bool init = require_init();
  auto* target = label_arg("target", 0);
  auto* gate = keyed("gate");
  auto* pointer = keyed("pointer");
  if (!target) {
    diag(opcode_column_, "missing argument target");
    return std::nullopt;
  }
  const auto* s = space(*target);
  if (!s || !init) return std::nullopt;
  PulseOp op;
  op.target = s->label;
  const std::string_view g = gate ? gate->value : "ramsey";
  if (g == "ramsey") {
    if (!s->atom_like()) {
      diag(target->column, "'" + s->label + "' is not an atom with levels e and g");
      return std::nullopt;
    }
    if (pointer) {
      diag(pointer->column, "pointer only applies to gate=premeasure");
      return std::nullopt;
    }
    return op;
  }
  if (g != "premeasure") {
    diag(gate->column, "unknown gate '" + std::string(g) + "'");
    return std::nullopt;
  }
  op.gate = Gate::kPremeasure;
  if (!pointer) {
    diag(opcode_column_, "missing argument pointer");
    return std::nullopt;
  }
  const auto* p = space(*pointer);
  if (!p) return std::nullopt;
  if (p->label == s->label || p->levels.size() != s->levels.size() + 1) {
    diag(pointer->column, "pointer '" + p->label + "' needs " +
                              std::to_string(s->levels.size() + 1) +
                              " levels (ready + one per system level)");
    return std::nullopt;
  }
  op.pointer = p->label;
  return op;
}

std::optional<Operation> Parser::parse_disperse() {
  const bool init = require_init();
  auto atom = atom_arg("atom", 0, true);
  auto field = field_arg("field");
  auto* pe = require("phi_e");
  auto* pg = require("phi_g");
  std::optional<double> phi_e = pe ? real(*pe) : std::nullopt;
  std::optional<double> phi_g = pg ? real(*pg) : std::nullopt;
  if (!init || !atom || !field || !phi_e || !phi_g) return std::nullopt;
  return DisperseOp{*atom, *field, *phi_e, *phi_g};
}

std::optional<Operation> Parser::parse_jc() {
  const bool init = require_init();
  auto atom = atom_arg("atom", 0, false);
  auto field = field_arg("field");
  auto* ga = require("g");
  auto* ta = require("t");
  std::optional<double> g = ga ? real(*ga) : std::nullopt;
  std::optional<double> t = ta ? real(*ta) : std::nullopt;
  if (!init || !atom || !field || !g || !t) return std::nullopt;
  return JcOp{*atom, *field, *g, *t};
}

std::optional<Operation> Parser::parse_erase() {
  const bool init = require_init();
  auto atom = atom_arg("atom", 0, true);
  if (!init || !atom) return std::nullopt;
  const auto& s = *std::find_if(spaces_.begin(), spaces_.end(),
                                [&](const Space& x) { return x.label == *atom; });
  if (!s.has_level("a")) {
    diag(opcode_column_, "ERASE needs atom '" + *atom + "' to have level a");
    return std::nullopt;
  }
  return EraseOp{*atom};
}

std::optional<Operation> Parser::parse_detect() {
  const bool init = require_init();
  auto atom = atom_arg("atom", 0, true);
  if (!init || !atom) return std::nullopt;
  return DetectOp{*atom};
}

std::optional<Operation> Parser::parse_decay() {
  const bool init = require_init();
  auto* n = label_arg("nucleus", 0);
  auto* c = label_arg("cat", n && n->key.empty() ? 1 : 0);
  auto* ta = require("t");
  auto* la = keyed("lambda");
  if (!n) diag(opcode_column_, "missing argument nucleus");
  if (!c) diag(opcode_column_, "missing argument cat");
  const Space* ns = n ? space(*n) : nullptr;
  const Space* cs = c ? space(*c) : nullptr;
  std::optional<double> t;
  if (ta) t = real(*ta);
  std::optional<double> lambda = cat::kDefaultLambda;
  if (la) lambda = real(*la);
  if (!init || !ns || !cs || !t || !lambda) return std::nullopt;
  bool ok = true;
  for (const auto* s : {ns, cs}) {
    if (s->fock || s->levels.size() != 2) {
      diag(opcode_column_, "DECAY needs two-level spaces, '" + s->label + "' has " +
                               std::to_string(s->levels.size()) + " levels");
      ok = false;
    }
  }
  if (ns == cs) {
    diag(opcode_column_, "DECAY needs two different spaces");
    ok = false;
  }
  if (!(*t >= 0.0)) {
    diag(ta->column, "t must be >= 0");
    ok = false;
  }
  if (!(*lambda > 0.0)) {
    diag(la->column, "lambda must be > 0");
    ok = false;
  }
  if (!ok) return std::nullopt;
  return DecayOp{ns->label, cs->label, *lambda, *t};
}

std::optional<Operation> Parser::parse_trace() {
  const bool init = require_init();
  auto* keep = require("keep");
  if (!keep) return std::nullopt;
  TraceOp op;
  bool ok = true;
  for (auto l : split(keep->value, ',')) {
    Arg a{{}, l, keep->column, true};
    const auto* s = space(a);
    if (!s) {
      ok = false;
      continue;
    }
    if (std::find(op.keep.begin(), op.keep.end(), s->label) != op.keep.end()) {
      diag(keep->column, "'" + s->label + "' listed twice");
      ok = false;
      continue;
    }
    op.keep.push_back(s->label);
  }
  if (!ok || !init) return std::nullopt;
  view_ = op.keep;
  return op;
}

std::optional<Operation> Parser::parse_report() {
  const bool init = require_init();
  ReportOp op;
  bool ok = true;
  const auto need_view = [&](const Arg& a) {
    if (view_.empty()) {
      diag(a.column, "REPORT " + std::string(a.key.empty() ? a.value : a.key) +
                         " needs a TRACE first");
      ok = false;
      return false;
    }
    return true;
  };
  const auto need_field_view = [&](const Arg& a) {
    if (!need_view(a)) return false;
    const auto* s = &*std::find_if(spaces_.begin(), spaces_.end(),
                                   [&](const Space& x) { return x.label == view_.front(); });
    if (view_.size() != 1 || !s->fock) {
      diag(a.column, std::string(a.key) + " needs TRACE keep= a single Fock space");
      ok = false;
      return false;
    }
    return true;
  };
  const auto atom_label = [&](std::string_view name, int column) -> std::optional<std::string> {
    Arg a{{}, name, column, true};
    const auto* s = space(a);
    if (!s) {
      ok = false;
      return std::nullopt;
    }
    if (!s->atom_like()) {
      diag(column, "'" + s->label + "' is not an atom with levels e and g");
      ok = false;
      return std::nullopt;
    }
    return s->label;
  };

  for (auto& a : args_) {
    a.used = true;
    if (a.key.empty()) {
      if (a.value == "populations") {
        if (need_view(a)) op.items.emplace_back(item::Populations{});
      } else if (a.value == "purity") {
        if (need_view(a)) op.items.emplace_back(item::Purity{});
      } else if (a.value == "offdiag") {
        if (need_view(a)) op.items.emplace_back(item::MaxOffDiagonal{});
      } else if (a.value == "dump") {
        if (need_view(a)) op.items.emplace_back(item::Dump{});
      } else if (a.value == "erasure") {
        op.items.emplace_back(item::ErasureNorm{});
      } else {
        diag(a.column, "unknown report item '" + std::string(a.value) + "'");
        ok = false;
      }
      continue;
    }
    if (a.key == "stage") {
      if (!is_level_name(a.value)) {
        diag(a.column, "malformed stage name '" + std::string(a.value) + "'");
        ok = false;
      } else {
        op.stage = std::string(a.value);
      }
    } else if (a.key == "coherence") {
      const auto parts = split(a.value, ',');
      std::optional<std::size_t> i, j;
      if (parts.size() == 2) {
        i = parse_count(parts[0]);
        j = parse_count(parts[1]);
      }
      if (!i || !j) {
        diag(a.column, "coherence expects two indices i,j, got '" + std::string(a.value) + "'");
        ok = false;
      } else if (need_view(a)) {
        op.items.emplace_back(item::Coherence{*i, *j});
      }
    } else if (a.key == "fringe" || a.key == "catfid") {
      auto c = complex(a);
      if (!c) {
        ok = false;
      } else if (need_field_view(a)) {
        if (a.key == "fringe") {
          op.items.emplace_back(item::Fringe{*c});
        } else {
          op.items.emplace_back(item::CatFidelity{*c});
        }
      }
    } else if (a.key == "correlation") {
      const auto parts = split(a.value, ',');
      if (parts.size() != 2) {
        diag(a.column, "correlation expects two atoms a,b");
        ok = false;
        continue;
      }
      auto x = atom_label(parts[0], a.column);
      auto y = atom_label(parts[1], a.column);
      if (x && y && *x == *y) {
        diag(a.column, "correlation needs two different atoms");
        ok = false;
      } else if (x && y) {
        op.items.emplace_back(item::Correlation{*x, *y});
      }
    } else if (a.key == "marginal") {
      if (auto x = atom_label(a.value, a.column)) op.items.emplace_back(item::Marginal{*x});
    } else {
      diag(a.column, "unknown argument " + std::string(a.key) + " for REPORT");
      ok = false;
    }
  }
  if (ok && op.items.empty()) {
    diag(opcode_column_, "REPORT lists no items");
    ok = false;
  }
  if (!ok || !init) return std::nullopt;
  return op;
}

std::string format_list(const std::vector<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) {
    if (!s.empty()) s += ',';
    s += x;
  }
  return s;
}

std::string format_ket(const Ket& ket) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LevelKet>) {
          return k.level;
        } else if constexpr (std::is_same_v<K, FockKet>) {
          return k.n == 0 ? std::string("vac") : "fock:" + std::to_string(k.n);
        } else if constexpr (std::is_same_v<K, CoherentKet>) {
          return "coherent:" + format_complex(k.alpha);
        } else {
          std::string s = "amps:";
          for (std::size_t i = 0; i < k.amplitudes.size(); ++i) {
            if (i) s += ';';
            s += format_complex(k.amplitudes[i]);
          }
          return s;
        }
      },
      ket);
}

std::string format_item(const ReportItem& item) {
  return std::visit(
      [](const auto& x) -> std::string {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, item::Populations>) return "populations";
        else if constexpr (std::is_same_v<X, item::Coherence>)
          return "coherence=" + std::to_string(x.row) + "," + std::to_string(x.col);
        else if constexpr (std::is_same_v<X, item::Purity>) return "purity";
        else if constexpr (std::is_same_v<X, item::Fringe>) return "fringe=" + format_complex(x.alpha);
        else if constexpr (std::is_same_v<X, item::CatFidelity>) return "catfid=" + format_complex(x.alpha);
        else if constexpr (std::is_same_v<X, item::MaxOffDiagonal>) return "offdiag";
        else if constexpr (std::is_same_v<X, item::ErasureNorm>) return "erasure";
        else if constexpr (std::is_same_v<X, item::Dump>) return "dump";
        else if constexpr (std::is_same_v<X, item::Correlation>) return "correlation=" + x.first + "," + x.second;
        else return "marginal=" + x.label;
      },
      item);
}

bool is_fock_levels(const std::vector<std::string>& levels) {
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] != std::to_string(k)) return false;
  }
  return levels.size() >= 2;
}

}  // namespace

std::string to_string(const Diagnostic& d) {
  return "line " + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
         d.message;
}

bool is_summary_item(const ReportItem& item) {
  return std::holds_alternative<item::Correlation>(item) ||
         std::holds_alternative<item::Marginal>(item);
}

std::string_view opcode_name(const Operation& op) {
  static constexpr std::string_view kNames[] = {"SPACE",  "INIT",   "PULSE", "DISPERSE",
                                                "JC",     "ERASE",  "DETECT", "DECAY",
                                                "TRACE",  "REPORT"};
  return kNames[op.index()];
}

std::optional<double> parse_real(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<cplx> parse_complex(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.back() != 'i') {
    auto r = parse_real(text);
    if (!r) return std::nullopt;
    return cplx(*r, 0.0);
  }
  const auto body = text.substr(0, text.size() - 1);
  std::size_t split_at = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  const auto imag_of = [](std::string_view s) -> std::optional<double> {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split_at == std::string_view::npos) {
    auto im = imag_of(body);
    if (!im) return std::nullopt;
    return cplx(0.0, *im);
  }
  auto re = parse_real(body.substr(0, split_at));
  auto im = imag_of(body.substr(split_at));
  if (!re || !im) return std::nullopt;
  return cplx(*re, *im);
}

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (parse_real(buf) == value) break;
  }
  return buf;
}

std::string format_complex(cplx value) {
  const double im = value.imag() == 0.0 ? 0.0 : value.imag();
  std::string s = format_real(value.real());
  s += std::signbit(im) ? "-" : "+";
  s += format_real(std::abs(im));
  return s + "i";
}

ParseResult parse(std::string_view source) {
  try {
    return Parser().run(source);
  } catch (const std::exception& e) {
    ParseResult r;
    r.diagnostics.push_back({1, 1, std::string("internal error: ") + e.what()});
    return r;
  }
}

std::string unparse(const Protocol& p) {
  std::string out;
  if (!p.name.empty()) out += "# name: " + p.name + "\n";
  if (!p.description.empty()) out += "# description: " + p.description + "\n";
  out += "VERSION " + std::to_string(p.version) + "\n";
  for (const auto& ins : p.instructions) {
    std::visit(
        [&](const auto& op) {
          using Op = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<Op, SpaceOp>) {
            out += "SPACE " + op.label;
            if (op.fock && is_fock_levels(op.levels)) {
              out += " fock=" + std::to_string(op.levels.size() - 1);
            } else {
              out += " levels=" + format_list(op.levels);
            }
          } else if constexpr (std::is_same_v<Op, InitOp>) {
            out += "INIT";
            for (const auto& [label, ket] : op.kets) out += " " + label + "=" + format_ket(ket);
          } else if constexpr (std::is_same_v<Op, PulseOp>) {
            out += "PULSE " + op.target;
            if (op.gate == Gate::kPremeasure) out += " gate=premeasure pointer=" + op.pointer;
          } else if constexpr (std::is_same_v<Op, DisperseOp>) {
            out += "DISPERSE " + op.atom + " field=" + op.field + " phi_e=" +
                   format_real(op.phi_e) + " phi_g=" + format_real(op.phi_g);
          } else if constexpr (std::is_same_v<Op, JcOp>) {
            out += "JC " + op.atom + " field=" + op.field + " g=" + format_real(op.g) +
                   " t=" + format_real(op.t);
          } else if constexpr (std::is_same_v<Op, EraseOp>) {
            out += "ERASE " + op.atom;
          } else if constexpr (std::is_same_v<Op, DetectOp>) {
            out += "DETECT " + op.atom;
          } else if constexpr (std::is_same_v<Op, DecayOp>) {
            out += "DECAY " + op.nucleus + " " + op.cat + " lambda=" +
                   format_real(op.lambda) + " t=" + format_real(op.t);
          } else if constexpr (std::is_same_v<Op, TraceOp>) {
            out += "TRACE keep=" + format_list(op.keep);
          } else {
            out += "REPORT stage=" + op.stage;
            for (const auto& item : op.items) out += " " + format_item(item);
          }
        },
        ins.op);
    out += "\n";
  }
  return out;
}

}  // namespace catbox::protocol
