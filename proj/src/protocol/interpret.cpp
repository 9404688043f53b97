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
#include <map>
#include <random>

#include "catbox/catmodel.hpp"
#include "catbox/cavity.hpp"
#include "catbox/measurement.hpp"
#include "catbox/protocol.hpp"

namespace catbox::protocol {

namespace {

struct Branch {
  BranchPath path;
  double probability = 1.0;
  StateVector state;
  std::optional<double> erasure_norm_sq;
};

struct Declared {
  SpaceLabel label;
  std::vector<std::string> levels;
  bool fock = false;
};

std::string join(const std::vector<std::string>& xs, char sep) {
  std::string s;
  for (const auto& x : xs) {
    if (!s.empty()) s += sep;
    s += x;
  }
  return s;
}

class Interpreter {
 public:
  explicit Interpreter(const InterpretOptions& options) {
    if (options.sample_seed) rng_.emplace(*options.sample_seed);
  }

  ReportRows run(const Protocol& p) {
    for (const auto& ins : p.instructions) {
      try {
        std::visit([&](const auto& op) { step(op); }, ins.op);
      } catch (const RuntimeError&) {
        throw;
      } catch (const std::exception& e) {
        throw RuntimeError(ins.line, std::string(opcode_name(ins.op)) + ": " + e.what());
      }
    }
    return std::move(rows_);
  }

 private:
  const Declared& declared(const std::string& name) const {
    const auto it = spaces_.find(name);
    if (it == spaces_.end()) throw LabelError("undeclared label '" + name + "'");
    return it->second;
  }
  cavity::AtomSpace atom(const std::string& name) const {
    const auto& d = declared(name);
    return cavity::make_atom(d.label.name, d.levels);
  }
  cavity::FockSpace field(const std::string& name) const {
    const auto& d = declared(name);
    if (!d.fock) throw DimensionError("'" + name + "' is not a Fock space");
    return cavity::FockSpace{d.label};
  }

  template <typename F>
  void each(F&& f) {
    for (auto& b : branches_) b.state = f(b.state);
  }

  void step(const SpaceOp& op) {
    order_.push_back(op.label);
    spaces_[op.label] = {make_label(op.label, op.levels.size()), op.levels, op.fock};
  }

  void step(const InitOp& op) {
    std::optional<StateVector> psi;
    for (const auto& [label, ket] : op.kets) {
      const auto& d = declared(label);
      auto part = std::visit(
          [&](const auto& k) -> StateVector {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, LevelKet>) {
              const auto it = std::find(d.levels.begin(), d.levels.end(), k.level);
              if (it == d.levels.end()) {
                throw LabelError("'" + label + "' has no level '" + k.level + "'");
              }
              return basis_state(d.label, static_cast<std::size_t>(it - d.levels.begin()));
            } else if constexpr (std::is_same_v<K, FockKet>) {
              return basis_state(d.label, k.n);
            } else if constexpr (std::is_same_v<K, CoherentKet>) {
              return cavity::coherent_state(field(label), k.alpha);
            } else {
              CVector v(static_cast<Eigen::Index>(k.amplitudes.size()));
              for (std::size_t i = 0; i < k.amplitudes.size(); ++i) {
                v[static_cast<Eigen::Index>(i)] = k.amplitudes[i];
              }
              StateVector s({d.label}, std::move(v));
              if (!s.is_normalized()) {
                throw NormalizationError("amplitudes for '" + label + "' are not normalized");
              }
              return s;
            }
          },
          ket);
      psi = psi ? tensor(*psi, part) : std::move(part);
    }
    branches_.clear();
    branches_.push_back({{}, 1.0, std::move(*psi), std::nullopt});
    view_.clear();
  }

  void step(const PulseOp& op) {
    if (op.gate == Gate::kRamsey) {
      const auto a = atom(op.target);
      each([&](const StateVector& s) { return cavity::ramsey_pulse(s, a); });
    } else {
      each([&](const StateVector& s) {
        return measurement::premeasure(s, op.target, op.pointer);
      });
    }
  }

  void step(const DisperseOp& op) {
    const auto a = atom(op.atom);
    const auto f = field(op.field);
    each([&](const StateVector& s) {
      return cavity::dispersive_shift(s, a, f, op.phi_e, op.phi_g);
    });
  }

  void step(const JcOp& op) {
    const auto a = atom(op.atom);
    const auto f = field(op.field);
    each([&](const StateVector& s) { return cavity::jc_evolve(s, a, f, op.g, op.t); });
  }

  void step(const EraseOp& op) {
    const auto a = atom(op.atom);
    for (auto& b : branches_) {
      auto r = cavity::erase_which_path(b.state, a);
      b.state = std::move(r.state);
      b.erasure_norm_sq = r.norm_sq;
    }
  }

  void step(const DetectOp& op) {
    const auto a = atom(op.atom);
    std::vector<Branch> out;
    for (const auto& b : branches_) {
      std::vector<cavity::DetectionRecord> kept;
      for (auto& rec : cavity::detect_atom(b.state, a)) {
        if (rec.probability >= tol::kBranchFloor && rec.post_state) {
          kept.push_back(std::move(rec));
        }
      }
      if (rng_ && !kept.empty()) {
        double total = 0.0;
        for (const auto& r : kept) total += r.probability;
        // 53 random bits mapped to [0, 1).
        const double u = static_cast<double>((*rng_)() >> 11) * 0x1.0p-53 * total;
        std::size_t pick = 0;
        double acc = kept[0].probability;
        while (pick + 1 < kept.size() && u >= acc) acc += kept[++pick].probability;
        auto chosen = std::move(kept[pick]);
        kept.clear();
        kept.push_back(std::move(chosen));
      }
      for (auto& rec : kept) {
        BranchPath path = b.path;
        path.emplace_back(a.label.name, rec.outcome);
        out.push_back({std::move(path), b.probability * rec.probability,
                       std::move(*rec.post_state), b.erasure_norm_sq});
      }
    }
    if (out.empty()) throw NormalizationError("detection left no branch above the floor");
    branches_ = std::move(out);
  }

  void step(const DecayOp& op) {
    const CMatrix u = cat::decay_rotation({op.lambda, op.t});
    each([&](const StateVector& s) { return apply_unitary(s, u, {op.nucleus, op.cat}); });
  }

  // Reductions keep factors in declaration order, so the view does too.
  void step(const TraceOp& op) {
    view_.clear();
    for (const auto& label : order_) {
      if (std::find(op.keep.begin(), op.keep.end(), label) != op.keep.end()) {
        view_.push_back(label);
      }
    }
  }

  void step(const ReportOp& op) {
    std::vector<const ReportItem*> per_branch, summary;
    for (const auto& it : op.items) {
      (is_summary_item(it) ? summary : per_branch).push_back(&it);
    }
    if (!per_branch.empty()) {
      for (const auto& b : branches_) rows_.push_back(branch_report(op.stage, b, per_branch));
    }
    if (!summary.empty()) rows_.push_back(summary_report(op.stage, summary));
  }

  // Level names of the joint basis of the current view.
  std::vector<std::string> view_levels() const {
    std::vector<std::string> names{""};
    for (const auto& label : view_) {
      std::vector<std::string> next;
      for (const auto& prefix : names) {
        for (const auto& l : declared(label).levels) {
          next.push_back(prefix.empty() ? l : prefix + "." + l);
        }
      }
      names = std::move(next);
    }
    return names;
  }

  ReportRow branch_report(const std::string& stage, const Branch& b,
                          const std::vector<const ReportItem*>& items) const {
    ReportRow row;
    row.stage = stage;
    row.branch = branch_id(b.path);
    row.outcomes = branch_outcomes(b.path);
    row.probability = b.probability;
    std::optional<DensityOperator> rho;
    const auto reduced = [&]() -> const DensityOperator& {
      if (!rho) {
        if (view_.empty()) throw OrderingError("REPORT item needs a TRACE first");
        rho = reduce(b.state, view_);
      }
      return *rho;
    };
    for (const auto* item : items) {
      std::visit(
          [&](const auto& x) {
            using X = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<X, item::Populations>) {
              const auto names = view_levels();
              const auto& m = reduced().matrix();
              for (std::size_t k = 0; k < names.size(); ++k) {
                const auto i = static_cast<Eigen::Index>(k);
                row.add("pop_" + names[k], m(i, i).real());
              }
            } else if constexpr (std::is_same_v<X, item::Coherence>) {
              const auto& m = reduced().matrix();
              const auto d = static_cast<std::size_t>(m.rows());
              if (x.row >= d || x.col >= d) {
                throw DimensionError("coherence index out of range for dimension " +
                                     std::to_string(d));
              }
              row.add("coherence_" + std::to_string(x.row) + "_" + std::to_string(x.col),
                      std::abs(m(static_cast<Eigen::Index>(x.row),
                                 static_cast<Eigen::Index>(x.col))));
            } else if constexpr (std::is_same_v<X, item::Purity>) {
              row.add("purity", purity(reduced()));
            } else if constexpr (std::is_same_v<X, item::Fringe>) {
              row.add("fringe_signal", cavity::cat_fringe_signal(reduced(), x.alpha));
            } else if constexpr (std::is_same_v<X, item::CatFidelity>) {
              const auto f = cavity::cat_fidelities(reduced(), x.alpha);
              row.add("fidelity_even_cat", f.even);
              row.add("fidelity_odd_cat", f.odd);
            } else if constexpr (std::is_same_v<X, item::MaxOffDiagonal>) {
              row.add("max_offdiag", max_off_diagonal(reduced().matrix()));
            } else if constexpr (std::is_same_v<X, item::ErasureNorm>) {
              if (!b.erasure_norm_sq) throw OrderingError("erasure reported before ERASE");
              row.add("erasure_norm_sq", *b.erasure_norm_sq);
            } else if constexpr (std::is_same_v<X, item::Dump>) {
              row.matrices.push_back({"rho_" + join(view_, '_'), reduced().matrix()});
            }
          },
          *item);
    }
    return row;
  }

  ReportRow summary_report(const std::string& stage,
                           const std::vector<const ReportItem*>& items) const {
    ReportRow row;
    row.stage = stage;
    row.branch = "summary";
    row.probability = 0.0;
    for (const auto& b : branches_) row.probability += b.probability;
    const auto outcome = [](const Branch& b, const std::string& factor) {
      for (const auto& [f, level] : b.path) {
        if (f == factor) return level;
      }
      throw OrderingError("branch " + branch_id(b.path) + " has no outcome for '" +
                          factor + "'; DETECT it first");
    };
    for (const auto* item : items) {
      if (const auto* c = std::get_if<item::Correlation>(item)) {
        double s = 0.0;
        for (const auto& b : branches_) {
          s += outcome(b, c->first) == outcome(b, c->second) ? b.probability
                                                             : -b.probability;
        }
        row.add("correlation_signal", s);
      } else if (const auto* m = std::get_if<item::Marginal>(item)) {
        const auto& levels = declared(m->label).levels;
        std::vector<double> p(levels.size(), 0.0);
        for (const auto& b : branches_) {
          const auto o = outcome(b, m->label);
          p[static_cast<std::size_t>(std::find(levels.begin(), levels.end(), o) -
                                     levels.begin())] += b.probability;
        }
        for (std::size_t l = 0; l < levels.size(); ++l) {
          row.add("p_" + m->label + "_" + levels[l], p[l]);
        }
      }
    }
    return row;
  }

  std::map<std::string, Declared> spaces_;
  std::vector<std::string> order_;
  std::vector<Branch> branches_;
  std::vector<std::string> view_;
  std::optional<std::mt19937_64> rng_;
  ReportRows rows_;
};

}  // namespace

ReportRows interpret(const Protocol& protocol, const InterpretOptions& options) {
  return Interpreter(options).run(protocol);
}

}  // namespace catbox::protocol
