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

#include <cmath>
#include <cstdio>

#include "catbox/cli.hpp"

namespace catbox::cli {

namespace {

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string json_number(double v) {
  return std::isfinite(v) ? format_number(v) : "null";
}

std::string json_value(const scenarios::ParamValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, double>) return json_number(x);
        else if constexpr (std::is_same_v<X, bool>) return x ? "true" : "false";
        else return json_string(x);
      },
      v);
}

class JsonWriter {
 public:
  // Opens `{` or `[` as the value of `key` (or bare inside an array).
  void open(std::string_view key, char bracket) {
    item(key);
    out_ += bracket;
    first_.push_back(true);
  }
  void close(char bracket) {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    out_ += bracket;
  }
  void value(std::string_view key, const std::string& text) {
    item(key);
    out_ += text;
  }
  std::string finish() { return out_ + "\n"; }

 private:
  void newline() {
    out_ += '\n';
    out_.append(2 * first_.size(), ' ');
  }
  void item(std::string_view key) {
    if (!first_.empty()) {
      if (!first_.back()) out_ += ',';
      first_.back() = false;
      newline();
    }
    if (!key.empty()) out_ += json_string(key) + ": ";
  }

  std::string out_;
  std::vector<bool> first_;
};

std::string inline_array(const std::vector<std::string>& items) {
  std::string s = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ", ";
    s += items[i];
  }
  return s + "]";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

std::string to_json(const std::vector<RunReport>& runs, const WriteOptions& options) {
  JsonWriter w;
  w.open("", '{');
  w.value("format", json_string("catbox-report"));
  w.value("version", std::to_string(kFormatVersion));
  w.value("generator", json_string(kGenerator));
  w.open("runs", '[');
  for (const auto& run : runs) {
    w.open("", '{');
    w.value("scenario", json_string(run.scenario));
    w.value("source", json_string(run.source));
    w.open("parameters", '{');
    for (const auto& [k, v] : run.parameters) w.value(k, json_value(v));
    w.close('}');
    w.open("rows", '[');
    for (const auto& row : run.rows) {
      w.open("", '{');
      w.value("stage", json_string(row.stage));
      w.value("branch", json_string(row.branch));
      std::vector<std::string> outcomes;
      for (const auto& o : row.outcomes) outcomes.push_back(json_string(o));
      w.value("outcomes", inline_array(outcomes));
      w.value("probability", json_number(row.probability));
      w.open("scalars", '{');
      for (const auto& s : row.scalars) w.value(s.name, json_number(s.value));
      w.close('}');
      if (options.dump_matrices) {
        w.open("matrices", '{');
        for (const auto& m : row.matrices) {
          w.open(m.name, '{');
          w.value("rows", std::to_string(m.matrix.rows()));
          w.value("cols", std::to_string(m.matrix.cols()));
          std::vector<std::string> data;
          for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.matrix.cols(); ++j) {
              data.push_back(json_number(m.matrix(i, j).real()));
              data.push_back(json_number(m.matrix(i, j).imag()));
            }
          }
          w.value("data", inline_array(data));
          w.close('}');
        }
        w.close('}');
      }
      w.close('}');
    }
    w.close(']');
    w.close('}');
  }
  w.close(']');
  w.close('}');
  return w.finish();
}

std::string to_csv(const std::vector<RunReport>& runs, const WriteOptions& options) {
  std::string out = "scenario,stage,branch,outcomes,probability,quantity,value\n";
  for (const auto& run : runs) {
    for (const auto& row : run.rows) {
      std::string outcomes;
      for (const auto& o : row.outcomes) {
        if (!outcomes.empty()) outcomes += ';';
        outcomes += o;
      }
      const std::string prefix = csv_field(run.scenario) + "," + csv_field(row.stage) +
                                 "," + csv_field(row.branch) + "," + csv_field(outcomes) +
                                 "," + format_number(row.probability) + ",";
      std::size_t lines = 0;
      const auto line = [&](const std::string& quantity, double value) {
        out += prefix + csv_field(quantity) + "," + format_number(value) + "\n";
        ++lines;
      };
      for (const auto& s : row.scalars) line(s.name, s.value);
      if (options.dump_matrices) {
        for (const auto& m : row.matrices) {
          for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.matrix.cols(); ++j) {
              const std::string cell =
                  m.name + "[" + std::to_string(i) + ";" + std::to_string(j) + "]";
              line(cell + ".re", m.matrix(i, j).real());
              line(cell + ".im", m.matrix(i, j).imag());
            }
          }
        }
      }
      // Keep the row's probability even when it carries no quantities.
      if (lines == 0) out += prefix + ",\n";
    }
  }
  return out;
}

}  // namespace catbox::cli
