// Copyright 2026 The qbd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Plain-text, CSV and JSON renderings of results.

#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbd/costmodel.hpp"
#include "qbd/qdecision.hpp"

namespace qbd::report {

using nlohmann::json;

enum class Format { Table, Csv, Json };

/// Shortest decimal that reads back to the same double.
inline std::string format_number(double x) {
  char buf[32];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

inline std::string render_table(const Table& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  for (std::size_t c = 0; c < t.header.size(); ++c) width[c] = t.header[c].size();
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < width.size(); ++c) {
      std::string cell = c < cells.size() ? cells[c] : "";
      out << cell;
      if (c + 1 < width.size()) out << std::string(width[c] - cell.size() + 2, ' ');
    }
    out << '\n';
  };
  line(t.header);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& row : t.rows) line(row);
  return out.str();
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

inline std::string render_csv(const Table& t) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << csv_escape(cells[c]);
    out << '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return out.str();
}

inline std::string render(const Table& t, Format f) {
  return f == Format::Csv ? render_csv(t) : render_table(t);
}

inline json distribution_json(const Distribution& d, const Variable& var) {
  json arr = json::array();
  for (std::size_t v = 0; v < d.size(); ++v) arr.push_back({{"value", var.label(v)}, {"probability", d[v]}});
  return arr;
}

inline Table distribution_table(const Distribution& d, const Variable& var) {
  Table t{{"value", "probability"}, {}};
  for (std::size_t v = 0; v < d.size(); ++v) t.add({var.label(v), format_number(d[v])});
  return t;
}

inline json decision_json(const qdecision::DecisionReport& r, const DecisionProblem& problem) {
  const Variable& action = problem.network.variables.at(problem.action);
  json j;
  j["process"] = qdecision::to_string(r.process);
  j["exact"] = r.exact;
  j["chosen_action"] = action.label(r.chosen_action);
  j["chosen_action_index"] = r.chosen_action;
  j["action_distribution"] = distribution_json(r.action_distribution, action);
  if (r.theoretical_distribution) {
    j["theoretical_distribution"] = distribution_json(*r.theoretical_distribution, action);
  }
  if (!r.expected_utilities.empty()) {
    json eu = json::array();
    for (std::size_t a = 0; a < r.expected_utilities.size(); ++a) {
      eu.push_back({{"action", action.label(a)},
                    {"expected_utility", r.expected_utilities[a]},
                    {"delta", a < r.eu_deltas.size() ? r.eu_deltas[a] : 0.0}});
    }
    j["expected_utilities"] = eu;
  }
  j["shots_used"] = r.shots_used;
  j["matched_shots"] = r.matched_shots;
  j["matched_shot_fraction"] = r.matched_shot_fraction;
  j["grover_iterations"] = r.iterations;
  j["amplified_state_constructions"] = r.amplified_state_constructions;
  j["classical_combination_ops"] = r.classical_combination_ops;
  return j;
}

inline std::string decision_text(const qdecision::DecisionReport& r, const DecisionProblem& problem, Format f) {
  const Variable& action = problem.network.variables.at(problem.action);
  Table t{{"action", "probability"}, {}};
  if (r.theoretical_distribution) t.header.push_back("theoretical");
  if (!r.expected_utilities.empty()) {
    t.header.push_back("expected_utility");
    t.header.push_back("delta");
  }
  for (std::size_t a = 0; a < r.action_distribution.size(); ++a) {
    std::vector<std::string> row{action.label(a), format_number(r.action_distribution[a])};
    if (r.theoretical_distribution) row.push_back(format_number((*r.theoretical_distribution)[a]));
    if (!r.expected_utilities.empty()) {
      row.push_back(format_number(r.expected_utilities[a]));
      row.push_back(format_number(a < r.eu_deltas.size() ? r.eu_deltas[a] : 0.0));
    }
    t.add(std::move(row));
  }
  if (f == Format::Csv) return render_csv(t);

  std::ostringstream out;
  out << "process: " << qdecision::to_string(r.process) << (r.exact ? " (exact)" : "") << '\n';
  out << "chosen action: " << action.label(r.chosen_action) << '\n';
  out << render_table(t);
  if (r.shots_used > 0) {
    out << "shots: " << r.shots_used << ", matched: " << r.matched_shots << " ("
        << format_number(r.matched_shot_fraction) << ")\n";
  }
  if (!r.iterations.empty()) {
    out << "grover iterations:";
    for (std::size_t k : r.iterations) out << ' ' << k;
    out << '\n';
  }
  if (r.process == qdecision::Process::B) {
    out << "amplified-state constructions: " << r.amplified_state_constructions
        << ", classical combination ops: " << r.classical_combination_ops << '\n';
  }
  return out.str();
}

inline json params_json(const cost::CostParams& p) {
  json j{{"n", p.n}, {"m", p.m}, {"N_a", p.n_a}, {"N_r", p.n_r}, {"p_e", p.p_e}, {"delta", p.delta}, {"alpha", p.alpha}};
  if (p.pi) j["pi"] = *p.pi;
  if (p.delta_b) j["delta_b"] = *p.delta_b;
  return j;
}

inline json estimate_json(const cost::CostEstimate& c) {
  return {{"process", qdecision::to_string(c.process)},
          {"encoding", c.encoding},
          {"iterations_per_sample", c.iterations_per_sample},
          {"degrees_of_freedom", c.degrees_of_freedom},
          {"chi_square", c.chi_square},
          {"pi", c.pi},
          {"delta", c.delta},
          {"samples", c.samples},
          {"repetitions", c.repetitions},
          {"additive", c.additive},
          {"total_ops", c.total_ops}};
}

inline json cost_json(const cost::CostEstimate& a, const cost::CostEstimate& b, const cost::RatioCheck& rc) {
  return {{"parameters", params_json(a.params)},
          {"estimates", json::array({estimate_json(a), estimate_json(b)})},
          {"ratio", b.total_ops / a.total_ops},
          {"bound", rc.bound},
          {"ratio_check",
           {{"ratio", rc.ratio}, {"holds", rc.holds}, {"t1", rc.t1}, {"asymptotic", rc.asymptotic}}}};
}

inline Table cost_table(const cost::CostEstimate& a, const cost::CostEstimate& b) {
  Table t{{"process", "n2^m", "I_s", "A", "pi", "delta", "S", "reps", "additive", "total_ops"}, {}};
  for (const auto* c : {&a, &b}) {
    t.add({qdecision::to_string(c->process), format_number(c->encoding), format_number(c->iterations_per_sample),
           format_number(c->chi_square), format_number(c->pi), format_number(c->delta), format_number(c->samples),
           format_number(c->repetitions), format_number(c->additive), format_number(c->total_ops)});
  }
  return t;
}

}  // namespace qbd::report
