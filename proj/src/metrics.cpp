// Copyright 2026 The traversim Authors
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

#include "traversim/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "csv_util.hpp"
#include "traversim/errors.hpp"

namespace traversim
{

ConfusionMatrix & ConfusionMatrix::operator+=(const ConfusionMatrix & o)
{
  tp += o.tp;
  fp += o.fp;
  tn += o.tn;
  fn += o.fn;
  return *this;
}

ConfusionMatrix confusion(std::span<const bool> preds, std::span<const bool> labels)
{
  if (preds.size() != labels.size()) {
    throw LengthMismatch("confusion: " + std::to_string(preds.size()) + " predictions vs " +
      std::to_string(labels.size()) + " labels");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (labels[i]) {
      preds[i] ? ++cm.tp : ++cm.fn;
    } else {
      preds[i] ? ++cm.fp : ++cm.tn;
    }
  }
  return cm;
}

namespace
{

std::optional<double> ratio(std::uint64_t num, std::uint64_t den)
{
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

EventScores scores(const ConfusionMatrix & cm)
{
  EventScores s;
  s.accuracy = ratio(cm.tp + cm.tn, cm.total());
  s.recall = ratio(cm.tp, cm.tp + cm.fn);
  if (cm.tp + cm.fn > 0) s.precision = ratio(cm.tp, cm.tp + cm.fp);
  if (s.recall && s.precision && *s.recall + *s.precision > 0.0) {
    s.f1 = 2.0 * *s.precision * *s.recall / (*s.precision + *s.recall);
  }
  return s;
}

EventScores overall(std::span<const ConfusionMatrix> cms)
{
  ConfusionMatrix pooled;
  for (const auto & cm : cms) pooled += cm;
  return scores(pooled);
}

std::string format_score(const std::optional<double> & v)
{
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", *v);
  return buf;
}

void write_report_text(std::ostream & out, const MetricsReport & report)
{
  char line[160];
  out << "samples: " << report.samples << "\n";
  out << "threshold: " << report.threshold << "\n\n";
  std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s %8s\n", "event", "acc", "recall", "prec", "f1");
  out << line;
  auto row = [&](const char * name, const EventScores & s) {
    std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s %8s\n", name, format_score(s.accuracy).c_str(),
      format_score(s.recall).c_str(), format_score(s.precision).c_str(), format_score(s.f1).c_str());
    out << line;
  };
  for (int e = 0; e < 3; ++e) row(kEventNames[e], report.event_scores(e));
  row("overall", report.overall_scores());

  out << "\nconfusion (tp fp tn fn)\n";
  for (int e = 0; e < 3; ++e) {
    const auto & cm = report.events[e];
    out << kEventNames[e] << ": " << cm.tp << ' ' << cm.fp << ' ' << cm.tn << ' ' << cm.fn << "\n";
  }
}

void write_report_csv(std::ostream & out, const MetricsReport & report)
{
  out << "event,tp,fp,tn,fn,accuracy,recall,precision,f1\n";
  auto field = [](const std::optional<double> & v) {
    if (!v) return std::string();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", *v);
    return std::string(buf);
  };
  auto row = [&](const char * name, const ConfusionMatrix & cm) {
    const EventScores s = scores(cm);
    out << name << ',' << cm.tp << ',' << cm.fp << ',' << cm.tn << ',' << cm.fn << ','
        << field(s.accuracy) << ',' << field(s.recall) << ',' << field(s.precision) << ','
        << field(s.f1) << '\n';
  };
  for (int e = 0; e < 3; ++e) row(kEventNames[e], report.events[e]);
  ConfusionMatrix pooled;
  for (const auto & cm : report.events) pooled += cm;
  row("overall", pooled);
}

std::vector<PredictionRow> read_predictions_csv(std::istream & in)
{
  std::string line;
  if (!std::getline(in, line)) throw ParseError("predictions CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "map_id,traj_id,p_step,p_obstacle,p_tilt") {
    throw ParseError("predictions CSV: unexpected header '" + line + "'");
  }
  std::vector<PredictionRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto f = detail::split_csv_line(line);
    if (f.size() != 5) {
      throw ParseError("predictions CSV line " + std::to_string(line_no) + ": expected 5 fields");
    }
    PredictionRow row;
    row.map_id = detail::parse_field<std::uint32_t>(f[0], line_no, "map_id");
    row.traj_id = detail::parse_field<std::uint32_t>(f[1], line_no, "traj_id");
    for (int e = 0; e < 3; ++e) {
      row.p[e] = detail::parse_field<double>(f[2 + e], line_no, "probability");
      if (row.p[e] < 0.0 || row.p[e] > 1.0) {
        throw ParseError("predictions CSV line " + std::to_string(line_no) +
          ": probability outside [0, 1]");
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<PredictionRow> read_predictions_csv(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_predictions_csv(in);
}

void write_predictions_header(std::ostream & out) { out << "map_id,traj_id,p_step,p_obstacle,p_tilt\n"; }

void write_prediction_row(std::ostream & out, const PredictionRow & row)
{
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%u,%u,%.9g,%.9g,%.9g\n", row.map_id, row.traj_id, row.p[0],
    row.p[1], row.p[2]);
  out << buf;
}

MetricsReport evaluate(const std::vector<PredictionRow> & preds,
  const std::vector<LabelRow> & labels, double threshold)
{
  auto key = [](std::uint32_t map_id, std::uint32_t traj_id) {
    return (static_cast<std::uint64_t>(map_id) << 32) | traj_id;
  };
  struct Slot
  {
    const LabelRow * label;
    bool seen;
  };
  std::unordered_map<std::uint64_t, Slot> index;
  index.reserve(labels.size());
  for (const auto & l : labels) {
    if (!index.emplace(key(l.map_id, l.traj_id), Slot{&l, false}).second) {
      throw KeyMismatch("duplicate label for map " + std::to_string(l.map_id) + " trajectory " +
        std::to_string(l.traj_id));
    }
  }

  MetricsReport report;
  report.threshold = threshold;
  for (const auto & p : preds) {
    auto it = index.find(key(p.map_id, p.traj_id));
    if (it == index.end()) {
      throw KeyMismatch("prediction for map " + std::to_string(p.map_id) + " trajectory " +
        std::to_string(p.traj_id) + " has no label");
    }
    if (it->second.seen) {
      throw KeyMismatch("duplicate prediction for map " + std::to_string(p.map_id) +
        " trajectory " + std::to_string(p.traj_id));
    }
    it->second.seen = true;
    const LabelRow & l = *it->second.label;
    if (!l.valid) continue;
    const bool truth[3] = {l.label.step, l.label.obstacle, l.label.tilt};
    for (int e = 0; e < 3; ++e) {
      const bool pred = p.p[e] > threshold;
      auto & cm = report.events[e];
      if (truth[e]) {
        pred ? ++cm.tp : ++cm.fn;
      } else {
        pred ? ++cm.fp : ++cm.tn;
      }
    }
    ++report.samples;
  }
  for (const auto & [k, slot] : index) {
    if (slot.label->valid && !slot.seen) {
      throw KeyMismatch("label for map " + std::to_string(slot.label->map_id) + " trajectory " +
        std::to_string(slot.label->traj_id) + " has no prediction");
    }
  }
  return report;
}

}  // namespace traversim
