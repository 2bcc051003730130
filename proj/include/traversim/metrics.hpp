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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "traversim/errors.hpp"
#include "traversim/traverse.hpp"

namespace traversim
{

/// Binary confusion counts with failure as the positive class.
struct ConfusionMatrix
{
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
  ConfusionMatrix & operator+=(const ConfusionMatrix & o);
  friend ConfusionMatrix operator+(ConfusionMatrix a, const ConfusionMatrix & b) { return a += b; }
  friend bool operator==(const ConfusionMatrix &, const ConfusionMatrix &) = default;
};

/// Rates are std::nullopt where undefined.
struct EventScores
{
  std::optional<double> accuracy;
  std::optional<double> recall;
  std::optional<double> precision;
  std::optional<double> f1;
};

/// Throws LengthMismatch when the spans differ in length.
ConfusionMatrix confusion(std::span<const bool> preds, std::span<const bool> labels);

/// accuracy = (tp+tn)/total, recall = tp/(tp+fn), precision = tp/(tp+fp),
/// f1 = 2pr/(p+r). A ratio with a zero denominator is undefined. Precision
/// is also undefined when the ground truth holds no failures (tp + fn = 0),
/// since every flagged sample is then a false alarm by construction.
EventScores scores(const ConfusionMatrix & cm);

/// Micro-pooled score: element-wise sum of the matrices, then scores().
EventScores overall(std::span<const ConfusionMatrix> cms);

inline constexpr std::array<const char *, 3> kEventNames = {"step", "obstacle", "tilt"};

struct MetricsReport
{
  std::array<ConfusionMatrix, 3> events;  ///< step, obstacle, tilt
  double threshold = 0.5;
  std::size_t samples = 0;

  EventScores event_scores(int event) const { return scores(events[event]); }
  EventScores overall_scores() const { return overall(events); }
};

/// "0.963" style fixed 3-decimal rendering; "-" when undefined.
std::string format_score(const std::optional<double> & v);

/// Human-readable table of per-event and overall scores plus the raw counts.
void write_report_text(std::ostream & out, const MetricsReport & report);

/// `event,tp,fp,tn,fn,accuracy,recall,precision,f1` with empty fields for undefined rates.
void write_report_csv(std::ostream & out, const MetricsReport & report);

struct PredictionRow
{
  std::uint32_t map_id = 0;
  std::uint32_t traj_id = 0;
  std::array<double, 3> p{};  ///< step, obstacle, tilt probabilities
};

/// Reads `map_id,traj_id,p_step,p_obstacle,p_tilt`; throws ParseError on
/// malformed rows or probabilities outside [0, 1].
std::vector<PredictionRow> read_predictions_csv(std::istream & in);
std::vector<PredictionRow> read_predictions_csv(const std::filesystem::path & path);
void write_predictions_header(std::ostream & out);
void write_prediction_row(std::ostream & out, const PredictionRow & row);

/// Thrown when predictions and labels do not cover the same samples.
class KeyMismatch : public Error
{
public:
  using Error::Error;
};

/// Joins on (map_id, traj_id) and binarizes with p > threshold. Every valid
/// label needs exactly one prediction; predictions for unknown keys or
/// duplicates raise KeyMismatch. Invalid label rows are ignored.
MetricsReport evaluate(const std::vector<PredictionRow> & preds,
  const std::vector<LabelRow> & labels, double threshold = 0.5);

}  // namespace traversim
