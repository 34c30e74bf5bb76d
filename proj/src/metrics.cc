// Copyright 2026 The privlearn Authors
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

#include "privlearn/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "privlearn/error.h"

namespace privlearn {

namespace {

std::string FormatReal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

Popularity ComputePopularity(std::span<const AdoptionVector> adoptions,
                             std::size_t m) {
  Popularity pop;
  pop.q.assign(m, 0.0);
  pop.d.assign(m, 0);
  for (const AdoptionVector& x : adoptions) {
    if (auto j = x.adopted(); j.has_value()) {
      if (*j >= m) {
        throw Error(ErrorCode::kInvalidArgument, "adoption index out of range");
      }
      ++pop.d[*j];
      ++pop.d_total;
    }
  }
  pop.empty = pop.d_total == 0;
  if (!pop.empty) {
    for (std::size_t j = 0; j < m; ++j) {
      pop.q[j] = static_cast<double>(pop.d[j]) / static_cast<double>(pop.d_total);
    }
  }
  return pop;
}

double RegretIncrement(std::span<const double> q_prev,
                       std::span<const std::uint8_t> phi) {
  if (q_prev.size() != phi.size()) {
    throw Error(ErrorCode::kInvalidArgument, "popularity and draw sizes differ");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    if (phi[j]) acc += q_prev[j];
  }
  return acc;
}

RunTrace::RunTrace(std::size_t m, double best_eta, double epsilon)
    : m_(m), best_eta_(best_eta), epsilon_(epsilon) {}

void RunTrace::RegretUpdate(RoundMetrics metrics,
                            std::span<const double> q_prev,
                            std::span<const std::uint8_t> phi) {
  metrics.regret_increment = RegretIncrement(q_prev, phi);
  increment_sum_ += metrics.regret_increment;
  metrics.running_regret =
      best_eta_ - increment_sum_ / static_cast<double>(rounds_.size() + 1);
  rounds_.push_back(std::move(metrics));
}

double RunTrace::RunningRegret() const {
  return rounds_.empty() ? 0.0 : rounds_.back().running_regret;
}

std::vector<double> RunTrace::RunningRegretSeries() const {
  std::vector<double> out;
  out.reserve(rounds_.size());
  for (const RoundMetrics& r : rounds_) out.push_back(r.running_regret);
  return out;
}

double RunTrace::TotalPrivacyLoss() const {
  if (rounds_.empty()) return 0.0;
  return static_cast<double>(rounds_.size()) * epsilon_;
}

ConvergenceResult ConvergenceCheck(std::span<const double> series,
                                   std::size_t window, double tol) {
  if (window < 2) {
    throw Error(ErrorCode::kInvalidArgument, "window must be at least 2");
  }
  ConvergenceResult result;
  if (series.size() < window) return result;
  auto tail = series.subspan(series.size() - window);
  auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  double sum = 0.0;
  for (double v : tail) sum += v;
  result.plateau = sum / static_cast<double>(window);
  result.converged = (*hi - *lo) < tol;
  return result;
}

std::vector<AggregateRow> AggregateRunningRegret(
    std::span<const RunTrace> traces) {
  std::vector<AggregateRow> rows;
  if (traces.empty()) return rows;
  const std::size_t r_max = traces.front().num_rounds();
  for (const RunTrace& t : traces) {
    if (t.num_rounds() != r_max) {
      throw Error(ErrorCode::kInvalidArgument, "traces differ in length");
    }
  }
  const double k = static_cast<double>(traces.size());
  rows.resize(r_max);
  for (std::size_t r = 0; r < r_max; ++r) {
    double sum = 0.0;
    for (const RunTrace& t : traces) sum += t.rounds()[r].running_regret;
    const double mean = sum / k;
    double ss = 0.0;
    for (const RunTrace& t : traces) {
      const double d = t.rounds()[r].running_regret - mean;
      ss += d * d;
    }
    rows[r].round = traces.front().rounds()[r].round;
    rows[r].mean = mean;
    rows[r].stddev = traces.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
  }
  return rows;
}

void WriteTraceCsv(std::ostream& out, const RunTrace& trace) {
  out << "round";
  for (std::size_t j = 1; j <= trace.m(); ++j) out << ",q_" << j;
  out << ",d_total,slots,messages,running_regret\n";
  for (const RoundMetrics& r : trace.rounds()) {
    out << r.round;
    for (double q : r.q) out << ',' << FormatReal(q);
    out << ',' << r.d_total << ',' << r.slots << ',' << r.messages << ','
        << FormatReal(r.running_regret) << '\n';
  }
}

void WriteAggregateCsv(std::ostream& out, std::span<const RunTrace> traces) {
  out << "round,mean_running_regret,std_running_regret,seeds\n";
  for (const AggregateRow& row : AggregateRunningRegret(traces)) {
    out << row.round << ',' << FormatReal(row.mean) << ','
        << FormatReal(row.stddev) << ',' << traces.size() << '\n';
  }
}

}  // namespace privlearn
