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

#ifndef PRIVLEARN_METRICS_H_
#define PRIVLEARN_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "privlearn/protocol.h"

namespace privlearn {

struct Popularity {
  std::vector<double> q;
  std::vector<std::size_t> d;
  std::size_t d_total = 0;
  // Nobody adopted; q is all zero.
  bool empty = true;
};

Popularity ComputePopularity(std::span<const AdoptionVector> adoptions,
                             std::size_t m);

struct RoundMetrics {
  std::size_t round = 0;
  std::vector<double> q;
  std::vector<std::size_t> d;
  std::size_t d_total = 0;
  bool empty = false;
  std::vector<std::size_t> s;  // Stage 3 selections per option; sums to n.
  std::size_t slots = 0;
  std::uint64_t messages = 0;
  std::uint64_t max_edge_messages_per_slot = 0;
  std::uint64_t tokens_dropped = 0;
  bool truncated = false;
  double regret_increment = 0.0;
  double running_regret = 0.0;
};

// sum_j q_prev[j] * phi[j].
double RegretIncrement(std::span<const double> q_prev,
                       std::span<const std::uint8_t> phi);

// Per-run record. Running regret after R rounds is
// best_eta - (1/R) * sum_r sum_j Q_j^{r-1} Phi_j^r.
class RunTrace {
 public:
  RunTrace(std::size_t m, double best_eta, double epsilon);

  // Computes the increment from the previous round's popularity and the
  // round's quality draw, then appends `metrics` with the regret fields set.
  void RegretUpdate(RoundMetrics metrics, std::span<const double> q_prev,
                    std::span<const std::uint8_t> phi);

  std::size_t m() const { return m_; }
  double best_eta() const { return best_eta_; }
  double epsilon() const { return epsilon_; }
  const std::vector<RoundMetrics>& rounds() const { return rounds_; }
  std::size_t num_rounds() const { return rounds_.size(); }

  // 0 for an empty trace.
  double RunningRegret() const;
  std::vector<double> RunningRegretSeries() const;
  // R * epsilon (composition over rounds).
  double TotalPrivacyLoss() const;

 private:
  std::size_t m_;
  double best_eta_;
  double epsilon_;
  double increment_sum_ = 0.0;
  std::vector<RoundMetrics> rounds_;
};

struct ConvergenceResult {
  bool converged = false;
  double plateau = 0.0;
};

// Converged when max - min over the last `window` entries is below tol; the
// plateau is their mean. Series shorter than `window` never converge.
ConvergenceResult ConvergenceCheck(std::span<const double> series,
                                   std::size_t window, double tol);

struct AggregateRow {
  std::size_t round = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

// Mean and sample standard deviation of the running regret per round across
// traces of equal length.
std::vector<AggregateRow> AggregateRunningRegret(std::span<const RunTrace> traces);

// Header: round,q_1..q_m,d_total,slots,messages,running_regret
void WriteTraceCsv(std::ostream& out, const RunTrace& trace);
// Header: round,mean_running_regret,std_running_regret,seeds
void WriteAggregateCsv(std::ostream& out, std::span<const RunTrace> traces);

}  // namespace privlearn

#endif  // PRIVLEARN_METRICS_H_
