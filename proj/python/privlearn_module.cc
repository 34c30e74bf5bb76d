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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privlearn/config.h"
#include "privlearn/error.h"
#include "privlearn/graph.h"
#include "privlearn/metrics.h"
#include "privlearn/oracle.h"
#include "privlearn/protocol.h"
#include "privlearn/rng.h"
#include "privlearn/runner.h"
#include "privlearn/transition.h"

namespace py = pybind11;

namespace {

using namespace privlearn;

py::dict TraceToDict(const RunTrace& trace) {
  std::vector<std::vector<double>> q;
  std::vector<std::size_t> d_total, slots, messages;
  std::vector<double> increments;
  for (const RoundMetrics& r : trace.rounds()) {
    q.push_back(r.q);
    d_total.push_back(r.d_total);
    slots.push_back(r.slots);
    messages.push_back(r.messages);
    increments.push_back(r.regret_increment);
  }
  py::dict d;
  d["q"] = q;
  d["d_total"] = d_total;
  d["slots"] = slots;
  d["messages"] = messages;
  d["regret_increment"] = increments;
  d["running_regret"] = trace.RunningRegretSeries();
  d["total_privacy_loss"] = trace.TotalPrivacyLoss();
  return d;
}

py::dict ConditionsToDict(const ConditionReport& report) {
  py::dict d;
  d["sigma_ok"] = report.sigma_ok;
  d["exploration_ok"] = report.exploration_ok;
  d["g_range_ok"] = report.g_range_ok;
  d["theoretical_h"] = report.theoretical_h;
  d["all_ok"] = report.all_ok();
  d["warnings"] = report.warnings;
  return d;
}

py::dict EstimateToDict(const PopularityEstimate& est) {
  py::dict d;
  d["lambda"] = est.lambda;
  d["q_tilde"] = est.q_tilde;
  d["q_hat"] = est.q_hat;
  d["sample_count"] = est.sample_count;
  return d;
}

std::vector<std::pair<NodeId, NodeId>> EdgePairs(const Graph& g) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const Edge& e : g.Edges()) out.emplace_back(e.u, e.v);
  return out;
}

}  // namespace

PYBIND11_MODULE(privlearn, m) {
  m.doc() = "Privacy-preserving social learning over MHRW dissemination";

  py::register_exception<Error>(m, "PrivlearnError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def_static(
          "build",
          [](std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
            std::vector<Edge> edges;
            for (const auto& [u, v] : pairs) edges.push_back({u, v});
            return Graph::Build(n, edges);
          },
          py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("degrees", &Graph::degrees)
      .def("neighbors",
           [](const Graph& g, NodeId i) {
             if (i >= g.num_nodes()) throw py::index_error("node out of range");
             auto s = g.neighbors(i);
             return std::vector<NodeId>(s.begin(), s.end());
           })
      .def("has_edge", &Graph::HasEdge)
      .def("edges", &EdgePairs)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; });

  m.def("generate_erdos_renyi", &GenerateErdosRenyi, py::arg("n"), py::arg("p"),
        py::arg("seed"), py::arg("max_attempts") = 100);
  m.def("generate_random_regular", &GenerateRandomRegular, py::arg("n"),
        py::arg("d"), py::arg("seed"), py::arg("max_attempts") = 100);
  m.def("load_edge_list", &LoadEdgeList, py::arg("path"));
  m.def("save_edge_list", &SaveEdgeList, py::arg("path"), py::arg("graph"));

  py::class_<TransitionModel>(m, "TransitionModel")
      .def_property_readonly("num_nodes", &TransitionModel::num_nodes)
      .def("prob", &TransitionModel::Prob)
      .def("self_prob", &TransitionModel::self_prob)
      .def_readwrite("gap", &TransitionModel::gap)
      .def_readwrite("walk_length", &TransitionModel::walk_length)
      .def_readwrite("alpha", &TransitionModel::alpha);

  m.def("mh_transition", &MhTransition, py::arg("graph"));
  m.def(
      "spectral_gap",
      [](const TransitionModel& tm, double tol) {
        SpectralOptions opts;
        opts.tol = tol;
        return SpectralGap(tm, opts);
      },
      py::arg("transition"), py::arg("tol") = 1e-9);
  m.def("walk_length", &WalkLength, py::arg("n"), py::arg("gap"),
        py::arg("alpha"));
  m.def("default_alpha", &DefaultAlpha, py::arg("n"));

  py::class_<ProtocolParams>(m, "ProtocolParams")
      .def(py::init([](double epsilon, double beta, double mu) {
             ProtocolParams p{epsilon, beta, mu};
             p.Validate();
             return p;
           }),
           py::arg("epsilon") = 0.6931471805599453, py::arg("beta") = 0.505,
           py::arg("mu") = 0.01)
      .def_readwrite("epsilon", &ProtocolParams::epsilon)
      .def_readwrite("beta", &ProtocolParams::beta)
      .def_readwrite("mu", &ProtocolParams::mu)
      .def_property_readonly("delta", &ProtocolParams::delta)
      .def_property_readonly("flip_probability",
                             &ProtocolParams::flip_probability);

  m.def(
      "perturb",
      [](std::optional<std::size_t> option, std::size_t m_options,
         const ProtocolParams& params,
         std::uint64_t seed) -> std::optional<std::uint64_t> {
        const AdoptionVector x = option.has_value()
                                     ? AdoptionVector::Adopt(m_options, *option)
                                     : AdoptionVector::None(m_options);
        RngStream rng(seed);
        const auto y = Perturb(x, params, rng);
        if (!y.has_value()) return std::nullopt;
        return y->mask();
      },
      py::arg("option"), py::arg("m"), py::arg("params"), py::arg("seed"),
      "Randomized response on a one-hot adoption; returns the output bit mask "
      "or None for an agent that adopted nothing.");
  m.def(
      "estimate_popularity",
      [](const std::vector<std::uint64_t>& masks, std::size_t m_options,
         const ProtocolParams& params) {
        std::vector<PerturbedVector> samples;
        samples.reserve(masks.size());
        for (std::uint64_t mask : masks) samples.emplace_back(m_options, mask);
        return EstimateToDict(Normalize(EstimatePopularity(samples, params)));
      },
      py::arg("masks"), py::arg("m"), py::arg("params"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("n", &ExperimentConfig::n)
      .def_readwrite("etas", &ExperimentConfig::etas)
      .def_readwrite("protocol", &ExperimentConfig::protocol)
      .def_readwrite("sigma", &ExperimentConfig::sigma)
      .def_readwrite("h_override", &ExperimentConfig::h_override)
      .def_readwrite("rounds", &ExperimentConfig::rounds)
      .def_readwrite("seeds", &ExperimentConfig::seeds)
      .def_readwrite("output_dir", &ExperimentConfig::output_dir)
      .def_property_readonly("m", &ExperimentConfig::m)
      .def_property_readonly("g", &ExperimentConfig::GValue)
      .def_property_readonly("h", &ExperimentConfig::HValue)
      .def_property_readonly("walks_per_agent", &ExperimentConfig::WalksPerAgent)
      .def("to_json", &ConfigToJson)
      .def("__eq__", [](const ExperimentConfig& a, const ExperimentConfig& b) {
        return a == b;
      });

  m.def("parse_config", &ParseConfig, py::arg("text"));
  m.def("load_config", &LoadConfig, py::arg("path"));
  m.def(
      "check_conditions",
      [](const ExperimentConfig& cfg) {
        return ConditionsToDict(CheckConditions(cfg));
      },
      py::arg("config"));

  m.def(
      "run_single",
      [](const ExperimentConfig& cfg, std::uint64_t seed) {
        RunTrace trace = [&] {
          py::gil_scoped_release release;
          return RunSingle(cfg, seed);
        }();
        return TraceToDict(trace);
      },
      py::arg("config"), py::arg("seed"));
  m.def(
      "run_experiment",
      [](const ExperimentConfig& cfg, bool write_outputs) {
        ExperimentResult result = [&] {
          py::gil_scoped_release release;
          return RunExperiment(cfg, write_outputs);
        }();
        py::list traces;
        for (const RunTrace& t : result.traces) traces.append(TraceToDict(t));
        py::dict d;
        d["traces"] = traces;
        d["seeds"] = cfg.seeds;
        d["conditions"] = ConditionsToDict(result.conditions);
        d["config_hash"] = result.config_hash;
        d["manifest_path"] = result.manifest_path;
        return d;
      },
      py::arg("config"), py::arg("write_outputs") = true);
  m.def(
      "run_sweep",
      [](const ExperimentConfig& base, const std::string& axis,
         const std::vector<std::string>& values, bool write_outputs) {
        SweepResult sweep = [&] {
          py::gil_scoped_release release;
          return RunSweep(base, axis, values, write_outputs);
        }();
        py::dict d;
        for (std::size_t k = 0; k < sweep.values.size(); ++k) {
          const auto rows = AggregateRunningRegret(sweep.results[k].traces);
          std::vector<double> mean;
          for (const AggregateRow& row : rows) mean.push_back(row.mean);
          d[py::str(sweep.values[k])] = mean;
        }
        return py::make_tuple(d, sweep.comparison_path);
      },
      py::arg("base"), py::arg("axis"), py::arg("values"),
      py::arg("write_outputs") = true);
  m.def("git_blob_hash", &GitBlobHash, py::arg("text"));

  py::module_ oracle = m.def_submodule("oracle", "Brute-force references");
  oracle.def(
      "exact_spectral_gap",
      [](const Graph& g) {
        return oracle::ExactSpectralGap(oracle::DenseMatrix::MetropolisHastings(g));
      },
      py::arg("graph"));
  oracle.def("ldp_ratio_max", &oracle::LdpRatioMax, py::arg("m"),
             py::arg("epsilon"));
  oracle.def("debias_expectation", &oracle::DebiasExpectation,
             py::arg("q_true"), py::arg("epsilon"));
}
