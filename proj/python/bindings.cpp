// Copyright 2026 The DTIM Authors.
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dtim/diffusion.hpp"
#include "dtim/errors.hpp"
#include "dtim/example2.hpp"
#include "dtim/graph.hpp"
#include "dtim/greedy.hpp"
#include "dtim/lurker_rank.hpp"
#include "dtim/metrics.hpp"
#include "dtim/ris.hpp"
#include "dtim/simulator.hpp"

namespace py = pybind11;
using namespace dtim;

namespace {

TargetSet TargetsFromList(const DiffusionGraph& dg,
                          const std::vector<NodeId>& members) {
  for (NodeId v : members) {
    if (v >= dg.node_count()) throw DomainError("target id out of range");
  }
  return TargetSet(dg.node_count(), members, 0.0, std::nullopt);
}

py::list SeedsToList(const SeedResult& result) {
  py::list out;
  for (const SeedRecord& r : result.seeds) {
    py::dict d;
    d["node"] = r.node;
    d["objective"] = r.objective;
    d["capital"] = r.capital;
    d["diversity"] = r.diversity;
    out.append(d);
  }
  return out;
}

py::dict SelectionToDict(const SeedResult& result) {
  py::dict d;
  d["seeds"] = SeedsToList(result);
  d["status"] = ToString(result.status);
  return d;
}

}  // namespace

PYBIND11_MODULE(_dtim, m) {
  m.doc() = "Diversity-sensitive targeted influence maximization";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<EmptyGraphError>(m, "EmptyGraphError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
  py::register_exception<AdmissibilityError>(m, "AdmissibilityError",
                                             error.ptr());
  py::register_exception<EnumerationLimitError>(m, "EnumerationLimitError",
                                                error.ptr());

  py::class_<SocialGraph>(m, "SocialGraph")
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& e) {
            std::vector<Edge> edges;
            for (auto [u, v] : e) edges.push_back({u, v});
            std::vector<std::uint64_t> ids(n);
            for (std::size_t i = 0; i < n; ++i) ids[i] = i;
            return SocialGraph::FromEdges(n, std::move(edges), std::move(ids));
          },
          py::arg("node_count"), py::arg("edges"))
      .def_property_readonly("node_count", &SocialGraph::node_count)
      .def_property_readonly("edge_count", &SocialGraph::edge_count)
      .def("edges",
           [](const SocialGraph& g) {
             std::vector<std::pair<NodeId, NodeId>> out;
             for (const Edge& e : g.edges()) {
               out.emplace_back(e.source, e.destination);
             }
             return out;
           })
      .def("original_ids",
           [](const SocialGraph& g) {
             return std::vector<std::uint64_t>(g.original_ids().begin(),
                                               g.original_ids().end());
           })
      .def("in_degree", &SocialGraph::in_degree)
      .def("out_degree", &SocialGraph::out_degree);

  m.def("load_edge_list", [](const std::string& path) {
    return LoadEdgeListFile(path).graph;
  }, py::arg("path"));
  m.def("parse_edge_list", [](const std::string& text) {
    std::istringstream in(text);
    return LoadEdgeList(in).graph;
  }, py::arg("text"));

  m.def("centrality", [](const SocialGraph& g) {
    CentralityStats c = ComputeCentrality(g);
    py::dict d;
    d["outdegree"] = c.outdegree;
    d["betweenness"] = c.betweenness;
    d["coreness"] = c.coreness;
    return d;
  }, py::arg("graph"));

  m.def("lurker_rank",
        [](const SocialGraph& g, double damping, double tolerance,
           int max_iterations) {
          return LurkerRank(g, {damping, tolerance, max_iterations}).scores;
        },
        py::arg("graph"), py::arg("damping") = 0.85,
        py::arg("tolerance") = 1e-9, py::arg("max_iterations") = 200);

  py::class_<DiffusionGraph>(m, "DiffusionGraph")
      .def_property_readonly("node_count", &DiffusionGraph::node_count)
      .def_property_readonly("edge_count", &DiffusionGraph::edge_count)
      .def_property_readonly(
          "graph", [](const DiffusionGraph& dg) { return dg.graph(); })
      .def("node_weights",
           [](const DiffusionGraph& dg) {
             return std::vector<double>(dg.node_weights().begin(),
                                        dg.node_weights().end());
           })
      .def("edge_weights",
           [](const DiffusionGraph& dg) {
             return std::vector<double>(dg.edge_weights().begin(),
                                        dg.edge_weights().end());
           })
      .def("to_text",
           [](const DiffusionGraph& dg) {
             std::ostringstream out;
             WriteDiffusionGraph(dg, out);
             return out.str();
           })
      .def_static("from_text", [](const std::string& text) {
        std::istringstream in(text);
        return ReadDiffusionGraph(in);
      });

  m.def("build_diffusion",
        [](const SocialGraph& g, double damping, double tolerance,
           int max_iterations, std::optional<double> epsilon_r) {
          return BuildDiffusionGraph(g, {damping, tolerance, max_iterations},
                                     {epsilon_r})
              .diffusion;
        },
        py::arg("graph"), py::arg("damping") = 0.85,
        py::arg("tolerance") = 1e-9, py::arg("max_iterations") = 200,
        py::arg("epsilon_r") = std::nullopt);

  m.def("select_targets",
        [](const DiffusionGraph& dg, std::optional<double> L, double L_perc) {
          const TargetRule rule = L ? TargetRule::Absolute(*L)
                                    : TargetRule::Percentile(L_perc);
          TargetSet ts = SelectTargets(dg.node_weights(), rule);
          return std::vector<NodeId>(ts.members().begin(), ts.members().end());
        },
        py::arg("diffusion"), py::arg("L") = std::nullopt,
        py::arg("L_perc") = 25.0);

  m.def("select",
        [](const DiffusionGraph& dg, const std::vector<NodeId>& targets,
           int k, double alpha, double eta, const std::string& variant,
           int threads) {
          TargetSet ts = TargetsFromList(dg, targets);
          SeedResult r;
          {
            py::gil_scoped_release release;
            r = DtimSelect(dg, ts,
                           {k, alpha, eta, ParseDiversityVariant(variant),
                            threads});
          }
          return SelectionToDict(r);
        },
        py::arg("diffusion"), py::arg("targets"), py::arg("k") = 10,
        py::arg("alpha") = 0.5, py::arg("eta") = 1e-4,
        py::arg("variant") = "global", py::arg("threads") = 1);

  m.def("ris_select",
        [](const DiffusionGraph& dg, const std::vector<NodeId>& targets,
           int k, double alpha, const std::string& variant,
           std::uint64_t rng_seed, double epsilon, double ell,
           std::uint64_t max_theta, std::optional<std::uint64_t> theta,
           int threads) {
          TargetSet ts = TargetsFromList(dg, targets);
          RisConfig config;
          config.k = k;
          config.alpha = alpha;
          config.variant = ParseRisVariant(variant);
          config.rng_seed = rng_seed;
          config.kpt.epsilon = epsilon;
          config.kpt.ell = ell;
          config.kpt.max_theta = max_theta;
          config.kpt.threads = threads;
          config.theta_override = theta;
          RisOutcome r;
          {
            py::gil_scoped_release release;
            r = RisSelect(dg, ts, config);
          }
          py::dict d = SelectionToDict(r.result);
          d["kpt"] = r.kpt.kpt;
          d["refined_kpt"] = r.kpt.refined_kpt;
          d["theta"] = r.kpt.theta;
          d["pool_size"] = r.pool.size();
          return d;
        },
        py::arg("diffusion"), py::arg("targets"), py::arg("k") = 10,
        py::arg("alpha") = 0.5, py::arg("variant") = "global",
        py::arg("rng_seed") = 0, py::arg("epsilon") = 0.1,
        py::arg("ell") = 1.0, py::arg("max_theta") = 2'000'000,
        py::arg("theta") = std::nullopt, py::arg("threads") = 1);

  m.def("simulate",
        [](const DiffusionGraph& dg, const std::vector<NodeId>& seeds,
           const std::vector<NodeId>& targets, std::size_t runs,
           std::uint64_t rng_seed, int threads) {
          TargetSet ts = TargetsFromList(dg, targets);
          SimulationReport r;
          {
            py::gil_scoped_release release;
            r = EstimateCapital(dg, seeds, ts, {runs, rng_seed, threads});
          }
          py::dict d;
          d["capital"] = r.capital_estimate;
          d["std_error"] = r.capital_std_error;
          d["runs"] = r.runs;
          d["activation_probability"] = r.activation_probability;
          return d;
        },
        py::arg("diffusion"), py::arg("seeds"), py::arg("targets"),
        py::arg("runs") = 10000, py::arg("rng_seed") = 0,
        py::arg("threads") = 1);

  m.def("exact_capital",
        [](const DiffusionGraph& dg, const std::vector<NodeId>& seeds,
           const std::vector<NodeId>& targets, bool include_seeds) {
          TargetSet ts = TargetsFromList(dg, targets);
          return ExactCapital(dg, seeds, ts, {.include_seeds = include_seeds});
        },
        py::arg("diffusion"), py::arg("seeds"), py::arg("targets"),
        py::arg("include_seeds") = false);

  m.def("seed_overlap",
        [](const std::vector<NodeId>& a, const std::vector<NodeId>& b,
           std::size_t k) { return SeedOverlap(a, b, k); },
        py::arg("a"), py::arg("b"), py::arg("k"));
  m.def("spearman",
        [](const std::vector<double>& x, const std::vector<double>& y) {
          return SpearmanCorrelation(x, y);
        },
        py::arg("x"), py::arg("y"));

  m.def("example2",
        [](const std::string& variant) {
          Example2 ex = MakeExample2();
          SeedResult r = DtimSelect(ex.diffusion, ex.targets,
                                    {1, 0.5, 0.0,
                                     ParseDiversityVariant(variant), 1});
          std::vector<std::string> names;
          for (const SeedRecord& s : r.seeds) names.push_back(ex.name(s.node));
          return names;
        },
        py::arg("variant") = "global");

  m.attr("__version__") = DTIM_VERSION;
}
