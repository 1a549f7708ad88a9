#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fairslice/adversary.hpp"
#include "fairslice/chores.hpp"
#include "fairslice/ef_solver.hpp"
#include "fairslice/mixed.hpp"
#include "fairslice/protocols.hpp"

namespace py = pybind11;
using namespace fairslice;

namespace {

std::vector<Side> sides_from_strings(const std::vector<std::string>& labels) {
  std::vector<Side> out;
  out.reserve(labels.size());
  for (const auto& s : labels) {
    if (s == "L")
      out.push_back(Side::Left);
    else if (s == "R")
      out.push_back(Side::Right);
    else
      throw std::invalid_argument("label must be 'L' or 'R'");
  }
  return out;
}

AdditivePiecewiseConstant pwc_from_blocks(
    const std::vector<std::tuple<double, double, double>>& blocks) {
  std::vector<AdditivePiecewiseConstant::Block> bs;
  bs.reserve(blocks.size());
  for (const auto& [a, b, d] : blocks) bs.push_back({a, b, d});
  return AdditivePiecewiseConstant::make(std::move(bs));
}

py::dict assignment_to_dict(const Assignment& a) {
  py::dict d;
  d["lengths"] = a.partition.lengths;
  d["cuts"] = a.partition.cuts();
  d["groups"] = a.groups;
  return d;
}

py::dict protocol_report_to_dict(const ProtocolReport& r) {
  py::dict d = assignment_to_dict(r.assignment);
  d["query_count"] = r.query_count;
  return d;
}

}  // namespace

PYBIND11_MODULE(_fairslice, m) {
  m.doc() = "Envy-free division of cakes, chores and mixed cakes between groups";

  py::register_exception<InvariantError>(m, "InvariantError");

  py::enum_<Side>(m, "Side")
      .value("LEFT", Side::Left)
      .value("RIGHT", Side::Right)
      .value("BOTH", Side::Both);

  py::class_<TwoPiecePreference>(m, "TwoPiecePreference")
      .def(py::init([](const std::vector<double>& bps, const std::vector<std::string>& labels) {
             return TwoPiecePreference::make(bps, sides_from_strings(labels));
           }),
           py::arg("breakpoints"), py::arg("labels"),
           "Breakpoints 0=b0<...<bK=1 and one 'L'/'R' label per interval")
      .def_readonly("breakpoints", &TwoPiecePreference::breakpoints)
      .def_property_readonly("labels",
                             [](const TwoPiecePreference& p) {
                               std::vector<std::string> out;
                               for (Side s : p.labels) out.push_back(to_string(s));
                               return out;
                             })
      .def("eval", &TwoPiecePreference::eval, py::arg("x"))
      .def("hungry", &TwoPiecePreference::hungry)
      .def("monotone", &TwoPiecePreference::monotone)
      .def("switches", &TwoPiecePreference::switches)
      .def("reflected", &TwoPiecePreference::reflected);

  py::class_<AdditivePiecewiseConstant>(m, "AdditivePiecewiseConstant")
      .def(py::init(&pwc_from_blocks), py::arg("blocks"),
           "Blocks as (start, end, density) tuples covering [0, 1]")
      .def("integral", &AdditivePiecewiseConstant::integral, py::arg("a"), py::arg("b"))
      .def("total", &AdditivePiecewiseConstant::total)
      .def_property_readonly("blocks", [](const AdditivePiecewiseConstant& u) {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& b : u.blocks) out.emplace_back(b.start, b.end, b.density);
        return out;
      });

  m.def(
      "singleton_first",
      [](const std::vector<TwoPiecePreference>& prefs) {
        TwoPieceSession s(prefs);
        return protocol_report_to_dict(singleton_first(s));
      },
      py::arg("preferences"),
      "One first-indifference query per hungry player; envy-free for sizes (1, n-1)");

  m.def(
      "singleton_last",
      [](const std::vector<TwoPiecePreference>& prefs) {
        TwoPieceSession s(prefs);
        return protocol_report_to_dict(singleton_last(s));
      },
      py::arg("preferences"),
      "Mirror protocol; envy-free for sizes (n-1, 1)");

  m.def(
      "monotone_marks",
      [](const std::vector<TwoPiecePreference>& prefs, int k1) {
        TwoPieceSession s(prefs);
        return protocol_report_to_dict(monotone_marks(s, k1));
      },
      py::arg("preferences"), py::arg("k1"),
      "Mark protocol for monotone preferences; envy-free for sizes (k1, n-k1)");

  m.def(
      "duel",
      [](const std::string& protocol, int n, int k1, int k2, int max_queries,
         std::uint64_t seed) {
        DuelReport r = duel(builtin_protocol(protocol, seed), n, k1, k2, max_queries);
        py::dict d;
        d["verdict"] = r.budget_exhausted ? "budget-exhausted" : "not-envy-free";
        d["query_count"] = r.query_count;
        d["replay_consistent"] = r.replay_consistent;
        d["envious"] = r.envious;
        d["cut"] = r.assignment.partition.cuts()[1];
        d["completed_preferences"] = r.completed;
        return d;
      },
      py::arg("protocol"), py::arg("n"), py::arg("k1"), py::arg("k2"),
      py::arg("max_queries") = 1000, py::arg("seed") = 0,
      "Runs a built-in protocol ('marks', 'binary-search', 'random-prober', 'zero-query') "
      "against the adaptive adversary; the output is never envy-free");

  m.def(
      "solve_cake",
      [](const std::vector<AdditivePiecewiseConstant>& utils, const std::vector<int>& sizes,
         double tolerance) {
        std::vector<DemandFn> demands;
        for (const auto& u : utils) demands.push_back(make_additive_demand(u));
        GroupSolution g = solve_groups(demands, sizes, tolerance);
        py::dict d = assignment_to_dict(g.assignment);
        d["envy_slack"] = envy_slack(g.assignment, utils);
        d["demand_evals"] = g.individual.demand_evals;
        return d;
      },
      py::arg("utilities"), py::arg("group_sizes"), py::arg("tolerance") = 1e-3,
      "Approximate envy-free contiguous division for groups of hungry players");

  m.def(
      "solve_chores",
      [](const std::vector<AdditivePiecewiseConstant>& costs, const std::vector<int>& sizes,
         double tolerance) {
        ChoreSolution s = solve_chores(costs, sizes, tolerance);
        py::dict d = assignment_to_dict(s.assignment);
        d["exact"] = s.exact;
        return d;
      },
      py::arg("costs"), py::arg("group_sizes"), py::arg("tolerance") = 1e-3,
      "Envy-free chore division for lazy players via the exemption transform");

  m.def("gen_counterexample", &gen_counterexample, py::arg("n"),
        "Utility family needing many cuts for collection envy-freeness");

  m.def(
      "min_cut_search",
      [](const std::vector<AdditivePiecewiseConstant>& utils, int k1, int k2, int max_cuts,
         int grid_resolution) {
        MinCutResult r = min_cut_search(utils, k1, k2, max_cuts, grid_resolution);
        py::dict d;
        d["found"] = r.collection.has_value();
        d["configurations_checked"] = r.configurations_checked;
        if (r.collection) {
          d["cuts"] = r.collection->cuts;
          d["side"] = r.collection->side;
          d["group_of"] = r.group_of;
        }
        return d;
      },
      py::arg("utilities"), py::arg("k1"), py::arg("k2"), py::arg("max_cuts"),
      py::arg("grid_resolution") = 200,
      "Exhaustive grid search for an envy-free two-collection split");

  m.def(
      "ch_then_pick",
      [](const std::vector<AdditivePiecewiseConstant>& utils, int k1, int k2, double eps,
         int grid_resolution) {
        auto r = ch_then_pick(utils, k1, k2, eps, grid_resolution);
        py::dict d;
        d["found"] = r.has_value();
        if (r) {
          d["cuts"] = r->collection.cuts;
          d["side"] = r->collection.side;
          d["group_of"] = r->group_of;
        }
        return d;
      },
      py::arg("utilities"), py::arg("k1"), py::arg("k2"), py::arg("eps") = 0.02,
      py::arg("grid_resolution") = 200,
      "Consensus halving for all but one player, who then picks a collection");

  m.def(
      "envy_slack",
      [](const std::vector<double>& lengths, const std::vector<std::vector<int>>& groups,
         const std::vector<AdditivePiecewiseConstant>& utils) {
        Assignment a;
        a.partition = validate_partition(lengths);
        a.groups = groups;
        return envy_slack(a, utils);
      },
      py::arg("lengths"), py::arg("groups"), py::arg("utilities"),
      "Worst utility deficit any player has against another group's piece");
}
