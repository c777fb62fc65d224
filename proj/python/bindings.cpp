#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "stochlab/block_counting.hpp"
#include "stochlab/density.hpp"
#include "stochlab/disordered_block.hpp"
#include "stochlab/errors.hpp"
#include "stochlab/experiment.hpp"
#include "stochlab/host_adaptive.hpp"
#include "stochlab/host_nonadaptive.hpp"
#include "stochlab/io.hpp"
#include "stochlab/skip_rules.hpp"
#include "stochlab/strategies.hpp"

namespace py = pybind11;
using namespace stochlab;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(r.num(), r.den());
}

Rational from_fraction(const py::object& f) {
  py::object fr = py::module_::import("fractions").attr("Fraction")(f);
  return Rational(fr.attr("numerator").cast<std::int64_t>(),
                  fr.attr("denominator").cast<std::int64_t>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "stochlab core bindings";

  auto base = py::register_exception<Error>(m, "StochlabError");
  py::register_exception<OutOfRangeError>(m, "OutOfRangeError", base);
  py::register_exception<LengthMismatchError>(m, "LengthMismatchError", base);
  py::register_exception<RangeError>(m, "RangeError", base);
  auto contract = py::register_exception<ContractViolation>(m, "ContractViolation", base);
  py::register_exception<NestingError>(m, "NestingError", contract);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base);
  py::register_exception<HorizonError>(m, "HorizonError", base);
  py::register_exception<ParseError>(m, "ParseError", base);

  py::class_<BitPrefix>(m, "BitPrefix")
      .def(py::init([](const std::string& bits) { return BitPrefix::from_string(bits); }),
           py::arg("bits") = "")
      .def_static("from_members",
                  [](std::size_t len, const std::vector<Door>& members) {
                    return BitPrefix::from_members(len, members);
                  })
      .def("__len__", &BitPrefix::size)
      .def("__getitem__", &BitPrefix::at)
      .def("__str__", &BitPrefix::str)
      .def("__repr__", [](const BitPrefix& a) { return "BitPrefix('" + a.str() + "')"; })
      .def("__eq__", [](const BitPrefix& a, const BitPrefix& b) { return a == b; })
      .def("members", &BitPrefix::members)
      .def("popcount", &BitPrefix::popcount);

  py::class_<FinitePermutation>(m, "FinitePermutation")
      .def(py::init<std::vector<std::uint64_t>>())
      .def_static("identity", &FinitePermutation::identity)
      .def_static("reversal", &FinitePermutation::reversal)
      .def_static("swap_adjacent_pairs", &FinitePermutation::swap_adjacent_pairs)
      .def_static("random", &FinitePermutation::random, py::arg("n"), py::arg("seed"))
      .def("__len__", &FinitePermutation::size)
      .def("__call__", &FinitePermutation::operator())
      .def("inverse", &FinitePermutation::inverse)
      .def("forward", &FinitePermutation::forward);

  m.def("rho", [](const BitPrefix& a, std::uint64_t n) { return fraction(rho(a, n)); });
  m.def(
      "density_profile",
      [](const BitPrefix& a, std::uint64_t n_min) {
        DensityProfile p = density_profile(a, n_min);
        py::list samples;
        for (const auto& s : p.samples) samples.append(py::make_tuple(s.n, fraction(s.rho)));
        py::dict out;
        out["samples"] = samples;
        out["max_rho"] = fraction(p.max_rho);
        out["min_rho_tail"] = fraction(p.min_rho_tail);
        out["n_min"] = p.n_min;
        return out;
      },
      py::arg("a"), py::arg("n_min") = kDefaultNMin);
  m.def("join", &join);
  m.def("permute_image", &permute_image);
  m.def("select_monotone", [](const std::string& selector, const BitPrefix& a,
                              std::optional<std::uint64_t> seed) {
    return select_monotone(make_selector(selector, seed), a);
  }, py::arg("selector"), py::arg("a"), py::arg("seed") = py::none());
  m.def(
      "alpha_shift_check",
      [](const BitPrefix& x, const BitPrefix& y, const FinitePermutation& pi, py::object q,
         py::object alpha, std::uint64_t k) {
        py::list out;
        for (const auto& w : alpha_shift_check(x, y, pi, from_fraction(q), from_fraction(alpha), k)) {
          out.append(py::make_tuple(w.m, fraction(w.union_density), w.premise_holds));
        }
        return out;
      });

  m.def(
      "apply_skip_rule",
      [](const std::string& rule, const BitPrefix& a) {
        SkipResult r = apply_skip_rule(make_skip_rule(rule), a, a.size() + 1);
        py::list trace;
        for (const auto& e : r.trace.entries()) trace.append(py::make_tuple(e.door, e.content));
        return py::make_tuple(trace, r.selected);
      },
      py::arg("rule"), py::arg("a"));
  m.def("ordered_block", [](std::uint64_t n) {
    OrderedBlockLayout b = ordered_block(n);
    return py::make_tuple(b.start, b.end, b.sub_block_len);
  });

  py::class_<HostPermutation>(m, "HostPermutation")
      .def_readonly("total_len", &HostPermutation::total_len)
      .def("stages", &HostPermutation::stages)
      .def("__call__", [](const HostPermutation& h, Time t) { return h_eval(h, t); })
      .def("inverse", [](const HostPermutation& h, Door d) { return h_inverse(h, d); })
      .def("block_doors", [](const HostPermutation& h, std::size_t s) {
        const DisorderedBlock& b = h.blocks.at(s);
        return py::make_tuple(b.door_begin(), b.door_end());
      })
      .def("if_doors", [](const HostPermutation& h, std::size_t s) { return h.blocks.at(s).if_doors(); })
      .def("audit", [](const HostPermutation& h) {
        py::dict out;
        out["bijection"] = audit_bijection(h).ok;
        out["concatenation"] = audit_concatenation(h).ok;
        bool gaps = true, large = true;
        for (std::size_t s = 1; s < h.blocks.size(); ++s) {
          gaps = gaps && audit_gap_filling(h.blocks[s]).ok;
          large = large && largeness_ok(h.blocks[s], s);
        }
        out["gap_filling"] = gaps;
        out["largeness"] = large;
        return out;
      });
  m.def("construct_h", [](std::uint64_t stages) { return construct_h(stages); });
  m.def("construct_h_fixed",
        [](std::uint64_t stages, std::uint64_t if_len) { return construct_h_fixed(stages, if_len); });

  m.def(
      "build_host_assignment",
      [](const std::vector<std::string>& family, const HostPermutation& h,
         std::optional<std::uint64_t> seed) {
        std::vector<MonotoneSelector> fs;
        for (const auto& f : family) fs.push_back(make_selector(f, seed));
        HostAssignment r = build_host_assignment(fs, h);
        return py::make_tuple(r.a, r.dropped);
      },
      py::arg("family"), py::arg("h"), py::arg("seed") = py::none());
  m.def(
      "build_adaptive_assignment",
      [](const std::vector<std::string>& family, const HostPermutation& h, std::uint64_t max_stages,
         std::uint64_t cap) {
        std::vector<AdaptiveContestant> gs;
        for (const auto& g : family) gs.push_back(make_contestant(g));
        AdaptiveAssignment r = build_adaptive_assignment(gs, h, max_stages, cap);
        py::list stages;
        for (const auto& st : r.stages) stages.append(py::make_tuple(st.stage, st.block_index));
        return py::make_tuple(r.a, stages, r.failure);
      },
      py::arg("family"), py::arg("h"), py::arg("max_stages"), py::arg("witness_cap") = kDefaultWitnessCap);
  m.def("check_G", &check_G);
  m.def("check_P", [](const BitPrefix& a, const std::vector<Door>& f_doors, std::uint64_t s,
                      Door from) { return check_P(a, f_doors, s, from).ok; });

  m.def("count_big", [](const FinitePermutation& pi, std::uint64_t n) {
    BigCount c = count_big(pi, n);
    return py::make_tuple(c.count, fraction(c.bound));
  });
  m.def(
      "build_x_greedy",
      [](const std::vector<std::string>& perms, std::uint64_t stages, std::uint64_t ceiling) {
        std::vector<PermutationFragment> ps;
        for (const auto& p : perms) ps.push_back(make_fragment(p, ceiling));
        GreedyState st = build_x_greedy(ps, stages, ceiling);
        py::list chosen;
        for (const auto& s : st.stages) chosen.append(py::make_tuple(s.block, s.begin, s.end, s.sigma));
        return py::make_tuple(st.prefix, chosen, st.failed_stage);
      },
      py::arg("perms"), py::arg("stages"), py::arg("block_ceiling") = kDefaultBlockCeiling);

  m.def("format_bitset", &format_bitset);
  m.def("parse_bitset", &parse_bitset);
  m.def("format_permutation", &format_permutation);
  m.def("parse_permutation", &parse_permutation);

  m.def(
      "run_experiment",
      [](const std::map<std::string, std::string>& settings, std::optional<std::filesystem::path> out) {
        ExperimentConfig cfg = load_config(std::nullopt, settings);
        ExperimentReport r = run_experiment(cfg);
        if (out) write_report(r, *out);
        py::list checks;
        for (const auto& c : r.checks) checks.append(py::make_tuple(c.name, c.pass, c.detail));
        return py::make_tuple(r.ok(), checks);
      },
      py::arg("settings"), py::arg("out") = py::none());
}
