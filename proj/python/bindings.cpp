#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <optional>

#include "loqc/fock.hpp"
#include "loqc/gate_model.hpp"
#include "loqc/monte_carlo.hpp"
#include "loqc/parity.hpp"
#include "loqc/rng.hpp"
#include "loqc/version.hpp"
#include "loqc/walk.hpp"

namespace py = pybind11;

namespace {

namespace fock = loqc::fock;
namespace gates = loqc::gates;
namespace mc = loqc::mc;
namespace parity = loqc::parity;
namespace walk = loqc::walk;
using loqc::exact::Rat;

walk::EncoderStage stage_from_string(const std::string& stage) {
  if (stage == "add") return walk::EncoderStage::add;
  if (stage == "re_success") return walk::EncoderStage::re_success;
  if (stage == "re_fail") return walk::EncoderStage::re_fail;
  throw std::invalid_argument(
      "stage must be one of: add, re_success, re_fail");
}

fock::FockState state_from_terms(
    int mode_count, int cutoff,
    const std::vector<std::pair<std::vector<int>, std::complex<double>>>&
        terms,
    bool normalize) {
  std::vector<std::pair<fock::Occupation, std::complex<double>>> converted;
  converted.reserve(terms.size());
  for (const auto& [occ, amp] : terms) {
    fock::Occupation o(occ.begin(), occ.end());
    converted.emplace_back(std::move(o), amp);
  }
  return fock::FockState::from_terms(mode_count, cutoff, converted,
                                     normalize);
}

py::dict state_terms(const fock::FockState& st) {
  py::dict out;
  for (const auto& [occ, amp] : st.terms()) {
    py::tuple key(occ.size());
    for (std::size_t m = 0; m < occ.size(); ++m)
      key[m] = static_cast<int>(occ[m]);
    out[key] = amp;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Incremental parity-encoding toolkit: random-walk analytics, encoded-"
      "gate resource estimates, seeded simulation, Fock-level resource "
      "construction and parity-code procedures.";
  m.attr("__version__") = std::string(loqc::kVersion);

  py::register_exception<fock::CutoffError>(m, "CutoffError");
  py::register_exception<parity::CodeSpaceError>(m, "CodeSpaceError");

  py::class_<loqc::rng::Prng>(m, "Prng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", &loqc::rng::Prng::uniform)
      .def("bernoulli", &loqc::rng::Prng::bernoulli, py::arg("p"));

  // Random-walk analytics.
  py::class_<walk::WalkProblem>(m, "WalkProblem")
      .def(py::init([](double p, int left, int right, int start) {
             walk::WalkProblem prob{p, left, right, start};
             prob.validate();
             return prob;
           }),
           py::arg("p"), py::arg("left"), py::arg("right"), py::arg("start"))
      .def_readonly("p", &walk::WalkProblem::p)
      .def_readonly("left", &walk::WalkProblem::left)
      .def_readonly("right", &walk::WalkProblem::right)
      .def_readonly("start", &walk::WalkProblem::start);

  py::class_<walk::MarkovSolution>(m, "MarkovSolution")
      .def_readonly("absorb_prob_right",
                    &walk::MarkovSolution::absorb_prob_right)
      .def_readonly("mean_steps_to_right",
                    &walk::MarkovSolution::mean_steps_to_right)
      .def_readonly("mean_steps_to_left",
                    &walk::MarkovSolution::mean_steps_to_left);

  m.def("absorb_prob", &walk::absorb_prob, py::arg("problem"));
  m.def("p_add", &walk::p_add, py::arg("p"), py::arg("width"));
  m.def("p_re", &walk::p_re, py::arg("p"), py::arg("width"));
  m.def("markov_exact", &walk::markov_exact, py::arg("problem"));
  m.def("mean_passage_closed", &walk::mean_passage_closed,
        py::arg("problem"));
  m.def(
      "mean_encoder_uses",
      [](const std::string& stage, double p, int width) {
        return walk::mean_encoder_uses(stage_from_string(stage), p, width);
      },
      py::arg("stage"), py::arg("p"), py::arg("width"),
      "Mean encoder uses per stage pass; None when the stage cannot occur.");

  // Encoded-gate model.
  py::class_<gates::Teleporter>(m, "Teleporter")
      .def(py::init<int>(), py::arg("order"))
      .def_readonly("order", &gates::Teleporter::order)
      .def("prob", &gates::Teleporter::prob);

  py::class_<gates::GateConfig>(m, "GateConfig")
      .def(py::init([](int na, int nr, int nt, int width, double p_total) {
             gates::GateConfig cfg{{na}, {nr}, {nt}, width, p_total};
             cfg.validate();
             return cfg;
           }),
           py::arg("na") = 3, py::arg("nr") = 2, py::arg("nt") = 1,
           py::arg("width") = 4, py::arg("p_total") = 0.95)
      .def_property_readonly(
          "na", [](const gates::GateConfig& c) { return c.add.order; })
      .def_property_readonly(
          "nr", [](const gates::GateConfig& c) { return c.re.order; })
      .def_property_readonly(
          "nt", [](const gates::GateConfig& c) { return c.gate.order; })
      .def_readonly("width", &gates::GateConfig::width)
      .def_readonly("p_total", &gates::GateConfig::p_total);

  py::class_<gates::UseCounts>(m, "UseCounts")
      .def_readonly("e_add", &gates::UseCounts::e_add)
      .def_readonly("e_re", &gates::UseCounts::e_re)
      .def_readonly("t_g", &gates::UseCounts::t_g);

  py::class_<gates::PrimitiveCounts>(m, "PrimitiveCounts")
      .def_readonly("n_cs", &gates::PrimitiveCounts::n_cs)
      .def_readonly("n_elim", &gates::PrimitiveCounts::n_elim);

  py::class_<gates::ProcessLaw>(m, "ProcessLaw")
      .def_readonly("success", &gates::ProcessLaw::success)
      .def_readonly("e_add", &gates::ProcessLaw::e_add)
      .def_readonly("e_re", &gates::ProcessLaw::e_re)
      .def_readonly("t_g", &gates::ProcessLaw::t_g);

  py::class_<gates::FactoryCostModel>(m, "FactoryCostModel")
      .def(py::init<>())
      .def_readwrite("bell_per_component",
                     &gates::FactoryCostModel::bell_per_component)
      .def_readwrite("cs_bell", &gates::FactoryCostModel::cs_bell)
      .def_readwrite("elim_per_attempt",
                     &gates::FactoryCostModel::elim_per_attempt)
      .def_readwrite("bell_per_attempt",
                     &gates::FactoryCostModel::bell_per_attempt)
      .def_readwrite("link_success", &gates::FactoryCostModel::link_success)
      .def_readwrite("link_qubits", &gates::FactoryCostModel::link_qubits)
      .def_readwrite("heralded_elimination",
                     &gates::FactoryCostModel::heralded_elimination)
      .def_readwrite("discard_on_failure",
                     &gates::FactoryCostModel::discard_on_failure);

  py::class_<gates::FactoryCost>(m, "FactoryCost")
      .def_readonly("bell_states", &gates::FactoryCost::bell_states)
      .def_readonly("elim_states", &gates::FactoryCost::elim_states);

  m.def("teleporter_prob", &gates::teleporter_prob, py::arg("teleporter"));
  m.def("p_gate_single", &gates::p_gate_single, py::arg("config"));
  m.def("p_gate_cnot", &gates::p_gate_cnot, py::arg("config"));
  m.def("gate_budget", &gates::gate_budget, py::arg("config"));
  m.def("gate_budget_half_encoder", &gates::gate_budget_half_encoder,
        py::arg("p_t"), py::arg("p_total"), py::arg("width"));
  m.def(
      "solve_min_w",
      [](double target, int na, int nr, int nt, int w_max) {
        return gates::solve_min_w(target, {na}, {nr}, {nt}, w_max);
      },
      py::arg("target"), py::arg("na"), py::arg("nr"), py::arg("nt"),
      py::arg("w_max") = 200);
  m.def("expected_uses", &gates::expected_uses, py::arg("config"));
  m.def("expected_uses_single", &gates::expected_uses_single,
        py::arg("config"));
  m.def("primitive_counts", &gates::primitive_counts, py::arg("config"));
  m.def("process_exact_cnot", &gates::process_exact_cnot, py::arg("config"));
  m.def("process_exact_single", &gates::process_exact_single,
        py::arg("config"));
  m.def("f_z_klm", &gates::f_z_klm, py::arg("f"));
  m.def(
      "klm_concat",
      [](double f0, int levels) {
        const auto r = gates::klm_concat(f0, levels);
        return py::make_tuple(r.f_level, r.cs_success);
      },
      py::arg("f0"), py::arg("levels"));
  m.def("klm_resource_bound", [] {
    const auto b = gates::klm_resource_bound();
    return py::make_tuple(b.elim_bound, b.cs_bound);
  });
  m.def("factory_cost", &gates::factory_cost, py::arg("config"),
        py::arg("model") = gates::FactoryCostModel{});

  // Monte Carlo.
  py::class_<mc::RngStream>(m, "RngStream")
      .def(py::init([](std::uint64_t seed, std::uint64_t stream_id) {
             return mc::RngStream{seed, stream_id};
           }),
           py::arg("seed"), py::arg("stream_id") = 0)
      .def_readonly("seed", &mc::RngStream::seed)
      .def_readonly("stream_id", &mc::RngStream::stream_id);

  py::class_<mc::Tally>(m, "Tally")
      .def_readonly("n", &mc::Tally::n)
      .def("mean", &mc::Tally::mean)
      .def("stderr_of_mean", &mc::Tally::stderr_of_mean);

  py::class_<mc::RatioTally>(m, "RatioTally")
      .def_readonly("n", &mc::RatioTally::n)
      .def("mean", &mc::RatioTally::mean)
      .def("stderr_of_mean", &mc::RatioTally::stderr_of_mean);

  py::class_<mc::RunReport>(m, "RunReport")
      .def_readonly("trials", &mc::RunReport::trials)
      .def_readonly("successes", &mc::RunReport::successes)
      .def_readonly("logical_losses", &mc::RunReport::logical_losses)
      .def_readonly("encoder_uses_add", &mc::RunReport::encoder_uses_add)
      .def_readonly("encoder_uses_re", &mc::RunReport::encoder_uses_re)
      .def_readonly("teleporter_uses_gate",
                    &mc::RunReport::teleporter_uses_gate)
      .def_readonly("bell_states", &mc::RunReport::bell_states)
      .def_readonly("elim_states", &mc::RunReport::elim_states)
      .def_readonly("steps_to_success", &mc::RunReport::steps_to_success)
      .def_readonly("steps_to_loss", &mc::RunReport::steps_to_loss)
      .def("success_fraction", &mc::RunReport::success_fraction)
      .def("success_stderr", &mc::RunReport::success_stderr);

  m.def("sim_walk", &mc::sim_walk, py::arg("problem"), py::arg("trials"),
        py::arg("rng"));
  m.def("sim_z90", &mc::sim_z90, py::arg("config"), py::arg("trials"),
        py::arg("rng"), py::arg("model") = gates::FactoryCostModel{});
  m.def("sim_cnot", &mc::sim_cnot, py::arg("config"), py::arg("trials"),
        py::arg("rng"), py::arg("model") = gates::FactoryCostModel{});
  m.def(
      "mc_report",
      [](const gates::GateConfig& cfg, std::uint64_t trials,
         const mc::RngStream& rng) {
        py::list rows;
        for (const auto& r : mc::mc_report(cfg, trials, rng)) {
          py::dict row;
          row["quantity"] = r.quantity;
          row["analytic"] = r.analytic;
          row["empirical"] = r.empirical;
          row["stderr"] = r.stderr_;
          row["z"] = r.z;
          row["provenance"] = mc::to_string(r.provenance);
          row["oracle_backed"] = r.oracle_backed;
          rows.append(row);
        }
        return rows;
      },
      py::arg("config"), py::arg("trials"), py::arg("rng"));

  // Fock-level engine (complex-double mode; the exact-rational pipeline
  // backs the C++ verification suite).
  py::class_<fock::FockState>(m, "FockState")
      .def_property_readonly("mode_count", &fock::FockState::mode_count)
      .def_property_readonly("cutoff", &fock::FockState::cutoff)
      .def("terms", &state_terms)
      .def("norm_sq", &fock::FockState::norm_sq)
      .def("__len__", &fock::FockState::term_count);

  m.def("make_state", &state_from_terms, py::arg("mode_count"),
        py::arg("cutoff"), py::arg("terms"), py::arg("normalize") = true);
  m.def(
      "apply_bs",
      [](const fock::FockState& st, int mode_i, int mode_j, int refl_num,
         int refl_den) {
        return fock::apply_bs(st, {mode_i, mode_j, Rat(refl_num, refl_den)});
      },
      py::arg("state"), py::arg("mode_i"), py::arg("mode_j"),
      py::arg("refl_num"), py::arg("refl_den") = 1);
  m.def(
      "condition_count",
      [](const fock::FockState& st, int mode, int count) {
        const auto c = fock::condition_count(st, mode, count);
        return py::make_tuple(c.probability, c.state);
      },
      py::arg("state"), py::arg("mode"), py::arg("count"),
      "Returns (probability, reduced state or None).");
  m.def(
      "eliminate_11",
      [](const fock::FockState& st, int qubit_b, int qubit_c) {
        auto [state, prob] = fock::eliminate_11(st, qubit_b, qubit_c);
        return py::make_tuple(std::move(state), prob);
      },
      py::arg("state"), py::arg("qubit_b"), py::arg("qubit_c"));
  m.def("permute_modes", &fock::permute_modes<std::complex<double>>,
        py::arg("state"), py::arg("perm"));
  m.def("tensor", &fock::tensor<std::complex<double>>, py::arg("a"),
        py::arg("b"));
  m.def(
      "elim_resource",
      [](const std::string& rail) {
        const auto r = fock::elim_resource(
            rail == "dual" ? fock::Rail::dual : fock::Rail::single);
        return py::make_tuple(r.state, r.probability);
      },
      py::arg("rail") = "single");
  m.def(
      "build_tn",
      [](int n) {
        auto r = fock::build_tn(n);
        return py::make_tuple(std::move(r.state), r.step_permutations);
      },
      py::arg("n"));
  m.def("tn_reference", &fock::tn_reference, py::arg("n"));
  m.def("states_equal", &fock::states_equal<std::complex<double>>,
        py::arg("a"), py::arg("b"), py::arg("tol") = 1e-10);
  m.def("state_dump", &fock::dump, py::arg("state"));

  // Parity-code procedures.
  py::class_<parity::EncodedQubit>(m, "EncodedQubit")
      .def_readonly("width", &parity::EncodedQubit::width)
      .def("amplitudes", [](const parity::EncodedQubit& q) {
        return q.reg.amplitudes();
      });

  py::class_<parity::EncodedPair>(m, "EncodedPair")
      .def_readonly("control_width", &parity::EncodedPair::control_width)
      .def_readonly("target_width", &parity::EncodedPair::target_width)
      .def("amplitudes", [](const parity::EncodedPair& q) {
        return q.reg.amplitudes();
      });

  m.def(
      "encode_logical",
      [](std::complex<double> alpha, std::complex<double> beta, int width) {
        return parity::encode_logical(alpha, beta, width);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("width"));
  m.def("encoder_step", &parity::encoder_step, py::arg("qubit"),
        py::arg("target_component") = 0);
  m.def(
      "z_measure_recover",
      [](const parity::EncodedQubit& q, int component,
         std::optional<int> outcome, std::optional<std::uint64_t> seed,
         bool allow_unencode) {
        if (outcome) {
          return parity::z_measure_recover(q, component, outcome, nullptr,
                                           allow_unencode);
        }
        loqc::rng::Prng prng(seed.value_or(0));
        return parity::z_measure_recover(q, component, std::nullopt, &prng,
                                         allow_unencode);
      },
      py::arg("qubit"), py::arg("component"),
      py::arg("outcome") = std::nullopt, py::arg("seed") = std::nullopt,
      py::arg("allow_unencode") = false);
  m.def(
      "readout_logical",
      [](const parity::EncodedQubit& q, double tol) {
        const auto lr = parity::readout_logical(q, tol);
        return py::make_tuple(lr.alpha, lr.beta);
      },
      py::arg("qubit"), py::arg("tol") = 1e-10);
  m.def(
      "logical_cnot",
      [](const parity::EncodedQubit& control,
         const parity::EncodedQubit& target, std::uint64_t seed) {
        loqc::rng::Prng prng(seed);
        return parity::logical_cnot(control, target, &prng);
      },
      py::arg("control"), py::arg("target"), py::arg("seed") = 0);
  m.def(
      "readout_joint",
      [](const parity::EncodedPair& pair, double tol) {
        const auto amps = parity::readout_joint(pair, tol);
        return py::make_tuple(amps[0], amps[1], amps[2], amps[3]);
      },
      py::arg("pair"), py::arg("tol") = 1e-10);
  m.def(
      "logical_z90",
      [](const parity::EncodedQubit& q, std::uint64_t seed) {
        loqc::rng::Prng prng(seed);
        return parity::logical_z90(q, &prng);
      },
      py::arg("qubit"), py::arg("seed") = 0);
}
