#include "app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "loqc/fock.hpp"
#include "loqc/gate_model.hpp"
#include "loqc/monte_carlo.hpp"
#include "loqc/parity.hpp"
#include "loqc/version.hpp"
#include "loqc/walk.hpp"

namespace loqc::cli {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json config_to_json(const RunConfig& cfg) {
  return json{{"command", cfg.command}, {"na", cfg.na},
              {"nr", cfg.nr},           {"nt", cfg.nt},
              {"w", cfg.w},             {"ptot", cfg.ptot},
              {"trials", cfg.trials},   {"seed", cfg.seed},
              {"format", cfg.format}};
}

void csv_preamble(const RunConfig& cfg, std::ostream& os) {
  os << "# version=" << kVersion << "\n";
  os << "# config=" << config_to_json(cfg).dump() << "\n";
}

gates::GateConfig gate_config(const RunConfig& cfg) {
  return {{cfg.na}, {cfg.nr}, {cfg.nt}, cfg.w, cfg.ptot};
}

struct ValueRow {
  std::string quantity;
  double value;
  const char* provenance;
};

int write_value_rows(const RunConfig& cfg, std::ostream& os,
                     const std::vector<ValueRow>& rows) {
  if (cfg.format == "json") {
    json out{{"version", std::string(kVersion)},
             {"config", config_to_json(cfg)}};
    json values = json::array();
    for (const auto& r : rows)
      values.push_back({{"quantity", r.quantity},
                        {"value", r.value},
                        {"provenance", r.provenance}});
    out["values"] = values;
    os << out.dump(2) << "\n";
  } else {
    csv_preamble(cfg, os);
    os << "quantity,value,provenance\n";
    for (const auto& r : rows)
      os << r.quantity << "," << fmt(r.value) << "," << r.provenance << "\n";
  }
  return kOk;
}

}  // namespace

void merge_config_file(RunConfig& cfg, const std::string& path,
                       const std::vector<std::string>& explicit_keys) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config file not readable: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config file parse error: ") +
                             e.what());
  }
  if (!doc.is_object())
    throw std::runtime_error("config file must hold a JSON object");

  auto is_explicit = [&](const char* key) {
    for (const auto& k : explicit_keys)
      if (k == key) return true;
    return false;
  };
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "na") {
        if (!is_explicit("na")) cfg.na = value.get<int>();
      } else if (key == "nr") {
        if (!is_explicit("nr")) cfg.nr = value.get<int>();
      } else if (key == "nt") {
        if (!is_explicit("nt")) cfg.nt = value.get<int>();
      } else if (key == "w") {
        if (!is_explicit("w")) cfg.w = value.get<int>();
      } else if (key == "ptot") {
        if (!is_explicit("ptot")) cfg.ptot = value.get<double>();
      } else if (key == "trials") {
        if (!is_explicit("trials")) cfg.trials = value.get<std::uint64_t>();
      } else if (key == "seed") {
        if (!is_explicit("seed")) cfg.seed = value.get<std::uint64_t>();
      } else if (key == "out") {
        if (!is_explicit("out")) cfg.out = value.get<std::string>();
      } else if (key == "format") {
        if (!is_explicit("format")) cfg.format = value.get<std::string>();
      } else {
        throw std::runtime_error("unknown config key: " + key);
      }
    } catch (const json::exception&) {
      throw std::runtime_error("config key has the wrong type: " + key);
    }
  }
}

std::string config_json(const RunConfig& cfg) {
  return config_to_json(cfg).dump();
}

int run_figscale(const RunConfig& cfg, std::ostream& os) {
  static constexpr std::array<std::array<int, 3>, 10> kCombos{{
      {1, 1, 1},
      {2, 2, 1},
      {2, 2, 2},
      {3, 2, 1},
      {3, 3, 1},
      {3, 3, 3},
      {4, 2, 1},
      {4, 4, 1},
      {4, 4, 4},
      {5, 2, 1},
  }};
  csv_preamble(cfg, os);
  os << "# provenance: gate_budget=formula\n";
  os << "n_a,n_r,n_t,w,gate_budget\n";
  for (const auto& [na, nr, nt] : kCombos) {
    for (int w = 1; w <= 30; ++w) {
      gates::GateConfig gc{{na}, {nr}, {nt}, w, cfg.ptot};
      os << na << "," << nr << "," << nt << "," << w << ","
         << fmt(gates::gate_budget(gc)) << "\n";
    }
  }
  return kOk;
}

int run_resources(const RunConfig& cfg, std::ostream& os) {
  const gates::GateConfig gc = gate_config(cfg);
  const double pa = gc.add.prob();
  const double pr = gc.re.prob();
  const auto uses = gates::expected_uses(gc);
  const auto prim = gates::primitive_counts(gc);
  const auto law = gates::process_exact_cnot(gc);
  const auto fc = gates::factory_cost(gc);

  std::vector<ValueRow> rows{
      {"p_add", walk::p_add(pa, cfg.w), "formula"},
      {"p_re", walk::p_re(pr, cfg.w), "formula"},
      {"p_gate_single", gates::p_gate_single(gc), "formula"},
      {"p_gate_cnot", gates::p_gate_cnot(gc), "formula"},
      {"mean_add_uses",
       walk::mean_encoder_uses(walk::EncoderStage::add, pa, cfg.w).value(),
       "formula"},
      {"mean_re_uses",
       walk::mean_encoder_uses(walk::EncoderStage::re_success, pr, cfg.w)
           .value(),
       "formula"},
      {"mean_re_fail_uses",
       walk::mean_encoder_uses(walk::EncoderStage::re_fail, pr, cfg.w)
           .value_or(0.0),
       "formula"},
      {"e_add", uses.e_add, "formula"},
      {"e_re", uses.e_re, "formula"},
      {"t_g", uses.t_g, "formula"},
      {"n_cs", prim.n_cs, "formula"},
      {"n_elim", prim.n_elim, "formula"},
      {"bell_states", fc.bell_states, "formula"},
      {"elim_states", fc.elim_states, "formula"},
      {"success_exact", law.success, "formula"},
      {"e_add_exact", law.e_add, "formula"},
      {"e_re_exact", law.e_re, "formula"},
      {"t_g_exact", law.t_g, "formula"},
  };
  if (cfg.na == 3 && cfg.nr == 2 && cfg.nt == 1 && cfg.w == 4) {
    rows.push_back({"t_g_reference", gates::reference::kTeleporterUsesGate,
                    "paper-reference"});
    rows.push_back({"e_add_reference", gates::reference::kEncoderUsesAdd,
                    "paper-reference"});
    rows.push_back({"e_re_reference", gates::reference::kEncoderUsesRe,
                    "paper-reference"});
    rows.push_back(
        {"n_cs_reference", gates::reference::kPhysicalCs, "paper-reference"});
    rows.push_back({"n_elim_reference",
                    gates::reference::kEliminationCircuits,
                    "paper-reference"});
  }
  return write_value_rows(cfg, os, rows);
}

int run_factory(const RunConfig& cfg, std::ostream& os) {
  const gates::FactoryCostModel model;
  csv_preamble(cfg, os);
  os << "# factory model: bell_per_component="
     << fmt(model.bell_per_component) << " cs_bell=" << fmt(model.cs_bell)
     << " elim_per_attempt=" << fmt(model.elim_per_attempt)
     << " bell_per_attempt=" << fmt(model.bell_per_attempt)
     << " link_success=" << fmt(model.link_success)
     << " link_qubits=" << model.link_qubits << " heralded_elimination="
     << (model.heralded_elimination ? "true" : "false")
     << " discard_on_failure=" << (model.discard_on_failure ? "true" : "false")
     << "\n";
  os << "# reference: bell_states=1300 elim_states=620 (paper-reference)\n";
  os << "# provenance: bell_states=formula elim_states=formula\n";
  os << "n_a,n_r,w,bell_states,elim_states\n";
  double best_bell = -1.0;
  int best_na = 0, best_nr = 0;
  for (int na = 2; na <= 5; ++na) {
    for (int nr = 2; nr <= 5; ++nr) {
      const auto w = gates::solve_min_w(cfg.ptot, {na}, {nr}, {cfg.nt});
      if (!w) {
        os << na << "," << nr << ",,," << "\n";
        continue;
      }
      gates::GateConfig gc{{na}, {nr}, {cfg.nt}, *w, cfg.ptot};
      const auto fc = gates::factory_cost(gc, model);
      os << na << "," << nr << "," << *w << "," << fmt(fc.bell_states) << ","
         << fmt(fc.elim_states) << "\n";
      if (best_bell < 0.0 || fc.bell_states < best_bell) {
        best_bell = fc.bell_states;
        best_na = na;
        best_nr = nr;
      }
    }
  }
  os << "# minimum: n_a=" << best_na << " n_r=" << best_nr
     << " bell_states=" << fmt(best_bell) << "\n";
  return kOk;
}

int run_mc(const RunConfig& cfg, std::ostream& os) {
  const auto rows =
      mc::mc_report(gate_config(cfg), cfg.trials, {cfg.seed, 0});
  if (cfg.format == "json") {
    json out{{"version", std::string(kVersion)},
             {"config", config_to_json(cfg)}};
    json jrows = json::array();
    for (const auto& r : rows)
      jrows.push_back({{"quantity", r.quantity},
                       {"analytic", r.analytic},
                       {"empirical", r.empirical},
                       {"stderr", r.stderr_},
                       {"z", r.z},
                       {"provenance", mc::to_string(r.provenance)},
                       {"oracle_backed", r.oracle_backed}});
    out["rows"] = jrows;
    os << out.dump(2) << "\n";
  } else {
    csv_preamble(cfg, os);
    os << "quantity,analytic,empirical,stderr,z,provenance,oracle_backed\n";
    for (const auto& r : rows)
      os << r.quantity << "," << fmt(r.analytic) << "," << fmt(r.empirical)
         << "," << fmt(r.stderr_) << "," << fmt(r.z) << ","
         << mc::to_string(r.provenance) << ","
         << (r.oracle_backed ? "true" : "false") << "\n";
  }
  // Oracle-backed rows must sit within the 4-sigma gate.
  for (const auto& r : rows)
    if (r.oracle_backed && std::abs(r.z) > 4.0) return kVerifyFailed;
  return kOk;
}

namespace {

bool check(std::ostream& os, const char* name, bool ok) {
  os << (ok ? "ok " : "FAIL ") << name << "\n";
  return ok;
}

bool verify_elimination_pipeline(std::ostream& os) {
  using exact::Rat;
  bool all = true;

  const auto single = fock::elim_resource_exact(fock::Rail::single);
  all &= check(os, "elimination-resource probability 12/441 exact",
               single.probability == Rat(12, 441));
  const auto want = fock::tn_reference(2);
  fock::FockState got(4, 1);
  for (const auto& [occ, amp] : single.state.terms())
    got.add_term(occ, {amp.to_double(), 0.0});
  all &= check(os, "elimination-resource state (single rail)",
               fock::states_equal(want, got, 1e-10));

  const auto dual = fock::elim_resource_exact(fock::Rail::dual);
  all &= check(os, "elimination-resource probability 12/441 exact (dual)",
               dual.probability == Rat(12, 441));
  const auto dual_want = fock::FockState::from_terms(
      8, 1,
      {{{1, 0, 0, 0, 1, 0, 1, 1}, {1.0, 0.0}},
       {{0, 1, 1, 0, 1, 0, 0, 1}, {1.0, 0.0}},
       {{0, 1, 1, 1, 0, 1, 0, 0}, {1.0, 0.0}}},
      true);
  fock::FockState dual_got(8, 1);
  for (const auto& [occ, amp] : dual.state.terms())
    dual_got.add_term(occ, {amp.to_double(), 0.0});
  all &= check(os, "elimination-resource state (dual rail)",
               fock::states_equal(dual_want, dual_got, 1e-10));
  return all;
}

bool verify_tn_construction(std::ostream& os) {
  bool all = true;
  for (int n = 1; n <= 5; ++n) {
    const auto built = fock::build_tn(n);
    const auto ref = fock::tn_reference(n);
    const bool ok = fock::states_equal(built.state, ref, 1e-10);
    std::string name = "teleporter entanglement order " + std::to_string(n);
    all &= check(os, name.c_str(), ok);
  }
  return all;
}

bool verify_parity_suite(std::ostream& os) {
  bool all = true;
  rng::Prng prng(20240811);
  const parity::Amp a{0.6, 0.0};
  const parity::Amp b{0.0, 0.8};

  bool enc_ok = true;
  for (int w = 1; w <= 7; ++w) {
    const auto grown = parity::encoder_step(parity::encode_logical(a, b, w));
    const auto direct = parity::encode_logical(a, b, w + 1);
    enc_ok &= std::abs(std::abs(inner_product(grown.reg, direct.reg)) - 1.0) <
              1e-10;
  }
  all &= check(os, "encoder step equals direct encoding", enc_ok);

  bool rec_ok = true;
  for (int w = 2; w <= 6; ++w) {
    for (int outcome = 0; outcome <= 1; ++outcome) {
      const auto recovered = parity::z_measure_recover(
          parity::encode_logical(a, b, w), 0, outcome);
      const auto lr = parity::readout_logical(recovered);
      rec_ok &= std::abs(lr.alpha - a) < 1e-10 && std::abs(lr.beta - b) < 1e-10;
    }
  }
  all &= check(os, "measurement recovery round trip", rec_ok);

  const std::array<std::array<parity::Amp, 4>, 6> inputs{{
      {parity::Amp{1, 0}, {0, 0}, {1, 0}, {0, 0}},
      {parity::Amp{1, 0}, {0, 0}, {0, 0}, {1, 0}},
      {parity::Amp{0, 0}, {1, 0}, {1, 0}, {0, 0}},
      {parity::Amp{0, 0}, {1, 0}, {0, 0}, {1, 0}},
      {parity::Amp{1 / std::sqrt(2.0), 0},
       {1 / std::sqrt(2.0), 0},
       {1, 0},
       {0, 0}},
      {parity::Amp{0.6, 0}, {0, 0.8}, {0.48, 0.36}, {-0.8, 0}},
  }};
  bool cnot_ok = true;
  for (int wc = 1; wc <= 4; ++wc) {
    for (int wt = 1; wt <= 4; ++wt) {
      for (const auto& in : inputs) {
        const auto control = parity::encode_logical(in[0], in[1], wc);
        const auto target = parity::encode_logical(in[2], in[3], wt);
        const auto pair = parity::logical_cnot(control, target, &prng);
        const auto got = parity::readout_joint(pair);
        const std::array<parity::Amp, 4> want{
            in[0] * in[2], in[0] * in[3], in[1] * in[3], in[1] * in[2]};
        parity::Amp overlap{0, 0};
        for (int k = 0; k < 4; ++k) overlap += std::conj(want[k]) * got[k];
        cnot_ok &= std::abs(std::abs(overlap) - 1.0) < 1e-10;
      }
    }
  }
  all &= check(os, "encoded CNOT equals the ideal logical CNOT", cnot_ok);

  bool z_ok = true;
  for (int w = 1; w <= 4; ++w) {
    const auto rotated =
        parity::logical_z90(parity::encode_logical(a, b, w), &prng);
    const auto want = parity::encode_logical(a, parity::Amp{0, 1} * b, w);
    z_ok &= std::abs(std::abs(inner_product(rotated.reg, want.reg)) - 1.0) <
            1e-10;
  }
  all &= check(os, "encoded Z90 equals diag(1, i)", z_ok);
  return all;
}

bool verify_walk_forms(std::ostream& os) {
  bool all = true;
  const std::array<double, 5> ps{0.51, 0.6, 2.0 / 3.0, 0.75, 0.8};
  double worst = 0.0;
  for (double p : ps) {
    for (int w = 1; w <= 20; ++w) {
      const auto add = walk::markov_exact({p, -w, 1, 0});
      worst = std::max(worst, std::abs(walk::absorb_prob({p, -w, 1, 0}) -
                                       add.absorb_prob_right));
      worst = std::max(
          worst, std::abs(walk::mean_passage_closed({p, -w, 1, 0}) -
                          add.mean_steps_to_right));
      worst = std::max(
          worst,
          std::abs(*walk::mean_encoder_uses(walk::EncoderStage::add, p, w) -
                   add.mean_steps_to_right));
      if (w > 1) {
        const auto re = walk::markov_exact({p, 0, w, 1});
        worst = std::max(
            worst,
            std::abs(
                *walk::mean_encoder_uses(walk::EncoderStage::re_success, p,
                                         w) -
                re.mean_steps_to_right));
        const auto fre = walk::markov_exact({1.0 - p, -w, 0, -1});
        worst = std::max(
            worst,
            std::abs(*walk::mean_encoder_uses(walk::EncoderStage::re_fail, p,
                                              w) -
                     fre.mean_steps_to_right));
      }
    }
  }
  all &= check(os, "closed forms agree with the exact chain solve to 1e-9",
               worst < 1e-9);
  return all;
}

}  // namespace

int run_verify(const RunConfig&, std::ostream& os) {
  bool all = true;
  all &= verify_elimination_pipeline(os);
  all &= verify_tn_construction(os);
  all &= verify_parity_suite(os);
  all &= verify_walk_forms(os);
  os << (all ? "verify: all checks passed\n" : "verify: FAILURES above\n");
  return all ? kOk : kVerifyFailed;
}

int run_klm_compare(const RunConfig& cfg, std::ostream& os) {
  const double f0 = 0.25;
  const auto bound = gates::klm_resource_bound();
  const auto prim = gates::primitive_counts(gate_config(cfg));
  std::vector<ValueRow> rows;
  for (int level = 0; level <= 4; ++level) {
    const auto it = gates::klm_concat(f0, level);
    rows.push_back({"f_level_" + std::to_string(level), it.f_level,
                    "formula"});
    rows.push_back({"cs_success_" + std::to_string(level), it.cs_success,
                    "formula"});
  }
  // Quoted claim: a four-component encoding reaches 95% two-qubit-gate
  // success; the iteration above is the computed column.
  rows.push_back({"cs_success_reference", 0.95, "paper-reference"});
  rows.push_back({"teleported_cs_bound", 250.0, "paper-reference"});
  rows.push_back(
      {"elim_per_teleported_cs", bound.elim_per_teleported_cs,
       "paper-reference"});
  rows.push_back(
      {"cs_per_teleported_cs", bound.cs_per_teleported_cs, "paper-reference"});
  rows.push_back({"elim_bound", bound.elim_bound, "formula"});
  rows.push_back({"cs_bound", bound.cs_bound, "formula"});
  rows.push_back({"incremental_n_cs", prim.n_cs, "formula"});
  rows.push_back({"incremental_n_elim", prim.n_elim, "formula"});
  return write_value_rows(cfg, os, rows);
}

int run_command(int argc, const char* const* argv) {
  RunConfig cfg;
  std::string config_path;

  CLI::App app{"Incremental parity-encoding toolkit for linear-optics "
               "computing: gate probabilities, resource estimates, seeded "
               "simulation and state-level verification."};
  app.require_subcommand(1);

  std::vector<CLI::App*> subs;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--na", cfg.na, "Adding-stage teleporter order");
    sub->add_option("--nr", cfg.nr, "Re-encoding teleporter order");
    sub->add_option("--nt", cfg.nt, "Gate-stage teleporter order");
    sub->add_option("--w", cfg.w, "Encoding width");
    sub->add_option("--ptot", cfg.ptot, "Target total success probability");
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--format", cfg.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", config_path, "JSON config file");
    subs.push_back(sub);
    return sub;
  };

  add_common(app.add_subcommand(
      "figscale", "Gate budget against width for teleporter combinations "
                  "(CSV header: n_a,n_r,n_t,w,gate_budget)"));
  add_common(app.add_subcommand(
      "resources", "Expected stage uses and primitive counts "
                   "(rows: quantity,value,provenance)"));
  add_common(app.add_subcommand(
      "factory", "Factory-state grid over adding/re-encoding orders "
                 "(CSV header: n_a,n_r,w,bell_states,elim_states)"));
  add_common(app.add_subcommand(
      "mc", "Analytic versus simulated comparison table"));
  add_common(app.add_subcommand(
      "verify", "State-level golden checks; exit 1 on any failure"));
  add_common(app.add_subcommand(
      "klm-compare", "Concatenated-code failure iteration and resource "
                     "bounds (rows: quantity,value,provenance)"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();

  if (!config_path.empty()) {
    std::vector<std::string> explicit_keys;
    for (const char* key :
         {"na", "nr", "nt", "w", "ptot", "trials", "seed", "out", "format"})
      if (sub->count(std::string("--") + key) > 0) explicit_keys.push_back(key);
    try {
      merge_config_file(cfg, config_path, explicit_keys);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kConfigError;
    }
  }

  std::ostringstream artifact;
  int code = kConfigError;
  try {
    if (cfg.command == "figscale")
      code = run_figscale(cfg, artifact);
    else if (cfg.command == "resources")
      code = run_resources(cfg, artifact);
    else if (cfg.command == "factory")
      code = run_factory(cfg, artifact);
    else if (cfg.command == "mc")
      code = run_mc(cfg, artifact);
    else if (cfg.command == "verify")
      code = run_verify(cfg, artifact);
    else if (cfg.command == "klm-compare")
      code = run_klm_compare(cfg, artifact);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }

  if (cfg.out.empty()) {
    std::cout << artifact.str();
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output path: " << cfg.out << "\n";
      return kConfigError;
    }
    out << artifact.str();
  }
  return code;
}

}  // namespace loqc::cli
