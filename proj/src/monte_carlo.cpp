#include "loqc/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>

namespace loqc::mc {
namespace {

struct WalkOutcome {
  bool success = false;
  std::uint64_t steps = 0;
};

WalkOutcome run_walk(double p, int left, int right, int start,
                     rng::Prng& rng) {
  int pos = start;
  std::uint64_t steps = 0;
  while (pos > left && pos < right) {
    pos += rng.bernoulli(p) ? 1 : -1;
    ++steps;
  }
  return {pos == right, steps};
}

struct StageCosts {
  double add_bell, add_elim;
  double re_bell, re_elim;
  double gate_bell, gate_elim;
};

StageCosts stage_costs(const gates::GateConfig& cfg,
                       const gates::FactoryCostModel& model) {
  const auto add = gates::teleporter_resource_cost(cfg.add.order, true, model);
  const auto re = gates::teleporter_resource_cost(cfg.re.order, true, model);
  const auto gs = gates::teleporter_resource_cost(cfg.gate.order, false, model);
  const auto gd = gates::teleporter_resource_cost(cfg.gate.order, true, model);
  const double nt = cfg.gate.order;
  return {add.bell,  add.elim,
          re.bell,   re.elim,
          gs.bell + gd.bell + nt * nt * model.cs_bell, gs.elim + gd.elim};
}

}  // namespace

double Tally::stderr_of_mean() const {
  if (n < 2) return 0.0;
  const double m = mean();
  const double var = (sum_sq - n * m * m) / (n - 1);
  return std::sqrt(std::max(var, 0.0) / n);
}

double RatioTally::stderr_of_mean() const {
  if (n < 2 || sp == 0.0) return 0.0;
  const double nd = static_cast<double>(n);
  const double mx = sx / nd;
  const double mp = sp / nd;
  const double r = mx / mp;
  const double var_x = sxx / nd - mx * mx;
  const double var_p = mp * (1.0 - mp);
  const double cov = sxp / nd - mx * mp;
  const double var_r = (var_x - 2.0 * r * cov + r * r * var_p) / (mp * mp);
  return std::sqrt(std::max(var_r, 0.0) / nd);
}

double RunReport::success_stderr() const {
  if (trials == 0) return 0.0;
  const double p = success_fraction();
  return std::sqrt(p * (1.0 - p) / trials);
}

RunReport sim_walk(const walk::WalkProblem& prob, std::uint64_t trials,
                   RngStream rng) {
  if (trials < 1) throw std::invalid_argument("sim_walk: trials >= 1");
  if (prob.p < 0.0 || prob.p > 1.0 || prob.left >= prob.right ||
      prob.start < prob.left || prob.start > prob.right)
    throw std::domain_error("sim_walk: invalid walk problem");
  RunReport report;
  report.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    rng::Prng prng = rng.trial_rng(t);
    const WalkOutcome o =
        run_walk(prob.p, prob.left, prob.right, prob.start, prng);
    if (o.success) {
      ++report.successes;
      report.steps_to_success.add(static_cast<double>(o.steps));
    } else {
      ++report.logical_losses;
      report.steps_to_loss.add(static_cast<double>(o.steps));
    }
  }
  return report;
}

RunReport sim_z90(const gates::GateConfig& cfg, std::uint64_t trials,
                  RngStream rng, const gates::FactoryCostModel& model) {
  cfg.validate();
  if (trials < 1) throw std::invalid_argument("sim_z90: trials >= 1");
  const double pa = cfg.add.prob();
  const double pr = cfg.re.prob();
  const int w = cfg.width;
  const StageCosts costs = stage_costs(cfg, model);

  RunReport report;
  report.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    rng::Prng prng = rng.trial_rng(t);
    std::uint64_t adds = 0;
    std::uint64_t res = 0;
    bool success = false;
    bool lost = false;
    while (!success && !lost) {
      const WalkOutcome add = run_walk(pa, -w, 1, 0, prng);
      adds += add.steps;
      if (!add.success) {
        lost = true;
        break;
      }
      // Deterministic rotation on the fresh component, then re-encode
      // from it; a failed re-encode destroys only the new component.
      const WalkOutcome re =
          w == 1 ? WalkOutcome{true, 0} : run_walk(pr, 0, w, 1, prng);
      res += re.steps;
      success = re.success;
    }
    if (success)
      ++report.successes;
    else
      ++report.logical_losses;
    report.encoder_uses_add.add(static_cast<double>(adds), success);
    report.encoder_uses_re.add(static_cast<double>(res), success);
    report.teleporter_uses_gate.add(0.0, success);
    report.bell_states.add(adds * costs.add_bell + res * costs.re_bell,
                           success);
    report.elim_states.add(adds * costs.add_elim + res * costs.re_elim,
                           success);
  }
  return report;
}

RunReport sim_cnot(const gates::GateConfig& cfg, std::uint64_t trials,
                   RngStream rng, const gates::FactoryCostModel& model) {
  cfg.validate();
  if (trials < 1) throw std::invalid_argument("sim_cnot: trials >= 1");
  const double pa = cfg.add.prob();
  const double pr = cfg.re.prob();
  const double pt = cfg.gate.prob();
  const int w = cfg.width;
  const StageCosts costs = stage_costs(cfg, model);

  RunReport report;
  report.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    rng::Prng prng = rng.trial_rng(t);
    std::uint64_t adds = 0;
    std::uint64_t res = 0;
    std::uint64_t gate_uses = 0;
    bool success = false;
    bool lost = false;

    // Extra component for the control, then for the target.
    for (int q = 0; q < 2 && !lost; ++q) {
      const WalkOutcome add = run_walk(pa, -w, 1, 0, prng);
      adds += add.steps;
      lost = !add.success;
    }

    while (!success && !lost) {
      ++gate_uses;  // one teleporter pair per attempt
      bool need_readd = false;
      if (!prng.bernoulli(pt)) {
        need_readd = true;  // control teleport failed, its extra is gone
      } else if (!prng.bernoulli(pt)) {
        need_readd = true;  // target teleport failed
      } else {
        const WalkOutcome re =
            w == 1 ? WalkOutcome{true, 0} : run_walk(pr, 0, w, 1, prng);
        res += re.steps;
        if (re.success) {
          success = true;
        } else {
          need_readd = true;  // re-encode ate the fresh target component
        }
      }
      if (need_readd) {
        const WalkOutcome add = run_walk(pa, -w, 1, 0, prng);
        adds += add.steps;
        lost = !add.success;
      }
    }

    if (success)
      ++report.successes;
    else
      ++report.logical_losses;
    report.encoder_uses_add.add(static_cast<double>(adds), success);
    report.encoder_uses_re.add(static_cast<double>(res), success);
    report.teleporter_uses_gate.add(static_cast<double>(gate_uses), success);
    report.bell_states.add(adds * costs.add_bell + res * costs.re_bell +
                               gate_uses * costs.gate_bell,
                           success);
    report.elim_states.add(adds * costs.add_elim + res * costs.re_elim +
                               gate_uses * costs.gate_elim,
                           success);
  }
  return report;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::formula:
      return "formula";
    case Provenance::monte_carlo:
      return "monte-carlo";
    case Provenance::paper_reference:
      return "paper-reference";
  }
  return "unknown";
}

std::vector<ComparisonRow> mc_report(const gates::GateConfig& cfg,
                                     std::uint64_t trials, RngStream rng,
                                     const gates::FactoryCostModel& model) {
  if (trials < 1000)
    throw std::invalid_argument("mc_report: needs at least 1000 trials");
  const RunReport run = sim_cnot(cfg, trials, rng, model);
  const gates::ProcessLaw law = gates::process_exact_cnot(cfg);
  const gates::UseCounts uses = gates::expected_uses(cfg);
  const StageCosts costs = stage_costs(cfg, model);

  std::vector<ComparisonRow> rows;
  auto push = [&rows](std::string name, double analytic, double empirical,
                      double err, Provenance prov, bool oracle) {
    const double z = err > 0.0 ? (empirical - analytic) / err : 0.0;
    rows.push_back(
        {std::move(name), analytic, empirical, err, z, prov, oracle});
  };

  push("success", law.success, run.success_fraction(), run.success_stderr(),
       Provenance::formula, true);
  push("success_closed_form", gates::p_gate_cnot(cfg), run.success_fraction(),
       run.success_stderr(), Provenance::formula, false);
  push("success_single_closed_form", gates::p_gate_single(cfg),
       run.success_fraction(), run.success_stderr(), Provenance::formula,
       false);

  push("encoder_uses_add", law.e_add, run.encoder_uses_add.mean(),
       run.encoder_uses_add.stderr_of_mean(), Provenance::formula, true);
  push("encoder_uses_add_closed_form", uses.e_add,
       run.encoder_uses_add.mean(), run.encoder_uses_add.stderr_of_mean(),
       Provenance::formula, false);
  push("encoder_uses_re", law.e_re, run.encoder_uses_re.mean(),
       run.encoder_uses_re.stderr_of_mean(), Provenance::formula, true);
  push("teleporter_uses_gate", law.t_g, run.teleporter_uses_gate.mean(),
       run.teleporter_uses_gate.stderr_of_mean(), Provenance::formula, true);

  const double bell_exact = law.e_add * costs.add_bell +
                            law.e_re * costs.re_bell + law.t_g * costs.gate_bell;
  const double elim_exact = law.e_add * costs.add_elim +
                            law.e_re * costs.re_elim + law.t_g * costs.gate_elim;
  push("bell_states", bell_exact, run.bell_states.mean(),
       run.bell_states.stderr_of_mean(), Provenance::formula, true);
  push("elim_states", elim_exact, run.elim_states.mean(),
       run.elim_states.stderr_of_mean(), Provenance::formula, true);
  const gates::FactoryCost fc = gates::factory_cost(cfg, model);
  push("bell_states_closed_form", fc.bell_states, run.bell_states.mean(),
       run.bell_states.stderr_of_mean(), Provenance::formula, false);
  push("elim_states_closed_form", fc.elim_states, run.elim_states.mean(),
       run.elim_states.stderr_of_mean(), Provenance::formula, false);

  // Quoted values apply to orders (3,2,1) at width 4.
  if (cfg.add.order == 3 && cfg.re.order == 2 && cfg.gate.order == 1 &&
      cfg.width == 4) {
    push("encoder_uses_add_reference", gates::reference::kEncoderUsesAdd,
         run.encoder_uses_add.mean(), run.encoder_uses_add.stderr_of_mean(),
         Provenance::paper_reference, false);
    push("encoder_uses_re_reference", gates::reference::kEncoderUsesRe,
         run.encoder_uses_re.mean(), run.encoder_uses_re.stderr_of_mean(),
         Provenance::paper_reference, false);
    push("teleporter_uses_gate_reference",
         gates::reference::kTeleporterUsesGate,
         run.teleporter_uses_gate.mean(),
         run.teleporter_uses_gate.stderr_of_mean(),
         Provenance::paper_reference, false);
  }
  return rows;
}

}  // namespace loqc::mc
