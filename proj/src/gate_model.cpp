#include "loqc/gate_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace loqc::gates {
namespace {

double require_uses(walk::EncoderStage stage, double p, int width) {
  const auto v = walk::mean_encoder_uses(stage, p, width);
  return v ? *v : 0.0;
}

// log P_add evaluated without forming 1 - beta^w, which rounds to one in
// double precision once beta^w drops below machine epsilon.
double log_p_add(double p, int width) {
  if (std::abs(p - 0.5) < 1e-12) return -std::log1p(1.0 / width);
  const double beta = (1.0 - p) / p;
  return std::log1p(-std::pow(beta, width)) -
         std::log1p(-std::pow(beta, width + 1));
}

struct WalkMeans {
  double p_add, add_success, add_loss;
  double p_re, re_success, re_fail;
};

WalkMeans walk_means(const GateConfig& cfg) {
  const double pa = cfg.add.prob();
  const double pr = cfg.re.prob();
  const int w = cfg.width;
  const auto add = walk::markov_exact({pa, -w, 1, 0});
  WalkMeans m{};
  m.p_add = add.absorb_prob_right;
  m.add_success = add.mean_steps_to_right;
  m.add_loss = add.mean_steps_to_left;
  if (w == 1) {
    m.p_re = 1.0;
    m.re_success = 0.0;
    m.re_fail = 0.0;
  } else {
    const auto re = walk::markov_exact({pr, 0, w, 1});
    m.p_re = re.absorb_prob_right;
    m.re_success = re.mean_steps_to_right;
    m.re_fail = walk::markov_exact({1.0 - pr, -w, 0, -1}).mean_steps_to_right;
  }
  return m;
}

}  // namespace

double Teleporter::prob() const {
  if (order < 1) throw std::domain_error("Teleporter: order must be >= 1");
  return static_cast<double>(order) / (order + 1);
}

Rat Teleporter::prob_exact() const {
  if (order < 1) throw std::domain_error("Teleporter: order must be >= 1");
  return Rat(order, order + 1);
}

double teleporter_prob(const Teleporter& t) { return t.prob(); }

void GateConfig::validate() const {
  if (add.order < 1 || re.order < 1 || gate.order < 1)
    throw std::domain_error("GateConfig: teleporter orders must be >= 1");
  if (width < 1) throw std::domain_error("GateConfig: width must be >= 1");
  if (!(p_total > 0.0 && p_total <= 1.0))
    throw std::domain_error("GateConfig: p_total must lie in (0,1]");
}

double p_gate_single(const GateConfig& cfg) {
  cfg.validate();
  const double pr = walk::p_re(cfg.re.prob(), cfg.width);
  return std::exp(log_p_add(cfg.add.prob(), cfg.width) / pr);
}

double p_gate_cnot(const GateConfig& cfg) {
  cfg.validate();
  const double pr = walk::p_re(cfg.re.prob(), cfg.width);
  const double pt = cfg.gate.prob();
  return std::exp(log_p_add(cfg.add.prob(), cfg.width) *
                  (1.0 + 1.0 / (pt * pt * pr)));
}

double gate_budget(const GateConfig& cfg) {
  cfg.validate();
  const double pr = walk::p_re(cfg.re.prob(), cfg.width);
  const double pt = cfg.gate.prob();
  if (cfg.p_total == 1.0) return 0.0;
  const double log_pa = log_p_add(cfg.add.prob(), cfg.width);
  if (log_pa == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(cfg.p_total) / ((1.0 + 1.0 / (pt * pt * pr)) * log_pa);
}

double gate_budget_half_encoder(double p_t, double p_total, int width) {
  if (width < 1)
    throw std::domain_error("gate_budget_half_encoder: width must be >= 1");
  if (p_total == 1.0) return 0.0;
  const double w = width;
  return std::log(p_total) /
         ((w / (p_t * p_t) + 1.0) * -std::log1p(1.0 / w));
}

std::optional<int> solve_min_w(double target, Teleporter add, Teleporter re,
                               Teleporter gate, int w_max) {
  if (!(target > 0.0 && target < 1.0))
    throw std::domain_error("solve_min_w: target must lie in (0,1)");
  for (int w = 1; w <= w_max; ++w) {
    GateConfig cfg{add, re, gate, w, target};
    if (p_gate_cnot(cfg) >= target) return w;
  }
  return std::nullopt;
}

UseCounts expected_uses(const GateConfig& cfg) {
  cfg.validate();
  const double pa = cfg.add.prob();
  const double pr = cfg.re.prob();
  const double pt = cfg.gate.prob();
  const int w = cfg.width;
  const double p_re_w = walk::p_re(pr, w);
  const double n_add = require_uses(walk::EncoderStage::add, pa, w);
  const double n_re = require_uses(walk::EncoderStage::re_success, pr, w);
  const double n_fre = require_uses(walk::EncoderStage::re_fail, pr, w);
  UseCounts out;
  out.t_g = 1.0 / (pt * pt * p_re_w);
  out.e_add = (out.t_g + 1.0) * n_add;
  out.e_re = (1.0 / p_re_w - 1.0) * n_fre + n_re;
  return out;
}

UseCounts expected_uses_single(const GateConfig& cfg) {
  cfg.validate();
  const double pa = cfg.add.prob();
  const double pr = cfg.re.prob();
  const int w = cfg.width;
  const double p_re_w = walk::p_re(pr, w);
  const double n_add = require_uses(walk::EncoderStage::add, pa, w);
  const double n_re = require_uses(walk::EncoderStage::re_success, pr, w);
  const double n_fre = require_uses(walk::EncoderStage::re_fail, pr, w);
  UseCounts out;
  out.t_g = 0.0;
  out.e_add = n_add / p_re_w;
  out.e_re = (1.0 / p_re_w - 1.0) * n_fre + n_re;
  return out;
}

PrimitiveCounts primitive_counts(const GateConfig& cfg) {
  const UseCounts u = expected_uses(cfg);
  const double na = cfg.add.order;
  const double nr = cfg.re.order;
  const double nt = cfg.gate.order;
  PrimitiveCounts out;
  out.n_cs = 2.0 * na * u.e_add + 2.0 * nr * u.e_re + (nt * nt + nt) * u.t_g;
  out.n_elim =
      (na - 1.0) * u.e_add + (nr - 1.0) * u.e_re + 2.0 * (nt - 1.0) * u.t_g;
  return out;
}

ProcessLaw process_exact_cnot(const GateConfig& cfg) {
  cfg.validate();
  const WalkMeans m = walk_means(cfg);
  const double pt = cfg.gate.prob();
  const double s = pt * pt * m.p_re;
  const double v = 1.0 / (1.0 - (1.0 - s) * m.p_add);
  ProcessLaw out;
  out.success = m.p_add * m.p_add * s * v;
  const double add_unconditional =
      m.p_add * m.add_success + (1.0 - m.p_add) * m.add_loss;
  out.e_add = add_unconditional *
              (1.0 + m.p_add + m.p_add * m.p_add * (1.0 - s) * v) /
              out.success;
  const double re_unconditional =
      m.p_re * m.re_success + (1.0 - m.p_re) * m.re_fail;
  out.e_re = re_unconditional / m.p_re;
  out.t_g = 1.0 / s;
  return out;
}

ProcessLaw process_exact_single(const GateConfig& cfg) {
  cfg.validate();
  const WalkMeans m = walk_means(cfg);
  const double v = 1.0 / (1.0 - m.p_add * (1.0 - m.p_re));
  ProcessLaw out;
  out.success = m.p_add * m.p_re * v;
  const double add_unconditional =
      m.p_add * m.add_success + (1.0 - m.p_add) * m.add_loss;
  out.e_add = add_unconditional / (m.p_add * m.p_re);
  const double re_unconditional =
      m.p_re * m.re_success + (1.0 - m.p_re) * m.re_fail;
  out.e_re = re_unconditional / m.p_re;
  out.t_g = 0.0;
  return out;
}

double f_z_klm(double f) {
  if (f < 0.0 || f > 1.0)
    throw std::domain_error("f_z_klm: f must lie in [0,1]");
  return f * f * (2.0 - f) / (1.0 - f * (1.0 - f));
}

Rat f_z_klm_exact(const Rat& f) {
  if (f < 0 || f > 1)
    throw std::domain_error("f_z_klm_exact: f must lie in [0,1]");
  return f * f * (Rat(2) - f) / (Rat(1) - f * (Rat(1) - f));
}

KlmConcat klm_concat(double f0, int levels) {
  if (levels < 0) throw std::domain_error("klm_concat: negative levels");
  double f = f0;
  for (int i = 0; i < levels; ++i) f = f_z_klm(f);
  return {f, (1.0 - f) * (1.0 - f)};
}

KlmResourceBound klm_resource_bound() {
  KlmResourceBound out;
  out.elim_per_teleported_cs = 4.0;
  out.cs_per_teleported_cs = 9.0;
  out.elim_bound = 250.0 * out.elim_per_teleported_cs;
  out.cs_bound = 250.0 * out.cs_per_teleported_cs;
  return out;
}

void FactoryCostModel::validate() const {
  if (!(link_success > 0.0 && link_success <= 1.0))
    throw std::domain_error("FactoryCostModel: link_success out of (0,1]");
  if (link_qubits < 0 || bell_per_component < 0.0 || cs_bell < 0.0 ||
      elim_per_attempt < 0.0 || bell_per_attempt < 0.0)
    throw std::domain_error("FactoryCostModel: negative cost parameter");
}

ResourceCost teleporter_resource_cost(int order, bool dual_rail,
                                      const FactoryCostModel& model) {
  if (order < 1)
    throw std::domain_error("teleporter_resource_cost: order must be >= 1");
  model.validate();
  const double unit_bell =
      dual_rail ? model.bell_per_component + model.cs_bell : 1.0;
  ResourceCost cost{unit_bell, 0.0};
  for (int k = 1; k < order; ++k) {
    double q = std::pow(model.link_success, model.link_qubits);
    if (model.heralded_elimination)
      q *= static_cast<double>(k + 2) / (2.0 * (k + 1));
    if (model.discard_on_failure) {
      cost.bell = (cost.bell + unit_bell + model.bell_per_attempt) / q;
      cost.elim = (cost.elim + model.elim_per_attempt) / q;
    } else {
      cost.bell += unit_bell + model.bell_per_attempt / q;
      cost.elim += model.elim_per_attempt / q;
    }
  }
  if (dual_rail) cost.bell += order * model.cs_bell;
  return cost;
}

FactoryCost factory_cost(const GateConfig& cfg, const FactoryCostModel& model) {
  const UseCounts u = expected_uses(cfg);
  const ResourceCost add = teleporter_resource_cost(cfg.add.order, true, model);
  const ResourceCost re = teleporter_resource_cost(cfg.re.order, true, model);
  // Gate stage: a single-rail teleporter for the control, a dual-rail one for
  // the target, plus the gate's own n_t^2 CS linkages.
  const ResourceCost gate_single =
      teleporter_resource_cost(cfg.gate.order, false, model);
  const ResourceCost gate_dual =
      teleporter_resource_cost(cfg.gate.order, true, model);
  const double nt = cfg.gate.order;
  const double gate_bell =
      gate_single.bell + gate_dual.bell + nt * nt * model.cs_bell;
  const double gate_elim = gate_single.elim + gate_dual.elim;
  FactoryCost out;
  out.bell_states = u.e_add * add.bell + u.e_re * re.bell + u.t_g * gate_bell;
  out.elim_states = u.e_add * add.elim + u.e_re * re.elim + u.t_g * gate_elim;
  return out;
}

}  // namespace loqc::gates
