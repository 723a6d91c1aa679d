#include "ite/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ite/error.hpp"

namespace ite {

using nlohmann::json;

namespace {

constexpr double kMinChainAlpha = 3.0;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) fail(ErrorCode::InvalidConfig, std::string(name) + " must be finite");
}

void check_potential(const PotentialSpec& potential, bool unbounded) {
  if (const auto* c = std::get_if<ConstantPotential>(&potential)) {
    require_finite(c->v0, "v0");
    if (c->v0 <= 0.0) fail(ErrorCode::NonPositivePotential, "constant potential v0 must be > 0");
    return;
  }
  const auto& p = std::get<PowerDecayPotential>(potential);
  require_finite(p.c, "c");
  require_finite(p.alpha, "alpha");
  if (p.c <= 0.0) fail(ErrorCode::NonPositivePotential, "power-decay amplitude c must be > 0");
  if (unbounded && p.alpha <= kMinChainAlpha) {
    fail(ErrorCode::AlphaTooSmall, "power-decay alpha must exceed 3 on an unbounded domain");
  }
}

std::vector<Interval> check_intervals(std::vector<Interval> intervals) {
  if (intervals.empty()) fail(ErrorCode::InvalidConfig, "interval union is empty");
  for (const auto& iv : intervals) {
    require_finite(iv.a, "interval endpoint");
    require_finite(iv.b, "interval endpoint");
    if (!(iv.a < iv.b)) fail(ErrorCode::InvalidConfig, "interval needs a < b");
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& l, const Interval& r) { return l.a < r.a; });
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    // Open intervals sharing an endpoint are still disjoint.
    if (intervals[i].a < intervals[i - 1].b) {
      fail(ErrorCode::OverlappingIntervals, "intervals overlap");
    }
  }
  return intervals;
}

void check_chain(const ShrinkingChain& c) {
  require_finite(c.start, "start");
  if (c.count < 1) fail(ErrorCode::InvalidConfig, "chain count must be >= 1");
  if (!(c.gap > 0.0)) fail(ErrorCode::InvalidConfig, "chain gap must be > 0");
  if (!(c.first_length > 0.0)) fail(ErrorCode::InvalidConfig, "chain first_length must be > 0");
  if (!(c.decay_ratio > 0.0 && c.decay_ratio < 1.0)) {
    fail(ErrorCode::InvalidConfig, "chain decay_ratio must lie in (0,1)");
  }
}

}  // namespace

std::string to_string(ProblemKind kind) {
  return kind == ProblemKind::Schrodinger ? "schrodinger" : "helmholtz";
}

ProblemKind problem_kind_from_string(const std::string& name) {
  if (name == "schrodinger") return ProblemKind::Schrodinger;
  if (name == "helmholtz") return ProblemKind::Helmholtz;
  fail(ErrorCode::InvalidConfig, "unknown problem kind '" + name + "'");
}

std::vector<double> SweepConfig::grid() const {
  std::vector<double> g(static_cast<std::size_t>(std::max(steps, 0)));
  if (g.empty()) return g;
  if (g.size() == 1) {
    g[0] = lambda_min;
    return g;
  }
  const double h = (lambda_max - lambda_min) / static_cast<double>(steps - 1);
  for (int i = 0; i < steps; ++i) g[i] = lambda_min + h * i;
  g.back() = lambda_max;
  return g;
}

int ValidatedProblem::galerkin_dimension() const {
  return static_cast<int>(intervals.size()) * (discretization.cells_per_interval - 1);
}

std::vector<Interval> materialize_domain(const ShrinkingChain& chain) {
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(std::max(chain.count, 0)));
  double consumed = 0.0;
  double len = chain.first_length;
  for (int j = 0; j < chain.count; ++j) {
    const double a = chain.start + j * chain.gap + consumed;
    out.push_back({a, a + len});
    consumed += len;
    len *= chain.decay_ratio;
  }
  return out;
}

double japanese_bracket(double x) { return std::sqrt(1.0 + x * x); }

double potential_value(const PotentialSpec& spec, double x) {
  if (const auto* c = std::get_if<ConstantPotential>(&spec)) return c->v0;
  const auto& p = std::get<PowerDecayPotential>(spec);
  return p.c * std::pow(1.0 + x * x, -0.5 * p.alpha);
}

double weight_value(const WeightKind& weight, double x) {
  if (const auto* w = std::get_if<AgmonWeight>(&weight)) {
    return std::pow(1.0 + x * x, 0.5 * w->alpha);
  }
  return 1.0;
}

ValidatedProblem validate_problem(const ProblemSpec& spec) {
  ValidatedProblem out;
  out.kind = spec.kind;

  if (std::holds_alternative<Ball>(spec.domain)) {
    fail(ErrorCode::BallGivenToGalerkin,
         "ball domains are handled by the radial oracle; the Galerkin engine needs intervals");
  }
  if (const auto* chain = std::get_if<ShrinkingChain>(&spec.domain)) {
    check_chain(*chain);
    out.intervals = materialize_domain(*chain);
    out.from_chain = true;
  } else {
    out.intervals = check_intervals(std::get<IntervalUnion>(spec.domain).intervals);
  }

  check_potential(spec.potential, out.from_chain);
  out.potential = spec.potential;

  if (const auto* w = std::get_if<AgmonWeight>(&spec.weight)) {
    require_finite(w->alpha, "weight alpha");
    if (!(w->alpha > 0.0)) fail(ErrorCode::InvalidConfig, "Agmon weight alpha must be > 0");
  }
  out.weight = spec.weight;

  const auto& d = spec.discretization;
  if (d.cells_per_interval < 4) fail(ErrorCode::TooFewCells, "cells_per_interval must be >= 4");
  if (d.quad_points < 8 || d.quad_points > 64) {
    fail(ErrorCode::InvalidConfig, "quad_points must lie in [8, 64]");
  }
  if (d.num_curves < 1) fail(ErrorCode::InvalidConfig, "num_curves must be >= 1");
  out.discretization = d;
  if (d.num_curves > out.galerkin_dimension()) {
    fail(ErrorCode::InvalidConfig, "num_curves exceeds the Galerkin dimension");
  }

  const auto& s = spec.sweep;
  require_finite(s.lambda_min, "lambda_min");
  require_finite(s.lambda_max, "lambda_max");
  if (!(s.lambda_max > s.lambda_min)) fail(ErrorCode::InvalidConfig, "lambda_max must exceed lambda_min");
  if (s.steps < 2) fail(ErrorCode::InvalidConfig, "sweep steps must be >= 2");
  if (!(s.refine_tol > 0.0)) fail(ErrorCode::InvalidConfig, "refine_tol must be > 0");
  if (!(s.cluster_tol > 0.0)) fail(ErrorCode::InvalidConfig, "cluster_tol must be > 0");
  out.sweep = s;
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

template <typename T>
T get_field(const json& obj, const char* key) {
  if (!obj.contains(key)) fail(ErrorCode::InvalidConfig, std::string("missing field '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T get_field_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  return get_field<T>(obj, key);
}

DomainSpec domain_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidConfig, "domain must be an object");
  const auto type = get_field<std::string>(j, "type");
  if (type == "interval_union") {
    IntervalUnion u;
    const auto& arr = j.contains("intervals") ? j.at("intervals") : json();
    if (!arr.is_array()) fail(ErrorCode::InvalidConfig, "intervals must be an array");
    for (const auto& iv : arr) {
      if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
        fail(ErrorCode::InvalidConfig, "each interval must be [a, b]");
      }
      u.intervals.push_back({iv[0].get<double>(), iv[1].get<double>()});
    }
    return u;
  }
  if (type == "shrinking_chain") {
    ShrinkingChain c;
    c.count = get_field<int>(j, "count");
    c.start = get_field<double>(j, "start");
    c.gap = get_field<double>(j, "gap");
    c.first_length = get_field<double>(j, "first_length");
    c.decay_ratio = get_field<double>(j, "decay_ratio");
    return c;
  }
  if (type == "ball") {
    return Ball{get_field<int>(j, "dim"), get_field<double>(j, "radius")};
  }
  fail(ErrorCode::InvalidConfig, "unknown domain type '" + type + "'");
}

PotentialSpec potential_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidConfig, "potential must be an object");
  const auto type = get_field<std::string>(j, "type");
  if (type == "constant") return ConstantPotential{get_field<double>(j, "v0")};
  if (type == "power_decay") {
    return PowerDecayPotential{get_field<double>(j, "c"), get_field<double>(j, "alpha")};
  }
  fail(ErrorCode::InvalidConfig, "unknown potential type '" + type + "'");
}

double default_weight_alpha(const PotentialSpec& potential) {
  if (const auto* p = std::get_if<PowerDecayPotential>(&potential)) return p->alpha;
  return 4.0;
}

WeightKind weight_from_json(const json& j, const PotentialSpec& potential) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "agmon") return AgmonWeight{default_weight_alpha(potential)};
    if (name == "unweighted") return Unweighted{};
    fail(ErrorCode::InvalidConfig, "unknown weight '" + name + "'");
  }
  if (j.is_object()) {
    const auto type = get_field<std::string>(j, "type");
    if (type == "agmon") {
      return AgmonWeight{get_field_or<double>(j, "alpha", default_weight_alpha(potential))};
    }
    if (type == "unweighted") return Unweighted{};
    fail(ErrorCode::InvalidConfig, "unknown weight type '" + type + "'");
  }
  fail(ErrorCode::InvalidConfig, "weight must be a string or an object");
}

}  // namespace

ProblemSpec problem_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidConfig, "problem file must hold a JSON object");
  ProblemSpec spec;
  spec.kind = problem_kind_from_string(get_field<std::string>(j, "problem"));
  if (!j.contains("domain")) fail(ErrorCode::InvalidConfig, "missing field 'domain'");
  spec.domain = domain_from_json(j.at("domain"));
  if (!j.contains("potential")) fail(ErrorCode::InvalidConfig, "missing field 'potential'");
  spec.potential = potential_from_json(j.at("potential"));
  spec.weight = j.contains("weight") ? weight_from_json(j.at("weight"), spec.potential)
                                     : WeightKind{Unweighted{}};

  if (j.contains("discretization")) {
    const auto& d = j.at("discretization");
    if (!d.is_object()) fail(ErrorCode::InvalidConfig, "discretization must be an object");
    spec.discretization.cells_per_interval =
        get_field_or<int>(d, "cells_per_interval", spec.discretization.cells_per_interval);
    spec.discretization.quad_points = get_field_or<int>(d, "quad_points", spec.discretization.quad_points);
    spec.discretization.num_curves = get_field_or<int>(d, "num_curves", spec.discretization.num_curves);
  }

  if (!j.contains("sweep")) fail(ErrorCode::InvalidConfig, "missing field 'sweep'");
  const auto& s = j.at("sweep");
  if (!s.is_object()) fail(ErrorCode::InvalidConfig, "sweep must be an object");
  spec.sweep.lambda_min = get_field<double>(s, "lambda_min");
  spec.sweep.lambda_max = get_field<double>(s, "lambda_max");
  spec.sweep.steps = get_field_or<int>(s, "steps", spec.sweep.steps);
  spec.sweep.refine_tol = get_field_or<double>(s, "refine_tol", spec.sweep.refine_tol);
  spec.sweep.cluster_tol = get_field_or<double>(s, "cluster_tol", spec.sweep.cluster_tol);
  return spec;
}

namespace {

json potential_json(const PotentialSpec& potential) {
  if (const auto* c = std::get_if<ConstantPotential>(&potential)) {
    return {{"type", "constant"}, {"v0", c->v0}};
  }
  const auto& p = std::get<PowerDecayPotential>(potential);
  return {{"type", "power_decay"}, {"c", p.c}, {"alpha", p.alpha}};
}

json weight_json(const WeightKind& weight) {
  if (const auto* w = std::get_if<AgmonWeight>(&weight)) return {{"type", "agmon"}, {"alpha", w->alpha}};
  return {{"type", "unweighted"}};
}

json discretization_json(const DiscretizationConfig& d) {
  return {{"cells_per_interval", d.cells_per_interval},
          {"quad_points", d.quad_points},
          {"num_curves", d.num_curves}};
}

json sweep_json(const SweepConfig& s) {
  return {{"lambda_min", s.lambda_min},
          {"lambda_max", s.lambda_max},
          {"steps", s.steps},
          {"refine_tol", s.refine_tol},
          {"cluster_tol", s.cluster_tol}};
}

json intervals_json(const std::vector<Interval>& intervals) {
  json arr = json::array();
  for (const auto& iv : intervals) arr.push_back({iv.a, iv.b});
  return arr;
}

}  // namespace

json problem_to_json(const ProblemSpec& spec) {
  json domain;
  if (const auto* u = std::get_if<IntervalUnion>(&spec.domain)) {
    domain = {{"type", "interval_union"}, {"intervals", intervals_json(u->intervals)}};
  } else if (const auto* c = std::get_if<ShrinkingChain>(&spec.domain)) {
    domain = {{"type", "shrinking_chain"}, {"count", c->count}, {"start", c->start}, {"gap", c->gap},
              {"first_length", c->first_length}, {"decay_ratio", c->decay_ratio}};
  } else {
    const auto& b = std::get<Ball>(spec.domain);
    domain = {{"type", "ball"}, {"dim", b.dim}, {"radius", b.radius}};
  }
  return {{"problem", to_string(spec.kind)},
          {"domain", domain},
          {"potential", potential_json(spec.potential)},
          {"weight", weight_json(spec.weight)},
          {"discretization", discretization_json(spec.discretization)},
          {"sweep", sweep_json(spec.sweep)}};
}

json problem_to_json(const ValidatedProblem& p) {
  return {{"problem", to_string(p.kind)},
          {"domain", {{"type", "interval_union"}, {"intervals", intervals_json(p.intervals)}}},
          {"potential", potential_json(p.potential)},
          {"weight", weight_json(p.weight)},
          {"discretization", discretization_json(p.discretization)},
          {"sweep", sweep_json(p.sweep)}};
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidConfig, "cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidConfig, std::string("malformed JSON in '") + path + "': " + e.what());
  }
  return problem_from_json(j);
}

}  // namespace ite
