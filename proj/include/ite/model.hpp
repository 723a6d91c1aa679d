#pragma once

// Problem definition: domains, potentials, weights and the discretization
// and sweep settings that drive the Galerkin pipeline.

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ite {

enum class ProblemKind { Schrodinger, Helmholtz };

std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& name);

struct Interval {
  double a = 0.0;
  double b = 0.0;

  double length() const { return b - a; }
  bool operator==(const Interval&) const = default;
};

struct IntervalUnion {
  std::vector<Interval> intervals;
};

// Finite truncation of an unbounded union of ever shorter intervals.
struct ShrinkingChain {
  int count = 1;
  double start = 0.0;
  double gap = 1.0;
  double first_length = 1.0;
  double decay_ratio = 0.5;
};

// Only consumed by the radial oracle.
struct Ball {
  int dim = 1;
  double radius = 1.0;
};

using DomainSpec = std::variant<IntervalUnion, ShrinkingChain, Ball>;

struct ConstantPotential {
  double v0 = 1.0;
};

// V(x) = c <x>^{-alpha}
struct PowerDecayPotential {
  double c = 1.0;
  double alpha = 4.0;
};

using PotentialSpec = std::variant<ConstantPotential, PowerDecayPotential>;

// w(x) = <x>^{alpha}
struct AgmonWeight {
  double alpha = 4.0;
};

struct Unweighted {};

using WeightKind = std::variant<AgmonWeight, Unweighted>;

struct DiscretizationConfig {
  int cells_per_interval = 64;
  int quad_points = 8;
  int num_curves = 12;
};

struct SweepConfig {
  double lambda_min = 0.0;
  double lambda_max = 1.0;
  int steps = 400;
  double refine_tol = 1e-8;
  double cluster_tol = 1e-6;

  // Uniform grid of `steps` points from lambda_min to lambda_max inclusive.
  std::vector<double> grid() const;
};

struct ProblemSpec {
  ProblemKind kind = ProblemKind::Helmholtz;
  DomainSpec domain = IntervalUnion{};
  PotentialSpec potential = ConstantPotential{};
  WeightKind weight = Unweighted{};
  DiscretizationConfig discretization;
  SweepConfig sweep;
};

// A problem the Galerkin engine can consume: sorted disjoint intervals.
struct ValidatedProblem {
  ProblemKind kind = ProblemKind::Helmholtz;
  std::vector<Interval> intervals;
  bool from_chain = false;
  PotentialSpec potential = ConstantPotential{};
  WeightKind weight = Unweighted{};
  DiscretizationConfig discretization;
  SweepConfig sweep;

  int galerkin_dimension() const;
};

ValidatedProblem validate_problem(const ProblemSpec& spec);

std::vector<Interval> materialize_domain(const ShrinkingChain& chain);

// <x> = sqrt(1 + x^2)
double japanese_bracket(double x);

double potential_value(const PotentialSpec& spec, double x);
double weight_value(const WeightKind& weight, double x);

// Problem files.  Throws Error(InvalidConfig) on schema violations; the
// semantic checks live in validate_problem.
ProblemSpec problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const ProblemSpec& spec);
nlohmann::json problem_to_json(const ValidatedProblem& problem);
ProblemSpec load_problem_file(const std::string& path);

}  // namespace ite
