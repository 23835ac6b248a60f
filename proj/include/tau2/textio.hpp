#pragma once

// Line-oriented text formats. Indices are 1-based, `#` starts a comment,
// blank lines are ignored, and every ParseError carries the line number.
//
// Presentation file:
//   n 3
//   m 2
//   lambda <t> <i> <j> <value>     (i < j; omitted records are 0)
//
// Equation file, one equation per line:
//   [x, y] = c1
//   x^-1 a1 x = a1 c2^3
// Factors: a<k>, c<k>, 1, variables ([a-z][a-z0-9]*), [u, v], (u), each
// optionally raised to ^k; juxtaposition or `*` multiplies.
//
// Experiment config:
//   model tau2 | polycyclic | nilpotent
//   n 3
//   m 2                   (tau2)
//   S inf inf 5           (polycyclic and nilpotent models, default all inf)
//   ell 1 2 3
//   properties mainthm_conjunction regular
//   trials 10000
//   seed 42
//   exact false | true | auto

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tau2/dioph.hpp"
#include "tau2/group.hpp"
#include "tau2/randmodel.hpp"

namespace tau2 {

Tau2Presentation parse_presentation(std::string_view text);
std::string format_presentation(const Tau2Presentation& p);

GroupEquationSystem parse_equations(const Tau2Presentation& p, std::string_view text);

/// A variable-free expression such as "a1", "a1 a2^-1" or "[a1, a2]^2 c1".
MalcevElement parse_element(const Tau2Presentation& p, std::string_view text);

enum class ExactMode { Off, On, Auto };

struct ExperimentConfig {
  ModelSpec model;
  std::vector<int> ells;
  std::vector<std::string> properties;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  ExactMode exact = ExactMode::Off;
};

ExperimentConfig parse_experiment_config(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace tau2
