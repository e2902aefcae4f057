#pragma once

#include <string>
#include <vector>

#include "kgf/kgf.hpp"

namespace kgf::cli {

struct ConfigError : Error {
  using Error::Error;
};

struct VerifyBlock {
  double fd_step = 1e-3;  // residual ladder uses 4h, 2h, h
  int richardson_levels = 3;
  int probes = 10;
  int residual_probes = 5;
  int ic_points = 2;
  double t0 = 0.05;
  double oracle_tol = 1e-6;
  double two_path_tol = 1e-5;
  double ic_tol = 1e-4;
  double order_tol = 0.3;
  bool residual = true;
  bool initial_conditions = true;
  bool two_path = true;
  bool oracle = true;
};

struct RunConfig {
  std::string origin;
  ProblemSpec problem;
  std::vector<std::vector<double>> points;  // lexicographically sorted
  std::vector<double> times;                // ascending
  SolverOptions options;
  Method method = Method::direct;
  bool quad_precision = false;
  VerifyBlock verify;
  std::string csv_path;
  int precision = 17;
  int m_max = 3;
  int p_max = 4;
  int operators_radial_order = 64;
  std::vector<int> convergence_orders{16, 32, 64};
  double convergence_tol = 1e-10;
};

// flat "section.key = value" text; '#' starts a comment; unknown or repeated keys are errors
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

}  // namespace kgf::cli
