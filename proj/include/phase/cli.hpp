// Run orchestration: config, subcommands, and machine-readable artifacts.
#pragma once

#include <string>
#include <vector>

namespace phase {

struct RunConfig {
  std::string manifold = "s2";  // s2 | s3
  int grid = 800;
  double epsilon = 0.05;
  double lambda = 1.0;
  double tau = 0.1;
  int path_nodes = 33;
  long seed = 20260801;
  std::string out_dir = ".";

  struct {
    int max_sweeps = 600;
    double tol = 1e-10;
    int slide_samples = 129;
  } minmax;
  struct {
    int samples = 241;
  } slide;
  struct {
    double theta_star = -1.0;  // < 0: use the CMC latitude for lambda
    int samples = 400;
    double margin = 0.05;
  } tube;
  struct {
    int n = 2;
    double R = 1.0, C1 = 1.0, m = 1.0, S_minus = 1.0, S_plus = 2.0;
  } competitor;
  struct {
    int count = 10;
  } index;
  struct {
    std::vector<double> eps_list = {0.02, 0.01, 0.005, 0.002, 0.001};
  } errors;
};

void validate(const RunConfig& cfg);

// Exit codes: 0 all assertions pass, 1 usage/parameter error, 2 assertion
// failure.
int cli_main(int argc, char** argv);

}  // namespace phase
