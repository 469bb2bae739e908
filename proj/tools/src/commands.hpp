#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace fracprox::cli {

struct GenArgs {
  long m = 100;
  long n = 1000;
  long s = 20;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> index;  // seed becomes derive_seed(seed, index), as in bench
  std::string variant = "box_lasso";
  double nf = 1.2;
  double lambda = 0.1;
  double box = 5.0;
  std::string out;
};

struct SolveArgs {
  std::string instance;
  std::string variant;
  std::string schedule = "paper";
  std::string metric;
  std::string gamma = "paper";
  std::optional<std::size_t> max_iter;
  std::optional<double> tol;
  std::string trace_out;
  std::string x_out;
  std::uint64_t seed = 0;
  int init_iters = 200;
};

struct BenchArgs {
  std::string variant = "box_lasso";
  long m = 100;
  long n = 1000;
  long s = 20;
  std::string lambdas = "0.1";
  std::string nfs = "1.2";
  int instances = 10;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  std::string per_instance_out;
  std::string schedule = "paper";
  std::string gamma = "paper";
  std::optional<std::size_t> max_iter;
  std::optional<double> tol;
};

struct VerifyArgs {
  std::string schedule = "paper";
  bool strict = false;
  double tau = 2.0;
  bool inject_fault = false;
  std::vector<std::string> instances;
  std::uint64_t seed = 0;
  std::string json_out;
};

struct RatesArgs {
  std::string trace;
  double theta = 0.5;
  std::string schedule;
  double tau = 2.0;
  std::string mode;  // linear | power; default follows the prediction
  std::string out;
};

int cmd_gen(const GenArgs& args);
int cmd_solve(const SolveArgs& args);
int cmd_bench(const BenchArgs& args);
int cmd_verify(const VerifyArgs& args);
int cmd_rates(const RatesArgs& args);

}  // namespace fracprox::cli
