#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace multising::cli {

struct SimulateArgs {
  std::string scenario = "A";
  std::size_t p = 10;
  std::size_t q = 4;
  std::size_t n = 100;
  std::size_t m = 1;
  double main_effect = -1.0;
  double interaction = 1.5;
  std::size_t burn_in = 1000;
  std::size_t thin = 10;
  std::uint64_t seed = 1;
  std::string out;
  std::string truth;
};

struct FitArgs {
  std::string data;
  std::string config;
  std::string out;
  std::optional<std::string> engine;
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> burn_in;
  std::optional<std::size_t> thin;
  std::optional<std::uint64_t> seed;
  std::optional<double> cutoff;
  std::optional<std::size_t> chains;
  std::size_t threads = 1;
  bool quiet = false;
};

struct SelectArgs {
  std::string chain;
  std::optional<std::size_t> burn_in;
  double cutoff = 0.5;
  double fdr_bound = 0.5;
  std::size_t blocks = 20;
  std::string out;
};

struct EvaluateArgs {
  std::string chain;
  std::string truth;
  std::string study;
  std::string out;
  double cutoff = 0.5;
  std::optional<std::size_t> threads;
};

struct ConvergeArgs {
  std::vector<std::string> chains;
  std::string data;
  std::string config;
  std::vector<std::uint64_t> seeds;
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> burn_in;
  std::optional<std::string> engine;
  std::size_t threads = 1;
  std::string out;
};

struct IngestArgs {
  std::string csv;
  std::string spec;
  std::string out;
  std::string report;
};

struct ExportArgs {
  std::string summary;
  std::string level = "selected";
  std::string format = "dot";
  std::string out;
  std::string prefix = "graph";
};

int run_simulate(const SimulateArgs& a);
int run_fit(const FitArgs& a);
int run_select(const SelectArgs& a);
int run_evaluate(const EvaluateArgs& a);
int run_converge(const ConvergeArgs& a);
int run_ingest(const IngestArgs& a);
int run_export(const ExportArgs& a);

}  // namespace multising::cli
