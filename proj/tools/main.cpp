#include <cstdio>
#include <exception>

#include "CLI11.hpp"
#include "commands.hpp"
#include "multising/types.hpp"

using namespace multising::cli;

int main(int argc, char** argv) {
  CLI::App app{"multising: multiple Ising graphical models with coupled edge priors"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "multising 0.1.0");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "draw grouped binary data from a benchmark scenario");
  s->add_option("--scenario", sim.scenario, "A, B, C or D")->capture_default_str();
  s->add_option("-p,--variables", sim.p, "number of variables")->capture_default_str();
  s->add_option("-q,--groups", sim.q, "number of groups")->capture_default_str();
  s->add_option("-n,--rows", sim.n, "rows per group")->capture_default_str();
  s->add_option("-m,--attach", sim.m, "edges added per node in preferential attachment")->capture_default_str();
  s->add_option("--main-effect", sim.main_effect)->capture_default_str();
  s->add_option("--interaction", sim.interaction)->capture_default_str();
  s->add_option("--gibbs-burn-in", sim.burn_in)->capture_default_str();
  s->add_option("--gibbs-thin", sim.thin)->capture_default_str();
  s->add_option("--seed", sim.seed)->capture_default_str();
  s->add_option("-o,--out", sim.out, "output CSV")->required();
  s->add_option("--truth", sim.truth, "write the true graphs as JSON");

  FitArgs fit;
  auto* f = app.add_subcommand("fit", "run an MCMC engine on grouped binary data");
  f->add_option("-d,--data", fit.data, "grouped CSV (first column 'group')")->required();
  f->add_option("-c,--config", fit.config, "run configuration JSON");
  f->add_option("-o,--out", fit.out, "output directory")->required();
  f->add_option("--engine", fit.engine, "fb, ab, fbs or abs");
  f->add_option("--iterations", fit.iterations);
  f->add_option("--burn-in", fit.burn_in);
  f->add_option("--thin", fit.thin);
  f->add_option("--seed", fit.seed);
  f->add_option("--cutoff", fit.cutoff);
  f->add_option("--chains", fit.chains);
  f->add_option("--threads", fit.threads)->capture_default_str();
  f->add_flag("--quiet", fit.quiet);

  SelectArgs sel;
  auto* se = app.add_subcommand("select", "summarise a stored chain");
  se->add_option("--chain", sel.chain, "directory written by fit")->required();
  se->add_option("--burn-in", sel.burn_in);
  se->add_option("--cutoff", sel.cutoff)->capture_default_str();
  se->add_option("--fdr-bound", sel.fdr_bound)->capture_default_str();
  se->add_option("--blocks", sel.blocks)->capture_default_str();
  se->add_option("-o,--out", sel.out, "summary JSON (stdout when omitted)");

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "score a fit against known graphs, or run a replicate study");
  e->add_option("--chain", ev.chain, "directory written by fit");
  e->add_option("--truth", ev.truth, "truth JSON written by simulate");
  e->add_option("--study", ev.study, "study configuration JSON");
  e->add_option("-o,--out", ev.out, "scores JSON, or study output directory");
  e->add_option("--cutoff", ev.cutoff)->capture_default_str();
  e->add_option("--threads", ev.threads);

  ConvergeArgs cv;
  auto* c = app.add_subcommand("converge", "compare PPI tables across chains");
  c->add_option("--chain", cv.chains, "fit directories (two or more)");
  c->add_option("-d,--data", cv.data, "grouped CSV, to run fresh chains");
  c->add_option("-c,--config", cv.config);
  c->add_option("--seeds", cv.seeds);
  c->add_option("--iterations", cv.iterations);
  c->add_option("--burn-in", cv.burn_in);
  c->add_option("--engine", cv.engine);
  c->add_option("-o,--out", cv.out, "report JSON");

  IngestArgs in;
  auto* i = app.add_subcommand("ingest", "recode a raw survey CSV into grouped binary data");
  i->add_option("--csv", in.csv)->required();
  i->add_option("--spec", in.spec, "ingest specification JSON")->required();
  i->add_option("-o,--out", in.out, "grouped CSV")->required();
  i->add_option("--report", in.report, "ingest report JSON");

  ExportArgs ex;
  auto* x = app.add_subcommand("export", "write graphs from a summary as edge lists, DOT or GraphML");
  x->add_option("--summary", ex.summary, "summary JSON written by fit or select")->required();
  x->add_option("--level", ex.level, "selected, q25, mean or q75")->capture_default_str();
  x->add_option("--format", ex.format, "edge-list, dot or graphml")->capture_default_str();
  x->add_option("-o,--out", ex.out, "output directory")->required();
  x->add_option("--prefix", ex.prefix)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*s) return run_simulate(sim);
    if (*f) return run_fit(fit);
    if (*se) return run_select(sel);
    if (*e) return run_evaluate(ev);
    if (*c) return run_converge(cv);
    if (*i) return run_ingest(in);
    if (*x) return run_export(ex);
  } catch (const multising::ConfigError& err) {
    std::fprintf(stderr, "configuration error: %s\n", err.what());
    return 2;
  } catch (const multising::DataError& err) {
    std::fprintf(stderr, "data error: %s\n", err.what());
    return 3;
  } catch (const multising::NumericalError& err) {
    std::fprintf(stderr, "numerical error: %s\n", err.what());
    return 4;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
