#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "errbound/cli.hpp"

namespace {

struct CommonArgs {
  std::string source;
  std::vector<std::string> tokens;
  std::string out_path;
  errbound::cli::Options opt;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("source", args.source, "spec file path or example:NAME")->required();
  cmd->add_option("tokens", args.tokens, "example parameters and bound specs");
  cmd->add_option("--out", args.out_path, "write CSV to this path instead of stdout");
  cmd->add_option("--seed", args.opt.seed, "RNG seed");
  cmd->add_option("--method", args.opt.method,
                  "expectation method: exact-discrete|quadrature|monte-carlo");
  cmd->add_option("--tol", args.opt.tol, "absolute and relative tolerance");
}

int with_output(const CommonArgs& args, int (*run)(const std::string&,
                                                   const std::vector<std::string>&,
                                                   const errbound::cli::Options&,
                                                   std::ostream&, std::ostream&)) {
  if (args.out_path.empty())
    return run(args.source, args.tokens, args.opt, std::cout, std::cerr);
  std::ofstream file(args.out_path);
  if (!file) {
    std::cerr << "error: cannot open output file '" << args.out_path << "'\n";
    return errbound::cli::kExitUsage;
  }
  return run(args.source, args.tokens, args.opt, file, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probability-of-error bounds for Bayesian hypothesis testing"};
  app.require_subcommand(1);

  CommonArgs eval_args, sweep_args, zzlb_args;

  auto* eval = app.add_subcommand("eval", "evaluate bounds on a problem");
  add_common(eval, eval_args);

  auto* sweep = app.add_subcommand("sweep", "sweep a parameter and emit a bound curve");
  add_common(sweep, sweep_args);
  sweep->add_option("--axis", sweep_args.opt.axis,
                    "sweep variable: p|q|lambda2|alpha|posterior");
  sweep->add_option("--grid", sweep_args.opt.grid, "grid as lo:hi:n");

  auto* zzlb = app.add_subcommand("zzlb", "MSE lower bound for an estimation problem");
  add_common(zzlb, zzlb_args);
  zzlb->add_option("--provider", zzlb_args.opt.provider,
                   "detection error term: exact-map|b1|b2");
  zzlb->add_option("--p", zzlb_args.opt.p, "exponent for b1/b2 providers");
  zzlb->add_option("--phi-step", zzlb_args.opt.phi_step, "parameter grid step");
  zzlb->add_option("--h-step", zzlb_args.opt.h_step, "offset grid step");
  zzlb->add_option("--h-max", zzlb_args.opt.h_max, "offset grid limit (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : errbound::cli::kExitUsage;
  }

  if (eval->parsed()) return with_output(eval_args, errbound::cli::cmd_eval);
  if (sweep->parsed()) return with_output(sweep_args, errbound::cli::cmd_sweep);
  return with_output(zzlb_args, errbound::cli::cmd_zzlb);
}
