#include "circfn/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "circfn/characterize.hpp"
#include "circfn/error.hpp"
#include "circfn/json_io.hpp"
#include "circfn/solver.hpp"

namespace circfn::cli {

namespace {

using json_io::json;

struct CommandConfig {
  std::string input = "-";
  std::string output = "-";
  std::optional<double> tol;
  double t_min = 1e3;
  double t_max = 1e8;
  std::size_t t_points = 6;
  std::uint64_t seed = 0;
  std::size_t fft_threshold = kDefaultFftThreshold;
};

json read_input(const CommandConfig& cfg, std::istream& in) {
  try {
    if (cfg.input == "-") return json::parse(in);
    std::ifstream f(cfg.input);
    if (!f) throw FormatError("cannot open input file '" + cfg.input + "'");
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("input is not valid JSON: ") + e.what());
  }
}

void write_output(const CommandConfig& cfg, const json& doc, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw FormatError("cannot open output file '" + cfg.output + "'");
  f << text;
}

PathSpec path_from(const CommandConfig& cfg, std::size_t d) {
  PathSpec path = default_path(d, cfg.t_min, cfg.t_max, cfg.t_points, cfg.seed);
  if (cfg.tol) path.round_tol = *cfg.tol;
  return path;
}

// Evaluation input: {"function": F, "point": Z}.
int cmd_eval(const CommandConfig& cfg, const json& doc, json& result) {
  if (!doc.is_object() || !doc.contains("function") || !doc.contains("point")) {
    throw FormatError("field 'function'/'point': eval input needs both");
  }
  const CircFunction f = json_io::function_from_json(doc["function"], "function");
  const Circulant z = json_io::circulant_from_json(doc["point"], "point");
  result = json_io::to_json(func_eval(f, z, cfg.tol.value_or(-1.0)));
  return kOk;
}

int cmd_solve(const CommandConfig& cfg, const json& doc, json& result) {
  const CircFunction f = json_io::function_from_json(doc, "function");
  if (f.kind() != FunctionKind::Poly) throw FormatError("field 'function.kind': solve needs a polynomial");
  SolveOptions opts;
  if (cfg.tol) opts.tol = *cfg.tol;
  const SolutionSet s = solve_circ_poly(f.numerator(), opts);
  result = json_io::to_json(s);
  switch (s.status) {
    case SolutionStatus::Finite:
      return kOk;
    case SolutionStatus::NoSolution:
      return kNoSolution;
    case SolutionStatus::InfiniteFamily:
      return kInfiniteFamily;
  }
  return kError;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Function calculus over complex circulant matrices", "circfn"};
  app.require_subcommand(1);
  app.fallthrough();

  CommandConfig cfg;
  app.add_option("--input", cfg.input, "Input JSON path, or - for stdin");
  app.add_option("--output", cfg.output, "Output JSON path, or - for stdout");
  app.add_option("--tol", cfg.tol, "Tolerance (pinv/eval: rank threshold, solve: residual, divisor/degree: rounding)")
      ->check(CLI::PositiveNumber);
  app.add_option("--t-min", cfg.t_min, "Smallest path scale")->check(CLI::PositiveNumber);
  app.add_option("--t-max", cfg.t_max, "Largest path scale")->check(CLI::PositiveNumber);
  app.add_option("--t-points", cfg.t_points, "Number of path scales")->check(CLI::Range(3, 1000));
  app.add_option("--seed", cfg.seed, "Seed for path phase retries");
  app.add_option("--fft-threshold", cfg.fft_threshold, "Order at which the FFT path takes over")
      ->check(CLI::PositiveNumber);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues of a circulant");
  auto* pinv_cmd = app.add_subcommand("pinv", "Moore-Penrose pseudoinverse of a circulant");
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a function at a point");
  auto* solve_cmd = app.add_subcommand("solve", "Solve P(Z) = O");
  auto* divisor_cmd = app.add_subcommand("divisor", "Estimate the divisor of a function");
  auto* degree_cmd = app.add_subcommand("degree", "Detect the degree of a regular polynomial");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();  // program name
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "circfn: " << e.what() << "\n";
    return kError;
  }

  try {
    const json doc = read_input(cfg, in);
    json result;
    int code = kOk;
    if (spectrum_cmd->parsed()) {
      result = json_io::to_json(spectrum(json_io::circulant_from_json(doc), cfg.fft_threshold));
    } else if (pinv_cmd->parsed()) {
      result = json_io::to_json(
          pseudoinverse(json_io::circulant_from_json(doc), cfg.tol.value_or(-1.0), cfg.fft_threshold));
    } else if (eval_cmd->parsed()) {
      code = cmd_eval(cfg, doc, result);
    } else if (solve_cmd->parsed()) {
      code = cmd_solve(cfg, doc, result);
    } else if (divisor_cmd->parsed()) {
      const CircFunction f = json_io::function_from_json(doc);
      const DivisorReport r = estimate_divisor(f, path_from(cfg, f.order()));
      result = json_io::to_json(r);
      code = r.rational ? kOk : kNegative;
    } else if (degree_cmd->parsed()) {
      const CircFunction f = json_io::function_from_json(doc);
      const DegreeReport r = detect_poly_degree(f, path_from(cfg, f.order()));
      result = json_io::to_json(r);
      code = r.degree ? kOk : kNegative;
    }
    write_output(cfg, result, out);
    return code;
  } catch (const Error& e) {
    err << "circfn: " << e.what() << "\n";
    return kError;
  } catch (const json::exception& e) {
    err << "circfn: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace circfn::cli
