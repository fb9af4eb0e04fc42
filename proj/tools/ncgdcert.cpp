// Command-line front end: certify generators as NCGD/CGD, evaluate
// trace-distance witness curves, classify qubit generators, and list the
// built-in examples.  Exit codes: 0 NCGD, 2 CGD, 3 inconclusive, 1 input
// error.  All output is assembled in memory first, so failures never leave
// partial files behind.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ncgd/certify.hpp>
#include <ncgd/dynamics.hpp>
#include <ncgd/examples.hpp>
#include <ncgd/io.hpp>

using namespace ncgd;

namespace {

struct InputOptions {
  std::string input_path;
  std::string example_name;
  double gamma = 1.0;
  std::vector<double> rates;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--input", in.input_path, "Generator spec JSON file");
  cmd->add_option("--example", in.example_name,
                  "Built-in example name (see the `examples` command)");
  cmd->add_option("--gamma", in.gamma,
                  "Dephasing rate for the ramsey-dephasing examples, in units of omega")
      ->capture_default_str();
  cmd->add_option("--rates", in.rates,
                  "Rates g11,g33,g12,g13,g23 for the fig2 example, in units of omega")
      ->delimiter(',');
}

GeneratorSpec resolve_input(const InputOptions& in, std::string* description = nullptr) {
  const bool has_input = !in.input_path.empty();
  const bool has_example = !in.example_name.empty();
  if (has_input == has_example)
    throw std::invalid_argument("provide exactly one of --input or --example");
  if (has_input) {
    if (description) *description = in.input_path;
    return load_generator(in.input_path);
  }
  ExampleParams params;
  params.gamma = in.gamma;
  if (!in.rates.empty()) {
    if (in.rates.size() != 5)
      throw std::invalid_argument(
          "--rates needs 5 comma-separated values g11,g33,g12,g13,g23");
    params.rates = {in.rates[0], in.rates[1], in.rates[2], in.rates[3], in.rates[4]};
  }
  if (description) *description = in.example_name;
  return make_example(in.example_name, params);
}

Superoperator build_checked(const GeneratorSpec& spec) {
  const Superoperator S = build(spec);
  const ValidationReport report = validate(S);
  if (!report.ok())
    throw std::invalid_argument(
        "generator is not trace- and Hermiticity-preserving (residuals " +
        std::to_string(report.trace_residual) + ", " +
        std::to_string(report.hermiticity_residual) + ")");
  return S;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::fwrite(content.data(), 1, content.size(), stdout);
  else
    write_text_file(out_path, content);
}

std::string basis_description(const IncoherentBasis& basis) {
  return basis.U.isIdentity(1e-12) ? "computational" : "rotated";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Certifies whether an open-system dynamics, given by its master-equation\n"
      "generator, can generate and later detect coherence (CGD) or not (NCGD),\n"
      "and evaluates the sequential-measurement trace-distance witness.\n"
      "Times and rates are in units of omega wherever the model has a rotation\n"
      "frequency.  Exit codes: 0 NCGD, 2 CGD, 3 inconclusive, 1 input error."};
  app.require_subcommand(1);

  auto* certify = app.add_subcommand("certify", "Certify a generator as NCGD or CGD");
  InputOptions certify_in;
  add_input_options(certify, certify_in);
  double tolerance = 1e-10;
  auto* tolerance_opt =
      certify->add_option("--tolerance", tolerance, "Zero-test tolerance (relative)")
          ->capture_default_str();
  std::string method = "theorem1";
  certify
      ->add_option("--method", method,
                   "theorem1: finite block-product conditions; bruteforce: "
                   "exponentials over a gap grid; theorem2: sampled "
                   "time-dependent chains (constant input reduces to theorem1)")
      ->check(CLI::IsMember({"theorem1", "bruteforce", "theorem2"}))
      ->capture_default_str();
  double grid_max = -1.0;
  certify->add_option("--grid-max", grid_max,
                      "Largest gap / sample time (default 3 / ||generator||)");
  int grid_points = 8;
  certify->add_option("--grid-points", grid_points, "Grid size for sampled methods")
      ->capture_default_str();
  int nmax = 3;
  certify->add_option("--nmax", nmax, "Longest sampled chain for --method theorem2")
      ->capture_default_str();
  std::string certify_out;
  certify->add_option("--out", certify_out, "Write the certificate here instead of stdout");

  auto* curve = app.add_subcommand(
      "witness-curve", "Trace-distance witness over an intermediate-time grid");
  InputOptions curve_in;
  add_input_options(curve, curve_in);
  double t3 = 3.0, t1 = 0.0;
  int samples = 301;
  curve->add_option("--t3", t3, "Final time")->capture_default_str();
  curve->add_option("--t1", t1, "Initial time")->capture_default_str();
  curve->add_option("--samples", samples, "Number of t2 samples")->capture_default_str();
  std::string format = "dat";
  curve->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"dat", "csv", "json"}))
      ->capture_default_str();
  std::string curve_out;
  curve->add_option("--out", curve_out, "Write the curve here instead of stdout");

  auto* classify = app.add_subcommand(
      "classify-qubit", "Closed-form qubit classification (non-generating / "
                        "non-activating / orthogonal NCGD)");
  InputOptions classify_in;
  add_input_options(classify, classify_in);
  double classify_tolerance = 1e-10;
  classify
      ->add_option("--tolerance", classify_tolerance, "Zero-test tolerance (relative)")
      ->capture_default_str();
  std::string classify_out;
  classify->add_option("--out", classify_out, "Write the report here instead of stdout");

  auto* examples_cmd =
      app.add_subcommand("examples", "List the built-in example generators");
  std::string examples_out;
  examples_cmd->add_option("--out", examples_out, "Write the listing here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(certify)) {
      const Superoperator S = build_checked(resolve_input(certify_in));
      if (tolerance_opt->count() == 0 && method == "bruteforce") tolerance = 1e-8;
      if (tolerance <= 0) throw std::invalid_argument("tolerance must be positive");

      Certificate cert;
      if (method == "theorem1") {
        cert = ncgd_time_independent(S, tolerance);
      } else if (method == "bruteforce") {
        cert = ncgd_definition_bruteforce(
            S, default_gap_grid(S, grid_points, grid_max), tolerance);
      } else {
        if (grid_points < 2)
          throw std::invalid_argument("--method theorem2 needs --grid-points >= 2");
        const double norm = spectral_norm(S.M);
        const double hi = grid_max > 0 ? grid_max : (norm > 0 ? 3.0 / norm : 3.0);
        std::vector<double> grid(grid_points);
        for (int k = 0; k < grid_points; ++k) grid[k] = hi * k / (grid_points - 1);
        const GeneratorSpec frozen = resolve_input(certify_in);
        const TimeDependentGenerator gen{[frozen](double) { return frozen; }};
        cert = ncgd_time_dependent_sampled(gen, grid, nmax, tolerance);
      }
      emit(certify_out, certificate_to_json(cert).dump(2) + "\n");
      return exit_code_for(cert.verdict);
    }

    if (app.got_subcommand(curve)) {
      if (t3 <= 0) throw std::invalid_argument("t3 must be positive");
      std::string description;
      const Superoperator S = build_checked(resolve_input(curve_in, &description));
      WitnessCurve wc = witness_curve(S, t3, samples, t1);
      wc.generator = description;
      wc.basis = basis_description(S.basis);
      std::string content;
      if (format == "dat")
        content = curve_to_dat(wc);
      else if (format == "csv")
        content = curve_to_csv(wc);
      else
        content = curve_to_json(wc).dump(2) + "\n";
      emit(curve_out, content);
      return 0;
    }

    if (app.got_subcommand(classify)) {
      if (classify_tolerance <= 0)
        throw std::invalid_argument("tolerance must be positive");
      const GeneratorSpec spec = resolve_input(classify_in);
      if (spec.dim() != 2)
        throw std::invalid_argument("classify-qubit requires dimension 2");
      const QubitClass qc =
          classify_qubit_superop(build_checked(spec), classify_tolerance);
      emit(classify_out, qubit_class_to_json(qc).dump(2) + "\n");
      return exit_code_for(qc.overall);
    }

    std::string listing;
    for (const ExampleInfo& e : example_catalog())
      listing += e.name + "\n    " + e.description + "\n";
    emit(examples_out, listing);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
