#include "commands.hpp"

#include "method_spec.hpp"
#include "output.hpp"

#include "admd/datasets.hpp"
#include "admd/errors.hpp"
#include "admd/evaluation.hpp"
#include "admd/filters.hpp"
#include "admd/linalg.hpp"
#include "admd/matrix_io.hpp"
#include "admd/version.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <future>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace admd::cli {
namespace fs = std::filesystem;
namespace {

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  bool strict = false;
};

struct GenerateArgs {
  std::string dataset;
  fs::path out;
  Index nx = 0, ny = 0, nt = 0, rows = 0, cols = 0, waves = 0;
  double dt = 0, amplitude = 0, omega = 0, epsilon = 0, x_max = 0, t_max = 0;
  double noise_std = 0, outlier_frac = 0, outlier_mag = 0;
  std::map<std::string, CLI::Option*> options;
};

struct FitArgs {
  fs::path input;
  fs::path out;
  double dt = 0;
  CLI::Option* dt_option = nullptr;
  std::vector<std::string> methods;
  unsigned jobs = 1;
};

struct SpectrumArgs {
  fs::path input;
  fs::path out;
  bool rpca = false;
  double lambda = 1.0;
};

const std::map<std::string, std::set<std::string>>& dataset_flags() {
  static const std::map<std::string, std::set<std::string>> flags = {
      {"double_gyre", {"nx", "ny", "nt", "dt", "amplitude", "omega", "epsilon"}},
      {"hidden_dynamics", {"nx", "nt", "x-max", "t-max"}},
      {"surrogate", {"rows", "cols", "waves", "dt", "noise-std", "outlier-frac", "outlier-mag"}},
  };
  return flags;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
}

Matrix load_matrix(const fs::path& path) {
  try {
    return read_matrix_file(path);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), e.byte_offset());
  }
}

/// dt from --dt, else from the meta.txt sidecar next to the snapshot file.
double resolve_dt(const FitArgs& args) {
  if (args.dt_option->count() > 0) return args.dt;
  const fs::path meta = args.input.parent_path() / "meta.txt";
  if (fs::exists(meta)) {
    const auto kv = read_key_values(meta);
    if (const auto it = kv.find("dt"); it != kv.end()) {
      try {
        return std::stod(it->second);
      } catch (const std::exception&) {
        throw FormatError(meta.string() + ": unparsable dt '" + it->second + "'", 0);
      }
    }
  }
  throw ParameterError("no time step: pass --dt or keep meta.txt next to " +
                       args.input.string());
}

int cmd_generate(const GenerateArgs& a, const Globals& g, std::ostream& out) {
  const auto& allowed = dataset_flags().at(a.dataset);
  for (const auto& [flag, option] : a.options) {
    if (option->count() > 0 && allowed.count(flag) == 0) {
      throw ParameterError("--" + flag + " does not apply to dataset " + a.dataset);
    }
  }
  auto given = [&](const char* flag) { return a.options.at(flag)->count() > 0; };

  std::ostringstream params;
  std::string layout;
  Matrix data;
  double dt = 0.0;
  if (a.dataset == "double_gyre") {
    DoubleGyreParams p;
    if (given("nx")) p.nx = a.nx;
    if (given("ny")) p.ny = a.ny;
    if (given("nt")) p.nt = a.nt;
    if (given("dt")) p.dt = a.dt;
    if (given("amplitude")) p.amplitude = a.amplitude;
    if (given("omega")) p.omega = a.omega;
    if (given("epsilon")) p.epsilon = a.epsilon;
    const SnapshotMatrix x = double_gyre_vorticity(p);
    data = x.data();
    dt = x.dt();
    layout = "vorticity on nx x ny nodes over [0,2]x[0,1], x varies fastest";
    params << "nx = " << p.nx << "\nny = " << p.ny << "\nnt = " << p.nt
           << "\namplitude = " << format_double(p.amplitude)
           << "\nomega = " << format_double(p.omega) << "\nepsilon = " << format_double(p.epsilon)
           << '\n';
  } else if (a.dataset == "hidden_dynamics") {
    HiddenDynamicsParams p;
    if (given("nx")) p.nx = a.nx;
    if (given("nt")) p.nt = a.nt;
    if (given("x-max")) p.x_max = a.x_max;
    if (given("t-max")) p.t_max = a.t_max;
    const SnapshotMatrix x = hidden_dynamics(p);
    data = x.data();
    dt = x.dt();
    layout = "f(x_i, t_j) on nx nodes over [0, x_max]";
    params << "nx = " << p.nx << "\nnt = " << p.nt << "\nx_max = " << format_double(p.x_max)
           << "\nt_max = " << format_double(p.t_max) << "\nk1 = " << format_double(p.k1)
           << "\nomega1 = " << format_double(p.omega1) << "\ngamma1 = " << format_double(p.gamma1)
           << "\nk2 = " << format_double(p.k2) << "\nomega2 = " << format_double(p.omega2)
           << "\ngamma2 = " << format_double(p.gamma2) << '\n';
  } else {
    SurrogateParams p;
    p.seed = g.seed;
    if (given("rows")) p.rows = a.rows;
    if (given("cols")) p.cols = a.cols;
    if (given("waves")) p.waves = a.waves;
    if (given("dt")) p.dt = a.dt;
    if (given("noise-std")) p.noise_std = a.noise_std;
    if (given("outlier-frac")) p.outlier_frac = a.outlier_frac;
    if (given("outlier-mag")) p.outlier_mag = a.outlier_mag;
    const SnapshotMatrix x = surrogate_turbulence(p);
    data = x.data();
    dt = x.dt();
    layout = "traveling waves on a periodic grid of rows points";
    params << "waves = " << p.waves << "\nnoise_std = " << format_double(p.noise_std)
           << "\noutlier_frac = " << format_double(p.outlier_frac)
           << "\noutlier_mag = " << format_double(p.outlier_mag) << '\n';
  }

  ensure_directory(a.out);
  write_matrix_file(a.out / "snapshots.mat", data);
  std::ostringstream meta;
  meta << "format = ADMD binary matrix v" << kMatrixFormatVersion << '\n'
       << "generator = admd " << kVersion << '\n'
       << "dataset = " << a.dataset << '\n'
       << "rows = " << data.rows() << '\n'
       << "cols = " << data.cols() << '\n'
       << "dt = " << format_double(dt) << '\n'
       << "layout = " << layout << '\n'
       << "seed = " << g.seed << '\n'
       << "[params]\n"
       << params.str();
  write_text_file(a.out / "meta.txt", meta.str());
  out << "wrote " << (a.out / "snapshots.mat").string() << " (" << data.rows() << " x "
      << data.cols() << ")\n";
  return kExitOk;
}

int convergence_status(const MethodResult& r, const Globals& g, std::ostream& err) {
  if (r.converged()) return kExitOk;
  err << "admd: warning: IALM did not converge for '" << r.label << "' (residual "
      << format_double(r.admd->rpca->residual) << ")\n";
  return g.strict ? kExitNumerical : kExitOk;
}

int cmd_fit(const FitArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  const MethodSpec spec = parse_method_spec(a.methods.front(), g.seed);
  Matrix data = load_matrix(a.input);
  const SnapshotMatrix x(std::move(data), resolve_dt(a));
  const MethodResult r = run_method(x, spec);

  ensure_directory(a.out);
  write_text_file(a.out / "spectrum.csv", spectrum_csv(r.model));
  write_text_file(a.out / "errors.csv", errors_csv(r.errors, x.dt()));
  write_text_file(a.out / "report.txt", report_text(r, g.seed));
  out << r.label << ": rank " << r.model.rank() << ", measurements " << r.measurements_used
      << ", max error " << format_optional(max_error(r.errors)) << '\n';
  return convergence_status(r, g, err);
}

int cmd_compare(const FitArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  if (a.methods.size() < 2) throw ParameterError("compare needs at least two --method specs");
  std::vector<MethodSpec> specs;
  for (const std::string& m : a.methods) specs.push_back(parse_method_spec(m, g.seed));
  Matrix data = load_matrix(a.input);
  const SnapshotMatrix x(std::move(data), resolve_dt(a));

  std::vector<MethodResult> results(specs.size());
  const std::size_t jobs = std::max<std::size_t>(1, a.jobs);
  for (std::size_t begin = 0; begin < specs.size(); begin += jobs) {
    const std::size_t end = std::min(specs.size(), begin + jobs);
    std::vector<std::future<MethodResult>> pending;
    for (std::size_t i = begin; i < end; ++i) {
      pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                   [&x, &spec = specs[i]] { return run_method(x, spec); }));
    }
    for (std::size_t i = begin; i < end; ++i) results[i] = pending[i - begin].get();
  }

  ensure_directory(a.out);
  const std::string table = comparison_csv(results);
  write_text_file(a.out / "comparison.csv", table);
  out << table;
  int status = kExitOk;
  for (const MethodResult& r : results) status = std::max(status, convergence_status(r, g, err));
  return status;
}

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  const Matrix x = load_matrix(a.input);
  require_finite(x, "snapshot matrix");
  const std::vector<double> sigma = singular_spectrum(x);
  ensure_directory(a.out);
  if (!a.rpca) {
    write_text_file(a.out / "singular_values.csv", singular_values_csv(sigma));
    out << "numeric_rank = " << numeric_rank(x) << '\n';
    return kExitOk;
  }
  RpcaParams params;
  params.lambda = a.lambda;
  params.validate();
  const RpcaResult rpca = rpca_ialm(x, params);
  const std::vector<double> low = singular_spectrum(rpca.low_rank);
  write_text_file(a.out / "singular_values.csv", singular_values_csv(sigma, &low));
  out << "numeric_rank = " << numeric_rank(x) << '\n'
      << "numeric_rank_low_rank = " << numeric_rank(rpca.low_rank) << '\n'
      << "rpca_iterations = " << rpca.iterations << '\n';
  return kExitOk;
}

void add_fit_options(CLI::App* cmd, FitArgs& a, bool repeated_method) {
  cmd->add_option("--input", a.input, "Snapshot matrix (ADMD binary format)")->required();
  cmd->add_option("--out", a.out, "Output directory")->required();
  a.dt_option = cmd->add_option("--dt", a.dt, "Time step (default: dt from meta.txt)");
  if (repeated_method) {
    cmd->add_option("--method", a.methods, "Method spec name[:key=value,...]; repeatable")
        ->required();
    cmd->add_option("--jobs", a.jobs, "Methods fitted concurrently")->capture_default_str();
  } else {
    a.methods = {"admd"};
    cmd->add_option("--method", a.methods, "Method spec name[:key=value,...]")
        ->expected(1)
        ->capture_default_str();
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive dynamic mode decomposition experiments", "admd"};
  app.set_config("--config", "", "Read options from a key = value file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_version_flag("--version", kVersion);
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random draw")->capture_default_str();
  app.add_flag("--strict", g.strict, "Treat IALM non-convergence as a failure (exit 4)");

  GenerateArgs ga;
  CLI::App* gen = app.add_subcommand("generate", "Write a dataset as snapshots.mat + meta.txt");
  gen->add_option("--dataset", ga.dataset, "double_gyre, hidden_dynamics or surrogate")
      ->required()
      ->check(CLI::IsMember({"double_gyre", "hidden_dynamics", "surrogate"}));
  gen->add_option("--out", ga.out, "Output directory")->required();
  ga.options["nx"] = gen->add_option("--nx", ga.nx, "Grid nodes in x");
  ga.options["ny"] = gen->add_option("--ny", ga.ny, "Grid nodes in y");
  ga.options["nt"] = gen->add_option("--nt", ga.nt, "Number of snapshots");
  ga.options["dt"] = gen->add_option("--dt", ga.dt, "Time step");
  ga.options["amplitude"] = gen->add_option("--amplitude", ga.amplitude, "Double gyre A");
  ga.options["omega"] = gen->add_option("--omega", ga.omega, "Double gyre angular frequency");
  ga.options["epsilon"] = gen->add_option("--epsilon", ga.epsilon, "Double gyre perturbation");
  ga.options["x-max"] = gen->add_option("--x-max", ga.x_max, "Hidden dynamics x range");
  ga.options["t-max"] = gen->add_option("--t-max", ga.t_max, "Hidden dynamics t range");
  ga.options["rows"] = gen->add_option("--rows", ga.rows, "Surrogate state dimension");
  ga.options["cols"] = gen->add_option("--cols", ga.cols, "Surrogate snapshot count");
  ga.options["waves"] = gen->add_option("--waves", ga.waves, "Surrogate wave count");
  ga.options["noise-std"] = gen->add_option("--noise-std", ga.noise_std, "Dense noise / rms");
  ga.options["outlier-frac"] =
      gen->add_option("--outlier-frac", ga.outlier_frac, "Fraction of spiked entries");
  ga.options["outlier-mag"] =
      gen->add_option("--outlier-mag", ga.outlier_mag, "Spike magnitude / rms");

  FitArgs fa;
  CLI::App* fit = app.add_subcommand("fit", "Fit one method; write spectrum, errors, report");
  add_fit_options(fit, fa, false);

  FitArgs ca;
  CLI::App* cmp = app.add_subcommand("compare", "Fit several methods; write comparison.csv");
  add_fit_options(cmp, ca, true);

  SpectrumArgs sa;
  CLI::App* spec = app.add_subcommand("spectrum", "Singular values of a snapshot matrix");
  spec->add_option("--input", sa.input, "Snapshot matrix (ADMD binary format)")->required();
  spec->add_option("--out", sa.out, "Output directory")->required();
  spec->add_flag("--rpca", sa.rpca, "Also report the spectrum of the IALM low-rank part");
  spec->add_option("--lambda", sa.lambda, "IALM lambda")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(ga, g, out);
    if (fit->parsed()) return cmd_fit(fa, g, out, err);
    if (cmp->parsed()) return cmd_compare(ca, g, out, err);
    return cmd_spectrum(sa, out);
  } catch (const ParameterError& e) {
    err << "admd: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "admd: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "admd: data error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "admd: data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "admd: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"admd"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace admd::cli
