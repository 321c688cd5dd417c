#include "macstokes/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "macstokes/experiments.hpp"
#include "macstokes/io.hpp"
#include "macstokes/kronecker.hpp"
#include "macstokes/spectral.hpp"

namespace macstokes {

using Json = nlohmann::ordered_json;

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Identities: return "identities";
    case Command::Spectrum: return "spectrum";
    case Command::Solve: return "solve";
    case Command::Taylor: return "taylor";
  }
  return "?";
}

Command parse_command(std::string_view name) {
  for (auto c : {Command::Identities, Command::Spectrum, Command::Solve, Command::Taylor}) {
    if (name == to_string(c)) return c;
  }
  throw UsageError("unknown command '" + std::string(name) + "'");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError("invalid value '" + s + "' for " + std::string(key));
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw UsageError("invalid value '" + s + "' for " + std::string(key) + " (expected true or false)");
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  const std::string s = trim(text);
  std::size_t start = 0;
  while (start <= s.size() && !s.empty()) {
    const auto comma = s.find(',', start);
    out.push_back(parse_number<double>(key, std::string_view(s).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

std::optional<PreconditionSide> parse_side(const std::string& s) {
  if (s == "auto") return std::nullopt;
  if (s == "left") return PreconditionSide::Left;
  if (s == "right") return PreconditionSide::Right;
  throw UsageError("invalid side '" + s + "' (expected auto, left or right)");
}

std::string side_name(PreconditionSide s) { return s == PreconditionSide::Left ? "left" : "right"; }

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"command", "nx",        "ny",        "bc",
                                                "rho",     "mu",        "dt",        "precond",
                                                "side",    "tol",       "max_iters", "output_dir",
                                                "export_matrices",      "eps2_list", "seed",
                                                "table",   "steps"};
  return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "command") cfg.command = parse_command(trim(value));
  else if (key == "nx") cfg.nx = parse_number<int>(key, value);
  else if (key == "ny") cfg.ny = parse_number<int>(key, value);
  else if (key == "bc") cfg.bc = trim(value);
  else if (key == "rho") cfg.rho = parse_number<double>(key, value);
  else if (key == "mu") cfg.mu = parse_number<double>(key, value);
  else if (key == "dt") cfg.dt = parse_number<double>(key, value);
  else if (key == "precond") cfg.precond = trim(value);
  else if (key == "side") cfg.side = trim(value);
  else if (key == "tol") cfg.tol = parse_number<double>(key, value);
  else if (key == "max_iters") cfg.max_iters = parse_number<int>(key, value);
  else if (key == "output_dir") cfg.output_dir = trim(value);
  else if (key == "export_matrices") cfg.export_matrices = parse_bool(key, value);
  else if (key == "eps2_list") cfg.eps2_list = parse_list(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "table") cfg.table = parse_bool(key, value);
  else if (key == "steps") cfg.steps = parse_number<int>(key, value);
  else throw UsageError("unknown config key '" + std::string(key) + "'");
}

void RunConfig::validate() const {
  if (nx < 2 || ny < 2) throw UsageError("nx and ny must be at least 2");
  if (!(tol > 0.0)) throw UsageError("tol must be positive");
  if (max_iters < 1) throw UsageError("max_iters must be at least 1");
  if (steps < 1) throw UsageError("steps must be at least 1");
  if (!(mu >= 0.0) || !(rho >= 0.0) || !(dt > 0.0)) throw UsageError("need mu >= 0, rho >= 0 and dt > 0");
  if (output_dir.empty()) throw UsageError("output_dir must not be empty");
  for (double e : eps2_list) {
    if (!(e > 0.0)) throw UsageError("eps2 values must be positive");
  }
  try {
    parse_boundary_kind(bc);
    parse_precond_kind(precond);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  parse_side(side);
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
    apply_setting(base, trim(std::string_view(t).substr(0, eq)), std::string_view(t).substr(eq + 1));
  }
  return base;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "command=" << to_string(c.command) << '\n'
     << "nx=" << c.nx << '\n'
     << "ny=" << c.ny << '\n'
     << "bc=" << c.bc << '\n'
     << "rho=" << format_double(c.rho) << '\n'
     << "mu=" << format_double(c.mu) << '\n'
     << "dt=" << format_double(c.dt) << '\n'
     << "precond=" << c.precond << '\n'
     << "side=" << c.side << '\n'
     << "tol=" << format_double(c.tol) << '\n'
     << "max_iters=" << c.max_iters << '\n'
     << "output_dir=" << c.output_dir << '\n'
     << "export_matrices=" << (c.export_matrices ? "true" : "false") << '\n'
     << "eps2_list=" << join_list(c.eps2_list) << '\n'
     << "seed=" << c.seed << '\n'
     << "table=" << (c.table ? "true" : "false") << '\n'
     << "steps=" << c.steps << '\n';
  return os.str();
}

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Preconditioned GMRES for MAC-discretized Stokes problems", "macstokes"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::map<std::string, std::string> values;
  std::vector<std::string> eps2_values;
  std::map<std::string, CLI::Option*> options;
  std::map<std::string, CLI::App*> subs;

  const std::map<std::string, std::string> help = {
      {"nx", "cells in x"},
      {"ny", "cells in y"},
      {"bc", "dirichlet | xperiodic | periodic"},
      {"rho", "density; 0 selects the steady problem"},
      {"mu", "viscosity"},
      {"dt", "time step"},
      {"precond", "none | p1 | p1exact | p2 | p3 | p4"},
      {"side", "auto | left | right"},
      {"tol", "GMRES relative tolerance"},
      {"max_iters", "GMRES iteration limit"},
      {"output_dir", "directory for CSV, JSON and MatrixMarket output"},
      {"seed", "seed of random probes and right-hand sides"},
      {"steps", "time steps per Taylor run"},
  };
  for (auto c : {Command::Identities, Command::Spectrum, Command::Solve, Command::Taylor}) {
    const std::string name(to_string(c));
    CLI::App* sub = app.add_subcommand(name);
    subs[name] = sub;
    sub->add_option("--config", config_path, "key=value configuration file");
    for (const auto& [key, text] : help) {
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      options[name + ":" + key] = sub->add_option(flag, values[key], text);
    }
    options[name + ":eps2_list"] =
        sub->add_option("--eps2", eps2_values, "comma-separated eps^2 list (unsteady spectrum)")->delimiter(',');
    options[name + ":export_matrices"] = sub->add_flag("--export-matrices", "write matrices/*.mtx");
    options[name + ":table"] = sub->add_flag("--table", "taylor: run the full iteration table");
  }

  subs["identities"]->description("check operator identities (exit 1 on failure)");
  subs["spectrum"]->description("Schur complement spectra, steady or for an eps^2 list");
  subs["solve"]->description("GMRES on a seeded random right-hand side");
  subs["taylor"]->description("Taylor-vortex steps and GMRES iteration counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n" + app.help());
  }

  RunConfig cfg;
  std::string command;
  for (auto* s : app.get_subcommands()) command = s->get_name();
  cfg.command = parse_command(command);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot read config file " + config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = parse_config_text(buf.str(), cfg);
    cfg.command = parse_command(command);
  }
  for (const auto& key : config_keys()) {
    auto it = options.find(command + ":" + key);
    if (it == options.end() || it->second->count() == 0) continue;
    if (key == "eps2_list") {
      cfg.eps2_list.clear();
      for (const auto& v : eps2_values) cfg.eps2_list.push_back(parse_number<double>("eps2", v));
    } else if (key == "export_matrices" || key == "table") {
      apply_setting(cfg, key, "true");
    } else {
      apply_setting(cfg, key, values[key]);
    }
  }
  cfg.validate();
  return cfg;
}

std::vector<IdentityCheck> check_identities(const GridSpec& spec) {
  std::vector<IdentityCheck> out;
  auto rel = [](const SparseMatrix& a, const SparseMatrix& b) {
    const DenseMatrix da(a), db(b);
    const double scale = std::max(db.cwiseAbs().maxCoeff(), 1e-300);
    return (da - db).cwiseAbs().maxCoeff() / scale;
  };
  auto add = [&](std::string name, double err, double tol) { out.push_back({std::move(name), err, tol, err <= tol}); };

  const StokesOperators ops = build_operators(spec, ProblemParams::steady_stokes(1.0));
  add("D = -G^T", rel(ops.D, -SparseMatrix(ops.G.transpose())), 1e-14);
  add("D G = Lc", rel(ops.D * ops.G, ops.Lc), 1e-14);
  add("gradient stencil = Kronecker form", rel(ops.G, kronecker::gradient(spec)), 1e-14);
  add("velocity Laplacian stencil = Kronecker form", rel(ops.L, kronecker::velocity_laplacian(spec)), 1e-14);
  add("pressure Laplacian stencil = Kronecker form", rel(ops.Lc, kronecker::pressure_laplacian(spec)), 1e-14);
  add("(A - G G^T) G = closed form", rel(commutator_matrix(spec, ops.params), kronecker::steady_commutator(spec)),
      1e-12);

  for (const auto& [axis, n, periodic] :
       {std::tuple{"x", spec.nx(), periodic_x(spec.bc())}, std::tuple{"y", spec.ny(), periodic_y(spec.bc())}}) {
    const std::string tag = std::string(" (") + axis + ", n=" + std::to_string(n) + ")";
    if (periodic) {
      const auto b = build_1d_blocks(n, BlockFamily::Periodic);
      add("B_P B_P^T = T_P" + tag, rel(b.difference * SparseMatrix(b.difference.transpose()), b.periodic_laplacian),
          1e-14);
    } else {
      const auto b = build_1d_blocks(n, BlockFamily::Dirichlet);
      const SparseMatrix bt = b.difference.transpose();
      add("B_D B_D^T = T_N" + tag, rel(b.difference * bt, b.neumann_laplacian), 1e-14);
      add("B_D^T B_D = T_D" + tag, rel(bt * b.difference, b.dirichlet_laplacian), 1e-14);
      add("T_E = T_N + 2 E_0" + tag, rel(b.reflected_laplacian, b.neumann_laplacian + 2.0 * b.corner_selector), 1e-14);
      add("B_D T_D B_D^T = T_N^2" + tag,
          rel(b.difference * b.dirichlet_laplacian * bt, b.neumann_laplacian * b.neumann_laplacian), 1e-14);
    }
  }
  return out;
}

namespace {

Json grid_json(const GridSpec& spec) {
  return Json{{"nx", spec.nx()}, {"ny", spec.ny()}, {"h", spec.h()}, {"bc", std::string(to_string(spec.bc()))}};
}

Json report_json(const IterationReport& r) {
  return Json{{"iterations", r.iterations},
              {"converged", r.converged},
              {"side", side_name(r.side)},
              {"final_relative_residual", r.final_relative_residual},
              {"final_true_relative_residual", r.final_true_relative_residual},
              {"residual_history", r.residual_history},
              {"true_residual_history", r.true_residual_history}};
}

Json spectral_json(const SpectralReport& r) {
  Json counts = Json::array();
  for (const auto& c : r.counts_by_tol) counts.push_back({{"unit_tol", c.unit_tol}, {"n_nonunitary", c.n_nonunitary}});
  return Json{{"dof_total", r.dof_total},
              {"eigenvalue_count", r.eigenvalues.size()},
              {"n_zero", r.n_zero},
              {"n_unit", r.n_unit},
              {"n_nonunitary", r.n_nonunitary},
              {"n_nonunitary_nonzero", r.n_nonunitary_nonzero},
              {"counts_by_tol", counts},
              {"count_plateau", r.count_plateau},
              {"unit_tol", r.unit_tol},
              {"zero_tol", r.zero_tol},
              {"lambda_min_nonzero", r.lambda_min_nonzero},
              {"lambda_max", r.lambda_max},
              {"beta_est", r.beta_est},
              {"max_abs_imag", r.max_abs_imag}};
}

void save_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

ProblemParams params_of(const RunConfig& c) {
  return c.rho == 0.0 ? ProblemParams::steady_stokes(c.mu) : ProblemParams::unsteady(c.rho, c.mu, c.dt);
}

void export_matrices(const std::filesystem::path& dir, const StokesOperators& ops) {
  write_matrix_market(dir / "A.mtx", ops.A);
  write_matrix_market(dir / "G.mtx", ops.G);
  write_matrix_market(dir / "D.mtx", ops.D);
  write_matrix_market(dir / "L.mtx", ops.L);
  write_matrix_market(dir / "Lc.mtx", ops.Lc);
  write_matrix_market(dir / "M.mtx", SaddleOperator(std::make_shared<const StokesOperators>(ops)).to_sparse());
}

int run_identities(const RunConfig& c, const GridSpec& spec, std::ostream& out) {
  const auto checks = check_identities(spec);
  bool ok = true;
  Json list = Json::array();
  for (const auto& ch : checks) {
    ok = ok && ch.passed;
    out << (ch.passed ? "PASS " : "FAIL ") << ch.name << "  error=" << format_double(ch.error)
        << " tol=" << format_double(ch.tol) << '\n';
    list.push_back({{"name", ch.name}, {"error", ch.error}, {"tol", ch.tol}, {"passed", ch.passed}});
  }
  save_json(std::filesystem::path(c.output_dir) / "report.json",
            Json{{"command", "identities"}, {"grid", grid_json(spec)}, {"checks", list}, {"passed", ok}});
  return ok ? kExitOk : kExitCheckFailed;
}

int run_spectrum(const RunConfig& c, const GridSpec& spec, std::ostream& out) {
  const std::filesystem::path dir(c.output_dir);
  if (c.eps2_list.empty()) {
    const SpectralReport r = analyze_steady(spec);
    std::vector<std::complex<double>> ev(r.eigenvalues.begin(), r.eigenvalues.end());
    eigenvalue_table(ev).save(dir / "spectrum.csv");
    Json j{{"command", "spectrum"}, {"mode", "steady"}, {"grid", grid_json(spec)}};
    j.update(spectral_json(r));
    save_json(dir / "report.json", j);
    out << "DOF " << r.dof_total << "  non-unitary " << r.n_nonunitary << " (zero " << r.n_zero << ")  beta "
        << format_double(r.beta_est) << '\n';
    return kExitOk;
  }
  const auto reports = verify_unsteady_bounds(spec, c.eps2_list);
  CsvTable csv({"eps2", "re", "im"});
  Json list = Json::array();
  for (const auto& r : reports) {
    for (double l : r.spectrum.eigenvalues) csv.add_row({format_double(r.eps2), format_double(l), format_double(0.0)});
    Json j{{"eps2", r.eps2},
           {"steady_beta_sq", r.steady_beta_sq},
           {"within_bounds", r.within_bounds},
           {"sigma_route_max_diff", r.sigma_route_max_diff}};
    j.update(spectral_json(r.spectrum));
    list.push_back(j);
    out << "eps2 " << format_double(r.eps2) << "  lambda in [" << format_double(r.spectrum.lambda_min_nonzero) << ", "
        << format_double(r.spectrum.lambda_max) << "]  bounds " << (r.within_bounds ? "hold" : "violated") << '\n';
  }
  csv.save(dir / "spectrum.csv");
  save_json(dir / "report.json",
            Json{{"command", "spectrum"}, {"mode", "unsteady"}, {"grid", grid_json(spec)}, {"results", list}});
  return kExitOk;
}

int run_solve(const RunConfig& c, const GridSpec& spec, std::ostream& out) {
  GmresConfig g;
  g.rel_tol = c.tol;
  g.max_iters = c.max_iters;
  const PrecondKind kind = parse_precond_kind(c.precond);
  const GmresResult res = random_solve(spec, params_of(c), kind, parse_side(c.side), c.seed, g);
  const auto& r = res.report;
  CsvTable csv({"iteration", "residual", "true_residual"});
  for (std::size_t k = 0; k < r.residual_history.size(); ++k) {
    csv.add_row({std::to_string(k), format_double(r.residual_history[k]),
                  format_double(k < r.true_residual_history.size() ? r.true_residual_history[k] : 0.0)});
  }
  const std::filesystem::path dir(c.output_dir);
  csv.save(dir / "residuals.csv");
  Json j{{"command", "solve"}, {"grid", grid_json(spec)}, {"precond", c.precond}, {"seed", c.seed}};
  j.update(report_json(r));
  save_json(dir / "report.json", j);
  out << c.precond << " (" << side_name(r.side) << "): " << r.iterations << " iterations, "
      << (r.converged ? "converged" : "not converged") << ", relative residual "
      << format_double(r.final_relative_residual) << '\n';
  return kExitOk;
}

std::string cell_steps(const TableCell& cell) {
  std::string s;
  for (const auto& st : cell.steps) s += (s.empty() ? "" : " ") + std::to_string(st.report.iterations);
  return s;
}

void print_table(std::ostream& out, const TableSpec& spec, const std::vector<TableCell>& cells) {
  out << std::setw(8) << "rho";
  for (auto bc : spec.bcs) {
    out << " |";
    for (auto k : spec.kinds) out << std::setw(5) << std::string(to_string(bc)).substr(0, 1) << ":" << to_string(k);
  }
  out << '\n';
  for (double rho : spec.rhos) {
    out << std::setw(8) << rho;
    for (auto bc : spec.bcs) {
      out << " |";
      for (auto k : spec.kinds) {
        for (const auto& c : cells) {
          if (c.bc == bc && c.rho == rho && c.kind == k) {
            out << std::setw(int(6 + to_string(k).size())) << (c.converged ? std::to_string(c.iterations) : "x");
          }
        }
      }
    }
    out << '\n';
  }
}

int run_taylor(const RunConfig& c, const GridSpec& spec, std::ostream& out) {
  if (c.nx != c.ny) throw UsageError("taylor runs need a square grid (nx = ny)");
  TaylorVortexParams tv;
  tv.L = spec.length_x();
  tv.mu = c.mu;
  tv.rho = c.rho;
  tv.dt = c.dt;
  if (!(tv.mu > 0.0)) throw UsageError("taylor runs need mu > 0");
  SolveSettings settings;
  settings.gmres.rel_tol = c.tol;
  settings.gmres.max_iters = c.max_iters;
  settings.steps = c.steps;

  std::vector<TableCell> cells;
  TableSpec table;
  table.n = c.nx;
  if (c.table) {
    cells = taylor_table(table, tv, settings);
    print_table(out, table, cells);
  } else {
    cells.push_back(run_table_cell(spec, tv, parse_precond_kind(c.precond), parse_side(c.side), settings));
    const auto& cell = cells.front();
    out << to_string(cell.bc) << " rho=" << format_double(cell.rho) << " " << to_string(cell.kind) << " ("
        << side_name(cell.side) << "): " << cell.iterations << " iterations"
        << (cell.converged ? "" : " (not converged)") << "; steps " << cell_steps(cell) << '\n';
  }

  CsvTable csv({"bc", "rho", "precond", "side", "iterations", "converged", "iterations_by_step"});
  CsvTable errors({"bc", "rho", "precond", "step", "iterations", "true_relative_residual", "velocity_error"});
  Json list = Json::array();
  for (const auto& cell : cells) {
    const std::string bc(to_string(cell.bc)), kind(to_string(cell.kind));
    csv.add_row({bc, format_double(cell.rho), kind, side_name(cell.side), std::to_string(cell.iterations),
                 cell.converged ? "true" : "false", cell_steps(cell)});
    Json steps = Json::array();
    for (const auto& st : cell.steps) {
      errors.add_row({bc, format_double(cell.rho), kind, std::to_string(st.step), std::to_string(st.report.iterations),
                      format_double(st.report.final_true_relative_residual), format_double(st.velocity_error)});
      Json sj{{"step", st.step}, {"velocity_error", st.velocity_error}};
      sj.update(report_json(st.report));
      steps.push_back(sj);
    }
    list.push_back({{"bc", bc},
                    {"rho", cell.rho},
                    {"precond", kind},
                    {"side", side_name(cell.side)},
                    {"iterations", cell.iterations},
                    {"converged", cell.converged},
                    {"steps", steps}});
  }
  const std::filesystem::path dir(c.output_dir);
  csv.save(dir / "table.csv");
  errors.save(dir / "errors.csv");
  save_json(dir / "report.json", Json{{"command", "taylor"},
                                      {"grid", grid_json(spec)},
                                      {"mu", tv.mu},
                                      {"dt", tv.dt},
                                      {"tol", c.tol},
                                      {"cells", list}});
  return kExitOk;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out) {
  c.validate();
  const GridSpec spec(c.nx, c.ny, parse_boundary_kind(c.bc));
  const std::filesystem::path dir(c.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  write_text(dir / "config.txt", serialize_config(c));
  if (c.export_matrices) export_matrices(dir / "matrices", build_operators(spec, params_of(c)));

  switch (c.command) {
    case Command::Identities: return run_identities(c, spec, out);
    case Command::Spectrum: return run_spectrum(c, spec, out);
    case Command::Solve: return run_solve(c, spec, out);
    case Command::Taylor: return run_taylor(c, spec, out);
  }
  return kExitUsage;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(argc, argv), out);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace macstokes
