#include "dualspace/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dualspace/bargmann.hpp"
#include "dualspace/canonical_transforms.hpp"
#include "dualspace/errors.hpp"
#include "dualspace/format.hpp"
#include "dualspace/lindblad.hpp"
#include "dualspace/model_io.hpp"
#include "dualspace/third_quantization.hpp"

namespace dualspace {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalOptions {
  std::optional<double> tol;
  std::string out_dir = ".";
  std::size_t max_dim = kDefaultMaxDimension;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void write_file(const GlobalOptions& opt, const std::string& name, const std::string& content) {
  fs::create_directories(opt.out_dir);
  std::ofstream f(fs::path(opt.out_dir) / name, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + (fs::path(opt.out_dir) / name).string());
  f << content;
}

void write_json(const GlobalOptions& opt, const json& doc) {
  write_file(opt, "report.json", doc.dump(2) + "\n");
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json report_json(const DefectReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"relation", row.relation},
                    {"scope", row.scope},
                    {"max_defect", row.max_defect},
                    {"row", row.row},
                    {"col", row.col},
                    {"tolerance", row.tolerance},
                    {"informational", row.informational},
                    {"passed", row.passed()},
                    {"note", row.note}});
  }
  return {{"title", r.title}, {"passed", r.passed()}, {"rows", rows}};
}

void print_report(std::ostream& out, const DefectReport& r) {
  out << "== " << r.title << "\n";
  for (const auto& row : r.rows) {
    const std::string where =
        row.row < 0 ? "-" : "(" + std::to_string(row.row) + "," + std::to_string(row.col) + ")";
    const std::string status = row.informational ? "info" : (row.passed() ? "PASS" : "FAIL");
    out << "  " << std::left << std::setw(46) << row.relation << std::setw(10) << row.scope
        << std::setw(24) << format_double(row.max_defect) << std::setw(12) << where
        << std::setw(24) << (row.informational ? "-" : format_double(row.tolerance)) << status;
    if (!row.note.empty()) out << "  " << row.note;
    out << "\n";
  }
}

void override_tolerance(DefectReport& r, const GlobalOptions& opt) {
  if (!opt.tol) return;
  for (auto& row : r.rows) {
    if (!row.informational) row.tolerance = *opt.tol;
  }
}

DefectReport skipped(const std::string& title, const std::string& why) {
  DefectReport r;
  r.title = title;
  r.rows.push_back({"skipped", 0.0, -1, -1, "all", 0.0, true, why});
  return r;
}

int verify_algebra(const GlobalOptions& opt, const std::string& path, std::ostream& out) {
  const ModelFile file = load_model(path, opt.max_dim);
  const FockConfig& config = file.model.config;
  const FockSpace space(config, opt.max_dim);
  const std::size_t d = space.dimension();

  std::vector<DefectReport> reports;
  reports.push_back(graded_algebra_report(config, opt.max_dim));
  if (d * d <= 65536) {
    const CanonicalMaps maps(space);
    reports.push_back(superalgebra_report(maps));
    reports.push_back(parity_report(maps));
    if (d * d <= 1296) {
      reports.push_back(biorthonormality_report(maps));
      reports.push_back(adjoint_relation_report(maps));
    } else {
      reports.push_back(skipped("v/y biorthonormality", "dense D^2 x D^2 work, D^2 > 1296"));
      reports.push_back(skipped("adjoint relation", "dense D^2 x D^2 work, D^2 > 1296"));
    }
    const SparseMatrix direct = liouvillian_direct(file.model);
    const SparseMatrix thirdq = evaluate(liouvillian_symbolic(file.model), maps);
    DefectReport lv;
    lv.title = "Liouvillian";
    DefectRow eq{"third-quantized - direct", 0.0, -1, -1, "all", liouvillian_tolerance(direct)};
    absorb(eq, locate_max(SparseMatrix(thirdq - direct)));
    DefectRow tp{"vec(I)^dagger L", trace_preservation_defect(direct), -1, -1, "all", 1e-10};
    lv.rows = {eq, tp};
    reports.push_back(lv);
  } else {
    reports.push_back(skipped("superoperator algebra", "D^2 > 65536"));
  }

  bool passed = true;
  json doc = {{"command", "verify-algebra"}, {"model", path}, {"fock_dimension", d}};
  doc["reports"] = json::array();
  for (auto& r : reports) {
    override_tolerance(r, opt);
    print_report(out, r);
    passed = passed && r.passed();
    doc["reports"].push_back(report_json(r));
  }
  doc["passed"] = passed;
  write_json(opt, doc);
  out << (passed ? "all checks passed" : "some checks FAILED") << "\n";
  return passed ? kExitOk : kExitCheckFailed;
}

int bargmann_command(const GlobalOptions& opt, std::size_t dim, std::size_t nodes, int terms,
                     std::ostream& out) {
  if (dim < 1) throw ParameterError("--dim must be positive");
  const QuadratureRule rule = gauss_hermite_rule(nodes ? nodes : default_bargmann_nodes(dim));
  const double gram = hermite_gram_defect(static_cast<int>(dim) - 1, rule);
  const CMatrix g = biorthonormality_matrix(dim, rule);
  const CMatrix defect = g - CMatrix::Identity(g.rows(), g.cols());
  const double biorth = defect.cwiseAbs().maxCoeff();
  const GeneratingResidual gen = generating_identity_residual(terms);

  const double tol_biorth = opt.tol.value_or(1e-8);
  const double tol_gen = opt.tol.value_or(1e-10);
  const bool passed = biorth <= tol_biorth && gen.max_residual < tol_gen;

  out << "nodes                     " << rule.size() << "\n";
  out << "hermite gram defect       " << format_double(gram) << "\n";
  out << "biorthonormality defect   " << format_double(biorth) << " (tol "
      << format_double(tol_biorth) << ")\n";
  out << "generating residual       " << format_double(gen.max_residual) << " at z = "
      << format_complex_coefficient(gen.z) << ", q = " << format_double(gen.q) << " (tol "
      << format_double(tol_gen) << ")\n";

  std::ostringstream csv;
  csv << "i,j,abs_defect\n";
  for (Eigen::Index i = 0; i < defect.rows(); ++i) {
    for (Eigen::Index j = 0; j < defect.cols(); ++j) {
      csv << i << "," << j << "," << format_double(std::abs(defect(i, j))) << "\n";
    }
  }
  write_file(opt, "biorthonormality.csv", csv.str());

  json doc = {{"command", "bargmann"},
              {"dim", dim},
              {"nodes", rule.size()},
              {"hermite_gram_defect", gram},
              {"biorthonormality_defect", biorth},
              {"biorthonormality_tolerance", tol_biorth},
              {"generating_terms", terms},
              {"generating_residual", gen.max_residual},
              {"generating_worst_z", complex_json(gen.z)},
              {"generating_worst_q", gen.q},
              {"generating_tolerance", tol_gen},
              {"passed", passed}};
  write_json(opt, doc);
  return passed ? kExitOk : kExitCheckFailed;
}

struct KernelOptions {
  std::string table1;
  double alpha = 1.0;
  std::vector<double> matrix;
  std::optional<double> rotation;
  int compose = 1;
  std::size_t isometry_dim = 0;
};

int kernel_command(const GlobalOptions& opt, const KernelOptions& k, std::ostream& out) {
  GaussianKernel base;
  std::string label;
  // MB(alpha) composed k times has the shape of MB(alpha / k).
  bool margenau_brink = false;
  const int sources = (!k.table1.empty()) + (!k.matrix.empty()) + (k.rotation.has_value());
  if (sources != 1) throw ConfigError("give exactly one of --table1, --matrix, --rotation");
  if (!k.table1.empty()) {
    const Table1Transform t = parse_table1_name(k.table1);
    base = table1_kernel(t, k.alpha);
    margenau_brink = t == Table1Transform::MargenauBrink;
    label = k.table1 + "(" + format_double(k.alpha) + ")";
  } else if (!k.matrix.empty()) {
    if (k.matrix.size() != 4) throw ConfigError("--matrix needs a,b,c,d");
    base = kernel_from_matrix(
        SymplecticMatrixC::make(k.matrix[0], k.matrix[1], k.matrix[2], k.matrix[3]));
    label = "matrix";
  } else {
    base = kernel_from_matrix(SymplecticMatrixC::rotation(*k.rotation));
    label = "rotation(" + format_double(*k.rotation) + ")";
  }
  if (k.compose < 1) throw ConfigError("--compose must be at least 1");

  const double tol = opt.tol.value_or(1e-10);
  const QuadratureRule rule = gauss_hermite_rule(std::max<std::size_t>(64, 2 * k.isometry_dim));
  std::ostringstream csv;
  csv << "step,A_re,A_im,B_re,B_im,C_re,C_im,norm_re,norm_im,det_defect,phase_modulus_defect";
  if (margenau_brink) csv << ",mb_shape_distance";
  if (k.isometry_dim > 0) csv << ",isometry_defect";
  csv << "\n";
  json steps = json::array();
  bool passed = true;
  GaussianKernel current = base;
  out << "kernel " << label << ", composed " << k.compose << " time(s)\n";
  for (int step = 1; step <= k.compose; ++step) {
    if (step > 1) current = compose(current, base);
    const MatrixExtraction ex = matrix_from_kernel(current);
    const double det = std::abs(ex.matrix.determinant() - 1.0);
    const double phase = std::abs(std::abs(ex.residual) - 1.0);
    std::optional<double> iso;
    if (k.isometry_dim > 0) {
      iso = truncated_matrix_elements(current, k.isometry_dim, rule).isometry_defect(k.isometry_dim / 2);
    }
    std::optional<double> mb;
    if (margenau_brink) {
      mb = current.shape_distance(
          table1_kernel(Table1Transform::MargenauBrink, k.alpha / static_cast<double>(step)));
      passed = passed && *mb <= tol;
    }
    passed = passed && det <= tol;
    out << "  step " << step << ": A = " << format_complex_coefficient(current.A)
        << ", B = " << format_complex_coefficient(current.B)
        << ", C = " << format_complex_coefficient(current.C)
        << ", norm = " << format_complex_coefficient(current.norm)
        << ", |ad-bc-1| = " << format_double(det);
    if (mb) out << ", distance to MB(alpha/" << step << ") = " << format_double(*mb);
    if (iso) out << ", isometry defect = " << format_double(*iso);
    out << "\n";
    csv << step;
    for (Complex z : {current.A, current.B, current.C, current.norm}) {
      csv << "," << format_double(z.real()) << "," << format_double(z.imag());
    }
    csv << "," << format_double(det) << "," << format_double(phase);
    if (mb) csv << "," << format_double(*mb);
    if (iso) csv << "," << format_double(*iso);
    csv << "\n";
    json s = {{"step", step},
              {"A", complex_json(current.A)},
              {"B", complex_json(current.B)},
              {"C", complex_json(current.C)},
              {"norm", complex_json(current.norm)},
              {"det_defect", det},
              {"phase_modulus_defect", phase}};
    if (mb) s["mb_shape_distance"] = *mb;
    if (iso) s["isometry_defect"] = *iso;
    steps.push_back(s);
  }
  write_file(opt, "kernel.csv", csv.str());
  write_json(opt, {{"command", "kernel"},
                   {"kernel", label},
                   {"steps", steps},
                   {"tolerance", tol},
                   {"passed", passed}});
  return passed ? kExitOk : kExitCheckFailed;
}

int map_command(const GlobalOptions& opt, const std::string& path, std::ostream& out) {
  const ModelFile file = load_model(path, opt.max_dim);
  const MapExpression expr = liouvillian_symbolic(file.model);
  out << "L = " << expr.to_string(false) << "\n";
  out << "degree " << expr.degree() << ", " << expr.terms().size() << " terms\n";
  const SparseMatrix direct = liouvillian_direct(file.model);
  const SparseMatrix thirdq = evaluate(expr, CanonicalMaps(FockSpace(file.model.config, opt.max_dim)));
  const double diff = max_abs(SparseMatrix(thirdq - direct));
  const double tol = opt.tol.value_or(liouvillian_tolerance(direct));
  const bool passed = diff <= tol;
  out << "max |third-quantized - direct| = " << format_double(diff) << " (tol "
      << format_double(tol) << ")\n";
  write_json(opt, {{"command", "map"},
                   {"model", path},
                   {"liouvillian", expr.to_string(false)},
                   {"degree", expr.degree()},
                   {"terms", expr.terms().size()},
                   {"max_difference", diff},
                   {"tolerance", tol},
                   {"passed", passed}});
  return passed ? kExitOk : kExitCheckFailed;
}

int evolve_command(const GlobalOptions& opt, const std::string& path, std::ostream& out) {
  const ModelFile file = load_model(path, opt.max_dim);
  if (!file.evolution) throw ConfigError("model has no 'evolution' section");
  const FockSpace space(file.model.config, opt.max_dim);
  const CMatrix rho0 = initial_state(file.evolution->initial_state, space);
  const EvolutionResult r =
      evolve(file.model, rho0, file.evolution->sample_times(), file.observables);

  std::vector<bool> hermitian;
  for (const auto& o : file.observables) {
    const SparseMatrix m = space.build(o);
    hermitian.push_back(max_abs(SparseMatrix(m - SparseMatrix(m.adjoint()))) <= 1e-12);
  }
  std::ostringstream csv;
  csv << "time";
  for (std::size_t o = 0; o < file.observables.size(); ++o) {
    const std::string& src = file.observable_sources[o];
    if (hermitian[o]) {
      csv << "," << csv_field(src);
    } else {
      csv << "," << csv_field("re(" + src + ")") << "," << csv_field("im(" + src + ")");
    }
  }
  csv << ",trace_drift\n";
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    csv << format_double(r.times[k]);
    for (std::size_t o = 0; o < file.observables.size(); ++o) {
      const Complex v = r.expectations(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(k));
      csv << "," << format_double(v.real());
      if (!hermitian[o]) csv << "," << format_double(v.imag());
    }
    csv << "," << format_double(r.trace_errors[k]) << "\n";
  }
  write_file(opt, "trajectory.csv", csv.str());

  const double tol = opt.tol.value_or(1e-10);
  const bool passed =
      r.trace_drift <= tol && r.hermiticity_defect <= tol && r.min_eigenvalue >= -1e-8;
  out << "samples " << r.times.size() << ", trace drift " << format_double(r.trace_drift)
      << ", hermiticity defect " << format_double(r.hermiticity_defect)
      << ", min eigenvalue " << format_double(r.min_eigenvalue) << "\n";
  write_json(opt, {{"command", "evolve"},
                   {"model", path},
                   {"samples", r.times.size()},
                   {"trace_drift", r.trace_drift},
                   {"hermiticity_defect", r.hermiticity_defect},
                   {"min_eigenvalue", r.min_eigenvalue},
                   {"tolerance", tol},
                   {"passed", passed}});
  return passed ? kExitOk : kExitCheckFailed;
}

int steady_state_command(const GlobalOptions& opt, const std::string& path,
                         const std::string& expect, std::ostream& out) {
  const ModelFile file = load_model(path, opt.max_dim);
  const FockSpace space(file.model.config, opt.max_dim);
  const SteadyState ss = steady_state(file.model);
  const double tol = opt.tol.value_or(1e-10);
  bool passed = ss.residual <= tol;
  json doc = {{"command", "steady-state"},
              {"model", path},
              {"residual", ss.residual},
              {"second_singular_value", ss.second_singular_value},
              {"tolerance", tol}};
  out << "residual " << format_double(ss.residual) << ", second singular value "
      << format_double(ss.second_singular_value) << "\n";
  if (!expect.empty()) {
    const CMatrix target = initial_state(expect, space);
    const double fidelity = (ss.rho * target).trace().real();
    passed = passed && fidelity >= 1.0 - 1e-8;
    doc["expected_state"] = expect;
    doc["fidelity"] = fidelity;
    out << "fidelity with " << expect << ": " << format_double(fidelity) << "\n";
  }
  json obs = json::array();
  for (std::size_t o = 0; o < file.observables.size(); ++o) {
    const Complex v = expectation(file.observables[o], ss.rho, space);
    obs.push_back({{"observable", file.observable_sources[o]}, {"value", complex_json(v)}});
    out << "<" << file.observable_sources[o] << "> = " << format_complex_coefficient(v) << "\n";
  }
  doc["observables"] = obs;
  doc["passed"] = passed;
  write_json(opt, doc);

  std::ostringstream csv;
  csv << "row,col,re,im\n";
  for (Eigen::Index s = 0; s < ss.rho.cols(); ++s) {
    for (Eigen::Index r = 0; r < ss.rho.rows(); ++r) {
      if (ss.rho(r, s) == Complex(0.0, 0.0)) continue;
      csv << r << "," << s << "," << format_double(ss.rho(r, s).real()) << ","
          << format_double(ss.rho(r, s).imag()) << "\n";
    }
  }
  write_file(opt, "steady_state.csv", csv.str());
  return passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual-space toolkit: Bargmann transforms, Gaussian kernels, third quantization"};
  app.name("dualspace");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opt;
  double tol = 0.0;
  auto* tol_opt = app.add_option("--tol", tol, "Global tolerance override");
  app.add_option("--out", opt.out_dir, "Output directory");
  app.add_option("--max-dim", opt.max_dim, "Largest Fock dimension")->check(CLI::PositiveNumber);

  std::string model_path;
  auto* verify = app.add_subcommand("verify-algebra", "Algebraic defect reports for a model");
  verify->add_option("model", model_path, "Model file")->required();

  std::size_t dim = 20, nodes = 0;
  int terms = 40;
  auto* barg = app.add_subcommand("bargmann", "Bargmann biorthonormality and generating identity");
  barg->add_option("--dim", dim, "Truncation dimension")->required();
  barg->add_option("--nodes", nodes, "Gauss-Hermite nodes (default max(64, 2 dim))");
  barg->add_option("--terms", terms, "Terms of the generating series");

  KernelOptions kopt;
  double rotation = 0.0;
  auto* kern = app.add_subcommand("kernel", "Gaussian kernels and their compositions");
  kern->add_option("--table1", kopt.table1, "MB, H or SW");
  kern->add_option("--alpha", kopt.alpha, "Table parameter alpha");
  kern->add_option("--matrix", kopt.matrix, "a,b,c,d")->delimiter(',')->expected(4);
  auto* rot_opt = kern->add_option("--rotation", rotation, "Rotation angle");
  kern->add_option("--compose", kopt.compose, "Number of self compositions");
  kern->add_option("--isometry-dim", kopt.isometry_dim, "Hermite truncation for isometry defects");

  auto* mapc = app.add_subcommand("map", "Liouvillian in canonical-map notation");
  mapc->add_option("model", model_path, "Model file")->required();
  auto* evolve_c = app.add_subcommand("evolve", "Time evolution of a model");
  evolve_c->add_option("model", model_path, "Model file")->required();
  std::string expect;
  auto* steady = app.add_subcommand("steady-state", "Steady state of a model");
  steady->add_option("model", model_path, "Model file")->required();
  steady->add_option("--expect", expect, "Expected pure state, e.g. vacuum or fock:[1]");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  if (tol_opt->count() > 0) opt.tol = tol;
  if (rot_opt->count() > 0) kopt.rotation = rotation;

  try {
    if (verify->parsed()) return verify_algebra(opt, model_path, out);
    if (barg->parsed()) return bargmann_command(opt, dim, nodes, terms, out);
    if (kern->parsed()) return kernel_command(opt, kopt, out);
    if (mapc->parsed()) return map_command(opt, model_path, out);
    if (evolve_c->parsed()) return evolve_command(opt, model_path, out);
    if (steady->parsed()) return steady_state_command(opt, model_path, expect, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace dualspace
