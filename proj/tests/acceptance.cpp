// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dualspace/bargmann.hpp"
#include "dualspace/canonical_transforms.hpp"
#include "dualspace/errors.hpp"
#include "dualspace/expression_parser.hpp"
#include "dualspace/fock.hpp"
#include "dualspace/lindblad.hpp"
#include "dualspace/map_expression.hpp"
#include "dualspace/model_io.hpp"
#include "dualspace/third_quantization.hpp"
#include "random_models.hpp"

using namespace dualspace;
using testing_support::Rng;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds
  std::function<void(Outcome&)> body;
};

std::string model_path(const std::string& name) { return std::string(DUALSPACE_MODELS) + "/" + name; }

bool is_fermionic_relation(const std::string& relation) {
  return relation.rfind("{c", 0) == 0 || relation.find(",c") != std::string::npos;
}

bool fits(const FockConfig& cfg, std::size_t max_dim) {
  try {
    cfg.dimension(max_dim);
  } catch (const SizeError&) {
    return false;
  }
  return true;
}

const DefectRow* row_with_scope(const DefectReport& r, const std::string& relation, const std::string& scope) {
  for (const auto& row : r.rows)
    if (row.relation == relation && row.scope == scope) return &row;
  return nullptr;
}

void hermite_gram(Outcome& o) {
  const double defect = hermite_gram_defect(30, gauss_hermite_rule(64));
  o.detail << "max |G - I| = " << defect;
  o.require(defect <= 1e-10, "defect <= 1e-10");
}

void bargmann_biorthonormality(Outcome& o) {
  const CMatrix g = biorthonormality_matrix(20, gauss_hermite_rule(default_bargmann_nodes(20)));
  const double defect = biorthonormality_defect(g);
  o.detail << "20x20 defect = " << defect;
  o.require(g.rows() == 20 && g.cols() == 20, "20x20 matrix");
  o.require(defect <= 1e-8, "defect <= 1e-8");
}

void generating_identity(Outcome& o) {
  const GeneratingResidual r = generating_identity_residual(40, 1.0, 3.0, 0.25);
  o.detail << "max residual = " << r.max_residual << " at z = " << r.z << ", q = " << r.q;
  o.require(r.max_residual < 1e-10, "residual < 1e-10");
}

void rotation_composition(Outcome& o) {
  Rng rng(20240601);
  double worst_matrix = 0.0, worst_modulus = 0.0;
  int pairs = 0;
  while (pairs < 100) {
    const double t1 = rng.uniform(-kPi, kPi), t2 = rng.uniform(-kPi, kPi);
    // rotations by multiples of pi have b = 0 and no kernel
    if (std::abs(std::sin(t1)) < 0.05 || std::abs(std::sin(t2)) < 0.05 || std::abs(std::sin(t1 + t2)) < 0.05)
      continue;
    const SymplecticMatrixC s1 = SymplecticMatrixC::rotation(t1), s2 = SymplecticMatrixC::rotation(t2);
    const MatrixExtraction e = matrix_from_kernel(compose(kernel_from_matrix(s1), kernel_from_matrix(s2)));
    worst_matrix = std::max(worst_matrix, e.matrix.distance(s1 * s2));
    worst_modulus = std::max(worst_modulus, std::abs(std::abs(e.residual) - 1.0));
    ++pairs;
  }
  o.detail << pairs << " pairs, max matrix distance = " << worst_matrix << ", max ||residual| - 1| = " << worst_modulus;
  o.require(worst_matrix <= 1e-8, "matrix within 1e-8");
  o.require(worst_modulus <= 1e-8, "residual modulus within 1e-8 of 1");
}

void table1(Outcome& o) {
  double worst_det = 0.0;
  bool exact = true;
  for (double alpha : {0.25, 0.5, 1.0, 1.5, 3.0}) {
    // the tabulated exponents, expanded by hand
    const GaussianKernel mb = table1_kernel(Table1Transform::MargenauBrink, alpha);
    exact &= mb.A == Complex(-alpha, 0) && mb.B == Complex(2 * alpha, 0) && mb.C == Complex(-alpha, 0) &&
             mb.norm == Complex(1, 0);
    const GaussianKernel h = table1_kernel(Table1Transform::Hackenbroich, alpha);
    exact &= h.A == Complex(-0.5 * alpha, 0) && h.B == Complex(0, 2) && h.C == Complex(1 - alpha, 0) &&
             h.norm == Complex(1, 0);
    const GaussianKernel sw = table1_kernel(Table1Transform::SunkelWildermuth, alpha);
    exact &= sw.A == Complex(-alpha, 0) && sw.B == Complex(0, 2 * alpha) && sw.C == Complex(alpha, 0) &&
             sw.norm == Complex(1, 0);
    for (const auto& k : {mb, h, sw})
      worst_det = std::max(worst_det, std::abs(matrix_from_kernel(k).matrix.determinant() - 1.0));
  }
  o.detail << "coefficients " << (exact ? "exact" : "differ") << ", max |ad - bc - 1| = " << worst_det;
  o.require(exact, "coefficients exact");
  o.require(worst_det <= 1e-10, "ad - bc = 1 within 1e-10");
}

void fock_algebra(Outcome& o) {
  int configs = 0;
  double worst_exact = 0.0, worst_interior = 0.0, worst_truncation = 0.0, worst_boundary_miss = 0.0;
  for (int m = 0; m <= 12; ++m) {
    for (int cutoff = 1; cutoff <= (m == 0 ? 1 : 8); ++cutoff) {
      for (int n = 0; n <= 12; ++n) {
        const FockConfig cfg{m, n, cutoff};
        if (m + n == 0 || !fits(cfg, 4096)) continue;
        const DefectReport r = graded_algebra_report(cfg);
        ++configs;
        for (const auto& row : r.rows) {
          if (is_fermionic_relation(row.relation) || row.relation == "[a_j,a_k]" ||
              row.relation == "[a_j,a*_k] (j != k)")
            worst_exact = std::max(worst_exact, row.max_defect);
        }
        if (m == 0) continue;
        const DefectRow* interior = row_with_scope(r, "[a_j,a*_j]-1", "interior");
        const DefectRow* boundary = row_with_scope(r, "[a_j,a*_j]-1", "boundary");
        const DefectRow* truncation = r.find("[a_j,a*_j]-1+(cutoff+1)P_top");
        if (!interior || !boundary || !truncation) {
          o.require(false, "bosonic rows present");
          return;
        }
        worst_interior = std::max(worst_interior, interior->max_defect);
        worst_truncation = std::max(worst_truncation, truncation->max_defect);
        worst_boundary_miss = std::max(worst_boundary_miss, std::abs(boundary->max_defect - (cutoff + 1)));
      }
    }
  }
  o.detail << configs << " configs, fermionic/mixed max = " << worst_exact << ", bosonic interior max = "
           << worst_interior << ", after removing (cutoff+1)P_top = " << worst_truncation
           << ", max |boundary - (cutoff+1)| = " << worst_boundary_miss;
  o.require(worst_exact == 0.0, "fermionic and mixed relations exact");
  o.require(worst_interior <= kBosonRoundoff, "bosonic interior within roundoff");
  o.require(worst_truncation <= kBosonRoundoff, "defect confined to the top state");
  o.require(worst_boundary_miss <= kBosonRoundoff, "top-state defect equals cutoff + 1");
}

void superalgebra(Outcome& o) {
  int configs = 0;
  double worst_fermionic = 0.0, worst_boson = 0.0, worst_parity = 0.0;
  bool passed = true;
  for (int m = 0; m <= 2; ++m) {
    for (int n = 0; n <= 2; ++n) {
      for (int cutoff = 1; cutoff <= (m == 0 ? 1 : 6); ++cutoff) {
        if (m + n == 0) continue;
        const CanonicalMaps maps{FockSpace({m, n, cutoff})};
        const DefectReport s = superalgebra_report(maps);
        const DefectReport p = parity_report(maps);
        ++configs;
        passed &= s.passed() && p.passed();
        for (const auto& row : s.rows) {
          if (row.informational) continue;
          double& worst = is_fermionic_relation(row.relation) ? worst_fermionic : worst_boson;
          worst = std::max(worst, row.max_defect);
        }
        for (const auto& row : p.rows) worst_parity = std::max(worst_parity, row.max_defect);
      }
    }
  }
  o.detail << configs << " configs, fermionic/mixed max = " << worst_fermionic
           << ", bosonic interior max = " << worst_boson << ", parity axioms max = " << worst_parity;
  o.require(passed, "all reports pass");
  o.require(worst_fermionic == 0.0, "fermionic and mixed relations exact");
  o.require(worst_boson <= kBosonRoundoff, "bosonic interior within roundoff");
  o.require(worst_parity == 0.0, "parity axioms exact");
}

void vy_biorthonormality(Outcome& o) {
  const DefectReport r = biorthonormality_report(CanonicalMaps(FockSpace({1, 1, 8})));
  const DefectRow* seq = r.find("v_i x y_k - delta_ik");
  const DefectRow* norm = r.find("tr(v_i^dagger v_i) - 1");
  const DefectRow* trace = r.find("tr(v_i^dagger y_k) - delta_ik");
  if (!seq || !norm || !trace) {
    o.require(false, "report rows present");
    return;
  }
  o.detail << "pairing defect = " << seq->max_defect << ", tr(v^dagger v) defect = " << norm->max_defect
           << ", trace-form defect (informational) = " << trace->max_defect;
  o.require(seq->max_defect <= 1e-10, "pairing matrix = I within 1e-10");
  o.require(norm->max_defect <= 1e-10, "v_i normalized");
}

void liouvillian_equivalence(Outcome& o) {
  Rng rng(90210);
  std::vector<LindbladModel> models;
  for (int k = 0; k < 50; ++k) models.push_back(testing_support::random_model(rng, testing_support::random_config(rng, 64)));
  models.push_back(testing_support::fermi_bose_model());
  double worst_ratio = 0.0;
  int failures = 0;
  for (const auto& m : models) {
    const SparseMatrix direct = liouvillian_direct(m);
    const double defect = max_abs(SparseMatrix(liouvillian_thirdq(m) - direct));
    const double tol = liouvillian_tolerance(direct);
    worst_ratio = std::max(worst_ratio, defect / tol);
    if (defect > tol) ++failures;
  }
  o.detail << models.size() << " models, worst defect / tolerance = " << worst_ratio;
  o.require(failures == 0, "every model machine exact");
}

void damped_boson(Outcome& o) {
  LindbladModel m;
  m.config = {1, 0, 12};
  const double gamma = 0.5;
  m.lindblad_ops.push_back(std::sqrt(gamma) * parse_polynomial("a[1]"));
  CMatrix rho0 = CMatrix::Zero(13, 13);
  rho0(3, 3) = 1.0;
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(0.1 * k);
  const EvolutionResult r = evolve(m, rho0, times, {parse_polynomial("ad[1]*a[1]")});
  double worst = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double want = 3.0 * std::exp(-2.0 * gamma * times[k]);
    worst = std::max(worst, std::abs(r.expectations(0, static_cast<Eigen::Index>(k)) - want) / want);
  }
  o.detail << "max relative error = " << worst << ", trace drift = " << r.trace_drift
           << ", min eigenvalue = " << r.min_eigenvalue;
  o.require(worst <= 1e-6, "relative error <= 1e-6");
  o.require(r.trace_drift <= 1e-10, "trace drift <= 1e-10");
  o.require(r.min_eigenvalue >= -1e-8, "min eigenvalue >= -1e-8");
}

void steady_states(Outcome& o) {
  struct Case {
    const char* file;
    MultiIndex target;
  };
  bool first = true;
  for (const Case& c : {Case{"damped_boson.json", {0}}, Case{"pumped_fermion.json", {1}}}) {
    const ModelFile f = load_model(model_path(c.file));
    const SteadyState ss = steady_state(f.model);
    const FockSpace space = f.model.space();
    const auto s = static_cast<Eigen::Index>(space.index_of(c.target));
    const double fidelity = ss.rho(s, s).real();
    const double residual = (liouvillian_direct(f.model) * vectorize(ss.rho)).norm();
    if (!first) o.detail << "; ";
    first = false;
    o.detail << c.file << ": fidelity = " << fidelity << ", residual = " << residual;
    o.require(fidelity >= 1.0 - 1e-8, std::string(c.file) + " fidelity");
    o.require(residual <= 1e-10, std::string(c.file) + " residual");
  }
}

void symbolic_t(Outcome& o) {
  const OperatorPolynomial t = parse_polynomial("(cd[1]*c[2]*a[1]) + h.c.");
  const std::string want = "c'[0,1]*c[0,2]*a[0,1] + c[1,1]*c'[1,2]*a'[1,1] + h.c.";
  const MapExpression e = map_commutator_symbolic(t);
  const CanonicalMaps maps(FockSpace({1, 2, 1}));
  const SparseMatrix op = maps.space().build(t);
  const double defect = max_abs(SparseMatrix(evaluate(e, maps) - (left_map(op) - right_map(op))));
  o.detail << "T^ = " << e.to_string() << ", D = " << maps.fock_dimension() << ", numeric defect = " << defect;
  o.require(e.to_string() == want, "display string");
  o.require(maps.fock_dimension() == 8, "D = 8");
  o.require(defect == 0.0, "numeric equality exact");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Hermite orthonormality", 1.0, hermite_gram},
      {2, "Bargmann biorthonormality", 1.0, bargmann_biorthonormality},
      {3, "Generating identity", 5.0, generating_identity},
      {4, "Kernel composition of rotations", 2.0, rotation_composition},
      {5, "MB, H and SW kernels and matrices", 0.0, table1},
      {6, "Fock graded algebra", 0.0, fock_algebra},
      {7, "Superoperator graded algebra and parity", 30.0, superalgebra},
      {8, "v/y biorthonormality", 0.0, vy_biorthonormality},
      {9, "Liouvillian oracle equivalence", 60.0, liouvillian_equivalence},
      {10, "Damped-boson decay", 5.0, damped_boson},
      {11, "Steady states", 0.0, steady_states},
      {12, "Symbolic T mapping", 0.0, symbolic_t},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0) {
      o.require(seconds < c.time_limit, "runtime under " + std::to_string(c.time_limit).substr(0, 4) + " s");
    }
    if (!o.ok) ++failed;
    std::printf("%s %2d %s: %s (%.3f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.str().c_str(),
                seconds);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
