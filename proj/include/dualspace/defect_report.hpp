#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dualspace/types.hpp"

namespace dualspace {

/// Largest deviation of one algebraic relation, with where it occurred.
struct DefectRow {
  std::string relation;
  double max_defect = 0.0;
  Eigen::Index row = -1;
  Eigen::Index col = -1;
  /// "all", "interior" or "boundary".
  std::string scope = "all";
  double tolerance = 0.0;
  /// Informational rows are measured and printed but never fail a report.
  bool informational = false;
  std::string note;

  bool passed() const { return informational || max_defect <= tolerance; }
};

struct DefectReport {
  std::string title;
  std::vector<DefectRow> rows;

  bool passed() const;
  const DefectRow* find(const std::string& relation) const;
  /// Largest max_defect among rows whose relation starts with `prefix`.
  double max_defect(const std::string& prefix = "") const;
};

struct LocatedMax {
  double value = 0.0;
  Eigen::Index row = -1;
  Eigen::Index col = -1;
};

/// Largest |entry| of m over the entries accepted by `keep` (all entries when
/// keep is empty).
LocatedMax locate_max(const SparseMatrix& m,
                      const std::function<bool(Eigen::Index, Eigen::Index)>& keep = {});

/// Folds a new measurement into a row, keeping the worst location.
void absorb(DefectRow& row, const LocatedMax& m);

}  // namespace dualspace
