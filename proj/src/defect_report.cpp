#include "dualspace/defect_report.hpp"

#include <algorithm>

namespace dualspace {

bool DefectReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const DefectRow& r) { return r.passed(); });
}

const DefectRow* DefectReport::find(const std::string& relation) const {
  for (const auto& r : rows) {
    if (r.relation == relation) return &r;
  }
  return nullptr;
}

double DefectReport::max_defect(const std::string& prefix) const {
  double best = 0.0;
  for (const auto& r : rows) {
    if (r.relation.rfind(prefix, 0) == 0) best = std::max(best, r.max_defect);
  }
  return best;
}

LocatedMax locate_max(const SparseMatrix& m,
                      const std::function<bool(Eigen::Index, Eigen::Index)>& keep) {
  LocatedMax best;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (keep && !keep(it.row(), it.col())) continue;
      const double v = std::abs(it.value());
      if (v > best.value) best = {v, it.row(), it.col()};
    }
  }
  return best;
}

void absorb(DefectRow& row, const LocatedMax& m) {
  if (m.value > row.max_defect || (row.row < 0 && m.row >= 0 && m.value >= row.max_defect)) {
    row.max_defect = m.value;
    row.row = m.row;
    row.col = m.col;
  }
}

}  // namespace dualspace
