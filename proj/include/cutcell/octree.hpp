#pragma once

#include <vector>

#include "cutcell/tessellation.hpp"

namespace cutcell {

// One integrable sub-cell of a partition: a preserved box at level <= rho,
// or a tessellated simplex/pyramid at level rho+1. Ids are contiguous,
// ordered by level and then by discovery order within the level.
struct SubCell {
  int id = 0;
  int level = 0;
  bool is_box = true;
  BoxCell box{};
  SimplexCell simplex{};

  double volume(int dim) const {
    return is_box ? box.volume(dim) : simplex.volume(dim);
  }
};

struct LevelBoxes {
  int level = 0;
  std::vector<BoxCell> boxes;
};

// Octree partition of one cut element: preserved boxes per level, the cut
// leaves at depth rho (never integrated directly), and the level-(rho+1)
// tessellation of those leaves together with the boundary facets.
struct Partition {
  int dim = 2;
  int max_depth = 1;
  Point element_origin{0.0, 0.0, 0.0};
  double element_size = 1.0;
  bool outside_warning = false;

  std::vector<LevelBoxes> levels;
  std::vector<BoxCell> cut_leaves;
  std::vector<SimplexCell> tessellated;
  std::vector<Facet> boundary_facets;

  const std::vector<SubCell>& cells() const { return cells_; }
  std::vector<SubCell>& mutable_cells() { return cells_; }
  double eps_zero() const { return kZeroTolScale * element_size; }

 private:
  std::vector<SubCell> cells_;
};

struct SubcellCensus {
  std::vector<long> m_plus;   // preserved boxes per level 1..rho (index 0 -> level 1)
  long m0_leaves = 0;         // cut leaves at level rho
  long tessellated = 0;       // simplex/pyramid cells at level rho+1
  long level0 = 0;            // 1 for a non-intersected element
  long total_integrable() const;
};

Partition partition_element(const LevelSetField& field, const BoxCell& element,
                            int max_depth);

double partition_volume(const Partition& p);

SubcellCensus subcell_census(const Partition& p);

}  // namespace cutcell
