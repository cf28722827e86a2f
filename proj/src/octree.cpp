#include "cutcell/octree.hpp"

#include <algorithm>

namespace cutcell {

namespace {

void bisect(const LevelSetField& field, const BoxCell& cell, int max_depth,
            double eps_zero, Partition& p) {
  const int d = field.dim;
  const double child_size = 0.5 * cell.size;
  // children visited in lexicographic order of their origins
  for (int c = 0; c < (1 << d); ++c) {
    BoxCell child;
    child.level = cell.level + 1;
    child.size = child_size;
    child.origin = cell.vertex(0, d);
    for (int a = 0; a < d; ++a)
      if ((c >> (d - 1 - a)) & 1) child.origin[a] += child_size;

    const SignPattern sp = classify_cell(field, child, eps_zero);
    switch (sp.classification) {
      case CellClass::Outside:
        break;
      case CellClass::Inside:
        p.levels[child.level].boxes.push_back(child);
        break;
      case CellClass::Cut:
        if (child.level < max_depth) {
          bisect(field, child, max_depth, eps_zero, p);
        } else {
          try {
            TessellationResult t =
                d == 2 ? tessellate_2d({sp.corner_values[0], sp.corner_values[1],
                                        sp.corner_values[2], sp.corner_values[3]},
                                       child, eps_zero)
                       : tessellate_3d({sp.corner_values[0], sp.corner_values[1],
                                        sp.corner_values[2], sp.corner_values[3],
                                        sp.corner_values[4], sp.corner_values[5],
                                        sp.corner_values[6], sp.corner_values[7]},
                                       child, eps_zero);
            p.cut_leaves.push_back(child);
            for (const SimplexCell& s : t.interior_cells)
              p.tessellated.push_back(s);
            for (const Facet& f : t.boundary_facets)
              p.boundary_facets.push_back(f);
          } catch (const NotCutError&) {
            // Cut per the field's center sample, but uniform under the
            // multilinear vertex model: resolve by the vertex sign.
            if (sign_of(sp.corner_values[0], eps_zero) > 0)
              p.levels[child.level].boxes.push_back(child);
          }
        }
        break;
    }
  }
}

}  // namespace

Partition partition_element(const LevelSetField& field, const BoxCell& element,
                            int max_depth) {
  if (max_depth < 1) throw InvalidArgument("max_depth must be >= 1");
  const int d = field.dim;

  Partition p;
  p.dim = d;
  p.max_depth = max_depth;
  p.element_origin = element.origin;
  p.element_size = element.size;
  const double eps_zero = kZeroTolScale * element.size;

  p.levels.resize(max_depth + 1);
  for (int l = 0; l <= max_depth; ++l) p.levels[l].level = l;

  const SignPattern sp = classify_cell(field, element, eps_zero);
  if (sp.classification == CellClass::Inside) {
    p.levels[0].boxes.push_back(element);
  } else if (sp.classification == CellClass::Outside) {
    p.outside_warning = true;
  } else {
    bisect(field, element, max_depth, eps_zero, p);
  }

  auto& cells = p.mutable_cells();
  for (const LevelBoxes& lb : p.levels) {
    for (const BoxCell& b : lb.boxes) {
      SubCell sc;
      sc.id = static_cast<int>(cells.size());
      sc.level = b.level;
      sc.is_box = true;
      sc.box = b;
      cells.push_back(sc);
    }
  }
  for (const SimplexCell& s : p.tessellated) {
    SubCell sc;
    sc.id = static_cast<int>(cells.size());
    sc.level = s.level;
    sc.is_box = false;
    sc.simplex = s;
    cells.push_back(sc);
  }
  return p;
}

double partition_volume(const Partition& p) {
  double v = 0.0;
  for (const SubCell& c : p.cells()) v += c.volume(p.dim);
  return v;
}

long SubcellCensus::total_integrable() const {
  long t = level0 + tessellated;
  for (long m : m_plus) t += m;
  return t;
}

SubcellCensus subcell_census(const Partition& p) {
  SubcellCensus c;
  c.m_plus.assign(p.max_depth, 0);
  for (const LevelBoxes& lb : p.levels) {
    if (lb.level == 0)
      c.level0 = static_cast<long>(lb.boxes.size());
    else
      c.m_plus[lb.level - 1] = static_cast<long>(lb.boxes.size());
  }
  c.m0_leaves = static_cast<long>(p.cut_leaves.size());
  c.tessellated = static_cast<long>(p.tessellated.size());
  return c;
}

}  // namespace cutcell
