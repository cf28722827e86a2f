#include "cutcell/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

namespace cutcell {

using nlohmann::json;

namespace {

json point_to_json(const Point& p, int dim) {
  json a = json::array();
  for (int i = 0; i < dim; ++i) a.push_back(p[i]);
  return a;
}

const char* kind_name(SimplexKind k) {
  switch (k) {
    case SimplexKind::Triangle: return "triangle";
    case SimplexKind::Tetrahedron: return "tetrahedron";
    case SimplexKind::Pyramid: return "pyramid";
  }
  return "?";
}

}  // namespace

json partition_to_json(const Partition& p) {
  json j;
  j["max_depth"] = p.max_depth;
  json levels = json::array();
  for (const LevelBoxes& lb : p.levels) {
    if (lb.boxes.empty()) continue;
    json boxes = json::array();
    for (const BoxCell& b : lb.boxes)
      boxes.push_back({{"origin", point_to_json(b.origin, p.dim)},
                       {"size", b.size}});
    levels.push_back({{"level", lb.level}, {"boxes", boxes}});
  }
  j["levels"] = levels;
  json tess = json::array();
  for (const SimplexCell& s : p.tessellated) {
    json verts = json::array();
    for (int v = 0; v < s.nverts(); ++v)
      verts.push_back(point_to_json(s.vertices[v], p.dim));
    tess.push_back({{"kind", kind_name(s.kind)}, {"vertices", verts}});
  }
  j["tessellated"] = tess;
  json facets = json::array();
  for (const Facet& f : p.boundary_facets) {
    json verts = json::array();
    for (int v = 0; v < f.nverts; ++v)
      verts.push_back(point_to_json(f.vertices[v], p.dim));
    facets.push_back({{"vertices", verts}});
  }
  j["boundary_facets"] = facets;
  return j;
}

json error_report_to_json(const ErrorReport& rep, const Partition& p,
                          const PolynomialSpace& space) {
  json j;
  j["e_total"] = rep.e_total;
  j["norm"] = space.norm == SobolevNorm::H1 ? "H1" : "L2";
  j["k"] = space.k;
  json cells = json::array();
  for (const SubCell& c : p.cells())
    cells.push_back({{"id", c.id},
                     {"level", c.level},
                     {"e", rep.per_cell_error.empty()
                               ? 0.0
                               : rep.per_cell_error[c.id]}});
  j["per_cell"] = cells;
  return j;
}

void write_scheme_csv(std::ostream& os, const Partition& p,
                      const QuadratureScheme& scheme) {
  os << kCsvHeader << "\n";
  os << "cell_id,level,kind";
  for (int a = 0; a < p.dim; ++a) os << ",x" << a + 1;
  os << ",weight\n";
  os.precision(17);
  for (const SubCell& c : p.cells()) {
    const char* kind = c.is_box ? "box" : kind_name(c.simplex.kind);
    const auto [begin, end] = scheme.per_cell[c.id];
    for (int q = begin; q < end; ++q) {
      os << c.id << "," << c.level << "," << kind;
      for (int a = 0; a < p.dim; ++a) os << "," << scheme.points[q][a];
      os << "," << scheme.weights[q] << "\n";
    }
  }
}

void write_trace_csv(std::ostream& os, const OptimizationTrace& trace) {
  os << kCsvHeader << "\n";
  os << "iteration,points,error,marked\n";
  os.precision(17);
  for (const TraceStep& s : trace.steps) {
    os << s.iteration << "," << s.total_points << "," << s.e_total << ",";
    if (s.marked_cells.empty())
      os << "-";
    else if (s.marked_level >= 0)
      os << "level:" << s.marked_level;
    else
      os << "cell:" << s.marked_cells.front();
    os << "\n";
  }
}

void write_sweep_csv(std::ostream& os, const std::string& kind,
                     const std::vector<SweepRow>& rows, bool header) {
  if (header) {
    os << kCsvHeader << "\n";
    os << "kind,order,points,error\n";
    os.precision(17);
  }
  for (const SweepRow& r : rows)
    os << kind << "," << r.order << "," << r.total_points << "," << r.e_total
       << "\n";
}

std::string render_svg(const Partition& p, const QuadratureScheme* scheme,
                       const SvgOptions& opts) {
  if (p.dim != 2) throw InvalidArgument("SVG rendering is 2D only");
  const double x0 = p.element_origin[0], y0 = p.element_origin[1];
  const double h = p.element_size;
  const double s = opts.size_px / h;
  auto px = [&](double x) { return (x - x0) * s; };
  auto py = [&](double y) { return opts.size_px - (y - y0) * s; };

  std::ostringstream os;
  os.precision(8);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.size_px
     << "\" height=\"" << opts.size_px << "\" viewBox=\"0 0 " << opts.size_px
     << " " << opts.size_px << "\">\n";
  os << "<rect width=\"" << opts.size_px << "\" height=\"" << opts.size_px
     << "\" fill=\"white\"/>\n";

  for (const LevelBoxes& lb : p.levels)
    for (const BoxCell& b : lb.boxes)
      os << "<rect x=\"" << px(b.origin[0]) << "\" y=\""
         << py(b.origin[1] + b.size) << "\" width=\"" << b.size * s
         << "\" height=\"" << b.size * s
         << "\" fill=\"#e8f4e8\" stroke=\"#555\" stroke-width=\"1\"/>\n";

  for (const SimplexCell& c : p.tessellated) {
    os << "<polygon points=\"";
    for (int v = 0; v < c.nverts(); ++v)
      os << px(c.vertices[v][0]) << "," << py(c.vertices[v][1]) << " ";
    os << "\" fill=\"#f0f0d8\" stroke=\"#999\" stroke-width=\"0.7\"/>\n";
  }

  for (const Facet& f : p.boundary_facets)
    os << "<line x1=\"" << px(f.vertices[0][0]) << "\" y1=\""
       << py(f.vertices[0][1]) << "\" x2=\"" << px(f.vertices[1][0])
       << "\" y2=\"" << py(f.vertices[1][1])
       << "\" stroke=\"#2060c0\" stroke-width=\"1.6\"/>\n";

  if (scheme && opts.draw_points) {
    double wmax = 0.0;
    for (double w : scheme->weights) wmax = std::max(wmax, w);
    for (size_t q = 0; q < scheme->points.size(); ++q) {
      const double r =
          1.0 + 6.0 * std::sqrt(scheme->weights[q] / (wmax > 0 ? wmax : 1.0));
      os << "<circle cx=\"" << px(scheme->points[q][0]) << "\" cy=\""
         << py(scheme->points[q][1]) << "\" r=\"" << r
         << "\" fill=\"#303030\"/>\n";
    }
  }

  if (scheme && opts.draw_counts) {
    for (const SubCell& c : p.cells()) {
      const auto [begin, end] = scheme->per_cell[c.id];
      Point ctr{0.0, 0.0, 0.0};
      if (c.is_box) {
        ctr = c.box.center(2);
      } else {
        for (int v = 0; v < c.simplex.nverts(); ++v)
          ctr = ctr + c.simplex.vertices[v];
        ctr = (1.0 / c.simplex.nverts()) * ctr;
      }
      os << "<text x=\"" << px(ctr[0]) << "\" y=\"" << py(ctr[1])
         << "\" font-size=\"9\" fill=\"#a03030\" text-anchor=\"middle\">"
         << end - begin << "</text>\n";
    }
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace cutcell
