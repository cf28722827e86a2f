#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cutcell/optimizer.hpp"

namespace cutcell {

inline constexpr const char* kCsvHeader = "# cutcell-quad v1";

nlohmann::json partition_to_json(const Partition& p);

nlohmann::json error_report_to_json(const ErrorReport& rep, const Partition& p,
                                    const PolynomialSpace& space);

// rows: cell_id, level, kind, x1..xd, weight
void write_scheme_csv(std::ostream& os, const Partition& p,
                      const QuadratureScheme& scheme);

// rows: iteration, points, error, marked ("cell:<id>", "level:<l>" or "-")
void write_trace_csv(std::ostream& os, const OptimizationTrace& trace);

// rows: kind, order, points, error
void write_sweep_csv(std::ostream& os, const std::string& kind,
                     const std::vector<SweepRow>& rows, bool header = true);

struct SvgOptions {
  bool draw_points = true;
  bool draw_counts = false;
  int size_px = 640;
};

// 2D rendering of the partition outlines, trimmed boundary and (optionally)
// the integration points sized by weight
std::string render_svg(const Partition& p, const QuadratureScheme* scheme,
                       const SvgOptions& opts);

}  // namespace cutcell
