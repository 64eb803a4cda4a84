#pragma once

#include <string>
#include <vector>

#include "cdcomb/studies/odds.hpp"
#include "cdcomb/studies/oja.hpp"

namespace cdcomb::io {

/// studies CSV, header `study_id,theta_hat,se,n` (n optional). Strict numeric
/// parsing; errors name the offending row.
std::vector<studies::StudySummary> parse_study_csv(const std::string& path);

struct TableRow {
  std::string study_id;
  studies::Contingency2x2 table;
};

/// 2x2 tables CSV, header `study_id,a,b,c,d`.
std::vector<TableRow> parse_tables_csv(const std::string& path);

/// points CSV, header `x,y`.
studies::PointCloud2D parse_points_csv(const std::string& path);

}  // namespace cdcomb::io
