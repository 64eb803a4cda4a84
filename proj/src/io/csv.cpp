#include "cdcomb/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cdcomb/error.hpp"

namespace cdcomb::io {

namespace {

std::vector<std::string> split_csv_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& s, long row, const char* what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ParseError(std::string("expected a number for '") + what + "', got '" + s + "'", row);
  return v;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

std::string read_header(std::ifstream& in, const std::string& path) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty file: " + path, 0);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  return header;
}

}  // namespace

std::vector<studies::StudySummary> parse_study_csv(const std::string& path) {
  auto in = open_or_throw(path);
  std::string header = read_header(in, path);
  bool with_n;
  if (header == "study_id,theta_hat,se,n")
    with_n = true;
  else if (header == "study_id,theta_hat,se")
    with_n = false;
  else
    throw ParseError("expected header 'study_id,theta_hat,se[,n]', got '" + header + "'", 0);

  std::vector<studies::StudySummary> out;
  std::string line;
  long row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    std::size_t expected = with_n ? 4 : 3;
    if (fields.size() != expected && !(with_n && fields.size() == 3))
      throw ParseError("expected " + std::to_string(expected) + " fields", row);
    studies::StudySummary s;
    s.study_id = fields[0];
    s.theta_hat = parse_double(fields[1], row, "theta_hat");
    s.se = parse_double(fields[2], row, "se");
    if (!(s.se > 0.0)) throw ParseError("se must be > 0", row);
    if (with_n && fields.size() == 4 && !fields[3].empty())
      s.n = static_cast<int>(parse_double(fields[3], row, "n"));
    out.push_back(std::move(s));
  }
  if (out.empty()) throw ParseError("no data rows in " + path, 0);
  return out;
}

std::vector<TableRow> parse_tables_csv(const std::string& path) {
  auto in = open_or_throw(path);
  std::string header = read_header(in, path);
  if (header != "study_id,a,b,c,d")
    throw ParseError("expected header 'study_id,a,b,c,d', got '" + header + "'", 0);
  std::vector<TableRow> out;
  std::string line;
  long row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 5) throw ParseError("expected 5 fields", row);
    TableRow t;
    t.study_id = fields[0];
    t.table.a = parse_double(fields[1], row, "a");
    t.table.b = parse_double(fields[2], row, "b");
    t.table.c = parse_double(fields[3], row, "c");
    t.table.d = parse_double(fields[4], row, "d");
    for (double v : {t.table.a, t.table.b, t.table.c, t.table.d})
      if (!(v >= 0.0)) throw ParseError("counts must be nonnegative", row);
    out.push_back(std::move(t));
  }
  if (out.empty()) throw ParseError("no data rows in " + path, 0);
  return out;
}

studies::PointCloud2D parse_points_csv(const std::string& path) {
  auto in = open_or_throw(path);
  std::string header = read_header(in, path);
  if (header != "x,y") throw ParseError("expected header 'x,y', got '" + header + "'", 0);
  studies::PointCloud2D cloud;
  std::string line;
  long row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) throw ParseError("expected 2 fields", row);
    cloud.x.push_back(parse_double(fields[0], row, "x"));
    cloud.y.push_back(parse_double(fields[1], row, "y"));
  }
  if (cloud.size() == 0) throw ParseError("no data rows in " + path, 0);
  return cloud;
}

}  // namespace cdcomb::io
