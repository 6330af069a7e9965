#include "qtt/report/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qtt/error.hpp"
#include "qtt/report/table.hpp"

namespace qtt::report {

namespace {

constexpr std::string_view kHeader = "intensity_Wcm2,time_as,error_as,instrument";

Error bad_line(std::size_t line, const std::string& what) {
  return Error(ErrorCode::MalformedDataFile, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

} // namespace

ExperimentalDataset read_dataset(std::istream& in) {
  ExperimentalDataset data;
  std::vector<std::size_t> origin;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (!header_seen) {
      std::string compact;
      for (char c : view) {
        if (c != ' ' && c != '\t') compact += c;
      }
      if (compact != kHeader) {
        throw bad_line(line_no, "expected header '" + std::string(kHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_csv_line(view);
    if (fields.size() != 4) {
      throw bad_line(line_no, "expected 4 fields, got " + std::to_string(fields.size()));
    }
    ExperimentalPoint p;
    try {
      p.intensity_W_cm2 = parse_number(trim(fields[0]));
      p.time_as = parse_number(trim(fields[1]));
      p.error_as = parse_number(trim(fields[2]));
    } catch (const Error& e) {
      throw bad_line(line_no, e.detail());
    }
    p.instrument = std::string(trim(fields[3]));
    if (!(p.intensity_W_cm2 > 0.0) || !std::isfinite(p.intensity_W_cm2)) {
      throw bad_line(line_no, "intensity must be positive");
    }
    if (!std::isfinite(p.time_as)) throw bad_line(line_no, "time must be finite");
    if (!(p.error_as >= 0.0) || !std::isfinite(p.error_as)) {
      throw bad_line(line_no, "error must be finite and non-negative");
    }
    data.points.push_back(std::move(p));
    origin.push_back(line_no);
  }
  if (!header_seen) throw bad_line(line_no, "missing header '" + std::string(kHeader) + "'");

  std::vector<std::size_t> order(data.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return data.points[a].intensity_W_cm2 < data.points[b].intensity_W_cm2;
  });
  ExperimentalDataset sorted;
  sorted.points.reserve(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& p = data.points[order[k]];
    if (k > 0 && !(p.intensity_W_cm2 > sorted.points.back().intensity_W_cm2)) {
      std::ostringstream msg;
      msg << "intensity " << p.intensity_W_cm2 << " appears more than once";
      throw bad_line(origin[order[k]], msg.str());
    }
    sorted.points.push_back(p);
  }
  return sorted;
}

ExperimentalDataset parse_dataset(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_dataset(in);
}

ExperimentalDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MalformedDataFile, "cannot open " + path.string());
  return read_dataset(in);
}

} // namespace qtt::report
