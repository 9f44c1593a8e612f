#include "mop3/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mop3 {

Front::Front(std::span<const ObjectiveVector> points) {
  for (std::size_t i : non_dominated_indexes(points)) points_.push_back(points[i]);
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

Front::Front(std::initializer_list<ObjectiveVector> points)
    : Front(std::span<const ObjectiveVector>(points.begin(), points.size())) {}

bool Front::contains(const ObjectiveVector& o) const {
  return std::binary_search(points_.begin(), points_.end(), o);
}

namespace {

double mean_nearest(const Front& from, const Front& to, const Front& scale_source, DistanceOptions options) {
  if (from.empty() || to.empty()) throw std::invalid_argument("distance metrics need non-empty fronts");
  const std::size_t m = from.points().front().size();
  std::vector<double> scale(m, 1.0);
  if (options.normalize) {
    for (std::size_t k = 0; k < m; ++k) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& p : scale_source.points()) {
        lo = std::min(lo, p[k]);
        hi = std::max(hi, p[k]);
      }
      if (hi > lo) scale[k] = 1.0 / (hi - lo);
    }
  }
  double total = 0.0;
  for (const auto& a : from.points()) {
    if (a.size() != m) throw std::invalid_argument("objective vectors differ in size");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : to.points()) {
      if (b.size() != m) throw std::invalid_argument("objective vectors differ in size");
      double d = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double diff = (a[k] - b[k]) * scale[k];
        d += diff * diff;
      }
      best = std::min(best, d);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(from.size());
}

}  // namespace

double igd(const Front& s, const Front& reference, DistanceOptions options) {
  return mean_nearest(reference, s, reference, options);
}

double gd(const Front& s, const Front& reference, DistanceOptions options) {
  return mean_nearest(s, reference, reference, options);
}

Front merge_pseudo_optimal(std::span<const Front> fronts) {
  std::vector<ObjectiveVector> all;
  for (const auto& f : fronts) all.insert(all.end(), f.points().begin(), f.points().end());
  return Front(all);
}

void write_front(std::ostream& out, const Front& front) {
  char buffer[32];
  for (const auto& p : front.points()) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      std::snprintf(buffer, sizeof buffer, "%.17g", p[k] == 0.0 ? 0.0 : p[k]);
      if (k > 0) out << ' ';
      out << buffer;
    }
    out << '\n';
  }
}

void write_front(const std::filesystem::path& path, const Front& front) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_front(out, front);
}

Front read_front(std::istream& in, bool raw) {
  std::vector<ObjectiveVector> points;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::vector<double> values;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        throw std::runtime_error("front line " + std::to_string(line_number) + ": not a number: " + token);
      }
      values.push_back(v);
    }
    if (values.empty()) continue;
    if (!points.empty() && points.front().size() != values.size()) {
      throw std::runtime_error("front line " + std::to_string(line_number) + ": wrong number of objectives");
    }
    points.emplace_back(std::move(values));
  }
  Front front(points);
  if (!raw) {
    for (const auto& p : points) {
      if (!front.contains(p)) throw std::runtime_error("front file contains a dominated point");
    }
  }
  return front;
}

Front read_front(const std::filesystem::path& path, bool raw) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_front(in, raw);
}

}  // namespace mop3
