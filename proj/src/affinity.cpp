#include "lcap/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lcap/error.hpp"
#include "lcap/numeric.hpp"

namespace lcap {

JointPmf::JointPmf(std::size_t x_size, std::size_t y_size, std::vector<double> mass)
    : x_size_(x_size), y_size_(y_size), mass_(std::move(mass)) {
  if (x_size_ == 0 || y_size_ == 0) throw ArgumentError("joint alphabets must be nonempty");
  if (mass_.size() != x_size_ * y_size_) {
    throw DimensionError("joint has " + std::to_string(mass_.size()) + " entries, expected " +
                         std::to_string(x_size_ * y_size_));
  }
  for (double v : mass_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("joint entries must be finite and >= 0");
  }
  const double total = compensated_total(mass_);
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw ArgumentError("joint mass sums to " + std::to_string(total));
  }
}

JointPmf JointPmf::normalized(std::size_t x_size, std::size_t y_size, std::vector<double> weights) {
  const double total = compensated_total(weights);
  if (!(total > 0.0)) throw ArgumentError("joint weights sum to zero");
  for (double& w : weights) w /= total;
  return JointPmf(x_size, y_size, std::move(weights));
}

JointPmf JointPmf::independent(const Pmf& px, const Pmf& py) {
  std::vector<double> m(px.size() * py.size());
  for (std::size_t x = 0; x < px.size(); ++x) {
    for (std::size_t y = 0; y < py.size(); ++y) m[x * py.size() + y] = px[x] * py[y];
  }
  return JointPmf(px.size(), py.size(), std::move(m));
}

JointPmf JointPmf::from_channel(const Pmf& px, std::span<const Pmf> y_given_x) {
  if (y_given_x.size() != px.size()) throw DimensionError("channel needs one row per x");
  const std::size_t ny = y_given_x.empty() ? 0 : y_given_x.front().size();
  std::vector<double> m(px.size() * ny);
  for (std::size_t x = 0; x < px.size(); ++x) {
    if (y_given_x[x].size() != ny) throw DimensionError("channel rows differ in size");
    for (std::size_t y = 0; y < ny; ++y) m[x * ny + y] = px[x] * y_given_x[x][y];
  }
  return JointPmf(px.size(), ny, std::move(m));
}

Pmf JointPmf::marginal_x() const {
  std::vector<double> out(x_size_);
  for (std::size_t x = 0; x < x_size_; ++x) {
    out[x] = compensated_total(std::span<const double>(mass_).subspan(x * y_size_, y_size_));
  }
  return Pmf::normalized(std::move(out));
}

Pmf JointPmf::marginal_y() const {
  std::vector<CompensatedSum> acc(y_size_);
  for (std::size_t x = 0; x < x_size_; ++x) {
    for (std::size_t y = 0; y < y_size_; ++y) acc[y].add(at(x, y));
  }
  std::vector<double> out(y_size_);
  for (std::size_t y = 0; y < y_size_; ++y) out[y] = acc[y].value();
  return Pmf::normalized(std::move(out));
}

Pmf JointPmf::x_given_y(std::size_t y) const {
  if (y >= y_size_) throw ArgumentError("y outside alphabet");
  std::vector<double> col(x_size_);
  for (std::size_t x = 0; x < x_size_; ++x) col[x] = at(x, y);
  if (!(compensated_total(col) > 0.0)) throw ArgumentError("conditioning on a zero-probability y");
  return Pmf::normalized(std::move(col));
}

Pmf JointPmf::y_given_x(std::size_t x) const {
  if (x >= x_size_) throw ArgumentError("x outside alphabet");
  std::vector<double> row(mass_.begin() + static_cast<std::ptrdiff_t>(x * y_size_),
                          mass_.begin() + static_cast<std::ptrdiff_t>((x + 1) * y_size_));
  if (!(compensated_total(row) > 0.0)) throw ArgumentError("conditioning on a zero-probability x");
  return Pmf::normalized(std::move(row));
}

JointPmf JointPmf::transposed() const {
  std::vector<double> m(mass_.size());
  for (std::size_t x = 0; x < x_size_; ++x) {
    for (std::size_t y = 0; y < y_size_; ++y) m[y * x_size_ + x] = at(x, y);
  }
  return JointPmf(y_size_, x_size_, std::move(m));
}

double mutual_affinity(const JointPmf& j) {
  const Pmf px = j.marginal_x();
  const Pmf py = j.marginal_y();
  CompensatedSum overlap;
  for (std::size_t x = 0; x < j.x_size(); ++x) {
    for (std::size_t y = 0; y < j.y_size(); ++y) overlap.add(std::min(px[x] * py[y], j.at(x, y)));
  }
  return std::clamp(1.0 - overlap.value(), 0.0, 1.0);
}

double mutual_affinity_over_y(const JointPmf& j) {
  const Pmf px = j.marginal_x();
  const Pmf py = j.marginal_y();
  CompensatedSum s;
  for (std::size_t y = 0; y < j.y_size(); ++y) {
    if (py[y] == 0.0) continue;
    s.add(py[y] * tv_distance_half_l1(px, j.x_given_y(y)));
  }
  return s.value();
}

double mutual_affinity_over_x(const JointPmf& j) { return mutual_affinity_over_y(j.transposed()); }

double information_of_event(const JointPmf& j, std::size_t y) {
  return tv_distance(j.marginal_x(), j.x_given_y(y));
}

double mutual_information(const JointPmf& j) {
  const Pmf px = j.marginal_x();
  const Pmf py = j.marginal_y();
  CompensatedSum s;
  for (std::size_t x = 0; x < j.x_size(); ++x) {
    for (std::size_t y = 0; y < j.y_size(); ++y) {
      const double v = j.at(x, y);
      if (v > 0.0) s.add(v * std::log(v / (px[x] * py[y])));
    }
  }
  return std::max(0.0, s.value());
}

BayesError bayes_error(double prior0, const Pmf& p0, const Pmf& p1) {
  if (!(prior0 >= 0.0 && prior0 <= 1.0)) throw ArgumentError("class prior outside [0,1]");
  if (p0.size() != p1.size()) throw DimensionError("class conditionals on different alphabets");
  CompensatedSum e;
  for (std::size_t x = 0; x < p0.size(); ++x) e.add(std::min(prior0 * p0[x], (1.0 - prior0) * p1[x]));
  const double kappa = std::max(prior0, 1.0 - prior0);
  return {e.value(), kappa * (1.0 - tv_distance(p0, p1))};
}

}  // namespace lcap
