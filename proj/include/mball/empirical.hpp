#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mball {

// Atoms with uniform weights 1/n, kept sorted.
class EmpiricalMeasure {
 public:
  explicit EmpiricalMeasure(std::vector<double> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty())
      throw std::invalid_argument("EmpiricalMeasure: no atoms");
    for (double a : atoms_)
      if (!std::isfinite(a))
        throw std::invalid_argument("EmpiricalMeasure: non-finite atom");
    std::sort(atoms_.begin(), atoms_.end());
  }

  const std::vector<double>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  double abs_moment(double q) const {
    double s = 0.0;
    for (double a : atoms_) s += std::pow(std::fabs(a), q);
    return s / static_cast<double>(atoms_.size());
  }

  // Empirical CDF, right-continuous.
  double cdf(double x) const {
    const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
    return static_cast<double>(it - atoms_.begin()) /
           static_cast<double>(atoms_.size());
  }

 private:
  std::vector<double> atoms_;
};

}  // namespace mball
