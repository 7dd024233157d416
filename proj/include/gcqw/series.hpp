#pragma once

#include <cstddef>
#include <vector>

namespace gcqw {

/// A (t, value) sequence for observables.
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> value;

  void push(double time, double v) {
    t.push_back(time);
    value.push_back(v);
  }
  std::size_t size() const { return t.size(); }
  bool empty() const { return t.empty(); }
};

}  // namespace gcqw
