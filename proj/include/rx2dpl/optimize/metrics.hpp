#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

namespace rx2dpl::optimize {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  bool operator==(const ConfusionCounts&) const = default;
};

/// A metric is absent when its denominator is zero.
struct MetricsReport {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> mcc;
};

MetricsReport metrics(const ConfusionCounts& c);

/// Column means over the reports where the metric is present.
MetricsReport average(const std::vector<MetricsReport>& reports);

nlohmann::json to_json(const ConfusionCounts& c);
nlohmann::json to_json(const MetricsReport& m);

}  // namespace rx2dpl::optimize
