#include "rx2dpl/optimize/metrics.hpp"

#include <cmath>

namespace rx2dpl::optimize {

MetricsReport metrics(const ConfusionCounts& c) {
  const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
  const double fn = static_cast<double>(c.fn), tn = static_cast<double>(c.tn);
  MetricsReport m;
  if (c.tp + c.fp > 0) m.precision = tp / (tp + fp);
  if (c.tp + c.fn > 0) m.recall = tp / (tp + fn);
  if (m.precision && m.recall && *m.precision + *m.recall > 0)
    m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
  double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom > 0) m.mcc = (tp * tn - fp * fn) / std::sqrt(denom);
  return m;
}

MetricsReport average(const std::vector<MetricsReport>& reports) {
  auto mean = [&](std::optional<double> MetricsReport::*field) -> std::optional<double> {
    double sum = 0;
    std::size_t n = 0;
    for (const auto& r : reports) {
      if (auto v = r.*field) {
        sum += *v;
        ++n;
      }
    }
    if (!n) return std::nullopt;
    return sum / static_cast<double>(n);
  };
  return {mean(&MetricsReport::precision), mean(&MetricsReport::recall), mean(&MetricsReport::f1),
          mean(&MetricsReport::mcc)};
}

nlohmann::json to_json(const ConfusionCounts& c) {
  return {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}, {"total", c.total()}};
}

nlohmann::json to_json(const MetricsReport& m) {
  auto v = [](const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(nullptr); };
  return {{"precision", v(m.precision)}, {"recall", v(m.recall)}, {"f1", v(m.f1)}, {"mcc", v(m.mcc)}};
}

}  // namespace rx2dpl::optimize
