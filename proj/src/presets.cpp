#include "fadesplit/presets.hpp"

#include <stdexcept>

namespace fadesplit {

namespace {

std::vector<double> scaled(std::initializer_list<double> raw, double total) {
  std::vector<double> d;
  d.reserve(raw.size());
  for (double v : raw) d.push_back(v / total);
  return d;
}

}  // namespace

Preset preset(const std::string& name) {
  if (name == "fig2") return {0.1, 1.0, scaled({5, 4, 3, 2}, 14)};
  if (name == "fig3")
    return {0.1, 1.0, scaled({100, 85, 70, 60, 50, 40, 25, 10}, 440)};
  if (name == "fig9")
    return {0.1, 1.0,
            scaled({1000, 300, 250, 200, 150, 110, 100, 90, 80, 70, 60, 50,
                    40, 30, 20, 10},
                   2560)};
  throw std::invalid_argument("unknown preset '" + name +
                              "' (expected fig2, fig3 or fig9)");
}

std::vector<double> aggregate_pairs(const std::vector<double>& d) {
  if (d.size() % 2 != 0)
    throw std::invalid_argument("aggregate_pairs: need an even count");
  std::vector<double> out(d.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = d[2 * i] + d[2 * i + 1];
  return out;
}

}  // namespace fadesplit
