#include "commongraphs/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace commongraphs {

StepKernel::StepKernel(std::vector<double> measures, std::vector<std::vector<double>> values, bool graphon)
    : measures_(std::move(measures)), graphon_(graphon) {
  const std::size_t q = measures_.size();
  if (q == 0) throw std::invalid_argument("step kernel needs at least one block");
  if (values.size() != q) throw std::invalid_argument("value matrix must be q x q");
  double total = 0.0;
  for (double m : measures_) {
    if (!(m >= 0.0)) throw std::invalid_argument("block measures must be non-negative");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("block measures must sum to 1");
  values_.reserve(q * q);
  for (const auto& row : values) {
    if (row.size() != q) throw std::invalid_argument("value matrix must be q x q");
    values_.insert(values_.end(), row.begin(), row.end());
  }
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      const double v = values_[i * q + j];
      if (!std::isfinite(v)) throw std::invalid_argument("kernel values must be finite");
      if (v != values_[j * q + i]) throw std::invalid_argument("kernel values must be symmetric");
      if (graphon_ && (v < 0.0 || v > 1.0)) throw std::invalid_argument("graphon values must lie in [0,1]");
    }
  }
}

StepKernel StepKernel::constant(double value, bool graphon) { return StepKernel({1.0}, {{value}}, graphon); }

std::vector<std::vector<double>> StepKernel::values() const {
  const int q = block_count();
  std::vector<std::vector<double>> rows(q, std::vector<double>(q));
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) rows[i][j] = value(i, j);
  }
  return rows;
}

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double component_density(const Graph& h, const std::vector<int>& component, const StepKernel& w,
                         StepCounter& steps) {
  // Connected search order so every vertex after the first has a placed neighbour.
  std::vector<int> order{component.front()};
  std::vector<char> placed(h.vertex_count(), 0);
  placed[component.front()] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int v : component) {
      if (!placed[v] && h.adjacent(order[i], v)) {
        placed[v] = 1;
        order.push_back(v);
      }
    }
  }
  const int k = static_cast<int>(order.size());
  std::vector<std::vector<int>> back(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < i; ++j) {
      if (h.adjacent(order[i], order[j])) back[i].push_back(j);
    }
  }
  const int q = w.block_count();
  std::vector<int> block(k, 0);
  CompensatedSum total;
  std::function<void(int, double)> extend = [&](int i, double weight) {
    for (int b = 0; b < q; ++b) {
      steps.tick();
      double term = weight * w.measure(b);
      for (int j : back[i]) term *= w.value(b, block[j]);
      if (i == k - 1) {
        total.add(term);
      } else {
        block[i] = b;
        extend(i + 1, term);
      }
    }
  };
  extend(0, 1.0);
  return total.value();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

StepKernel sample_blocks(std::uint64_t seed, int max_blocks, double lo, double hi, bool graphon) {
  if (max_blocks < 1) throw std::invalid_argument("max_blocks must be at least 1");
  std::mt19937_64 rng(splitmix64(seed));
  const int q = std::uniform_int_distribution<int>(1, max_blocks)(rng);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<double> measures(q);
  double total = 0.0;
  for (double& m : measures) {
    m = gamma(rng);
    total += m;
  }
  for (double& m : measures) m /= total;
  // Absorb rounding into the largest block so the sum is 1 to machine precision.
  double drift = 1.0;
  for (double m : measures) drift -= m;
  *std::max_element(measures.begin(), measures.end()) += drift;
  std::uniform_real_distribution<double> uniform(lo, hi);
  std::vector<std::vector<double>> values(q, std::vector<double>(q));
  for (int i = 0; i < q; ++i) {
    for (int j = i; j < q; ++j) values[i][j] = values[j][i] = uniform(rng);
  }
  return StepKernel(std::move(measures), std::move(values), graphon);
}

}  // namespace

double density(const Graph& h, const StepKernel& w, const Limits& limits) {
  StepCounter steps(limits.work_budget, "density");
  double result = 1.0;
  for (const auto& component : connected_components(h)) {
    result *= component_density(h, component, w, steps);
  }
  return result;
}

StepKernel complement(const StepKernel& w) {
  if (!w.is_graphon()) throw std::invalid_argument("complement requires a graphon");
  return one_minus(w);
}

StepKernel one_minus(const StepKernel& u) {
  auto values = u.values();
  bool in_unit = true;
  for (auto& row : values) {
    for (double& v : row) {
      v = 1.0 - v;
      in_unit = in_unit && v >= 0.0 && v <= 1.0;
    }
  }
  return StepKernel(u.measures(), std::move(values), u.is_graphon() && in_unit);
}

StepKernel shift(const StepKernel& w, double c) {
  auto values = w.values();
  for (auto& row : values) {
    for (double& v : row) v -= c;
  }
  return StepKernel(w.measures(), std::move(values), false);
}

StepKernel sample_graphon(std::uint64_t seed, int max_blocks) {
  return sample_blocks(seed, max_blocks, 0.0, 1.0, true);
}

StepKernel sample_kernel(std::uint64_t seed, int max_blocks, double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("sample_kernel: lo must not exceed hi");
  return sample_blocks(seed ^ 0x6b65726e656c0000ULL, max_blocks, lo, hi, false);
}

StepKernel encode_graph(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("cannot encode the empty graph");
  std::vector<std::vector<double>> values(n, std::vector<double>(n, 0.0));
  for (const Edge& e : g.edges()) values[e.u][e.v] = values[e.v][e.u] = 1.0;
  std::vector<double> measures(n, 1.0 / n);
  double drift = 1.0;
  for (double m : measures) drift -= m;
  measures[0] += drift;
  return StepKernel(std::move(measures), std::move(values), true);
}

nlohmann::json to_json(const StepKernel& w) {
  return {{"measures", w.measures()}, {"values", w.values()}, {"graphon", w.is_graphon()}};
}

StepKernel step_kernel_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("measures") || !j.contains("values")) {
    throw std::invalid_argument("step kernel JSON must have \"measures\" and \"values\"");
  }
  return StepKernel(j.at("measures").get<std::vector<double>>(),
                    j.at("values").get<std::vector<std::vector<double>>>(), j.value("graphon", false));
}

}  // namespace commongraphs
