#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "commongraphs/common.hpp"
#include "commongraphs/graph.hpp"

namespace commongraphs {

// Symmetric step function on [0,1]^2: block i has measure measures[i] and the
// kernel takes value values(i, j) on block i x block j. Kernels (U) may take
// any real value; graphons (W) are flagged and restricted to [0,1].
class StepKernel {
 public:
  StepKernel(std::vector<double> measures, std::vector<std::vector<double>> values, bool graphon);

  static StepKernel constant(double value, bool graphon = true);

  int block_count() const { return static_cast<int>(measures_.size()); }
  const std::vector<double>& measures() const { return measures_; }
  double measure(int i) const { return measures_[i]; }
  double value(int i, int j) const { return values_[i * measures_.size() + j]; }
  std::vector<std::vector<double>> values() const;
  bool is_graphon() const { return graphon_; }

  bool operator==(const StepKernel&) const = default;

 private:
  std::vector<double> measures_;
  std::vector<double> values_;  // row-major q x q
  bool graphon_;
};

double density(const Graph& h, const StepKernel& w, const Limits& limits = {});

// Value-wise 1 - W for a graphon; rejects non-graphons.
StepKernel complement(const StepKernel& w);
// Value-wise 1 - U for any kernel; the graphon flag is kept only if it still holds.
StepKernel one_minus(const StepKernel& u);
// U = W - c; never a graphon.
StepKernel shift(const StepKernel& w, double c);

// Seeded random graphon: block count uniform in [1, max_blocks], Dirichlet(1)
// measures, i.i.d. uniform values symmetrized.
StepKernel sample_graphon(std::uint64_t seed, int max_blocks);
// Same construction with values uniform in [lo, hi]; not flagged as a graphon.
StepKernel sample_kernel(std::uint64_t seed, int max_blocks, double lo, double hi);

// One block per vertex, equal measures, 0/1 adjacency values.
StepKernel encode_graph(const Graph& g);

nlohmann::json to_json(const StepKernel& w);
StepKernel step_kernel_from_json(const nlohmann::json& j);

}  // namespace commongraphs
