#pragma once

#include "commongraphs/graph.hpp"
#include "commongraphs/graphon.hpp"

namespace commongraphs {

// t(h,w) - sum over E of p^{e(h)-|E|} t(h[E], w - p). Zero up to rounding.
double expansion_residual(const Graph& h, const StepKernel& w, double p, const Limits& limits = {});

// Triangle identity for W1 = w, W2 = 1 - w (signed LHS - RHS).
double goodman_residual(const StepKernel& w);

// Five-cycle analogue of the triangle identity (signed LHS - RHS).
double c5_goodman_residual(const StepKernel& w);

// t(f,w) + t(f,1-w) - t(K2,w)^e(f) - t(K2,1-w)^e(f). Any kernel is accepted;
// 1-w is the value-wise complement.
double strongly_common_gap(const Graph& f, const StepKernel& w, const Limits& limits = {});

// t(h,w) + t(h,1-w) - (1/2)^{e(h)-1}.
double common_gap(const Graph& h, const StepKernel& w, const Limits& limits = {});

// t(P_r,w)^{t-s} t(P_t,w)^{s-r} - t(P_s,w)^{t-r}, where P_k has k vertices;
// needs 1 <= r <= s <= t with r and t odd.
double path_inequality_slack(const StepKernel& w, int r, int s, int t);

// t(P5,w) - t(K2,w) t(P4,w).
double path_corollary_slack(const StepKernel& w);

// t(K3,w) - t(K2,w)(2 t(K2,w) - 1).
double supersaturation_gap(const StepKernel& w);

}  // namespace commongraphs
