#pragma once

// Randomized certification campaigns for the seminorm estimates.  Every
// family draws a random instance (annealing the interaction until the
// smallness gate of its estimate holds), evaluates both sides of the
// inequality in the norm domain, and reports whether the bound is satisfied.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "grwick/covariance.hpp"
#include "grwick/normdomain.hpp"
#include "grwick/randgen.hpp"
#include "grwick/report.hpp"

namespace grwick {

struct BoundContext {
  int dim = 4;
  double alpha = 2.0;
  int a_gens = 2;
  // When set, covariances are drawn from inner-product pairing models and the
  // integral bound is taken as twice the largest vector norm instead of being
  // measured from the moments.
  bool fock_covariance = false;
  // When set, covariances carry floating-point entries instead of rationals.
  bool float_scalars = false;
};

struct BoundInstance {
  NormElement lhs;
  NormElement rhs;
};

struct BoundFamily {
  std::string name;
  double min_alpha = 0.0;  // below this the estimate has no content
  std::function<BoundInstance(Rng&, const BoundContext&)> run;
};

// Norm estimates for contraction, Gaussian integration, Wick transport and
// the fluctuation/effective-interaction maps.
const std::vector<BoundFamily>& bound_families();

// First-order (jet) estimates for perturbed interactions and covariances.
const std::vector<BoundFamily>& derivative_families();

// Runs `count` instances of every family and appends one record per
// (family, instance), named "<family>#<k>".  Instances draw from streams
// derived with mix_seed, so the report is independent of scheduling; families
// whose min_alpha exceeds ctx.alpha produce a single skipped record instead.
void run_bound_suite(const std::vector<BoundFamily>& families, std::uint64_t seed,
                     const BoundContext& ctx, int count, int jobs, ReportWriter& out);

}  // namespace grwick
