// Command-line harness: runs the exact identity suites, the norm-estimate
// certification campaigns, and the effective-interaction map, writing JSON
// lines plus a single summary record.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
// input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grwick/bound_suite.hpp"
#include "grwick/gaussian.hpp"
#include "grwick/identity_suite.hpp"
#include "grwick/instance_gen.hpp"
#include "grwick/io.hpp"
#include "grwick/report.hpp"
#include "grwick/rg.hpp"
#include "grwick/seminorm.hpp"

namespace {

using grwick::Covariance;
using grwick::Element;
using grwick::Scalar;
using E = Element<Scalar>;

struct CommonOpts {
  std::uint64_t seed = 1;
  int dim = 4;
  int count = 20;
  double alpha = 2.0;
  std::string family;
  std::string scalar_mode = "exact";
  int jobs = 1;
  std::string out = "-";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--dim", o.dim, "field generators per copy")->check(CLI::Range(0, 16));
  cmd->add_option("--count", o.count, "instances per check")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", o.alpha, "norm weight parameter")
      ->check(CLI::Range(1.0, 1024.0));
  cmd->add_option("--family", o.family, "only run checks whose name contains this");
  cmd->add_option("--scalar", o.scalar_mode, "coefficient arithmetic")
      ->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 64));
  cmd->add_option("--out", o.out, "output path ('-' for stdout)");
}

int emit(const grwick::ReportWriter& w, const std::string& out) {
  if (out.empty() || out == "-") {
    w.write_lines(std::cout);
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open output file: " + out);
    w.write_lines(f);
  }
  return w.failures() > 0 ? 1 : 0;
}

std::vector<grwick::SuiteCheck> filter_checks(const std::vector<grwick::SuiteCheck>& in,
                                              const std::string& family) {
  if (family.empty()) return in;
  std::vector<grwick::SuiteCheck> out;
  for (const auto& c : in)
    if (c.name.find(family) != std::string::npos) out.push_back(c);
  return out;
}

std::vector<grwick::BoundFamily> filter_families(
    const std::vector<grwick::BoundFamily>& in, const std::string& family) {
  if (family.empty()) return in;
  std::vector<grwick::BoundFamily> out;
  for (const auto& f : in)
    if (f.name.find(family) != std::string::npos) out.push_back(f);
  return out;
}

int run_identities(const CommonOpts& o, const std::string& covariance_path) {
  if (o.scalar_mode != "exact")
    throw std::runtime_error("identities are exact; --scalar float is not supported here");
  grwick::ReportWriter w;
  if (!covariance_path.empty()) {
    Covariance c = grwick::covariance_from_json(grwick::read_json_file(covariance_path));
    bool ok = grwick::generating_identity_check(c, 3);
    w.add_equality("generating_identity[file]", ok);
  }
  if (o.dim > 0) {
    run_suite(filter_checks(grwick::identity_checks(), o.family), o.seed, {o.dim},
              o.count, 3, o.jobs, w);
    run_suite(filter_checks(grwick::schwinger_checks(), o.family), o.seed, {o.dim},
              o.count, 2, o.jobs, w);
  }
  return emit(w, o.out);
}

int run_bounds(const CommonOpts& o, const std::string& b_mode, bool derivatives_only) {
  if (o.dim < 1) throw std::runtime_error("bounds need --dim >= 1");
  grwick::BoundContext ctx;
  ctx.dim = o.dim;
  ctx.alpha = o.alpha;
  ctx.a_gens = 2;
  ctx.fock_covariance = b_mode == "fock";
  ctx.float_scalars = o.scalar_mode == "float";
  std::vector<grwick::BoundFamily> fams;
  if (!derivatives_only)
    for (const auto& f : filter_families(grwick::bound_families(), o.family))
      fams.push_back(f);
  for (const auto& f : filter_families(grwick::derivative_families(), o.family))
    fams.push_back(f);
  grwick::ReportWriter w;
  run_bound_suite(fams, o.seed, ctx, o.count, o.jobs, w);
  return emit(w, o.out);
}

int run_rg_flow(const CommonOpts& o, const std::string& interaction_path,
                const std::string& covariance_path, const std::string& fluctuation_path) {
  grwick::Rng rng(o.seed);
  const bool fl = o.scalar_mode == "float";

  Covariance c = covariance_path.empty()
                     ? (fl ? grwick::random_float_covariance(rng, o.dim)
                           : grwick::random_covariance(rng, o.dim))
                     : grwick::covariance_from_json(grwick::read_json_file(covariance_path));
  E w;
  if (interaction_path.empty()) {
    grwick::Signature s(2, c.dim, 1);
    grwick::ElementSpec sp;
    sp.terms = 3;
    sp.even_only = true;
    sp.max_degree = 4;
    sp.float_coeffs = fl;
    w = grwick::random_element(rng, s, sp);
  } else {
    w = grwick::element_from_json(grwick::read_json_file(interaction_path));
  }
  if (w.sig.copies != 1) throw std::runtime_error("interaction must live on one copy");
  if (w.sig.dim != c.dim)
    throw std::runtime_error("interaction and covariance dimensions differ");

  bool has_d = !fluctuation_path.empty();
  Covariance d = has_d
                     ? grwick::covariance_from_json(grwick::read_json_file(fluctuation_path))
                     : Covariance(c.dim);
  if (d.dim != c.dim)
    throw std::runtime_error("fluctuation covariance dimension differs");

  double b = grwick::measured_integral_bound(c);
  if (has_d) b = std::max(b, grwick::measured_integral_bound(d));
  grwick::WeightAssignment wa = grwick::WeightAssignment::none(w.sig.a_gens);
  grwick::NormElement cf =
      grwick::NormElement::scalar(0, grwick::covariance_l1_linf(c));
  double a2 = o.alpha * o.alpha;
  double gate_alpha = has_d ? 32 * o.alpha : 8 * o.alpha;
  double gate_threshold = has_d ? a2 : a2 / 4;

  E om;
  E z;
  if (has_d) {
    auto [om_ordered, z0] =
        grwick::effective_interaction_with_z(grwick::wick_order(w, c + d, 0), c);
    om = grwick::unwick(om_ordered, d, 0);
    z = std::move(z0);
  } else {
    auto [om0, z0] = grwick::effective_interaction_with_z(grwick::wick_order(w, c, 0), c);
    om = std::move(om0);
    z = std::move(z0);
  }

  grwick::Json payload{
      {"rg_flow", true},
      {"alpha", o.alpha},
      {"b", b},
      {"interaction", grwick::element_to_json(w)},
      {"covariance", grwick::covariance_to_json(c)},
      {"effective", grwick::element_to_json(om)},
      {"normalization", grwick::element_to_json(z)},
  };
  if (has_d) payload["fluctuation"] = grwick::covariance_to_json(d);

  grwick::ReportWriter rep;
  grwick::NormElement x = grwick::big_n(w, gate_alpha, b, cf, wa);
  grwick::NormElement diff_n = grwick::big_n(om - w, o.alpha, b, cf, wa);
  bool gate = x.is_finite() && x.constant_term() < gate_threshold;
  {
    grwick::CheckRecord rec;
    rec.name = gate ? "interaction_smallness_gate[met]"
                    : "interaction_smallness_gate[not-met]";
    rec.lhs = grwick::format_double(x.constant_term());
    rec.rhs = grwick::format_double(gate_threshold);
    rec.holds = true;
    rep.add(std::move(rec));
  }
  if (gate) {
    grwick::NormElement rhs =
        has_d ? (x * x).scaled(1 / (2 * a2)) *
                    grwick::nv_geometric_inverse(1.0, x.scaled(1 / a2))
              : (x * x).scaled(2 / a2) *
                    grwick::nv_geometric_inverse(1.0, x.scaled(4 / a2));
    grwick::CheckRecord rec;
    rec.name = has_d ? "rewick_rg_map_bound" : "rg_map_norm_bound";
    rec.lhs = grwick::format_double(diff_n.constant_term());
    rec.rhs = grwick::format_double(rhs.constant_term());
    rec.holds = grwick::nv_leq(diff_n, rhs);
    rec.margin = rhs.constant_term() - diff_n.constant_term();
    rep.add(std::move(rec));
  }

  auto write_all = [&](std::ostream& os) {
    os << payload.dump() << "\n";
    rep.write_lines(os);
  };
  if (o.out.empty() || o.out == "-") {
    write_all(std::cout);
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot open output file: " + o.out);
    write_all(f);
  }
  return rep.failures() > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact fermionic Gaussian calculus and norm-estimate harness"};
  app.require_subcommand(1);

  CommonOpts id_opts, bd_opts, rg_opts;
  std::string id_covariance;
  std::string bd_b_mode = "measured";
  bool bd_derivatives_only = false;
  std::string rg_interaction, rg_covariance, rg_fluctuation;

  CLI::App* idc = app.add_subcommand("identities", "run the exact identity suites");
  add_common(idc, id_opts);
  idc->add_option("--covariance", id_covariance,
                  "also check the pairing-exponential identity on this covariance file");

  CLI::App* bdc = app.add_subcommand("bounds", "run the norm-estimate campaigns");
  add_common(bdc, bd_opts);
  bdc->add_option("--b", bd_b_mode, "integral bound source")
      ->check(CLI::IsMember({"measured", "fock"}));
  bdc->add_flag("--derivatives-only", bd_derivatives_only,
                "run only the first-order (jet) families");

  CLI::App* rgc = app.add_subcommand("rg-flow", "apply the effective-interaction map");
  add_common(rgc, rg_opts);
  rgc->add_option("--interaction", rg_interaction, "interaction element (JSON file)");
  rgc->add_option("--covariance", rg_covariance, "integrated covariance (JSON file)");
  rgc->add_option("--fluctuation", rg_fluctuation,
                  "re-ordering covariance (JSON file); omitted = plain map");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (idc->parsed()) return run_identities(id_opts, id_covariance);
    if (bdc->parsed()) return run_bounds(bd_opts, bd_b_mode, bd_derivatives_only);
    if (rgc->parsed())
      return run_rg_flow(rg_opts, rg_interaction, rg_covariance, rg_fluctuation);
  } catch (const std::domain_error& e) {
    std::cerr << "degenerate instance: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
