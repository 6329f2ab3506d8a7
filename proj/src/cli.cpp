#include "rmt/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rmt/arithmetic.hpp"
#include "rmt/contours.hpp"
#include "rmt/excised.hpp"
#include "rmt/identities.hpp"
#include "rmt/io.hpp"
#include "rmt/moments.hpp"
#include "rmt/types.hpp"

namespace rmt::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIdentity = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitData = 4;

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void write_run_manifest(const std::vector<std::string>& argv,
                        std::uint64_t seed, double wall,
                        const std::vector<std::string>& outputs,
                        const std::string& path) {
  io::Manifest m;
  m.command = argv;
  m.seed = seed;
  m.version = kVersion;
  m.wall_time_s = wall;
  m.outputs = outputs;
  io::write_manifest(m, path);
}

struct MomentsArgs {
  std::string ensemble = "so";
  int n = 100;
  std::vector<std::string> r_list;
  std::string phi = "2.0+3.5i";
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string out = "moments.csv";
};

int cmd_moments(const MomentsArgs& a, const std::vector<std::string>& argv) {
  if (a.samples < 100) {
    std::cerr << "moments: --samples must be at least 100\n";
    return kExitUsage;
  }
  const bool so = a.ensemble == "so";
  const Complex phi = io::parse_complex(a.phi);
  haar::SamplerConfig cfg;
  cfg.seed = a.seed;
  const double t0 = now_s();
  io::CsvWriter csv(a.out, {"r", "predicted_re", "predicted_im", "mc_re",
                            "mc_im", "stderr_re", "stderr_im", "zscore"});
  for (const std::string& rs : a.r_list) {
    const Complex r = io::parse_complex(rs);
    const moments::PredictionBreakdown pred =
        so ? moments::predict_mixed_so(a.n, r, phi)
           : moments::predict_mixed_usp(a.n, r, phi);
    moments::MomentSpec spec;
    spec.ensemble = so ? haar::EnsembleKind::SpecialOrthogonalEven
                       : haar::EnsembleKind::UnitarySymplectic;
    spec.n = a.n;
    spec.r = r;
    spec.phi = phi;
    const moments::MCEstimate mc =
        moments::mc_mixed_moment(spec, a.samples, cfg);
    const double z_re =
        mc.stderr_re > 0 ? std::abs(mc.mean.real() - pred.total.real()) /
                               mc.stderr_re
                         : 0.0;
    const double z_im =
        mc.stderr_im > 0 ? std::abs(mc.mean.imag() - pred.total.imag()) /
                               mc.stderr_im
                         : 0.0;
    std::ostringstream row;
    row << rs << "," << io::format_g17(pred.total.real()) << ","
        << io::format_g17(pred.total.imag()) << ","
        << io::format_g17(mc.mean.real()) << ","
        << io::format_g17(mc.mean.imag()) << ","
        << io::format_g17(mc.stderr_re) << "," << io::format_g17(mc.stderr_im)
        << "," << io::format_g17(std::max(z_re, z_im));
    csv.row_raw(row.str());
    std::cout << "r=" << rs << " predicted=" << io::format_complex(pred.total)
              << " mc=" << io::format_complex(mc.mean) << " +-("
              << io::format_g17(mc.stderr_re) << ","
              << io::format_g17(mc.stderr_im) << ")\n";
  }
  write_run_manifest(argv, a.seed, now_s() - t0, {a.out},
                     a.out + ".manifest.json");
  return kExitOk;
}

struct IdentitiesArgs {
  int kmax = 8;
  std::string out;
};

int cmd_identities(const IdentitiesArgs& a,
                   const std::vector<std::string>& argv) {
  (void)argv;
  std::ostringstream report;
  bool all_ok = true;
  for (int k = 2; k <= a.kmax; ++k) {
    const bool m_eq = identities::m_gamma_det(k).coeff ==
                      identities::m_closed_form(k).coeff;
    bool j_eq = true, interesting = true, allzero = true;
    const auto m = identities::m_gamma_det(k);
    const auto j = identities::j_gamma_det(k);
    j_eq = j.coeff ==
           m.coeff * exact::BigRat((k - 1) * (k - 2) / 2);
    interesting = identities::interesting_det_relation_check(k);
    allzero = identities::all_zero_det_check(k);
    double barnes_rel = 0.0;
    bool barnes_ok = true;
    if (k <= 8) {
      const Complex exact_val = identities::to_complex(m);
      const Complex barnes = identities::m_barnes_form(k);
      barnes_rel = std::abs(barnes - exact_val) / std::abs(exact_val);
      barnes_ok = barnes_rel <= 1e-9;
    }
    const bool ok = m_eq && j_eq && interesting && allzero && barnes_ok;
    all_ok = all_ok && ok;
    report << "K=" << k << " closed_form=" << (m_eq ? "pass" : "FAIL")
           << " j_relation=" << (j_eq ? "pass" : "FAIL")
           << " interesting_det=" << (interesting ? "pass" : "FAIL")
           << " zero_det=" << (allzero ? "pass" : "FAIL");
    if (k <= 8) {
      report << " barnes_rel=" << io::format_g17(barnes_rel)
             << (barnes_ok ? " pass" : " FAIL");
    }
    report << "\n";
  }
  std::cout << report.str();
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    f << report.str();
  }
  return all_ok ? kExitOk : kExitIdentity;
}

struct RatiosArgs {
  int n = 3;
  int k = 2;
  std::string alpha = "0.3";
  std::string gamma = "0.4";
  std::int64_t samples = 1000000;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_ratios_check(const RatiosArgs& a, const std::vector<std::string>& argv) {
  (void)argv;
  if (a.k < 1 || a.k > 3) {
    std::cerr << "ratios-check: --k must be 1, 2 or 3 (quadrature cost)\n";
    return kExitUsage;
  }
  const Complex alpha = io::parse_complex(a.alpha);
  const Complex gamma = io::parse_complex(a.gamma);
  const Complex quad = contours::ratios_contour_so(a.n, a.k, alpha, gamma);
  const auto decomp =
      contours::residue_decomposition_so(a.n, a.k, alpha, gamma);
  Complex decomp_sum(0.0, 0.0);
  std::cout << "pole-assignment decomposition:\n";
  for (const auto& [pa, v] : decomp) {
    decomp_sum += v;
    std::cout << "  (" << pa.to_string() << ") -> " << io::format_complex(v)
              << "\n";
  }
  haar::SamplerConfig cfg;
  cfg.seed = a.seed;
  const moments::MCEstimate mc = moments::mc_ratio_moment(
      haar::EnsembleKind::SpecialOrthogonalEven, a.n, a.k, alpha, gamma,
      a.samples, cfg);
  const double decomp_rel =
      std::abs(decomp_sum - quad) / std::max(std::abs(quad), 1e-30);
  const double z_re = mc.stderr_re > 0
                          ? std::abs(mc.mean.real() - quad.real()) / mc.stderr_re
                          : 0.0;
  const double z_im = mc.stderr_im > 0
                          ? std::abs(mc.mean.imag() - quad.imag()) / mc.stderr_im
                          : 0.0;
  const bool ok = decomp_rel <= 1e-8 && z_re <= 3.0 && z_im <= 3.0;
  std::cout << "contour  = " << io::format_complex(quad) << "\n"
            << "decompose= " << io::format_complex(decomp_sum)
            << " (rel " << io::format_g17(decomp_rel) << ")\n"
            << "mc       = " << io::format_complex(mc.mean) << " +-("
            << io::format_g17(mc.stderr_re) << ","
            << io::format_g17(mc.stderr_im) << ") z=("
            << io::format_g17(z_re) << "," << io::format_g17(z_im) << ")\n"
            << "verdict  = " << (ok ? "agree" : "DISAGREE") << "\n";
  return ok ? kExitOk : kExitNumerical;
}

struct ExcisedArgs {
  int n = 12;
  double chi = -9.210340371976182;
  std::int64_t samples = 1000000;
  int bins = 100;
  int kmax = 3;
  std::uint64_t seed = 1;
  std::string out_prefix = "excised";
  bool gnuplot = false;
};

void write_gnuplot_script(const std::string& path,
                          const std::vector<std::string>& csvs,
                          const std::string& title) {
  std::ofstream f(path);
  f << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel 'phi'\nset ylabel 'density'\n"
    << "set title '" << title << "'\nplot ";
  for (std::size_t i = 0; i < csvs.size(); ++i) {
    f << (i ? ", " : "") << "'" << csvs[i] << "' using 1:2 with "
      << (i == 0 ? "steps" : "lines");
  }
  f << "\npause -1\n";
}

int cmd_excised(const ExcisedArgs& a, const std::vector<std::string>& argv) {
  if (a.bins < 10) {
    std::cerr << "excised: --bins must be at least 10\n";
    return kExitUsage;
  }
  if (a.samples < 10000) {
    std::cerr << "excised: --samples must be at least 1e4\n";
    return kExitUsage;
  }
  const double t0 = now_s();
  excised::ExcisedConfig cfg;
  cfg.n = a.n;
  cfg.chi = a.chi;
  cfg.bins = a.bins;
  cfg.n_samples = a.samples;
  haar::SamplerConfig sampler;
  sampler.seed = a.seed;
  const excised::McDensityResult mc = excised::mc_excised_density(cfg, sampler);
  const excised::DensityCurve series = excised::excised_density_series(
      a.n, a.chi, mc.curve.phi, a.kmax, /*unit_area=*/true);
  double sup = 0.0;
  for (std::size_t i = 0; i < mc.curve.phi.size(); ++i) {
    sup = std::max(sup, std::abs(mc.curve.density[i] - series.density[i]));
  }
  const std::string mc_path = a.out_prefix + "_mc.csv";
  const std::string series_path = a.out_prefix + "_series.csv";
  {
    io::CsvWriter w(mc_path, {"phi", "density"});
    for (std::size_t i = 0; i < mc.curve.phi.size(); ++i) {
      w.row({mc.curve.phi[i], mc.curve.density[i]});
    }
  }
  {
    io::CsvWriter w(series_path, {"phi", "density"});
    for (std::size_t i = 0; i < series.phi.size(); ++i) {
      w.row({series.phi[i], series.density[i]});
    }
  }
  std::cout << "accepted " << mc.accepted << " of " << a.samples
            << " (rate " << io::format_g17(mc.acceptance_rate)
            << "), sup-norm distance " << io::format_g17(sup) << "\n";
  std::vector<std::string> outputs{mc_path, series_path};
  if (a.gnuplot) {
    const std::string gp = a.out_prefix + ".gp";
    write_gnuplot_script(gp, outputs, "excised ensemble one-level density");
    outputs.push_back(gp);
  }
  write_run_manifest(argv, a.seed, now_s() - t0, outputs,
                     a.out_prefix + "_manifest.json");
  return kExitOk;
}

struct LfunArgs {
  std::string curve = "e11";
  double X = 400.0;
  double kappa = 0.0;
  int kmax = 0;
  std::int64_t pmax = 2000;
  double phi_max = 1.0;
  int grid = 64;
  std::string zeros;
  std::string dlist;
  std::string out_prefix = "lfun";
  bool gnuplot = false;
};

int cmd_lfun(const LfunArgs& a, const std::vector<std::string>& argv) {
  if (a.curve != "e11") {
    std::cerr << "lfun: only the built-in e11 curve is configured\n";
    return kExitUsage;
  }
  if (a.kmax > 0 && a.kappa <= 0.0) {
    std::cerr << "lfun: --kappa is required when --kmax > 0\n";
    return kExitUsage;
  }
  const double t0 = now_s();
  arith::CurveConfig curve = arith::CurveConfig::e11();
  curve.kappa = a.kappa;
  const arith::ApTable table = arith::ap_table_cached(curve, a.pmax);
  arith::TwistFamily family;
  if (!a.dlist.empty()) {
    const auto ds = arith::read_dlist(a.dlist);
    family = arith::family_from_dlist(ds, curve);
  } else {
    family = arith::twist_family(a.X, curve);
  }
  if (family.d.empty()) {
    std::cerr << "lfun: empty twist family\n";
    return kExitData;
  }
  std::vector<double> grid(a.grid);
  for (int i = 0; i < a.grid; ++i) {
    grid[i] = a.phi_max * (i + 0.5) / a.grid;
  }
  const excised::DensityCurve pred =
      a.kmax == 0
          ? arith::r0_density_lfun(family, grid, curve, table)
          : arith::excised_prediction_lfun(family, grid, curve, table, a.kmax);
  const std::string pred_path = a.out_prefix + "_prediction.csv";
  std::vector<std::string> outputs{pred_path};
  {
    io::CsvWriter w(pred_path, {"phi", "density"});
    for (std::size_t i = 0; i < pred.phi.size(); ++i) {
      w.row({pred.phi[i], pred.density[i]});
    }
  }
  if (!a.zeros.empty()) {
    const arith::ZeroDataset zeros = arith::ingest_zero_data(a.zeros);
    const excised::DensityCurve hist =
        arith::zero_histogram(zeros, std::max(10, a.grid), a.phi_max);
    const std::string hist_path = a.out_prefix + "_zeros_hist.csv";
    io::CsvWriter w(hist_path, {"phi", "density"});
    for (std::size_t i = 0; i < hist.phi.size(); ++i) {
      w.row({hist.phi[i], hist.density[i]});
    }
    outputs.push_back(hist_path);
    // report a coarse comparison: normalize the prediction over the same
    // window and take the sup distance on the histogram grid
    excised::DensityCurve pred_unit = pred;
    excised::normalize_unit_area(pred_unit);
    double sup = 0.0;
    for (std::size_t i = 0; i < hist.phi.size(); ++i) {
      // nearest prediction point
      std::size_t jbest = 0;
      double dbest = 1e300;
      for (std::size_t j = 0; j < pred_unit.phi.size(); ++j) {
        const double d = std::abs(pred_unit.phi[j] - hist.phi[i]);
        if (d < dbest) {
          dbest = d;
          jbest = j;
        }
      }
      sup = std::max(sup,
                     std::abs(pred_unit.density[jbest] - hist.density[i]));
    }
    std::cout << "zeros records: " << zeros.d.size()
              << ", unit-area sup distance vs prediction: "
              << io::format_g17(sup) << "\n";
  }
  if (a.gnuplot) {
    const std::string gp = a.out_prefix + ".gp";
    write_gnuplot_script(gp, outputs, "quadratic-twist one-level density");
    outputs.push_back(gp);
  }
  std::cout << "family size " << family.d.size() << ", wrote " << pred_path
            << "\n";
  write_run_manifest(argv, 0, now_s() - t0, outputs,
                     a.out_prefix + "_manifest.json");
  return kExitOk;
}

int dispatch(const std::vector<std::string>& args);

int cmd_replay(const std::string& manifest_path) {
  const io::Manifest m = io::read_manifest(manifest_path);
  std::vector<std::string> args(m.command.begin() + 1, m.command.end());
  return dispatch(args);
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"mixed moments of characteristic polynomials over SO(2N) and "
               "USp(2N), the excised-ensemble one-level density, and "
               "ratios-conjecture predictions for quadratic twists"};
  app.set_version_flag("--version", std::string(kVersion));
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware)");

  MomentsArgs ma;
  auto* moments_cmd =
      app.add_subcommand("moments", "mixed-moment predictions vs Monte Carlo");
  moments_cmd->add_option("--ensemble", ma.ensemble, "so|usp")
      ->check(CLI::IsMember({"so", "usp"}));
  moments_cmd->add_option("--n", ma.n, "half matrix size N")->required();
  moments_cmd
      ->add_option("--r", ma.r_list, "exponent r (a+bi), repeatable")
      ->required();
  moments_cmd->add_option("--phi", ma.phi, "phi (a+bi)");
  moments_cmd->add_option("--samples", ma.samples, "Monte Carlo samples");
  moments_cmd->add_option("--seed", ma.seed, "RNG seed");
  moments_cmd->add_option("--out", ma.out, "output CSV path");

  IdentitiesArgs ia;
  auto* identities_cmd =
      app.add_subcommand("identities", "exact determinant identity suite");
  identities_cmd->add_option("--kmax", ia.kmax, "largest K")
      ->check(CLI::Range(2, 40));
  identities_cmd->add_option("--out", ia.out, "report file");

  RatiosArgs ra;
  auto* ratios_cmd = app.add_subcommand(
      "ratios-check", "contour vs decomposition vs Monte Carlo");
  ratios_cmd->add_option("--n", ra.n)->required();
  ratios_cmd->add_option("--k", ra.k)->required();
  ratios_cmd->add_option("--alpha", ra.alpha);
  ratios_cmd->add_option("--gamma", ra.gamma);
  ratios_cmd->add_option("--samples", ra.samples);
  ratios_cmd->add_option("--seed", ra.seed);
  ratios_cmd->add_option("--out", ra.out);

  ExcisedArgs ea;
  auto* excised_cmd = app.add_subcommand(
      "excised", "excised-ensemble density: Monte Carlo and residue series");
  excised_cmd->add_option("--n", ea.n)->required();
  excised_cmd->add_option("--chi", ea.chi, "cut-off exponent chi")->required();
  excised_cmd->add_option("--samples", ea.samples);
  excised_cmd->add_option("--bins", ea.bins);
  excised_cmd->add_option("--kmax", ea.kmax, "highest residue index k");
  excised_cmd->add_option("--seed", ea.seed);
  excised_cmd->add_option("--out-prefix", ea.out_prefix);
  excised_cmd->add_flag("--gnuplot", ea.gnuplot,
                        "also emit a gnuplot script for the two curves");

  LfunArgs la;
  auto* lfun_cmd = app.add_subcommand(
      "lfun", "one-level density predictions for quadratic twists");
  lfun_cmd->add_option("--curve", la.curve);
  lfun_cmd->add_option("--X", la.X, "discriminant bound");
  lfun_cmd->add_option("--kappa", la.kappa, "central value constant kappa_E");
  lfun_cmd->add_option("--kmax", la.kmax, "half-integer residues beyond r=0");
  lfun_cmd->add_option("--pmax", la.pmax, "Euler product truncation");
  lfun_cmd->add_option("--phi-max", la.phi_max);
  lfun_cmd->add_option("--grid", la.grid, "number of grid points");
  lfun_cmd->add_option("--zeros", la.zeros, "zero-data file (d,gamma lines)");
  lfun_cmd->add_option("--dlist", la.dlist, "explicit discriminant list file");
  lfun_cmd->add_option("--out-prefix", la.out_prefix);
  lfun_cmd->add_flag("--gnuplot", la.gnuplot,
                     "also emit a gnuplot script for the curves");

  std::string replay_path;
  auto* replay_cmd =
      app.add_subcommand("replay", "re-run a command from its manifest");
  replay_cmd->add_option("manifest", replay_path)->required();

  app.require_subcommand(1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help / --version
      return app.exit(e);
    }
    app.exit(e);
    return kExitUsage;
  }

  if (threads > 0) {
    setenv("RMT_THREADS", std::to_string(threads).c_str(), 1);
  }

  std::vector<std::string> argv;
  argv.push_back("rmt");
  argv.insert(argv.end(), args.begin(), args.end());

  try {
    if (*moments_cmd) return cmd_moments(ma, argv);
    if (*identities_cmd) return cmd_identities(ia, argv);
    if (*ratios_cmd) return cmd_ratios_check(ra, argv);
    if (*excised_cmd) return cmd_excised(ea, argv);
    if (*lfun_cmd) return cmd_lfun(la, argv);
    if (*replay_cmd) return cmd_replay(replay_path);
  } catch (const ParseError& e) {
    std::cerr << "data error (line " << e.line() << "): " << e.what() << "\n";
    return kExitData;
  } catch (const EmptyDataset& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const GuardError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args) { return dispatch(args); }

}  // namespace rmt::cli
