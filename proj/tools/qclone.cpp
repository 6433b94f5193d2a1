// qclone: command-line workbench for the symmetric partial cloning machine.
//
// Subcommands:
//   clone         run the machine once on a given state, print all outputs
//   optimize      minimize the averaged distance G(zeta, nu) over [0,1]^2
//   fidelity-map  export the clone fidelity over the real Bloch slice as CSV
//   verify        run the internal cross-check suite
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
//             3 domain error (non-physical state), 4 I/O error.

#include <cstdio>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qclone/ensemble.hpp"
#include "qclone/kv_file.hpp"
#include "qclone/qcm.hpp"
#include "qclone/qstate.hpp"
#include "qclone/search.hpp"
#include "qclone/verify.hpp"

namespace {

using qclone::cplx;

std::string fmt_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_c(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gj", z.real(), z.imag());
  return buf;
}

std::string fmt_csv(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": '" + s + "'");
  }
}

// Complex literals in the form used throughout: "re", "imj" or "re+imj",
// e.g. 0.5, -0.25j, 1+0j, 0.3-0.4j.
cplx parse_complex(const std::string& raw) {
  const std::string s = qclone::kv_trim(raw);
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'j') return {parse_double(s, "complex number"), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // split at the last +/- that is not an exponent sign and not leading
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    const char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_imag = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double(t, "imaginary part");
  };
  if (split == std::string::npos) return {0.0, parse_imag(body)};
  return {parse_double(body.substr(0, split), "real part"), parse_imag(body.substr(split))};
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) parts.push_back(cur);
  if (!s.empty() && s.back() == ',') parts.push_back("");
  return parts;
}

struct Options {
  // clone
  std::string amps, bloch;
  double zeta = 0.725, nu = 1.0;
  // optimize
  std::string ensemble = "pure", method = "quad", out;
  std::uint64_t samples = 1'000'000, seed = 42;
  std::size_t points_per_axis = 12;
  double grid_step = 0.05, refine_tol = 0.002;
  unsigned threads = 0;
  // fidelity-map
  std::string grid = "101x91";
  // verify
  std::string level = "quick";
  // shared
  std::string config;
};

std::uint64_t parse_unsigned(const std::string& s, const std::string& what) {
  try {
    if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": '" + s + "'");
  }
}

void apply_config(Options& o, const std::string& path) {
  for (const auto& [key, value] : qclone::read_kv_file(path)) {
    if (key == "amps") o.amps = value;
    else if (key == "bloch") o.bloch = value;
    else if (key == "zeta") o.zeta = parse_double(value, "zeta");
    else if (key == "nu") o.nu = parse_double(value, "nu");
    else if (key == "ensemble") o.ensemble = value;
    else if (key == "method") o.method = value;
    else if (key == "out") o.out = value;
    else if (key == "samples") o.samples = parse_unsigned(value, "samples");
    else if (key == "seed") o.seed = parse_unsigned(value, "seed");
    else if (key == "points-per-axis") o.points_per_axis = parse_unsigned(value, "points-per-axis");
    else if (key == "grid-step") o.grid_step = parse_double(value, "grid-step");
    else if (key == "refine-tol") o.refine_tol = parse_double(value, "refine-tol");
    else if (key == "threads") o.threads = static_cast<unsigned>(parse_unsigned(value, "threads"));
    else if (key == "grid") o.grid = value;
    else if (key == "level") o.level = value;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

qclone::AveragingScheme scheme_from(const Options& o) {
  qclone::AveragingScheme s;
  if (o.method == "mc")
    s = qclone::AveragingScheme::monte_carlo(o.samples, o.seed);
  else if (o.method == "quad")
    s = qclone::AveragingScheme::quadrature(o.points_per_axis);
  else
    throw std::invalid_argument("method must be 'quad' or 'mc'");
  s.threads = o.threads;
  return s;
}

qclone::EnsembleKind ensemble_from(const Options& o) {
  if (o.ensemble == "pure") return qclone::EnsembleKind::pure;
  if (o.ensemble == "mixed") return qclone::EnsembleKind::mixed;
  throw std::invalid_argument("ensemble must be 'pure' or 'mixed'");
}

int cmd_clone(const Options& o) {
  if (o.amps.empty() == o.bloch.empty())
    throw std::invalid_argument("clone needs exactly one of --amps or --bloch");

  qclone::QubitDensity rho;
  if (!o.amps.empty()) {
    const auto parts = split_commas(o.amps);
    if (parts.size() != 4)
      throw std::invalid_argument("--amps needs four comma-separated complex amplitudes");
    const qclone::Amplitudes2Q psi = qclone::Amplitudes2Q::canonical(
        parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2]),
        parse_complex(parts[3]));
    std::cout << "amps=" << fmt_c(psi.a00) << "," << fmt_c(psi.a01) << "," << fmt_c(psi.a10)
              << "," << fmt_c(psi.a11) << "\n";
    rho = qclone::reduce_first(psi);
  } else {
    const auto parts = split_commas(o.bloch);
    if (parts.size() != 3)
      throw std::invalid_argument("--bloch needs r,theta,phi");
    rho = qclone::bloch_to_density({parse_double(parts[0], "r"), parse_double(parts[1], "theta"),
                                    parse_double(parts[2], "phi")});
  }

  const qclone::ClonerParams p{o.zeta, o.nu};
  const qclone::CMatrix joint = qclone::joint_output(rho, p);
  const qclone::QubitDensity single = qclone::single_output(rho, p);

  std::cout << "zeta=" << fmt_g(p.zeta) << "\n"
            << "nu=" << fmt_g(p.nu) << "\n"
            << "rho_init.A=" << fmt_g(rho.A) << "\n"
            << "rho_init.B=" << fmt_c(rho.B) << "\n";
  for (std::size_t i = 0; i < 4; ++i) {
    std::cout << "rho_out12.row" << i << "=";
    for (std::size_t j = 0; j < 4; ++j) std::cout << (j ? " " : "") << fmt_c(joint(i, j));
    std::cout << "\n";
  }
  std::cout << "rho_out1.A=" << fmt_g(single.A) << "\n"
            << "rho_out1.B=" << fmt_c(single.B) << "\n"
            << "fidelity=" << fmt_g(qclone::fidelity(rho, single)) << "\n"
            << "W=" << fmt_g(qclone::w_closed(p, rho)) << "\n";
  return 0;
}

int cmd_optimize(const Options& o) {
  const qclone::EnsembleKind kind = ensemble_from(o);
  const qclone::AveragingScheme scheme = scheme_from(o);
  const qclone::SearchResult res = qclone::minimize(kind, scheme, o.grid_step, o.refine_tol);

  std::vector<std::pair<std::string, std::string>> report;
  report.emplace_back("ensemble", o.ensemble);
  report.emplace_back("method", o.method);
  if (scheme.method == qclone::Method::monte_carlo) {
    report.emplace_back("samples", std::to_string(o.samples));
    report.emplace_back("seed", std::to_string(o.seed));
  } else {
    report.emplace_back("points_per_axis", std::to_string(o.points_per_axis));
  }
  report.emplace_back("zeta_star", fmt_g(res.zeta_star));
  report.emplace_back("nu_star", fmt_g(res.nu_star));
  report.emplace_back("g_star", fmt_g(res.g_star));
  report.emplace_back("evaluations", std::to_string(res.trace.size()));
  report.emplace_back("converged", res.converged ? "true" : "false");
  if (!res.diagnostic.empty()) report.emplace_back("diagnostic", res.diagnostic);

  for (const auto& [key, value] : report) std::cout << key << "=" << value << "\n";
  if (!o.out.empty()) qclone::write_kv_file(o.out, report);
  return 0;
}

int cmd_fidelity_map(const Options& o) {
  const auto x = o.grid.find('x');
  if (x == std::string::npos) throw std::invalid_argument("--grid must look like 101x91");
  std::size_t nr = 0, nt = 0;
  try {
    nr = std::stoull(o.grid.substr(0, x));
    nt = std::stoull(o.grid.substr(x + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("--grid must look like 101x91");
  }
  if (nr < 2 || nt < 2) throw std::invalid_argument("--grid sizes must be >= 2");
  if (o.out.empty()) throw std::invalid_argument("fidelity-map needs --out");

  const qclone::ClonerParams p{o.zeta, o.nu};
  qclone::ensure_params(p);

  std::ofstream csv(o.out, std::ios::binary);
  if (!csv) throw qclone::IoError("cannot write file: " + o.out);
  csv << "r,theta,fidelity\n";
  constexpr double threshold = 5.0 / 6.0;
  std::size_t above = 0;
  for (std::size_t i = 0; i < nr; ++i) {
    const double r = static_cast<double>(i) / static_cast<double>(nr - 1);
    for (std::size_t j = 0; j < nt; ++j) {
      const double theta =
          static_cast<double>(j) / static_cast<double>(nt - 1) * (std::numbers::pi / 2.0);
      const qclone::QubitDensity rho = qclone::bloch_to_density({r, theta, 0.0});
      const double f = qclone::fidelity(rho, qclone::single_output(rho, p));
      if (f > threshold) ++above;
      csv << fmt_csv(r) << "," << fmt_csv(theta) << "," << fmt_csv(f) << "\n";
    }
  }
  csv.flush();
  if (!csv) throw qclone::IoError("write failed: " + o.out);

  char frac[16];
  std::snprintf(frac, sizeof frac, "%.4f",
                static_cast<double>(above) / static_cast<double>(nr * nt));
  std::cout << "grid=" << nr << "x" << nt << "\n"
            << "zeta=" << fmt_g(o.zeta) << "\n"
            << "nu=" << fmt_g(o.nu) << "\n"
            << "fraction_above_5_6=" << frac << "\n"
            << "out=" << o.out << "\n";
  return 0;
}

int cmd_verify(const Options& o) {
  std::uint64_t cases = 0;
  if (o.level == "quick")
    cases = 100;
  else if (o.level == "full")
    cases = 10'000;
  else
    throw std::invalid_argument("--level must be 'quick' or 'full'");

  const auto checks = qclone::run_verification(cases, o.seed, o.threads);
  std::printf("%-42s %8s %12s %10s  %s\n", "check", "cases", "worst", "tol", "result");
  for (const auto& c : checks) {
    std::printf("%-42s %8llu %12.3g %10.3g  %s\n", c.name.c_str(),
                static_cast<unsigned long long>(c.cases), c.worst, c.tol,
                c.pass ? "PASS" : "FAIL");
    if (!c.pass) std::printf("  first failure: %s\n", c.first_failure.c_str());
  }
  const bool ok = qclone::all_passed(checks);
  std::printf("%s\n", ok ? "all checks passed" : "verification FAILED");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;

  CLI::App app{"Workbench for a symmetric partial cloning machine on qubit pairs"};
  app.require_subcommand(1);

  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "key=value config file; flags override it");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  };

  CLI::App* clone = app.add_subcommand("clone", "run the machine once and print all outputs");
  clone->add_option("--amps", o.amps, "four complex amplitudes a00,a01,a10,a11 (re+imj form)");
  clone->add_option("--bloch", o.bloch, "Bloch point r,theta,phi of the input density matrix");
  clone->add_option("--zeta", o.zeta, "machine parameter zeta in [0,1]");
  clone->add_option("--nu", o.nu, "machine parameter nu in [0,1]");
  add_common(clone);

  CLI::App* opt = app.add_subcommand("optimize", "minimize the averaged distance G(zeta,nu)");
  opt->add_option("--ensemble", o.ensemble, "pure | mixed");
  opt->add_option("--method", o.method, "quad | mc");
  opt->add_option("--samples", o.samples, "Monte Carlo sample count");
  opt->add_option("--points-per-axis", o.points_per_axis, "quadrature points per axis");
  opt->add_option("--seed", o.seed, "Monte Carlo seed");
  opt->add_option("--grid-step", o.grid_step, "coarse grid step");
  opt->add_option("--refine-tol", o.refine_tol, "refinement bracket tolerance");
  opt->add_option("--out", o.out, "write the result as a key=value file");
  add_common(opt);

  CLI::App* fmap = app.add_subcommand("fidelity-map",
                                      "CSV of clone fidelity over the real Bloch slice");
  fmap->add_option("--zeta", o.zeta, "machine parameter zeta in [0,1]");
  fmap->add_option("--nu", o.nu, "machine parameter nu in [0,1]");
  fmap->add_option("--grid", o.grid, "RxT grid sizes, e.g. 101x91");
  fmap->add_option("--out", o.out, "output CSV path");
  add_common(fmap);

  CLI::App* ver = app.add_subcommand("verify", "run the internal cross-check suite");
  ver->add_option("--level", o.level, "quick | full");
  ver->add_option("--seed", o.seed, "random case seed");
  add_common(ver);

  try {
    // config file values come first, command-line flags override them
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config") {
        if (i + 1 >= argc) throw std::invalid_argument("--config needs a path");
        apply_config(o, argv[i + 1]);
      } else if (arg.rfind("--config=", 0) == 0) {
        apply_config(o, arg.substr(9));
      }
    }

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 2;
    }

    if (clone->parsed()) return cmd_clone(o);
    if (opt->parsed()) return cmd_optimize(o);
    if (fmap->parsed()) return cmd_fidelity_map(o);
    if (ver->parsed()) return cmd_verify(o);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const qclone::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
