#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "vicsim/bipartite.hpp"
#include "vicsim/entanglement.hpp"
#include "vicsim/errors.hpp"

namespace vicsim::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  double gamma = 1.0;
  double eta = 1.0;
  double p = 1.0;
  std::string bell = "psi";
  double t_max = 10.0;
  std::size_t steps = 1000;
  std::string method = "oracle";
  std::string initial = "excited";
  std::string output = "-";
  std::string format;
  bool product_initial = false;

  VParams params() const {
    VParams v{gamma, eta, p};
    v.validate();
    return v;
  }
  BellKind kind() const { return bell == "phi" ? BellKind::Phi : BellKind::Psi; }
  CurveMethod curve_method() const { return method == "paper" ? CurveMethod::Paper : CurveMethod::Oracle; }
  std::vector<double> grid() const { return uniform_grid(t_max, steps); }
};

AtomState initial_atom(const std::string& name) {
  if (name == "excited") return AtomState::excited();
  if (name == "ground") return AtomState::ground();
  return AtomState::superposition();
}

void require_format(const RunConfig& cfg, const char* command, const char* only) {
  if (!cfg.format.empty() && cfg.format != only) {
    throw InvalidArgument(std::string(command) + ": --format " + cfg.format + " is not supported, use " + only);
  }
}

void write_csv_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (const double v : values) {
    if (!first) os << ',';
    os << format_scientific(v);
    first = false;
  }
  os << '\n';
}

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_pair(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string cmd_curve(const RunConfig& cfg) {
  const auto grid = cfg.grid();
  const auto curve = concurrence_curve(cfg.params(), cfg.kind(), grid, cfg.curve_method());
  std::ostringstream os;
  if (cfg.format == "json") {
    Json points = Json::array();
    for (const auto& pt : curve.points) {
      const auto& e = *pt.elements;
      points.push_back(Json{{"gamma_t", pt.gamma_t},
                            {"concurrence", pt.concurrence},
                            {"rho14_abs", e.rho14_abs},
                            {"rho23_abs", e.rho23_abs},
                            {"rho22", e.rho22},
                            {"rho33", e.rho33},
                            {"pre_norm_trace", e.pre_norm_trace}});
    }
    Json doc{{"eta", cfg.eta}, {"p", cfg.p}, {"bell", cfg.bell}, {"method", cfg.method}, {"points", points}};
    os << doc.dump(2) << '\n';
    return os.str();
  }
  os << "gamma_t,concurrence,rho14_abs,rho23_abs,rho22,rho33,pre_norm_trace\n";
  for (const auto& pt : curve.points) {
    const auto& e = *pt.elements;
    write_csv_row(os, {pt.gamma_t, pt.concurrence, e.rho14_abs, e.rho23_abs, e.rho22, e.rho33, e.pre_norm_trace});
  }
  return os.str();
}

std::string cmd_single(const RunConfig& cfg) {
  if (cfg.method != "oracle") throw InvalidArgument("single: only --method oracle is supported");
  const VParams params = cfg.params();
  const AtomState rho0 = initial_atom(cfg.initial);
  const auto grid = cfg.grid();
  std::ostringstream os;
  Json points = Json::array();
  if (cfg.format != "json") os << "gamma_t,rho11,rho22,rho33,rho13_re,rho13_im\n";
  for (const double gt : grid) {
    const auto rho = propagate_channel(params, gt / params.gamma).apply(rho0).rho;
    const double r11 = rho(kLevel1, kLevel1).real();
    const double r22 = rho(kLevel2, kLevel2).real();
    const double r33 = rho(kLevel3, kLevel3).real();
    const Complex r13 = rho(kLevel1, kLevel3);
    if (cfg.format == "json") {
      points.push_back(Json{{"gamma_t", gt},
                            {"rho11", r11},
                            {"rho22", r22},
                            {"rho33", r33},
                            {"rho13_re", r13.real()},
                            {"rho13_im", r13.imag()}});
    } else {
      write_csv_row(os, {gt, r11, r22, r33, r13.real(), r13.imag()});
    }
  }
  if (cfg.format == "json") {
    Json doc{{"eta", cfg.eta}, {"p", cfg.p}, {"initial", cfg.initial}, {"points", points}};
    os << doc.dump(2) << '\n';
  }
  return os.str();
}

std::string cmd_steady(const RunConfig& cfg) {
  require_format(cfg, "steady", "json");
  const VParams params = cfg.params();
  const TwoQubitState s = steady_two_qubit(params, cfg.kind());
  Json doc{{"eta", cfg.eta}, {"p", cfg.p}, {"bell", cfg.bell}, {"concurrence_infinity", concurrence(s)}};
  if (cfg.kind() == BellKind::Psi) {
    const double denom = std::sqrt(s.rho(1, 1).real() * s.rho(2, 2).real());
    doc["ratio_rho14_over_sqrt_rho22_rho33"] = denom > 1e-12 ? Json(std::abs(s.rho(0, 3)) / denom) : Json(nullptr);
    doc["ratio_published"] = params.maximal_interference() ? Json(paper_steady_ratio(params)) : Json(nullptr);
  }
  doc["pre_norm_trace_infinity"] = s.pre_norm_trace;
  doc["rho_infinity"] = matrix_json(s.rho);
  return doc.dump(2) + "\n";
}

std::string cmd_compare(const RunConfig& cfg) {
  require_format(cfg, "compare", "json");
  const VParams params = cfg.params();
  if (!params.maximal_interference()) throw InvalidArgument("compare: requires --p 1");
  Json doc{{"eta", cfg.eta}, {"p", cfg.p}, {"t_max", cfg.t_max}, {"steps", cfg.steps}};
  const auto grid = cfg.grid();
  const Json report = compare_report(params, grid);
  for (const auto& [key, value] : report.items()) doc[key] = value;
  return doc.dump(2) + "\n";
}

std::string cmd_esd(const RunConfig& cfg) {
  require_format(cfg, "esd", "json");
  const VParams params = cfg.params();
  EsdOptions opts;
  opts.horizon = cfg.t_max;
  Json doc{{"eta", cfg.eta}, {"p", cfg.p}};
  EsdResult r;
  if (cfg.product_initial) {
    doc["initial"] = "product";
    r = esd_time(params, PairState::product(AtomState::excited(), AtomState::ground()), opts);
  } else {
    doc["initial"] = cfg.bell;
    doc["method"] = cfg.method;
    r = esd_time(params, cfg.kind(), cfg.curve_method(), opts);
  }
  doc["kind"] = to_string(r.kind);
  if (r.kind == EsdResult::Kind::VanishesAt) {
    doc["gamma_t_death"] = r.value;
  } else {
    doc["concurrence_limit"] = r.value;
  }
  return doc.dump(2) + "\n";
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open output file '" + cfg.output + "'");
  file << text;
  if (!file.flush()) throw InvalidArgument("failed writing '" + cfg.output + "'");
}

std::string one_line(std::string msg) {
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  while (!msg.empty() && msg.back() == ' ') msg.pop_back();
  return msg;
}

}  // namespace

std::string format_scientific(double value) {
  if (value == 0.0) value = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", value);
  return buf;
}

Json compare_report(const VParams& params, std::span<const double> gamma_t_grid) {
  double atom_dev[3][3] = {};
  double psi_dev[4] = {};
  double phi_dev = 0.0;
  const char* initial_names[3] = {"excited", "ground", "superposition"};

  for (const double gt : gamma_t_grid) {
    const double t = gt / params.gamma;
    const QuantumChannel channel = propagate_channel(params, t);
    for (int k = 0; k < 3; ++k) {
      const AtomState rho0 = initial_atom(initial_names[k]);
      const auto oracle = channel.apply(rho0).rho;
      const PaperAtomElements paper = paper_closed_form(params, rho0, t);
      atom_dev[k][0] = std::max(atom_dev[k][0], std::abs(paper.rho11 - oracle(kLevel1, kLevel1).real()));
      atom_dev[k][1] = std::max(atom_dev[k][1], std::abs(paper.rho33 - oracle(kLevel3, kLevel3).real()));
      atom_dev[k][2] = std::max(atom_dev[k][2], std::abs(paper.rho13 - oracle(kLevel1, kLevel3)));
    }

    const auto psi = qubit_block(evolve_pair(params, params, bell_state(BellKind::Psi), t));
    const PaperPairElements pp = paper_elements(params, BellKind::Psi, t);
    psi_dev[0] = std::max(psi_dev[0], std::abs(*pp.rho11 - psi(0, 0).real()));
    psi_dev[1] = std::max(psi_dev[1], std::abs(*pp.rho22 - psi(1, 1).real()));
    psi_dev[2] = std::max(psi_dev[2], std::abs(*pp.rho33 - psi(2, 2).real()));
    psi_dev[3] = std::max(psi_dev[3], std::abs(*pp.rho14 - psi(0, 3)));

    const auto phi = qubit_block(evolve_pair(params, params, bell_state(BellKind::Phi), t));
    const PaperPairElements pf = paper_elements(params, BellKind::Phi, t);
    phi_dev = std::max(phi_dev, std::abs(*pf.rho23 - phi(1, 2) / phi.trace().real()));
  }

  Json atom;
  for (int k = 0; k < 3; ++k) {
    atom[initial_names[k]] = Json{{"rho11", atom_dev[k][0]}, {"rho33", atom_dev[k][1]}, {"rho13", atom_dev[k][2]}};
  }
  const double published = paper_steady_rho11(params, AtomState::excited());
  const double oracle = steady_state(params, AtomState::excited()).rho(kLevel1, kLevel1).real();
  atom["rho11_infinity"] = Json{{"published", published}, {"oracle", oracle}, {"deviation", std::abs(published - oracle)}};

  return Json{{"single_atom", atom},
              {"two_qubit",
               Json{{"psi", Json{{"rho11", psi_dev[0]}, {"rho22", psi_dev[1]}, {"rho33", psi_dev[2]}, {"rho14", psi_dev[3]}}},
                    {"phi", Json{{"rho23", phi_dev}}}}}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Two V-type atoms with vacuum-induced coherence: entanglement dynamics", "vicsim"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file (one per line, # comments); command-line flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("--gamma", cfg.gamma, "decay rate of |1> (only rescales physical time)");
  app.add_option("--eta", cfg.eta, "dipole ratio |d23|/|d13|");
  app.add_option("--p", cfg.p, "interference factor in [0, 1]");
  app.add_option("--bell", cfg.bell, "initial Bell state")->check(CLI::IsMember({"psi", "phi"}));
  app.add_option("--t-max", cfg.t_max, "last gamma_t sample (esd: scan horizon)");
  app.add_option("--steps", cfg.steps, "number of samples including gamma_t = 0");
  app.add_option("--method", cfg.method, "master equation or published formulas")
      ->check(CLI::IsMember({"oracle", "paper"}));
  app.add_option("--initial", cfg.initial, "single-atom initial state")
      ->check(CLI::IsMember({"excited", "ground", "superposition"}));
  app.add_option("--output", cfg.output, "output path, - for stdout");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--product-initial", cfg.product_initial)->group("");

  auto* curve = app.add_subcommand("curve", "concurrence against gamma_t (CSV)");
  auto* single = app.add_subcommand("single", "single-atom density matrix against gamma_t (CSV)");
  auto* steady = app.add_subcommand("steady", "t -> infinity two-qubit report (JSON)");
  auto* compare = app.add_subcommand("compare", "published formulas against the master equation (JSON)");
  auto* esd = app.add_subcommand("esd", "entanglement sudden death analysis (JSON)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "vicsim: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    std::string text;
    if (curve->parsed()) text = cmd_curve(cfg);
    if (single->parsed()) text = cmd_single(cfg);
    if (steady->parsed()) text = cmd_steady(cfg);
    if (compare->parsed()) text = cmd_compare(cfg);
    if (esd->parsed()) text = cmd_esd(cfg);
    emit(cfg, text, out);
  } catch (const NoConvergence& e) {
    err << "vicsim: " << one_line(e.what()) << '\n';
    return 1;
  } catch (const Error& e) {
    err << "vicsim: " << one_line(e.what()) << '\n';
    return 2;
  }
  return 0;
}

}  // namespace vicsim::cli
