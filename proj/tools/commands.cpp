#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "twc/errors.hpp"
#include "twc/hermite.hpp"
#include "twc/io.hpp"
#include "twc/oscillators.hpp"
#include "twc/phase_space.hpp"
#include "twc/positivity.hpp"
#include "twc/twisted_algebra.hpp"

namespace twc::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string command;
  int d = 1;
  int n_max = 48;
  int N_max = 40;
  std::uint64_t seed = 0;
  double planted_s = 0.5;
  double planted_r = std::numeric_limits<double>::quiet_NaN();
  int rank = 3;
  std::string flavor = "roumieu";
  double grid_L = 8.0;
  int grid_n = 256;
  double tol = kDefaultPsdTolerance;
  double s_tol = 0.15;
  bool strict = true;
  std::string mode = "origin";
  std::string op;
  std::string product = "twisted";
  int power = 1;
  bool weyl = false;
  std::vector<std::string> inputs;
  std::string output;
  std::string csv;
  bool planted_s_given = false;
};


Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["d"] = c.d;
  j["n_max"] = c.n_max;
  j["N_max"] = c.N_max;
  j["seed"] = c.seed;
  j["planted_s"] = c.planted_s;
  j["planted_r"] = std::isnan(c.planted_r) ? Json("auto") : Json(c.planted_r);
  j["rank"] = c.rank;
  j["flavor"] = c.flavor;
  j["grid_L"] = c.grid_L;
  j["grid_n"] = c.grid_n;
  j["tol"] = c.tol;
  j["s_tol"] = c.s_tol;
  j["strict"] = c.strict;
  j["mode"] = c.mode;
  if (!c.op.empty()) j["op"] = c.op;
  if (c.command == "compose") j["product"] = c.product;
  if (c.command == "transform") j["power"] = c.power;
  if (c.command == "verify") j["weyl"] = c.weyl;
  j["inputs"] = c.inputs;
  return j;
}

Json envelope(const RunConfig& c) {
  Json j;
  j["tool"] = "twc";
  j["version"] = kVersion;
  j["config"] = config_json(c);
  return j;
}

void merge(Json& into, const Json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

void emit(const RunConfig& c, const Json& j, std::ostream& out) {
  if (c.output.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_json_file(c.output, j);
  }
}

GridSpec grid_spec(const RunConfig& c) {
  GridSpec g{c.grid_L, c.grid_n};
  g.validate();
  return g;
}

const std::string& single_input(const RunConfig& c) {
  if (c.inputs.size() != 1) throw InvalidArgument(c.command + " needs exactly one --in path");
  return c.inputs.front();
}

WongCoeffMatrix load_matrix(const std::string& path) { return wong_matrix_from_json(read_json_file(path)); }

GrowthOptions growth_options(const RunConfig& c) {
  GrowthOptions g;
  if (c.mode == "origin") {
    g.norm = GrowthNorm::Origin;
  } else if (c.mode == "sup") {
    g.norm = GrowthNorm::Sup;
  } else {
    throw InvalidArgument("--mode must be origin or sup");
  }
  g.grid = grid_spec(c);
  return g;
}

PlantedParams planted_params(const RunConfig& c) {
  PlantedParams p;
  p.d = c.d;
  p.n_max = c.n_max;
  p.rank = c.rank;
  p.s = c.planted_s;
  p.rate = c.planted_r;
  p.flavor = parse_flavor(c.flavor);
  p.seed = c.seed;
  p.growth_horizon = c.N_max;
  return p;
}

std::string csv_header(const RunConfig& c) {
  return std::string("# twc ") + kVersion + " config=" + config_json(c).dump() + "\n";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("write failed for " + path.string());
}

std::string fmt(double v) { return format_double(v); }

// ------------------------------------------------------------------- commands

int cmd_gen(const RunConfig& c, std::ostream& out) {
  const PositiveElement e = random_positive_element(planted_params(c));
  Json j = envelope(c);
  merge(j, to_json(e.c));
  j["planted_rate"] = e.rate;
  Json gens = Json::array();
  for (const auto& f : e.generators) gens.push_back(to_json(f));
  j["generators"] = std::move(gens);
  emit(c, j, out);
  return 0;
}

int cmd_compose(const RunConfig& c, std::ostream& out) {
  if (c.inputs.size() != 2) throw InvalidArgument("compose needs two --in paths");
  const WongCoeffMatrix a = load_matrix(c.inputs[0]);
  const WongCoeffMatrix b = load_matrix(c.inputs[1]);
  WongCoeffMatrix r;
  if (c.product == "twisted") {
    r = twisted_convolution_coeff(a, b);
  } else if (c.product == "weyl") {
    r = weyl_product(a, b);
  } else {
    throw InvalidArgument("--product must be twisted or weyl");
  }
  Json j = envelope(c);
  merge(j, to_json(r));
  emit(c, j, out);
  return 0;
}

int cmd_transform(const RunConfig& c, std::ostream& out) {
  const std::string& in = single_input(c);
  if (c.op == "synthesize") {
    if (c.output.empty()) throw InvalidArgument("synthesize writes a binary grid; --out is required");
    const WongCoeffMatrix m = load_matrix(in);
    const GridFunction g = synthesize(m, grid_spec(c));
    if (c.strict) check_boundary(g, BoundaryPolicy{}, "synthesize");
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw IoError("cannot write " + c.output);
    write_grid_binary(f, g);
    if (!f) throw IoError("write failed for " + c.output);
    Json side = envelope(c);
    side["grid"] = grid_header_json(g);
    write_json_file(c.output + ".json", side);
    return 0;
  }
  if (c.op == "expand") {
    std::ifstream f(in, std::ios::binary);
    if (!f) throw IoError("cannot open " + in);
    const GridFunction g = read_grid_binary(f);
    if (c.strict) check_boundary(g, BoundaryPolicy{}, "expand");
    Json j = envelope(c);
    merge(j, to_json(expand(g, c.n_max)));
    emit(c, j, out);
    return 0;
  }
  const WongCoeffMatrix m = load_matrix(in);
  WongCoeffMatrix r;
  Json j = envelope(c);
  if (c.op == "fsigma") {
    r = symplectic_fourier_coeff(m);
  } else if (c.op == "h-sigma") {
    r = m;
    for (int k = 0; k < c.power; ++k) r = apply_H_sigma_coeff(r);
  } else if (c.op == "h-bar-sigma") {
    r = m;
    for (int k = 0; k < c.power; ++k) r = apply_H_bar_sigma_coeff(r);
  } else if (c.op == "t-sigma") {
    r = apply_T_sigma_coeff(m, c.power);
  } else if (c.op == "weyl") {
    const KernelMatrix op = weyl_quantize(m);
    r = WongCoeffMatrix(op.index(), op.entries());
    j["kind"] = "operator";
  } else if (c.op == "weyl-symbol") {
    r = weyl_symbol(KernelMatrix(m.index(), m.entries()));
  } else {
    throw InvalidArgument("unknown --op '" + c.op +
                          "' (fsigma, h-sigma, h-bar-sigma, t-sigma, weyl, weyl-symbol, synthesize, expand)");
  }
  merge(j, to_json(r));
  emit(c, j, out);
  return 0;
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
  const DecayFit fit = classify_decay(load_matrix(single_input(c)));
  Json j = envelope(c);
  j["decay"] = to_json(fit);
  emit(c, j, out);
  return 0;
}

int cmd_positive(const RunConfig& c, std::ostream& out) {
  const PositivityResult p = is_positive_twisted(load_matrix(single_input(c)), c.tol);
  Json j = envelope(c);
  j["positivity"] = to_json(p);
  emit(c, j, out);
  return p.positive ? 0 : 1;
}

std::string growth_csv(const RunConfig& c, const GrowthSequence& g) {
  std::string s = csv_header(c) + "N,log_g_N\n";
  for (std::size_t n = 0; n < g.values_log.size(); ++n) s += std::to_string(n) + "," + fmt(g.values_log[n]) + "\n";
  return s;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  VerifyOptions opt;
  opt.N_max = c.N_max;
  opt.s_tolerance = c.s_tol;
  opt.psd_tolerance = c.tol;
  opt.growth = growth_options(c);

  std::optional<double> planted;
  std::optional<WongCoeffMatrix> input;
  if (!c.inputs.empty()) {
    input = load_matrix(single_input(c));
    if (c.planted_s_given) planted = c.planted_s;
  } else {
    planted = c.planted_s;
  }

  Json j = envelope(c);
  bool pass = false;
  RegularityReport reg;
  if (c.weyl) {
    const WongCoeffMatrix symbol = input ? *input : planted_weyl_symbol(planted_params(c));
    WeylReport w = verify_weyl_positive(symbol, planted, opt);
    if (!input) {
      w.regularity.seed = c.seed;
      w.regularity.rank = c.rank;
    }
    merge(j, to_json(w));
    pass = w.pass;
    reg = w.regularity;
  } else {
    reg = input ? verify_regularity(*input, planted, opt) : verify_regularity_theorem(planted_params(c), opt);
    merge(j, to_json(reg));
    pass = reg.pass;
  }
  emit(c, j, out);

  std::string csv_path = c.csv;
  if (csv_path.empty() && !c.output.empty()) csv_path = fs::path(c.output).replace_extension(".csv").string();
  if (!csv_path.empty() && !reg.growth.values_log.empty()) write_text(csv_path, growth_csv(c, reg.growth));
  return pass ? 0 : 1;
}

// ------------------------------------------------------------------- tables

std::string table_hermite_orthonormality(const RunConfig& c) {
  const QuadratureRule rule = gauss_hermite_rule(64);
  const RMatrix t = hermite_table(32, rule.nodes);
  std::string s = csv_header(c) + "i,j,inner_product,deviation\n";
  for (int i = 0; i <= 32; ++i) {
    for (int j = 0; j <= 32; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < rule.size(); ++k)
        v += rule.scaled_weights[k] * t(i, static_cast<Eigen::Index>(k)) * t(j, static_cast<Eigen::Index>(k));
      s += std::to_string(i) + "," + std::to_string(j) + "," + fmt(v) + "," + fmt(std::abs(v - (i == j ? 1.0 : 0.0))) + "\n";
    }
  }
  return s;
}

std::string table_rho_orthonormality(const RunConfig& c) {
  const GridSpec spec = grid_spec(c);
  std::vector<PairIndex> pairs;
  std::vector<GridFunction> rho;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      pairs.emplace_back(MultiIndex{a}, MultiIndex{b});
      rho.push_back(hermite_wong_eval(pairs.back(), spec));
    }
  std::string s = csv_header(c) + "alpha1,alpha2,beta1,beta2,inner_re,inner_im,deviation\n";
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t q = p; q < pairs.size(); ++q) {
      const Complex v = inner_product(rho[p], rho[q]);
      const double dev = std::abs(v - Complex(p == q ? 1.0 : 0.0));
      s += std::to_string(pairs[p].first[0]) + "," + std::to_string(pairs[p].second[0]) + "," +
           std::to_string(pairs[q].first[0]) + "," + std::to_string(pairs[q].second[0]) + "," + fmt(v.real()) + "," +
           fmt(v.imag()) + "," + fmt(dev) + "\n";
    }
  }
  return s;
}

std::string table_oracle_gaps(const RunConfig& c) {
  const GridSpec spec = grid_spec(c);
  std::string s = csv_header(c) + "check,value,reference,gap\n";
  auto row = [&](const std::string& name, double v, double ref) {
    s += name + "," + fmt(v) + "," + fmt(ref) + "," + fmt(std::abs(v - ref)) + "\n";
  };
  const double origin = std::sqrt(2.0 / kPi);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      row("rho_origin_quadrature_" + std::to_string(a) + "_" + std::to_string(b),
          std::abs(hermite_wong_at(PairIndex(MultiIndex{a}, MultiIndex{b}), 0.0, 0.0)), a == b ? origin : 0.0);

  if (spec.has_origin_node()) {
    const GridFunction w = wigner(sample_hermite(0, spec), sample_hermite(0, spec));
    row("wigner_h0_origin_grid", w(spec.center(), spec.center()).real(), origin);
  }

  for (const auto& [a, b] : {std::pair{0, 0}, std::pair{2, 1}}) {
    const PairIndex alpha(MultiIndex{a}, MultiIndex{b});
    const GridFunction k = kernel_map_A_grid(hermite_wong_eval(alpha, spec));
    const GridFunction ref = tensor_kernel(sample_hermite(a, spec), sample_hermite(b, spec));
    row("kernel_map_A_max_dev_" + std::to_string(a) + "_" + std::to_string(b), (k - ref).max_abs(), 0.0);
  }

  const GridSpec small{7.0, 65};
  const GridFunction r01 = hermite_wong_eval(PairIndex(MultiIndex{0}, MultiIndex{1}), small);
  const std::vector<GridFunction> bs{hermite_wong_eval(PairIndex(MultiIndex{1}, MultiIndex{3}), small),
                                     hermite_wong_eval(PairIndex(MultiIndex{2}, MultiIndex{3}), small)};
  const auto prod = twisted_convolution_grid(r01, bs);
  const GridFunction r03 = hermite_wong_eval(PairIndex(MultiIndex{0}, MultiIndex{3}), small);
  row("twisted_grid_rho01_rho13_rel_gap", (prod[0] - r03).l2_norm() / r03.l2_norm(), 0.0);
  row("twisted_grid_rho01_rho23_norm", prod[1].l2_norm(), 0.0);
  return s;
}

std::string table_eigen_residuals(const RunConfig& c) {
  const GridSpec spec = grid_spec(c);
  std::string s = csv_header(c) + "alpha1,alpha2,eig_h_sigma,grid_rel_err_h_sigma,eig_h_bar_sigma,grid_rel_err_h_bar_sigma,ladder_residual\n";
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; a + b <= 6; ++b) {
      const PairIndex alpha(MultiIndex{a}, MultiIndex{b});
      const GridFunction rho = hermite_wong_eval(alpha, spec);
      const double eh = 2.0 * a + 1.0, ebar = 2.0 * b + 1.0;
      const double rh = (apply_H_sigma_grid(rho) - Complex(eh) * rho).l2_norm() / (eh * rho.l2_norm());
      const double rb = (apply_H_bar_sigma_grid(rho) - Complex(ebar) * rho).l2_norm() / (ebar * rho.l2_norm());
      const WongCoeffMatrix u = WongCoeffMatrix::unit(1, 8, alpha);
      const double lad = (h_sigma_from_ladders(u).entries() - apply_H_sigma_coeff(u).entries()).norm();
      s += std::to_string(a) + "," + std::to_string(b) + "," + fmt(eh) + "," + fmt(rh) + "," + fmt(ebar) + "," + fmt(rb) +
           "," + fmt(lad) + "\n";
    }
  }
  return s;
}

std::string table_trace_identity(const RunConfig& c) {
  std::string s = csv_header(c) + "rank,N,log_lhs,log_rhs,relative_gap\n";
  for (int rank = 1; rank <= 5; ++rank) {
    PlantedParams p;
    p.n_max = 32;
    p.rank = rank;
    p.s = 0.5;
    p.rate = 0.5;
    p.seed = c.seed + static_cast<std::uint64_t>(rank);
    const PositiveElement e = random_positive_element(p);
    for (int N = 0; N <= 6; ++N) {
      const TraceIdentity t = trace_identity_check(e.generators, N);
      s += std::to_string(rank) + "," + std::to_string(N) + "," + fmt(t.log_lhs) + "," + fmt(t.log_rhs) + "," +
           fmt(t.relative_gap) + "\n";
    }
  }
  return s;
}

std::string table_growth_fits(const RunConfig& c) {
  std::string s = csv_header(c) + "planted_s,seed,planted_rate,s_growth,s_decay,residual_growth,residual_decay,pass\n";
  VerifyOptions opt;
  opt.N_max = c.N_max;
  opt.s_tolerance = c.s_tol;
  for (double ps : {0.3, 0.5, 1.0}) {
    for (std::uint64_t k = 0; k < 10; ++k) {
      PlantedParams p;
      p.n_max = c.n_max;
      p.rank = c.rank;
      p.s = ps;
      p.seed = c.seed + k;
      const RegularityReport r = verify_regularity_theorem(p, opt);
      s += fmt(ps) + "," + std::to_string(p.seed) + "," + fmt(r.planted_rate.value_or(0.0)) + "," + fmt(r.growth.s) + "," +
           fmt(r.decay.s_hat) + "," + fmt(r.growth.residual) + "," + fmt(r.decay.residual) + "," +
           (r.pass ? "true" : "false") + "\n";
    }
  }
  return s;
}

int cmd_tables(const RunConfig& c, std::ostream& out) {
  if (c.output.empty()) throw InvalidArgument("tables needs --out DIR");
  const fs::path dir(c.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const std::vector<std::pair<std::string, std::string (*)(const RunConfig&)>> tables{
      {"hermite_orthonormality.csv", table_hermite_orthonormality},
      {"rho_orthonormality.csv", table_rho_orthonormality},
      {"oracle_gaps.csv", table_oracle_gaps},
      {"eigen_residuals.csv", table_eigen_residuals},
      {"trace_identity.csv", table_trace_identity},
      {"growth_fits.csv", table_growth_fits},
  };
  for (const auto& [name, make] : tables) {
    write_text(dir / name, make(c));
    out << (dir / name).string() << '\n';
  }
  return 0;
}

// -------------------------------------------------------------------- parser

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--d", c.d, "Dimension (1 or 2)")->check(CLI::Range(1, 2));
  sub->add_option("--n-max", c.n_max, "Index cutoff per coordinate")->check(CLI::NonNegativeNumber);
  sub->add_option("--N-max", c.N_max, "Largest power N in the growth sequence")->check(CLI::Range(4, 100000));
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--planted-s", c.planted_s, "Planted Pilipovic order s")->check(CLI::PositiveNumber);
  sub->add_option("--planted-r", c.planted_r, "Planted decay rate r (default: derived from n_max and N_max)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--rank", c.rank, "Number of generating vectors")->check(CLI::Range(1, 1000));
  sub->add_option("--flavor", c.flavor, "roumieu or beurling (metadata)");
  sub->add_option("--grid-L", c.grid_L, "Grid half width")->check(CLI::PositiveNumber);
  sub->add_option("--grid-n", c.grid_n, "Grid points per axis")->check(CLI::Range(16, 4096));
  sub->add_option("--tol", c.tol, "Positivity tolerance (relative)")->check(CLI::NonNegativeNumber);
  sub->add_option("--s-tol", c.s_tol, "Tolerance on fitted orders")->check(CLI::PositiveNumber);
  sub->add_flag("--strict,!--permissive", c.strict, "Boundary policy for grid input/output");
  sub->add_option("--mode", c.mode, "Growth norm: origin or sup")->check(CLI::IsMember({"origin", "sup"}));
  sub->add_option("--in", c.inputs, "Input path (repeatable)");
  sub->add_option("--out", c.output, "Output path");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Twisted convolution toolkit: Hermite-Wong bases, symplectic oscillators, regularity checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  auto* gen = app.add_subcommand("gen", "Generate a planted positive element");
  auto* compose = app.add_subcommand("compose", "Twisted (or Weyl) product of two coefficient files");
  auto* transform = app.add_subcommand("transform", "Apply an operator or grid conversion");
  auto* classify = app.add_subcommand("classify", "Estimate the Pilipovic order from coefficient decay");
  auto* positive = app.add_subcommand("positive", "Positivity test for the twisted convolution");
  auto* verify = app.add_subcommand("verify", "Growth versus decay check for positive elements");
  auto* tables = app.add_subcommand("tables", "Write the acceptance tables as CSV");
  for (auto* sub : {gen, compose, transform, classify, positive, verify, tables}) add_common(sub, c);
  compose->add_option("--product", c.product, "twisted or weyl")->check(CLI::IsMember({"twisted", "weyl"}));
  transform->add_option("--op", c.op, "fsigma, h-sigma, h-bar-sigma, t-sigma, weyl, weyl-symbol, synthesize, expand")
      ->required();
  transform->add_option("--power", c.power, "Power for h-sigma, h-bar-sigma, t-sigma")->check(CLI::NonNegativeNumber);
  verify->add_flag("--weyl", c.weyl, "Treat the input as a Weyl symbol (positivity of Op^w)");
  verify->add_option("--csv", c.csv, "Path for the (N, log g_N) table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  c.command = chosen->get_name();
  c.planted_s_given = chosen->count("--planted-s") > 0;
  try {
    if (c.command == "gen") return cmd_gen(c, out);
    if (c.command == "compose") return cmd_compose(c, out);
    if (c.command == "transform") return cmd_transform(c, out);
    if (c.command == "classify") return cmd_classify(c, out);
    if (c.command == "positive") return cmd_positive(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "tables") return cmd_tables(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << "error: unknown command\n";
  return 2;
}

}  // namespace twc::cli
