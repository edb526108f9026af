#include "betadd/betadd.hpp"
#include "verify_suite.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace betadd;

constexpr const char* kVersion = "1.0.0";

struct GlobalOptions {
  std::string format = "json";
  unsigned precision_bits = 64;
  std::uint64_t seed = 20240809;

  std::size_t decimal_digits() const {
    const std::size_t d = std::size_t(precision_bits) * 30103 / 100000;
    return d < 6 ? 6 : d;
  }
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const Int num(s.substr(0, slash));
    const Int den(s.substr(slash + 1));
    if (den == 0) throw std::domain_error("rational with zero denominator: " + s);
    return Rational(num, den);
  }
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac_len = s.size() - dot - 1;
    Int scale = 1;
    for (std::size_t i = 0; i < frac_len; ++i) scale *= 10;
    return Rational(Int(digits), scale);
  }
  return Rational(Int(s));
}

QBeta parse_qbeta(const std::string& rational_part, const std::string& beta_part) {
  return {parse_rational(rational_part), parse_rational(beta_part)};
}

void emit(const Json& payload, const GlobalOptions& opt, const std::string& csv) {
  if (opt.format == "json") {
    std::cout << payload.dump(2) << "\n";
  } else {
    std::cout << "# betadd " << kVersion << "\n" << csv;
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

// ---------------------------------------------------------------------------
// expand

int cmd_expand(const GlobalOptions& opt, const std::string& x_str, const std::string& xb_str,
               std::size_t n, const std::string& system, double beta_arg,
               const std::vector<double>& digit_values, const std::string& plot_out) {
  Json out{{"version", kVersion}, {"command", "expand"}, {"system", system}};
  std::string csv = "index,digit\n";
  std::string plot;

  if (system == "golden") {
    const QBeta x = parse_qbeta(x_str, xb_str);
    const auto orbit = golden::orbit(x, n);
    out["x"] = to_json(x, opt.decimal_digits());
    out["digits"] = orbit.digits;
    for (std::size_t i = 0; i < orbit.digits.size(); ++i)
      csv += std::to_string(i + 1) + "," + std::to_string(orbit.digits[i]) + "\n";

    // branch segments of the map graph, then the orbit scatter
    for (int d : {0, 2, 3}) {
      const Interval br = golden::branch(d);
      const auto t = [&](const QBeta& p) { return beta_value() * p - d; };
      plot += br.left.to_decimal(12) + " " + t(br.left).to_decimal(12) + "\n";
      plot += br.right.to_decimal(12) + " " + t(br.right).to_decimal(12) + "\n\n";
    }
    for (std::size_t i = 0; i + 1 < orbit.iterates.size(); ++i)
      plot += orbit.iterates[i].to_decimal(12) + " " + orbit.iterates[i + 1].to_decimal(12) + "\n";
  } else if (system == "classical") {
    const double x = std::stod(x_str);
    const auto digits = expand_classical(x, n, beta_arg);
    out["x"] = x;
    out["beta"] = beta_arg;
    out["digits"] = digits;
    for (std::size_t i = 0; i < digits.size(); ++i)
      csv += std::to_string(i + 1) + "," + std::to_string(digits[i]) + "\n";
  } else if (system == "deleted") {
    if (digit_values.size() < 2) throw std::domain_error("deleted system needs --digits");
    const DigitSet ds{digit_values, beta_arg};
    if (const auto rep = validate(ds); !rep.ok)
      throw std::domain_error("invalid digit set (condition " +
                              std::to_string(rep.failed_condition) + "): " + rep.message);
    const double x = std::stod(x_str);
    const auto digits = expand_deleted(x, n, ds);
    out["x"] = x;
    out["beta"] = beta_arg;
    out["digit_set"] = digit_values;
    Json jd = Json::array();
    for (double d : digits) {
      if (d == std::floor(d))
        jd.push_back(static_cast<long long>(d));
      else
        jd.push_back(d);
    }
    out["digits"] = jd;
    for (std::size_t i = 0; i < digits.size(); ++i)
      csv += std::to_string(i + 1) + "," + format_double(digits[i]) + "\n";
  } else {
    throw std::domain_error("unknown system: " + system);
  }

  if (!plot_out.empty()) write_file(plot_out, plot);
  emit(out, opt, csv);
  return 0;
}

// ---------------------------------------------------------------------------
// cylinder

int cmd_cylinder(const GlobalOptions& opt, const std::string& block, bool with_decomposition) {
  const Cylinder c = cylinder(block);
  Json out{{"version", kVersion}, {"command", "cylinder"}};
  out.update(to_json(c, opt.decimal_digits()));
  std::string csv = "block,rank,left,right,full,empty\n";
  csv += c.block + "," + std::to_string(c.rank) + "," + c.interval.left.to_decimal(12) + "," +
         c.interval.right.to_decimal(12) + "," + (c.full ? "1" : "0") + "," +
         (c.empty() ? "1" : "0") + "\n";

  if (with_decomposition) {
    const auto dec = decompose(block);  // throws on non-full blocks
    out["subblocks"] = dec.blocks;
    out["return_times"] = dec.return_times;
    csv += "subblock,return_time\n";
    for (std::size_t i = 0; i < dec.blocks.size(); ++i)
      csv += dec.blocks[i] + "," + std::to_string(dec.return_times[i]) + "\n";
  }
  emit(out, opt, csv);
  return 0;
}

// ---------------------------------------------------------------------------
// enumerate

int cmd_enumerate(const GlobalOptions& opt, std::size_t rank, const std::string& family_name,
                  bool brute_force) {
  Family family = Family::All;
  if (family_name == "D")
    family = Family::D;
  else if (family_name == "B")
    family = Family::B;
  else if (family_name != "all")
    throw std::domain_error("unknown family: " + family_name);

  auto cs = enumerate_family(rank, family, !brute_force);
  if (family == Family::All)
    cs.erase(std::remove_if(cs.begin(), cs.end(), [](const Cylinder& c) { return c.empty(); }),
             cs.end());

  Json arr = Json::array();
  std::string csv = "block,rank,left,right,full\n";
  for (const auto& c : cs) {
    arr.push_back(to_json(c, opt.decimal_digits()));
    csv += c.block + "," + std::to_string(c.rank) + "," + c.interval.left.to_decimal(12) + "," +
           c.interval.right.to_decimal(12) + "," + (c.full ? "1" : "0") + "\n";
  }
  Json out{{"version", kVersion}, {"command", "enumerate"},     {"rank", rank},
           {"family", family_name}, {"count", cs.size()}, {"cylinders", arr}};
  emit(out, opt, csv);
  return 0;
}

// ---------------------------------------------------------------------------
// density

int cmd_density(const GlobalOptions& opt, const std::string& which, const std::string& route,
                double beta_arg, std::size_t truncation, const std::string& plot_out) {
  Json out{{"version", kVersion}, {"command", "density"}, {"which", which}};
  std::string csv = "left,right,value\n";
  std::string plot;

  const auto emit_exact = [&](const PiecewiseDensity& d) {
    out.update(to_json(d, opt.decimal_digits()));
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      csv += d.breakpoints[i].to_decimal(12) + "," + d.breakpoints[i + 1].to_decimal(12) + "," +
             d.values[i].to_decimal(12) + "\n";
      plot += d.breakpoints[i].to_decimal(12) + " " + d.values[i].to_decimal(12) + "\n";
      plot += d.breakpoints[i + 1].to_decimal(12) + " " + d.values[i].to_decimal(12) + "\n";
    }
  };

  if (which == "golden") {
    out["route"] = route;
    if (route == "closed")
      emit_exact(golden_density());
    else if (route == "fiber")
      emit_exact(fiber_oracle());
    else if (route == "tower")
      emit_exact(tower_slice_density());
    else
      throw std::domain_error("unknown route: " + route);
  } else if (which == "classical") {
    emit_exact(classical_density_golden());
  } else if (which == "classical-float") {
    const FloatDensity d = classical_density(beta_arg, truncation);
    out["beta"] = beta_arg;
    out["truncation"] = truncation;
    out.update(to_json(d));
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      csv += format_double(d.breakpoints[i]) + "," + format_double(d.breakpoints[i + 1]) + "," +
             format_double(d.values[i]) + "\n";
      plot += format_double(d.breakpoints[i]) + " " + format_double(d.values[i]) + "\n";
      plot += format_double(d.breakpoints[i + 1]) + " " + format_double(d.values[i]) + "\n";
    }
  } else {
    throw std::domain_error("unknown density kind: " + which);
  }

  if (!plot_out.empty()) write_file(plot_out, plot);
  emit(out, opt, csv);
  return 0;
}

// ---------------------------------------------------------------------------
// natext

int cmd_natext(const GlobalOptions& opt, int version, std::size_t steps, bool inverse,
               const std::string& x_str, const std::string& xb_str, const std::string& y_str,
               const std::string& yb_str, int tag, std::size_t level, std::size_t outline_cutoff,
               const std::string& plot_out) {
  Json traj = Json::array();
  std::string csv;
  std::string plot;

  if (version == 1) {
    RState s{parse_qbeta(x_str, xb_str), parse_qbeta(y_str, yb_str), tag, level};
    if (!valid_state(s)) throw std::domain_error("start state violates rectangle bounds");
    csv = "step,x,y,j,n\n";
    for (std::size_t k = 0; k <= steps; ++k) {
      traj.push_back(to_json(s, opt.decimal_digits()));
      csv += std::to_string(k) + "," + s.x.to_decimal(12) + "," + s.y.to_decimal(12) + "," +
             std::to_string(s.tag) + "," + std::to_string(s.level) + "\n";
      plot += s.x.to_decimal(12) + " " + s.y.to_decimal(12) + "\n";
      if (k < steps) s = inverse ? step_inverse(s) : step(s);
    }
  } else if (version == 2) {
    TowerPoint p{parse_qbeta(x_str, xb_str), parse_qbeta(y_str, yb_str)};
    if (!valid_tower_point(p)) throw std::domain_error("start point lies outside the tower");
    csv = "step,x,y\n";
    // strip outlines first, then the orbit scatter
    const auto outline = [&](const Interval& strip, const QBeta& x_extent) {
      const std::string l = strip.left.to_decimal(12), r = strip.right.to_decimal(12);
      const std::string w = x_extent.to_decimal(12);
      plot += "0 " + l + "\n" + w + " " + l + "\n" + w + " " + r + "\n0 " + r + "\n0 " + l + "\n\n";
    };
    outline(tower_strip(0, 0), 2);
    for (int t : {2, 3})
      for (std::size_t n = 1; n <= outline_cutoff; ++n)
        outline(tower_strip(t, n), width_value(t, n));
    plot += "# orbit\n";
    for (std::size_t k = 0; k <= steps; ++k) {
      traj.push_back(to_json(p, opt.decimal_digits()));
      csv += std::to_string(k) + "," + p.x.to_decimal(12) + "," + p.y.to_decimal(12) + "\n";
      plot += p.x.to_decimal(12) + " " + p.y.to_decimal(12) + "\n";
      if (k < steps) p = inverse ? tower_step_inverse(p) : tower_step(p);
    }
  } else {
    throw std::domain_error("version must be 1 or 2");
  }

  Json out{{"version", kVersion},
           {"command", "natext"},
           {"extension_version", version},
           {"steps", steps},
           {"direction", inverse ? "inverse" : "forward"},
           {"trajectory", traj}};
  if (!plot_out.empty()) write_file(plot_out, plot);
  emit(out, opt, csv);
  return 0;
}

// ---------------------------------------------------------------------------
// birkhoff

int cmd_birkhoff(const GlobalOptions& opt, std::uint64_t iters, const std::string& bins_spec,
                 std::optional<double> start, unsigned shards, const std::string& plot_out) {
  std::vector<double> edges;
  if (bins_spec == "pieces") {
    edges = piece_edges();
  } else if (bins_spec.rfind("uniform:", 0) == 0) {
    const std::size_t k = std::stoul(bins_spec.substr(8));
    if (k == 0) throw std::domain_error("uniform bin count must be positive");
    edges = uniform_edges(k);
  } else {
    throw std::domain_error("unknown bins spec: " + bins_spec + " (use pieces or uniform:<k>)");
  }

  const BirkhoffResult r = birkhoff(iters, edges, opt.seed, start, shards);

  std::string csv = "bin_left,bin_right,observed,expected,abs_delta\n";
  std::string plot;
  Json bins = Json::array();
  for (const auto& b : r.bins) {
    const double delta = std::abs(b.frequency - b.expected);
    bins.push_back(Json{{"bin_left", b.left},
                        {"bin_right", b.right},
                        {"count", b.count},
                        {"observed", b.frequency},
                        {"expected", b.expected},
                        {"abs_delta", delta}});
    csv += format_double(b.left) + "," + format_double(b.right) + "," +
           format_double(b.frequency) + "," + format_double(b.expected) + "," +
           format_double(delta) + "\n";
    plot += format_double((b.left + b.right) / 2) + " " + format_double(b.frequency) + " " +
            format_double(b.expected) + "\n";
  }
  Json out{{"version", kVersion}, {"command", "birkhoff"}, {"iterations", r.iterations},
           {"seed", opt.seed},    {"shards", shards},      {"starts", r.starts},
           {"bins", bins}};
  if (!plot_out.empty()) write_file(plot_out, iters == 0 ? "" : plot);
  emit(out, opt, csv);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const GlobalOptions& opt, const std::string& suite) {
  const auto results = verify::run_suite(suite, opt.seed);
  if (results.empty()) throw std::domain_error("unknown suite: " + suite);

  bool all_pass = true;
  Json checks = Json::array();
  std::string csv = "id,anchor,suite,status,detail,ms\n";
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    checks.push_back(Json{{"id", r.id},
                          {"anchor", r.anchor},
                          {"suite", r.suite},
                          {"status", r.pass ? "pass" : "fail"},
                          {"detail", r.detail},
                          {"ms", r.millis}});
    csv += r.id + "," + r.anchor + "," + r.suite + "," + (r.pass ? "pass" : "fail") + ",\"" +
           r.detail + "\"," + format_double(r.millis) + "\n";
  }
  Json out{{"version", kVersion}, {"command", "verify"}, {"suite", suite},
           {"all_pass", all_pass}, {"checks", checks}};
  emit(out, opt, csv);
  for (const auto& r : results)
    std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " (" << r.anchor << ") " << r.detail
              << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedy golden-ratio expansions with digits {0,2,3}, their natural extensions,"
               " and the invariant density"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opt;
  if (const char* env = std::getenv("BETADD_PRECISION"))
    opt.precision_bits = unsigned(std::atoi(env));
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--precision", opt.precision_bits, "precision for decimal renderings, in bits")
      ->check(CLI::Range(53u, 4096u));
  app.add_option("--seed", opt.seed, "seed for randomized commands");

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "greedy digits of a point");
  std::string x_str = "1", xb_str = "0", system = "golden", plot_out;
  std::size_t n_digits = 8;
  double beta_arg = 0;
  std::vector<double> digit_values;
  expand_cmd->add_option("--x", x_str, "point (rational p/q; beta part via --xb; float otherwise)");
  expand_cmd->add_option("--xb", xb_str, "beta coefficient of the point (golden system)");
  expand_cmd->add_option("--n", n_digits, "number of digits")->required();
  expand_cmd->add_option("--system", system, "golden | classical | deleted");
  expand_cmd->add_option("--beta", beta_arg, "base for classical/deleted systems");
  expand_cmd->add_option("--digits", digit_values, "digit values for the deleted system")
      ->delimiter(',');
  expand_cmd->add_option("--plot-out", plot_out, "write map-graph and orbit plot data");

  // cylinder
  auto* cylinder_cmd = app.add_subcommand("cylinder", "fundamental interval of a digit block");
  std::string block;
  bool with_decomposition = false;
  cylinder_cmd->add_option("--block", block, "digit block over {0,2,3}")->required();
  cylinder_cmd->add_flag("--decompose", with_decomposition,
                         "also split a full block at its return times");

  // enumerate
  auto* enumerate_cmd = app.add_subcommand("enumerate", "cylinders of one rank");
  std::size_t rank = 1;
  std::string family_name = "all";
  bool brute_force = false;
  enumerate_cmd->add_option("--rank", rank, "rank of the cylinders")->required();
  enumerate_cmd->add_option("--family", family_name, "all | D | B");
  enumerate_cmd->add_flag("--brute-force", brute_force,
                          "derive D/B from the definition instead of the closed form");

  // density
  auto* density_cmd = app.add_subcommand("density", "invariant densities");
  std::string which = "golden", route = "closed";
  std::size_t truncation = 30;
  density_cmd->add_option("--which", which, "golden | classical | classical-float");
  density_cmd->add_option("--route", route, "closed | fiber | tower (golden only)");
  density_cmd->add_option("--beta", beta_arg, "base for classical-float");
  density_cmd->add_option("--truncation", truncation, "terms for classical-float");
  density_cmd->add_option("--plot-out", plot_out, "write the step function as x/y columns");

  // natext
  auto* natext_cmd = app.add_subcommand("natext", "orbits of the natural extensions");
  int ext_version = 1;
  std::size_t steps = 10, level = 0, outline_cutoff = 8;
  int tag = 0;
  bool inverse = false;
  std::string y_str = "1/3", yb_str = "0";
  natext_cmd->add_option("--version", ext_version, "1 (rectangles) | 2 (tower)");
  natext_cmd->add_option("--steps", steps, "number of steps");
  natext_cmd->add_flag("--inverse", inverse, "iterate the inverse transformation");
  natext_cmd->add_option("--x", x_str, "rational part of x (default 1)");
  natext_cmd->add_option("--xb", xb_str, "beta coefficient of x");
  natext_cmd->add_option("--y", y_str, "rational part of y (default 1/3)");
  natext_cmd->add_option("--yb", yb_str, "beta coefficient of y");
  natext_cmd->add_option("--j", tag, "rectangle tag (version 1)");
  natext_cmd->add_option("--n", level, "rectangle level (version 1)");
  natext_cmd->add_option("--outline-cutoff", outline_cutoff,
                         "strips drawn in plot data (version 2)");
  natext_cmd->add_option("--plot-out", plot_out, "write orbit scatter / tower outlines");

  // birkhoff
  auto* birkhoff_cmd = app.add_subcommand("birkhoff", "occupation statistics of the float orbit");
  std::uint64_t iters = 1000000;
  std::string bins_spec = "pieces";
  unsigned shards = 1;
  double start_value = -1;
  bool start_given = false;
  birkhoff_cmd->add_option("--iters", iters, "orbit length")->required();
  birkhoff_cmd->add_option("--bins", bins_spec, "pieces | uniform:<k>");
  birkhoff_cmd->add_option("--start", start_value, "start point (default: drawn from --seed)")
      ->each([&start_given](const std::string&) { start_given = true; });
  birkhoff_cmd->add_option("--shards", shards, "independent seeded streams");
  birkhoff_cmd->add_option("--plot-out", plot_out, "write bin_mid/observed/expected columns");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the verification battery");
  std::string suite = "all";
  verify_cmd->add_option("--suite", suite,
                         "all | qbeta | greedy | cylinders | natext | measure | cli");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (expand_cmd->parsed())
      return cmd_expand(opt, x_str, xb_str, n_digits, system, beta_arg, digit_values, plot_out);
    if (cylinder_cmd->parsed()) return cmd_cylinder(opt, block, with_decomposition);
    if (enumerate_cmd->parsed()) return cmd_enumerate(opt, rank, family_name, brute_force);
    if (density_cmd->parsed()) return cmd_density(opt, which, route, beta_arg, truncation, plot_out);
    if (natext_cmd->parsed())
      return cmd_natext(opt, ext_version, steps, inverse, x_str, xb_str, y_str, yb_str, tag, level,
                        outline_cutoff, plot_out);
    if (birkhoff_cmd->parsed())
      return cmd_birkhoff(opt, iters, bins_spec,
                          start_given ? std::optional<double>(start_value) : std::nullopt, shards,
                          plot_out);
    if (verify_cmd->parsed()) return cmd_verify(opt, suite);
  } catch (const std::exception& e) {
    Json err{{"version", kVersion}, {"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 2;
}
