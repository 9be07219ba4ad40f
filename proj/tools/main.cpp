// discbpb command line: run the perturbation pipeline, inspect the conformal
// map, browse the operator zoo, and run the verification suites.
#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "discbpb/pipeline.hpp"
#include "discbpb/verify.hpp"
#include "discbpb/zoo.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string default_out_dir() {
  if (const char* env = std::getenv("DISCBPB_OUT")) return env;
  return "out";
}

void write_file(const fs::path& dir, const std::string& name, const std::string& body) {
  fs::create_directories(dir);
  std::ofstream os(dir / name, std::ios::binary);
  os << body;
  if (!os) throw bpb::Error("cli.io", "could not write " + (dir / name).string());
  std::cout << "wrote " << (dir / name).string() << "\n";
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct RunConfig {
  double eps = 0.3;
  double theta0 = 0.7;
  int n = 4;
  double p = 2.0;
  json op_spec;
  int degree = 128;  // codomain truncation cap
  int grid = 4096;
  std::uint64_t seed = 1;
  json x0_spec;
  std::string out_dir;
};

RunConfig parse_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw bpb::Error("cli.config", "cannot open config file " + path);
  json j = json::parse(is);
  RunConfig c;
  c.eps = j.at("eps").get<double>();
  if (!(c.eps > 0.0 && c.eps < 1.0)) throw bpb::Error("cli.config", "eps must lie in (0,1)");
  c.theta0 = j.at("theta0").get<double>();
  if (j.contains("domain")) {
    c.n = j["domain"].value("n", 4);
    const auto& p = j["domain"]["p"];
    c.p = p.is_string() ? std::numeric_limits<double>::infinity() : p.get<double>();
  }
  c.op_spec = j.value("operator", json{{"zoo", "rank_one"}, {"params", json::object()}});
  c.degree = j.value("degree", 128);
  c.grid = j.value("grid", 4096);
  if (!bpb::is_power_of_two(c.grid)) throw bpb::Error("cli.config", "grid must be a power of two");
  c.seed = j.value("seed", 1);
  if (j.contains("x0")) c.x0_spec = j["x0"];
  c.out_dir = j.value("out_dir", default_out_dir());
  return c;
}

std::string summary_svg(const bpb::BpbOperatorResult& res) {
  // left panel: region boundary, eps^2 circle and the boundary image of eta;
  // right panel: slack bars for the certified conclusions
  std::ostringstream os;
  auto sx = [](double x) { return 200.0 + 170.0 * x; };
  auto sy = [](double y) { return 200.0 - 170.0 * y; };
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='820' height='420'>\n"
     << "<rect width='820' height='420' fill='white'/>\n";
  os << "<circle cx='" << sx(0) << "' cy='" << sy(0) << "' r='170' fill='none' stroke='#bbb'/>\n";
  auto polyline = [&](auto point_at, int npts, const char* style) {
    os << "<polyline fill='none' " << style << " points='";
    for (int j = 0; j <= npts; ++j) {
      const bpb::Cplx z = point_at(j, npts);
      os << sx(z.real()) << ',' << sy(z.imag()) << ' ';
    }
    os << "'/>\n";
  };
  const double eps = res.eps;
  polyline(
      [&](int j, int npts) {
        const double th = bpb::kTwoPi * j / npts;
        return std::polar(bpb::boundary_radius(eps, th), th);
      },
      512, "stroke='#1f77b4' stroke-width='1.5'");
  polyline(
      [&](int j, int npts) {
        return bpb::Cplx(std::polar(eps * eps, bpb::kTwoPi * j / npts));
      },
      128, "stroke='#999' stroke-dasharray='4 3'");
  polyline(
      [&](int j, int npts) {
        return res.n.eta.eval(std::polar(1.0, bpb::kTwoPi * j / npts));
      },
      1024, "stroke='#d62728' stroke-width='1.2'");
  os << "<text x='40' y='30' font-size='14'>Stolz region (blue), eps^2 disc (dashed), "
        "eta boundary image (red), eps = " << eps << "</text>\n";

  double x = 430.0;
  for (const auto& c : res.conclusions) {
    const double frac = c.target != 0.0 ? std::clamp(c.value / c.target, 0.0, 1.2) : 0.0;
    const double h = 250.0 * frac;
    os << "<rect x='" << x << "' y='" << 330.0 - h << "' width='70' height='" << h
       << "' fill='" << (c.pass ? "#2ca02c" : "#d62728") << "'/>\n";
    os << "<line x1='" << x - 5 << "' y1='80' x2='" << x + 75 << "' y2='80' stroke='#444'/>\n";
    os << "<text x='" << x << "' y='350' font-size='11'>" << c.name << "</text>\n";
    os << "<text x='" << x << "' y='365' font-size='10'>" << c.value << " / " << c.target
       << "</text>\n";
    x += 120.0;
  }
  os << "<text x='430' y='70' font-size='12'>value vs target (bar at line = at the bound)</text>\n";
  os << "</svg>\n";
  return os.str();
}

int cmd_run(const std::string& config_path, std::string out_override) {
  RunConfig cfg = parse_config(config_path);
  if (!out_override.empty()) cfg.out_dir = out_override;

  bpb::OperatorIntoDisc t;
  bpb::CVec x0;
  if (cfg.op_spec.contains("matrix_file")) {
    std::ifstream is(cfg.op_spec["matrix_file"].get<std::string>());
    if (!is) throw bpb::Error("cli.config", "cannot open matrix file");
    t = bpb::OperatorIntoDisc::from_json(json::parse(is));
  } else {
    const std::string name = cfg.op_spec.value("zoo", "rank_one");
    if (name != "rank_one") {
      throw bpb::Error("cli.config",
                       "only the rank_one family feeds the pipeline (p-norm domain); got " + name);
    }
    const json params = cfg.op_spec.value("params", json::object());
    auto c = bpb::verify::make_rank_one_case(
        cfg.n, cfg.eps, cfg.theta0, params.value("seed", cfg.seed),
        params.value("peak_power", 6), params.value("perturbation", 0.03));
    t = std::move(c.t);
    x0 = std::move(c.x0);
  }
  if (t.degree > cfg.degree) {
    throw bpb::Error("cli.config", "operator degree exceeds the configured codomain degree");
  }
  if (cfg.x0_spec.is_array()) {
    x0.clear();
    for (const auto& pair : cfg.x0_spec) x0.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  if (x0.empty()) {
    x0 = bpb::norming_vector(bpb::point_functional(t, cfg.theta0));
  }

  bpb::PipelineOptions opt;
  opt.sweep_grid = cfg.grid;
  opt.seed = cfg.seed;
  auto res = bpb::bpb_operator(t, x0, cfg.theta0, cfg.eps, opt);

  json provenance{{"config_file", config_path},
                  {"grid", cfg.grid},
                  {"map_grid", opt.map_grid},
                  {"seed", cfg.seed},
                  {"timestamp", timestamp()}};
  write_file(cfg.out_dir, "report.json", res.report(provenance).dump(2) + "\n");
  write_file(cfg.out_dir, "eta_boundary.csv", res.n.eta.boundary_csv(cfg.grid));
  write_file(cfg.out_dir, "stolz_boundary.csv", res.n.eta.map().correspondence_csv());
  write_file(cfg.out_dir, "summary.svg", summary_svg(res));

  for (const auto& c : res.conclusions) {
    std::cout << (c.pass ? "  ok   " : "  FAIL ") << c.name << " value=" << c.value
              << " target=" << c.target << " slack=" << c.slack << "\n";
  }
  if (!res.all_pass) {
    std::cerr << "certification failed\n";
    return 1;
  }
  std::cout << "all conclusions certified\n";
  return 0;
}

int cmd_map(double eps, int grid, std::string out_dir) {
  if (out_dir.empty()) out_dir = default_out_dir();
  auto map = bpb::ConformalMap::solve(eps, grid);
  const double d1 = bpb::delta1(map, eps);

  json checks = json::array();
  auto add = [&](const std::string& name, double value, double target, bool pass) {
    checks.push_back({{"name", name}, {"value", value}, {"target", target}, {"pass", pass}});
  };
  add("residual", map.residual(), 1e-6, map.residual() < 1e-6);
  const double at0 = std::abs(map.eval(0.0));
  add("psi_at_0", at0, 0.0, at0 == 0.0);
  const double at1 = std::abs(map.eval(1.0) - 1.0);
  add("psi_at_1", at1, 1e-6, at1 < 1e-6);
  double schwarz = -1.0;
  for (int i = 1; i <= 9; ++i) schwarz = std::max(schwarz, bpb::circle_max_abs(map, 0.1 * i) - 0.1 * i);
  add("schwarz_excess", schwarz, 1e-6, schwarz < 1e-6);
  add("delta1", d1, eps, d1 < eps);
  const double cert = bpb::circle_max_abs(map, d1) - eps * eps;
  add("delta1_certificate", cert, 0.0, cert < 0.0);

  json out = map.to_json();
  out["delta1"] = d1;
  out["checks"] = checks;
  out["timestamp"] = timestamp();
  write_file(out_dir, "map.json", out.dump(2) + "\n");
  write_file(out_dir, "stolz_boundary.csv", map.correspondence_csv());
  std::cout << "residual " << map.residual() << ", delta1 " << d1 << "\n";
  bool all = true;
  for (const auto& c : checks) all &= c["pass"].get<bool>();
  return all ? 0 : 1;
}

json zoo_registry() {
  return json::array({
      {{"name", "rank_one"},
       {"summary", "T x = xstar(x) h; norm ||xstar|| ||h||; equicontinuous at every boundary point"}},
      {{"name", "mult"}, {"summary", "M_phi f = phi f; attains its norm at f = 1"}},
      {{"name", "comp"}, {"summary", "C_phi f = f o phi for a disc self-map; ||C_phi 1|| = 1"}},
      {{"name", "hardy_diagonal"},
       {"summary", "coefficient multipliers 1 - 1/(n+1); truncations attain with gap 1/(d+1)"}},
      {{"name", "evaluation"}, {"summary", "ev_z0 f = f(z0); norm 1, attained at f = 1"}},
  });
}

int cmd_zoo(const std::string& name, bool list, int trials, std::uint64_t seed,
            std::string out_dir) {
  if (list || name.empty()) {
    std::cout << zoo_registry().dump(2) << "\n";
    return 0;
  }
  if (out_dir.empty()) out_dir = default_out_dir();
  bpb::Rng rng(seed);
  json out{{"name", name}, {"seed", seed}};

  if (name == "rank_one") {
    const int n = 4;
    bpb::Functional xstar{bpb::LpSpace{n, 2.0}, rng.cgauss_vec(n)};
    bpb::CVec hc(9);
    for (auto& c : hc) c = rng.cgauss();
    bpb::DiscPoly h(std::move(hc));
    const double scale = 1.0 / (xstar.norm() * bpb::sup_norm(h));
    for (auto& v : xstar.v) v *= scale;
    auto t = bpb::zoo::rank_one(xstar, h);
    auto probe = bpb::zoo::attainment_probe(t, trials, seed);
    out["probe"] = probe.to_json();
    out["norm_product_identity"] = xstar.norm() * bpb::sup_norm(h);
    const std::vector<double> thetas = {0.0, 0.8, 1.6, 2.4, 3.2, 4.0, 4.8, 5.6};
    const std::vector<double> epss = {0.5, 0.3, 0.1};
    write_file(out_dir, "equicontinuity.csv",
               bpb::zoo::equicontinuity_report(t, thetas, epss).csv());
  } else if (name == "mult") {
    bpb::DiscPoly phi{bpb::Cplx(1.0), bpb::Cplx(0.5), bpb::Cplx(0.25)};
    auto m = bpb::zoo::mult_operator(phi, 8);
    out["phi_sup"] = bpb::sup_norm(phi);
    out["norm_at_one"] = bpb::sup_norm(m.apply(bpb::DiscPoly{bpb::Cplx(1.0)}));
  } else if (name == "comp") {
    bpb::DiscPoly phi{bpb::Cplx(0.1), bpb::Cplx(0.6)};
    auto c = bpb::zoo::comp_operator(phi, 8);
    out["norm_at_one"] = bpb::sup_norm(c.apply(bpb::DiscPoly{bpb::Cplx(1.0)}));
  } else if (name == "hardy_diagonal") {
    json gaps = json::array();
    for (int d : {1, 4, 9, 99}) {
      auto t = bpb::zoo::hardy_diagonal(d);
      gaps.push_back({{"degree", d},
                      {"best_basis_value", t.best_basis_ratio()},
                      {"gap", 1.0 - t.best_basis_ratio()}});
    }
    out["truncation_gaps"] = gaps;
  } else if (name == "evaluation") {
    const bpb::Cplx z0(0.3, 0.2);
    out["norm"] = 1.0;
    out["attained_at_one"] = std::abs(bpb::eval(bpb::DiscPoly{bpb::Cplx(1.0)}, z0));
  } else {
    std::cerr << "unknown zoo entry: " << name << "\n";
    return 2;
  }
  std::cout << out.dump(2) << "\n";
  write_file(out_dir, "probe.json", out.dump(2) + "\n");
  return 0;
}

int cmd_verify(const std::string& suite, std::string out_dir) {
  if (out_dir.empty()) out_dir = default_out_dir();
  auto results = bpb::verify::run_suites(suite);
  json log = json::array();
  bool all = true;
  for (const auto& r : results) {
    log.push_back(r.to_json());
    all &= r.pass;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << " (" << r.seconds << "s)\n";
    for (const auto& c : r.checks) {
      std::cout << "    " << c.name << " value=" << c.value << " target=" << c.target
                << " slack=" << c.slack << (c.pass ? "" : "  FAILED") << "\n";
    }
  }
  write_file(out_dir, "verify_" + suite + ".json", log.dump(2) + "\n");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bishop-Phelps-Bollobas perturbations for operators into the disc algebra"};
  app.require_subcommand(1);

  std::string config_path, out_dir, zoo_name, suite;
  bool zoo_list = false;
  double eps = 0.5;
  int grid = 2048, trials = 2000;
  std::uint64_t seed = 1;

  auto* run = app.add_subcommand("run", "run the full construction from a JSON config");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory (default $DISCBPB_OUT or ./out)");

  auto* map = app.add_subcommand("map", "solve and certify the Stolz-region conformal map");
  map->add_option("--eps", eps, "region parameter in (0,1)")->required();
  map->add_option("--grid", grid, "boundary grid, power of two");
  map->add_option("--out", out_dir, "output directory");

  auto* zoo = app.add_subcommand("zoo", "example operators and probes");
  zoo->add_flag("--list", zoo_list, "list the registry");
  zoo->add_option("--name", zoo_name, "registry entry to build and probe");
  zoo->add_option("--probe-trials", trials, "attainment probe trials");
  zoo->add_option("--seed", seed, "probe seed");
  zoo->add_option("--out", out_dir, "output directory");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name or 'all'")->required();
  verify->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (map->parsed()) return cmd_map(eps, grid, out_dir);
    if (zoo->parsed()) return cmd_zoo(zoo_name, zoo_list, trials, seed, out_dir);
    if (verify->parsed()) return cmd_verify(suite, out_dir);
  } catch (const bpb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
