// Command-line front end: evaluation, albedo curve export, sampler weight
// statistics, chi-square sampler checks, furnace tests/renders, and
// micro-benchmarks. All randomized paths are seeded and deterministic; worker
// threads are capped by the EON_THREADS environment variable (0 = auto).
//
// Output contracts kept stable for scripts:
//   eval     -> one line, three %.9g channel values
//   albedo   -> CSV: model,r_or_sigma,mu,quantity,value   (analytic + numeric)
//   stats    -> CSV: strategy,r,theta_deg,variance,max,mean
//   chi2     -> one line of key=value pairs (p_value, statistic, dof, ...)
//   furnace  -> key=value line(s); with --out, writes a binary PPM image
//   bench    -> one "<name> <ns/op>" line per kernel

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eon/bench.hpp"
#include "eon/brdf.hpp"
#include "eon/furnace.hpp"
#include "eon/quadrature.hpp"
#include "eon/render.hpp"
#include "eon/sampling.hpp"
#include "eon/stats.hpp"

using namespace eon;

namespace {

const std::map<std::string, Model> kModelNames{
    {"lambert", Model::lambert},
    {"qon", Model::qon},
    {"qon-footnote", Model::qon_footnote},
    {"fon", Model::fon},
    {"eon", Model::eon},
};

const std::map<std::string, Strategy> kSamplerNames{
    {"cosine", Strategy::cosine},
    {"uniform", Strategy::uniform},
    {"cltc", Strategy::cltc},
    {"cltc-mis", Strategy::cltc_mis},
};

bool is_qon(Model m) { return m == Model::qon || m == Model::qon_footnote; }

// Shared material flags. Roughness is --sigma (radians) for the QON variants
// and --r for FON/EON; passing the wrong one for the model is an error.
struct MaterialArgs {
  std::string model_name = "eon";
  std::vector<double> rho{1.0, 1.0, 1.0};
  double sigma = -1.0;  // <0 = unset
  double r = -1.0;      // <0 = unset
  bool approx = false;

  void attach(CLI::App* cmd, bool with_exact_flag = true) {
    cmd->add_option("--model", model_name, "lambert|qon|qon-footnote|fon|eon")
        ->check(CLI::IsMember(
            {"lambert", "qon", "qon-footnote", "fon", "eon"}));
    cmd->add_option("--rho", rho, "reflectance R G B, each in [0,1]")->expected(3);
    cmd->add_option("--sigma", sigma, "QON roughness sigma in radians, [0, pi/2]");
    cmd->add_option("--r", r, "FON/EON roughness in [0, 1]");
    if (with_exact_flag) {
      cmd->add_flag("--approx", approx, "use the fitted EON albedo flavor");
      cmd->add_flag("!--exact", approx, "use the exact EON albedo flavor (default)");
    }
  }

  Material material() const {
    const Model model = kModelNames.at(model_name);
    double roughness = 0.0;
    if (is_qon(model)) {
      if (r >= 0.0) throw std::invalid_argument("model " + model_name + " takes --sigma, not --r");
      if (sigma < 0.0) throw std::invalid_argument("model " + model_name + " requires --sigma");
      roughness = QonRoughness(sigma).sigma;  // range-checked
    } else if (model == Model::fon || model == Model::eon) {
      if (sigma >= 0.0) throw std::invalid_argument("model " + model_name + " takes --r, not --sigma");
      if (r < 0.0) throw std::invalid_argument("model " + model_name + " requires --r");
      roughness = FonRoughness(r).r;  // range-checked
    } else if (sigma >= 0.0 || r >= 0.0) {
      throw std::invalid_argument("model lambert takes no roughness flag");
    }
    const Spectrum reflectance(rho[0], rho[1], rho[2]);
    detail::require_reflectance(reflectance);
    return {model, reflectance, roughness, !approx};
  }
};

Direction parse_direction(const std::vector<double>& v, const char* what) {
  const Vec3 raw{v[0], v[1], v[2]};
  const double len = length(raw);
  if (!(len > 0.0) || !is_finite(raw)) {
    throw std::invalid_argument(std::string(what) + ": zero or non-finite vector");
  }
  const Vec3 unit = raw / len;
  if (unit.z < 0.0) {
    throw std::invalid_argument(std::string(what) +
                                ": below-horizon direction (z < 0) is not accepted");
  }
  return Direction::from_vec(unit);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << text;
  if (!out) throw std::runtime_error("short write to " + out_path);
}

std::string model_roughness_label(const Material& m) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", m.roughness);
  return buf;
}

double model_albedo_numeric(const Material& m, double mu, const QuadratureSpec& spec) {
  return albedo_numeric(
      [&](Direction wi, Direction wo) { return eval_brdf(m, wi, wo).r; }, mu, spec);
}

int run_eval(const MaterialArgs& margs, const std::vector<double>& wi_v,
             const std::vector<double>& wo_v) {
  const Material m = margs.material();
  const Direction wi = parse_direction(wi_v, "--wi");
  const Direction wo = parse_direction(wo_v, "--wo");
  const Spectrum f = eval_brdf(m, wi, wo);
  std::printf("%.9g %.9g %.9g\n", f.r, f.g, f.b);
  return 0;
}

int run_albedo(const MaterialArgs& margs, int grid, const std::string& out_path) {
  const Material m = margs.material();
  if (grid < 2 || grid > 100000) throw std::invalid_argument("--grid must be in [2, 100000]");
  const QuadratureSpec spec{64, 128};
  std::ostringstream csv;
  csv << "model,r_or_sigma,mu,quantity,value\n";
  const std::string label = model_roughness_label(m);
  char line[160];
  for (int i = 0; i < grid; ++i) {
    const double mu = static_cast<double>(i) / (grid - 1);
    const double analytic = material_albedo(m, mu).r;
    std::snprintf(line, sizeof(line), "%s,%s,%.9g,analytic,%.9g\n",
                  margs.model_name.c_str(), label.c_str(), mu, analytic);
    csv << line;
    const double numeric = model_albedo_numeric(m, mu, spec);
    std::snprintf(line, sizeof(line), "%s,%s,%.9g,numeric,%.9g\n",
                  margs.model_name.c_str(), label.c_str(), mu, numeric);
    csv << line;
  }
  emit(csv.str(), out_path);
  return 0;
}

int run_stats(const MaterialArgs& margs, const std::string& sampler_name, int grid,
              std::int64_t n, std::uint64_t seed, const std::string& out_path) {
  const Material m = margs.material();  // validates model/roughness pairing
  if (is_qon(m.model)) {
    throw std::invalid_argument(
        "stats evaluates throughput weights for the r-parameterized models; "
        "use --model lambert, fon or eon");
  }
  if (grid < 2 || grid > 1000) throw std::invalid_argument("--grid must be in [2, 1000]");
  if (n <= 0) throw std::invalid_argument("--n must be positive");
  std::vector<std::pair<std::string, Strategy>> strategies;
  if (sampler_name.empty()) {
    strategies.assign(kSamplerNames.begin(), kSamplerNames.end());
  } else {
    strategies.push_back({sampler_name, kSamplerNames.at(sampler_name)});
  }
  for (const auto& [name, strat] : strategies) {
    if ((strat == Strategy::cltc || strat == Strategy::cltc_mis) &&
        m.model == Model::lambert) {
      throw std::invalid_argument("sampler " + name + " requires --model fon or eon");
    }
  }
  const FonRoughness r(m.model == Model::lambert ? 0.0 : m.roughness);
  std::ostringstream csv;
  csv << "strategy,r,theta_deg,variance,max,mean\n";
  char line[200];
  for (const auto& [name, strat] : strategies) {
    for (int i = 0; i < grid; ++i) {
      const double theta_deg = 88.0 * i / (grid - 1);
      const double mu = std::cos(theta_deg * kPi / 180.0);
      const WeightStats ws = weight_stats(strat, r, mu, n, seed);
      std::snprintf(line, sizeof(line), "%s,%.6g,%.6g,%.9g,%.9g,%.9g\n", name.c_str(),
                    r.r, theta_deg, ws.variance, ws.max, ws.mean);
      csv << line;
    }
  }
  emit(csv.str(), out_path);
  return 0;
}

int run_chi2(double r, double mu, std::int64_t n, std::uint64_t seed) {
  if (!(mu > 0.0 && mu <= 1.0)) throw std::invalid_argument("--mu must be in (0, 1]");
  const Chi2Report rep = chi2_sampler_test(FonRoughness(r), mu, n, {}, seed);
  std::printf(
      "p_value=%.6g statistic=%.6g dof=%d cells=%d samples=%lld below_horizon=%lld\n",
      rep.p_value, rep.statistic, rep.dof, rep.cells,
      static_cast<long long>(rep.samples), static_cast<long long>(rep.below_horizon));
  return rep.below_horizon == 0 ? 0 : 1;
}

int run_furnace(const MaterialArgs& margs, const std::string& sampler_name,
                std::int64_t spp, int bounces, std::uint64_t seed, bool do_render,
                int width, int height, const std::string& out_path) {
  const Material m = margs.material();
  const Strategy sampler = kSamplerNames.at(sampler_name);
  if ((sampler == Strategy::cltc || sampler == Strategy::cltc_mis) && is_qon(m.model)) {
    throw std::invalid_argument("sampler " + sampler_name + " requires --model lambert, fon or eon");
  }
  if (do_render && out_path.empty()) {
    throw std::invalid_argument("--render requires --out <path.ppm>");
  }
  if (!out_path.empty()) {
    Scene scene;
    scene.sphere = {{0.0, 0.0, 0.0}, 1.0};
    scene.material = m;
    scene.sampler = sampler;
    scene.env.kind = EnvKind::uniform;
    const Camera cam;
    const Image img = render(scene, cam, width, height,
                             static_cast<int>(spp), bounces, seed);
    const FurnaceImageStats st = furnace_image_stats(img, scene, cam);
    write_ppm(img, out_path);
    std::printf("mean_sphere=%.6g background=%.6g deviation=%.6g\n", st.sphere_mean,
                st.background_mean, st.rel_deviation);
    return 0;
  }
  const double mean = furnace_test(m, sampler, bounces, spp, seed);
  std::printf("mean=%.9g deviation=%.6g\n", mean, std::abs(mean - 1.0));
  return 0;
}

int run_bench(std::int64_t n, int reps, std::uint64_t seed) {
  if (n < 64 || n > (1 << 22)) throw std::invalid_argument("--n must be in [64, 4194304]");
  if (reps < 5) throw std::invalid_argument("--reps must be >= 5");
  const auto rows = run_benches(static_cast<std::size_t>(n), reps, seed);
  for (const auto& row : rows) {
    std::printf("%-18s %10.2f ns/op\n", row.name.c_str(), row.seconds_per_call * 1e9);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Energy-preserving rough-diffuse BRDF toolkit (evaluation, sampling, "
      "validation, furnace renders, benchmarks)"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate the BRDF for one direction pair");
  MaterialArgs eval_margs;
  eval_margs.attach(eval_cmd);
  std::vector<double> wi_v, wo_v;
  eval_cmd->add_option("--wi", wi_v, "incident direction x y z (z >= 0)")
      ->expected(3)
      ->required();
  eval_cmd->add_option("--wo", wo_v, "outgoing direction x y z (z >= 0)")
      ->expected(3)
      ->required();

  // albedo
  auto* albedo_cmd =
      app.add_subcommand("albedo", "emit analytic + quadrature albedo curves as CSV");
  MaterialArgs albedo_margs;
  albedo_margs.attach(albedo_cmd);
  int albedo_grid = 33;
  std::string albedo_out;
  albedo_cmd->add_option("--grid", albedo_grid, "number of mu samples (default 33)");
  albedo_cmd->add_option("--out", albedo_out, "output CSV path (default stdout)");

  // stats
  auto* stats_cmd =
      app.add_subcommand("stats", "sampler throughput-weight statistics as CSV");
  MaterialArgs stats_margs;
  stats_margs.attach(stats_cmd, false);
  std::string stats_sampler;
  int stats_grid = 12;
  std::int64_t stats_n = 100000;
  std::uint64_t stats_seed = 1;
  std::string stats_out;
  stats_cmd->add_option("--sampler", stats_sampler, "cosine|uniform|cltc|cltc-mis (default all)")
      ->check(CLI::IsMember({"cosine", "uniform", "cltc", "cltc-mis"}));
  stats_cmd->add_option("--grid", stats_grid, "view angles from 0 to 88 deg (default 12)");
  stats_cmd->add_option("--n", stats_n, "weights per configuration");
  stats_cmd->add_option("--seed", stats_seed, "RNG seed");
  stats_cmd->add_option("--out", stats_out, "output CSV path (default stdout)");

  // chi2
  auto* chi2_cmd =
      app.add_subcommand("chi2", "chi-square goodness of fit of the EON sampler");
  double chi2_r = 1.0, chi2_mu = 0.5;
  std::int64_t chi2_n = 1000000;
  std::uint64_t chi2_seed = 1;
  chi2_cmd->add_option("--r", chi2_r, "EON roughness in [0, 1]")->required();
  chi2_cmd->add_option("--mu", chi2_mu, "view cosine in (0, 1]")->required();
  chi2_cmd->add_option("--n", chi2_n, "sample count (default 1e6)");
  chi2_cmd->add_option("--seed", chi2_seed, "RNG seed");

  // furnace
  auto* furnace_cmd = app.add_subcommand(
      "furnace", "white-furnace closure test; with --out, renders the sphere image");
  MaterialArgs furnace_margs;
  furnace_margs.attach(furnace_cmd);
  std::string furnace_sampler = "cltc-mis";
  std::int64_t furnace_spp = 100000;
  int furnace_bounces = 50;
  std::uint64_t furnace_seed = 1;
  bool furnace_render = false;
  int furnace_w = 96, furnace_h = 72;
  std::string furnace_out;
  furnace_cmd->add_option("--sampler", furnace_sampler, "sampling strategy")
      ->check(CLI::IsMember({"cosine", "uniform", "cltc", "cltc-mis"}));
  furnace_cmd->add_option("--spp", furnace_spp, "paths (point mode) or samples per pixel");
  furnace_cmd->add_option("--bounces", furnace_bounces, "path length cap (default 50)");
  furnace_cmd->add_option("--seed", furnace_seed, "RNG seed");
  furnace_cmd->add_flag("--render", furnace_render, "render the sphere image (needs --out)");
  furnace_cmd->add_option("--width", furnace_w, "image width (default 96)");
  furnace_cmd->add_option("--height", furnace_h, "image height (default 72)");
  furnace_cmd->add_option("--out", furnace_out, "output PPM path (enables render mode)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "micro-benchmarks (median ns/op)");
  std::int64_t bench_n = 4096;
  int bench_reps = 5;
  std::uint64_t bench_seed = 1;
  bench_cmd->add_option("--n", bench_n, "input pool size (default 4096)");
  bench_cmd->add_option("--reps", bench_reps, "timed repetitions (default 5, median)");
  bench_cmd->add_option("--seed", bench_seed, "input pool seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval_cmd->parsed()) return run_eval(eval_margs, wi_v, wo_v);
    if (albedo_cmd->parsed()) return run_albedo(albedo_margs, albedo_grid, albedo_out);
    if (stats_cmd->parsed()) {
      return run_stats(stats_margs, stats_sampler, stats_grid, stats_n, stats_seed,
                       stats_out);
    }
    if (chi2_cmd->parsed()) return run_chi2(chi2_r, chi2_mu, chi2_n, chi2_seed);
    if (furnace_cmd->parsed()) {
      return run_furnace(furnace_margs, furnace_sampler, furnace_spp, furnace_bounces,
                         furnace_seed, furnace_render, furnace_w, furnace_h, furnace_out);
    }
    if (bench_cmd->parsed()) return run_bench(bench_n, bench_reps, bench_seed);
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  std::fprintf(stderr, "error: no subcommand\n");
  return 1;
}
