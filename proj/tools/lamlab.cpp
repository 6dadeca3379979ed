#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lamfrag/experiments.hpp"
#include "lamfrag/fragmentation.hpp"
#include "lamfrag/gw_sampler.hpp"
#include "lamfrag/lamination.hpp"
#include "lamfrag/levy.hpp"
#include "lamfrag/minimal_factorization.hpp"
#include "lamfrag/numeric.hpp"
#include "lamfrag/plane_tree.hpp"
#include "lamfrag/render.hpp"
#include "lamfrag/rng.hpp"

namespace {

using namespace lamfrag;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OffspringDistribution offspring_for(double alpha) {
  if (alpha == 2.0) return builtin_distribution("poisson1");
  return builtin_distribution("stable", alpha, 100000);
}

// Inject key=value pairs from a --config file as trailing options, skipping
// keys already given on the command line so explicit flags take precedence.
void apply_config_file(std::vector<std::string>& args) {
  std::string cfg_path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      cfg_path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      cfg_path = args[i].substr(9);
      break;
    }
  }
  if (cfg_path.empty()) return;
  std::ifstream in(cfg_path);
  if (!in) throw std::runtime_error("cannot read config file " + cfg_path);
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad config line: " + line);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw std::runtime_error("bad config line: " + line);
    std::string flag = "--" + key;
    bool present = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
    if (present) continue;
    args.push_back(flag);
    args.push_back(value);
  }
}

struct CommonOpts {
  uint64_t seed = 0;
  int64_t n = 1000;
  double alpha = 2.0;
  double c = 1.0;
  double delta = 0.0;
  std::string out;
  std::string format = "svg";
  std::string config;
};

void add_common(CLI::App* sub, CommonOpts& o, const std::vector<std::string>& formats) {
  // required-ness of --seed is checked after parsing: CLI11 runs its required
  // check before subcommand config-file injection, which must also satisfy it
  sub->add_option("--seed", o.seed, "random seed (required)");
  sub->add_option("--n", o.n, "object size")->check(CLI::PositiveNumber);
  sub->add_option("--alpha", o.alpha, "stability index in (1,2]")
      ->check(CLI::Range(1.0 + 1e-9, 2.0));
  sub->add_option("--c", o.c, "time / intensity parameter")->check(CLI::NonNegativeNumber);
  sub->add_option("--delta", o.delta, "minimum chord extent rendered")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--out", o.out, "output path")->required();
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
  sub->add_option("--config", o.config, "key=value config file (flags take precedence)");
}

int run_verify(const std::string& suite, uint64_t seed, const std::string& out) {
  std::vector<ExperimentReport> reports;
  if (suite == "all") {
    reports = run_all_experiments(seed);
  } else if (suite == "mass_identity") {
    reports.push_back(exp_mass_identity(seed + 1));
  } else if (suite == "factorization_vs_fragmentation") {
    reports.push_back(exp_factorization_vs_fragmentation(2000, 1.0, 2000, seed + 2));
  } else if (suite == "levy_marginal") {
    reports.push_back(exp_levy_marginal(2000, 10.0, 2.0, 2000, seed + 3));
    reports.push_back(exp_levy_marginal(2000, 3.0, 1.5, 2000, seed + 4));
  } else if (suite == "local_limit") {
    reports.push_back(exp_local_limit(10000, 1.0, 2.0));
  } else if (suite == "reduced_tree_law") {
    reports.push_back(exp_reduced_tree_law(3, 0.5, 100000, seed + 5));
  } else if (suite == "luka_vs_contour") {
    reports.push_back(exp_luka_vs_contour(10000, 10, seed + 6));
  } else if (suite == "partition_process") {
    reports.push_back(exp_partition_process({500, 1000, 2000, 4000}, 1.0, 400, seed + 7));
  } else {
    std::cerr << "unknown suite: " << suite << "\n";
    return 2;
  }
  std::ostringstream all;
  all << "[\n";
  bool ok = true;
  for (size_t i = 0; i < reports.size(); ++i) {
    std::string j = report_to_json(reports[i]);
    std::cout << j << "\n";
    all << j << (i + 1 < reports.size() ? ",\n" : "\n");
    ok = ok && reports[i].verdict;
  }
  all << "]\n";
  if (!out.empty()) write_file(out, all.str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lamination-valued fragmentation lab"};
  app.require_subcommand(1);

  CommonOpts tree_o, facto_o, cut_o, lam_o, part_o, levy_o, anim_o;
  std::string lam_tree_file;
  int64_t frames = 51;
  double levy_u = 1.0, levy_xmax = 20.0;
  std::string verify_suite = "all", verify_out;
  uint64_t verify_seed = 1;

  auto* s_tree = app.add_subcommand("sample-tree", "conditioned Galton-Watson tree");
  add_common(s_tree, tree_o, {"svg", "json"});

  auto* s_facto = app.add_subcommand("sample-facto", "uniform minimal factorization");
  add_common(s_facto, facto_o, {"svg", "json", "text"});

  auto* s_cut = app.add_subcommand("cut-process", "Poisson cuts on a conditioned tree");
  add_common(s_cut, cut_o, {"json", "csv", "svg"});
  cut_o.format = "json";

  auto* s_lam = app.add_subcommand("lamination", "contour lamination of a tree file");
  s_lam->add_option("--tree", lam_tree_file, "tree JSON input")->required();
  s_lam->add_option("--out", lam_o.out, "output path")->required();
  s_lam->add_option("--format", lam_o.format, "output format")
      ->check(CLI::IsMember(std::vector<std::string>{"svg", "json"}));
  s_lam->add_option("--delta", lam_o.delta, "minimum chord extent rendered")
      ->check(CLI::NonNegativeNumber);
  s_lam->add_option("--config", lam_o.config, "key=value config file (flags take precedence)");

  auto* s_part = app.add_subcommand("partition", "partition process of a factorization");
  add_common(s_part, part_o, {"svg", "json"});

  auto* s_levy = app.add_subcommand("levy-density", "density table of tau_u");
  s_levy->add_option("--alpha", levy_o.alpha, "stability index in (1,2]")
      ->check(CLI::Range(1.0 + 1e-9, 2.0));
  s_levy->add_option("--c", levy_o.c, "drift parameter")->check(CLI::PositiveNumber);
  s_levy->add_option("--u", levy_u, "passage level")->check(CLI::PositiveNumber);
  s_levy->add_option("--xmax", levy_xmax, "table half-width")->check(CLI::PositiveNumber);
  s_levy->add_option("--out", levy_o.out, "output path")->required();
  s_levy->add_option("--format", levy_o.format, "output format")
      ->check(CLI::IsMember(std::vector<std::string>{"csv"}));
  s_levy->add_option("--config", levy_o.config, "key=value config file (flags take precedence)");
  levy_o.format = "csv";

  auto* s_verify = app.add_subcommand("verify", "run experiment suites");
  s_verify->add_option("--suite", verify_suite, "suite name or 'all'");
  s_verify->add_option("--seed", verify_seed, "random seed");
  s_verify->add_option("--out", verify_out, "write aggregated JSON report");
  std::string verify_config;
  s_verify->add_option("--config", verify_config, "key=value config file (flags take precedence)");

  auto* s_anim = app.add_subcommand("animate", "growing lamination frame sequence");
  add_common(s_anim, anim_o, {"svg"});
  s_anim->add_option("--frames", frames, "number of frames")->check(CLI::Range(2, 10000));
  anim_o.alpha = 1.8;
  anim_o.n = 20000;

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    apply_config_file(args);
    std::reverse(args.begin(), args.end());  // App::parse(vector) expects reversed args
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  for (CLI::App* sub : {s_tree, s_facto, s_cut, s_part, s_anim}) {
    if (sub->parsed() && sub->count("--seed") == 0) {
      std::cerr << "--seed is required\n";
      return 2;
    }
  }

  try {
    if (s_tree->parsed()) {
      RngStream rng(tree_o.seed);
      auto t = sample_conditioned_gw(offspring_for(tree_o.alpha), tree_o.n, rng);
      RenderSpec spec;
      spec.delta = tree_o.delta;
      write_file(tree_o.out, tree_o.format == "json" ? tree_to_json(t) : render_svg(t, spec));
    } else if (s_facto->parsed()) {
      RngStream rng(facto_o.seed);
      auto f = sample_uniform_factorization(facto_o.n, rng);
      if (facto_o.format == "text") {
        write_file(facto_o.out, factorization_to_text(f) + "\n");
      } else if (facto_o.format == "json") {
        write_file(facto_o.out, labelled_tree_to_json(goulden_yong_forward(f).tree));
      } else {
        RenderSpec spec;
        spec.delta = facto_o.delta;
        spec.labels = true;
        write_file(facto_o.out, render_svg(goulden_yong_forward(f).chords, spec));
      }
    } else if (s_cut->parsed()) {
      RngStream rng(cut_o.seed);
      auto mu = offspring_for(cut_o.alpha);
      auto t = sample_conditioned_gw(mu, cut_o.n, rng);
      double B_n = compute_Bn(mu, cut_o.n).B_n;
      auto cp = sample_tree_cut_process(t, cut_o.c * B_n / static_cast<double>(cut_o.n), 1.0,
                                        rng);
      if (cut_o.format == "json") {
        write_file(cut_o.out, cut_process_to_json(cp));
      } else if (cut_o.format == "csv") {
        std::vector<double> times;
        for (int i = 1; i <= 10; ++i) times.push_back(0.1 * i);
        write_file(cut_o.out, trace_to_csv(fragmentation_masses(cp, times)));
      } else {
        RenderSpec spec;
        spec.delta = cut_o.delta;
        write_file(cut_o.out, render_svg(lamination_process(cp, {1.0})[0], spec));
      }
    } else if (s_lam->parsed()) {
      auto t = tree_from_json(read_file(lam_tree_file));
      auto l = lamination_from_tree_contour(t);
      RenderSpec spec;
      spec.delta = lam_o.delta;
      write_file(lam_o.out,
                 lam_o.format == "json" ? lamination_to_json(l) : render_svg(l, spec));
    } else if (s_part->parsed()) {
      RngStream rng(part_o.seed);
      auto f = sample_uniform_factorization(part_o.n, rng);
      auto k = static_cast<int64_t>(part_o.c * std::sqrt(static_cast<double>(part_o.n)));
      auto l = partition_process(f, std::min(k, part_o.n - 1));
      RenderSpec spec;
      spec.delta = part_o.delta;
      write_file(part_o.out,
                 part_o.format == "json" ? lamination_to_json(l) : render_svg(l, spec));
    } else if (s_levy->parsed()) {
      ExponentParams p{levy_o.alpha, levy_o.c};
      write_file(levy_o.out, density_table_to_csv(density_q_table(levy_u, p, levy_xmax)));
    } else if (s_verify->parsed()) {
      return run_verify(verify_suite, verify_seed, verify_out);
    } else if (s_anim->parsed()) {
      RngStream rng(anim_o.seed);
      auto mu = offspring_for(anim_o.alpha);
      auto t = sample_conditioned_gw(mu, anim_o.n, rng);
      double B_n = compute_Bn(mu, anim_o.n).B_n;
      auto cp = sample_tree_cut_process(t, anim_o.c * B_n / static_cast<double>(anim_o.n),
                                        1.0, rng);
      std::vector<double> times;
      for (int64_t i = 0; i < frames; ++i)
        times.push_back(static_cast<double>(i) / static_cast<double>(frames - 1));
      auto lams = lamination_process(cp, times);
      std::filesystem::create_directories(anim_o.out);
      RenderSpec spec;
      spec.delta = anim_o.delta;
      std::vector<std::string> rendered(lams.size());
      parallel_for(static_cast<int64_t>(lams.size()), [&](int64_t i) {
        rendered[static_cast<size_t>(i)] = render_svg(lams[static_cast<size_t>(i)], spec);
      });
      for (size_t i = 0; i < rendered.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%03zu.svg", i);
        write_file(anim_o.out + "/" + name, rendered[i]);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
