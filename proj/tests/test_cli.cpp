#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kBin = LAMLAB_BIN;

int run(const std::string& args) {
  int rc = std::system((kBin + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path tmp_dir() {
  auto d = fs::temp_directory_path() / "lamlab_cli_test";
  fs::create_directories(d);
  return d;
}

std::set<std::string> line_elements(const std::string& svg) {
  std::set<std::string> out;
  std::istringstream in(svg);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("<line", 0) == 0) out.insert(line);
  return out;
}

}  // namespace

TEST_CASE("fixed-seed commands are byte-deterministic") {
  auto d = tmp_dir();
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"tree", "sample-tree --n 200 --seed 3 --format svg"},
      {"facto", "sample-facto --n 50 --seed 4 --format svg"},
      {"cut", "cut-process --n 500 --seed 6 --format json"},
      {"part", "partition --n 400 --seed 5 --format svg"},
      {"levy", "levy-density --alpha 1.8 --u 1 --xmax 10 --format csv"},
  };
  for (const auto& [name, args] : cases) {
    auto a = d / (name + "_a");
    auto b = d / (name + "_b");
    CHECK(run(args + " --out " + a.string()) == 0);
    CHECK(run(args + " --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
  }
}

TEST_CASE("animation frames are deterministic and nested") {
  auto d = tmp_dir();
  auto a = d / "anim_a";
  auto b = d / "anim_b";
  CHECK(run("animate --alpha 1.8 --n 20000 --frames 51 --seed 7 --out " + a.string()) == 0);
  CHECK(run("animate --alpha 1.8 --n 20000 --frames 51 --seed 7 --out " + b.string()) == 0);
  std::set<std::string> prev;
  int grew = 0;
  for (int i = 0; i < 51; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%03d.svg", i);
    auto fa = slurp(a / name);
    CHECK(fa == slurp(b / name));
    auto lines = line_elements(fa);
    // monotone coupling: every chord of frame i persists in frame i+1
    for (const auto& l : prev) CHECK(lines.count(l) == 1);
    if (lines.size() > prev.size()) ++grew;
    prev = std::move(lines);
  }
  CHECK(prev.size() > 50);  // final frame carries the full lamination
  CHECK(grew > 10);
}

TEST_CASE("lamination subcommand renders a tree file") {
  auto d = tmp_dir();
  auto tj = d / "tree.json";
  auto ls = d / "lam.svg";
  REQUIRE(run("sample-tree --n 80 --seed 9 --format json --out " + tj.string()) == 0);
  REQUIRE(run("lamination --tree " + tj.string() + " --out " + ls.string()) == 0);
  auto svg = slurp(ls);
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(line_elements(svg).size() > 10);
  auto lj = d / "lam.json";
  CHECK(run("lamination --tree " + tj.string() + " --format json --out " + lj.string()) == 0);
  CHECK(slurp(lj).find("\"denominator\"") != std::string::npos);
}

TEST_CASE("config file values are overridden by flags") {
  auto d = tmp_dir();
  auto cfg = d / "tree.cfg";
  {
    std::ofstream out(cfg);
    out << "n=500\nseed=3\n";
  }
  auto from_cfg = d / "cfg.svg";
  auto overridden = d / "cfg_override.svg";
  auto direct = d / "direct.svg";
  CHECK(run("sample-tree --config " + cfg.string() + " --out " + from_cfg.string()) == 0);
  CHECK(run("sample-tree --config " + cfg.string() + " --n 120 --out " + overridden.string()) ==
        0);
  CHECK(run("sample-tree --n 120 --seed 3 --out " + direct.string()) == 0);
  CHECK(slurp(overridden) == slurp(direct));
  CHECK(slurp(from_cfg) != slurp(direct));
}

TEST_CASE("exit codes distinguish config errors and verdicts") {
  auto d = tmp_dir();
  CHECK(run("no-such-command") == 2);
  CHECK(run("sample-tree --n 10 --out " + (d / "x.svg").string()) == 2);  // missing seed
  CHECK(run("sample-tree --n 10 --seed 1 --bogus-flag --out " + (d / "x.svg").string()) == 2);
  CHECK(run("sample-tree --n 10 --seed 1 --format gif --out " + (d / "x.svg").string()) == 2);
  CHECK(run("verify --suite no_such_suite --seed 1") == 2);
  CHECK(run("lamination --tree " + (d / "missing.json").string() + " --out " +
            (d / "y.svg").string()) == 2);
  CHECK(run("verify --suite mass_identity --seed 1") == 0);
}
