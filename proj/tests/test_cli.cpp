#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "speclab/csvio.hpp"
#include "speclab/runner.hpp"

using namespace speclab;
using config::ExperimentConfig;
using config::parse_config;
using runner::RunOptions;

namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(bool(f));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int count_rows(const std::string& csv, const std::string& id) {
  int n = 0;
  std::string needle = "\n" + id + ",";
  for (std::size_t at = csv.find(needle); at != std::string::npos;
       at = csv.find(needle, at + 1))
    ++n;
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config parsing covers every key") {
    std::string text =
        "# battery\n"
        "[first]\n"
        "id = torus_6_1\n"
        "model = torus2\n"
        "ensemble = sobolev\n"
        "cutoff = 24.5\n"
        "h = 0.5, 0.25, 0.125\n"
        "p = 4\n"
        "alpha = 0.7\n"
        "trials = 9\n"
        "seed = 42\n"
        "; second block\n"
        "[sweep]\n"
        "q = 4\n"
        "beta = 0.25\n"
        "c0 = 2\n"
        "ball_radius = 1.5\n"
        "width = 0.5\n"
        "center = 16\n"
        "level = 8\n"
        "mode_id = 3\n"
        "resolution = 31\n"
        "t = 0.5, 0.25\n"
        "lam0 = 8, 16\n"
        "alphas = 0.2, 0.6\n";
    auto cfgs = parse_config(text);
    REQUIRE(cfgs.size() == 2);
    CHECK(cfgs[0].section == "first");
    CHECK(cfgs[0].id == "torus_6_1");
    CHECK(cfgs[0].model == "torus2");
    CHECK(cfgs[0].ensemble == "sobolev");
    CHECK(cfgs[0].cutoff == 24.5);
    REQUIRE(cfgs[0].h_list.size() == 3);
    CHECK(cfgs[0].h_list[2] == 0.125);
    CHECK(cfgs[0].p == 4.0);
    CHECK(cfgs[0].alpha == 0.7);
    CHECK(cfgs[0].trials == 9);
    CHECK(cfgs[0].seed == 42);
    CHECK(cfgs[0].seed_set);
    CHECK(cfgs[1].section == "sweep");
    CHECK(cfgs[1].id == "sweep");
    CHECK(cfgs[1].q == 4.0);
    CHECK(cfgs[1].beta == 0.25);
    CHECK(cfgs[1].c0 == 2.0);
    CHECK(cfgs[1].ball_radius == 1.5);
    CHECK(cfgs[1].width == 0.5);
    CHECK(cfgs[1].center == 16.0);
    CHECK(cfgs[1].level == 8);
    CHECK(cfgs[1].mode_id == 3);
    CHECK(cfgs[1].resolution == 31);
    CHECK_FALSE(cfgs[1].seed_set);
    REQUIRE(cfgs[1].t_list.size() == 2);
    REQUIRE(cfgs[1].lam0_list.size() == 2);
    REQUIRE(cfgs[1].alpha_list.size() == 2);
    CHECK(cfgs[1].alpha_list[1] == 0.6);
  }

  TEST_CASE("config errors carry line and field diagnostics") {
    CHECK_THROWS_WITH_AS(parse_config("# only comments\n"), "config: no [section] found",
                         config_error);
    CHECK_THROWS_WITH_AS(parse_config("p = 4\n"), "config line 1: key before any [section]",
                         config_error);
    CHECK_THROWS_WITH_AS(parse_config("[a\n"), "config line 1: unterminated section header",
                         config_error);
    CHECK_THROWS_WITH_AS(parse_config("[a]\n\nfrob = 1\n"),
                         "config line 3: unknown key 'frob'", config_error);
    CHECK_THROWS_WITH_AS(parse_config("[a]\np =\n"), "config line 2: empty value for 'p'",
                         config_error);
    CHECK_THROWS_WITH_AS(parse_config("[a]\np = abc\n"), "config line 2: bad number 'abc'",
                         config_error);
    CHECK_THROWS_WITH_AS(parse_config("[a]\nh = 0.5,,0.25\n"),
                         "config line 2: empty list entry", config_error);
    CHECK_THROWS_AS(parse_config("[a]\nnote\n"), config_error);
    CHECK_THROWS_AS(parse_config("[ ]\n"), config_error);
  }

  TEST_CASE("config file loading") {
    fs::path dir = fresh_dir("speclab_cli_cfg");
    fs::path file = dir / "exp.ini";
    atomic_write_file(file.string(), "[low_freq]\ntrials = 2\n");
    auto cfgs = config::load_config_file(file.string());
    REQUIRE(cfgs.size() == 1);
    CHECK(cfgs[0].id == "low_freq");
    CHECK(cfgs[0].trials == 2);
    CHECK_THROWS_AS(config::load_config_file((dir / "missing.ini").string()), config_error);
    fs::remove_all(dir);
  }

  TEST_CASE("defaults fill per id and preserve explicit values") {
    auto filled = [](const std::string& text) {
      auto cfgs = parse_config(text);
      runner::fill_defaults(cfgs[0]);
      return cfgs[0];
    };

    ExperimentConfig c = filled("[strichartz_5_1]\n");
    CHECK(c.model == "circle");
    CHECK(c.p == 6.0);
    REQUIRE(c.h_list.size() == 3);
    CHECK(c.h_list[0] == 0.25);
    CHECK(c.h_list[2] == 0.0625);
    CHECK(c.trials == 8);
    CHECK(c.cutoff == 32.0);

    c = filled("[torus_6_3]\n");
    CHECK(c.model == "torus3");
    CHECK(c.p == doctest::Approx(8.0 / 3.0));
    CHECK(c.h_list.size() == 3);
    CHECK(c.cutoff == 16.0);

    c = filled("[lemma_5_7]\n");
    CHECK(c.model == "torus2");
    CHECK(c.q == 4.0);
    CHECK(c.beta == 0.25);
    CHECK(c.h_list.size() == 6);
    CHECK(c.cutoff == 128.0);
    CHECK(c.trials == 50);

    c = filled("[sphere_sharp_1_8]\n");
    CHECK(c.model == "sphere2");
    CHECK(c.p == 4.0);
    CHECK(c.h_list.size() == 4);
    CHECK(c.cutoff == 33.5);

    c = filled("[low_freq]\n");
    CHECK(c.model == "circle");
    CHECK(c.q == 4.0);
    CHECK(c.c0 == 1.0);
    CHECK(c.cutoff == 8.0);
    CHECK(c.h_list == std::vector<double>{1.0});

    c = filled("[sphere_sec4]\n");
    CHECK(c.alpha == 0.6);
    CHECK(c.cutoff == 64.5);
    CHECK(c.trials == 20);

    c = filled("[smoothing_3_1]\n");
    CHECK(c.model == "h3");
    CHECK(c.lam0_list.size() == 5);
    CHECK(c.width == 1.0);
    CHECK(c.ball_radius == 2.0);

    c = filled("[sweep]\n");
    CHECK(c.cutoff == 64.0);
    CHECK(c.alpha_list.size() == 2);
    CHECK(c.t_list.size() == 7);

    c = filled("[maximal_5_2]\n");
    CHECK(c.model == "torus2");
    CHECK(c.trials == 20);
    c = filled("[maximal_5_2]\nmodel = sphere2\n");
    CHECK(c.trials == 12);

    c = filled("[torus_6_1]\np = 2.5\ncutoff = 9\nh = 0.5\ntrials = 3\n");
    CHECK(c.p == 2.5);
    CHECK(c.cutoff == 9.0);
    CHECK(c.h_list == std::vector<double>{0.5});
    CHECK(c.trials == 3);

    ExperimentConfig once = filled("[torus_6_2]\n");
    ExperimentConfig twice = once;
    runner::fill_defaults(twice);
    CHECK(twice.model == once.model);
    CHECK(twice.cutoff == once.cutoff);
    CHECK(twice.h_list == once.h_list);
    CHECK(twice.trials == once.trials);

    auto bad = parse_config("[nonsense]\n");
    CHECK_THROWS_AS(runner::fill_defaults(bad[0]), config_error);
  }

  TEST_CASE("sweep experiment writes its table and always reports") {
    fs::path dir = fresh_dir("speclab_cli_sweep");
    auto cfgs = parse_config("[sweep]\ncutoff = 16\nalphas = 0.3\nt = 0.5, 0.25\n");
    RunOptions opt;
    opt.out_dir = dir.string();
    std::ostringstream log;
    auto reps = runner::run_experiment(cfgs[0], opt, log);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].pass);
    CHECK(reps[0].series.points.size() == 2);
    CHECK(fs::exists(dir / "sweep_sweep.csv"));
    std::string csv = slurp(dir / "sweep_sweep.csv");
    CHECK(csv.find("alpha,t,sup_lo,sup_hi,sobolev") != std::string::npos);
    CHECK(log.str().find("run   sweep") != std::string::npos);
    fs::remove_all(dir);
  }

  TEST_CASE("first-order smoothing yields the companion series") {
    auto cfgs = parse_config("[smoothing_3_1]\nlam0 = 6, 8, 10\n");
    RunOptions opt;
    opt.out_dir.clear();
    std::ostringstream log;
    auto reps = runner::run_experiment(cfgs[0], opt, log);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].series.inequality_id == "smoothing_3_1");
    CHECK(reps[0].pass);
    CHECK(reps[1].series.inequality_id == "smoothing_3_1_l2");
    CHECK(reps[1].series.points.size() == 3);
    for (const auto& pt : reps[1].series.points) CHECK(pt.value > 0.0);
  }

  TEST_CASE("slow experiments are gated") {
    RunOptions opt;
    opt.out_dir.clear();
    std::ostringstream log;
    auto cfgs = parse_config("[torus_6_3]\n");
    CHECK(runner::run_experiment(cfgs[0], opt, log).empty());
    CHECK(log.str().find("skip") != std::string::npos);
    CHECK(log.str().find("--slow") != std::string::npos);

    std::ostringstream log2;
    auto zon = parse_config("[sharp_zonal]\nid = sphere_sharp_1_8\nmodel = sphere_zonal3\n");
    CHECK(runner::run_experiment(zon[0], opt, log2).empty());
    CHECK(log2.str().find("skip  sharp_zonal") != std::string::npos);
  }

  TEST_CASE("batch run: exit 0, report rows, byte determinism") {
    auto text = "[strichartz_5_1]\n";
    fs::path a = fresh_dir("speclab_cli_a");
    fs::path b = fresh_dir("speclab_cli_b");
    RunOptions opt;
    opt.out_dir = a.string();
    std::ostringstream log;
    CHECK(runner::run_experiments(parse_config(text), opt, log) == 0);
    opt.out_dir = b.string();
    std::ostringstream log2;
    CHECK(runner::run_experiments(parse_config(text), opt, log2) == 0);
    std::string ra = slurp(a / "report.csv");
    std::string rb = slurp(b / "report.csv");
    CHECK(ra == rb);
    CHECK(count_rows(ra, "strichartz_5_1") >= 3);
    CHECK(log.str().find("PASS") != std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
  }

  TEST_CASE("divergent cascade constant is an error, not a failure") {
    RunOptions opt;
    opt.out_dir.clear();
    std::ostringstream log;
    auto cfgs = parse_config("[sphere_sec4]\nalpha = 0.3\ncutoff = 10.5\ntrials = 1\n");
    CHECK(runner::run_experiments(cfgs, opt, log) == 1);
    CHECK(log.str().find("error:") != std::string::npos);
    CHECK(log.str().find("diverges") != std::string::npos);
  }

  TEST_CASE("unknown ensemble is rejected") {
    RunOptions opt;
    opt.out_dir.clear();
    std::ostringstream log;
    auto cfgs = parse_config("[torus_6_1]\nensemble = frob\ncutoff = 6\nh = 0.5\ntrials = 1\n");
    CHECK_THROWS_AS(runner::run_experiment(cfgs[0], opt, log), config_error);
    CHECK(runner::run_experiments(cfgs, opt, log) == 1);
  }

  TEST_CASE("plots are emitted when requested") {
    fs::path dir = fresh_dir("speclab_cli_plot");
    RunOptions opt;
    opt.out_dir = dir.string();
    opt.plot = true;
    std::ostringstream log;
    auto cfgs = parse_config("[sweep]\ncutoff = 12\nalphas = 0.4\nt = 0.5, 0.25\n");
    CHECK(runner::run_experiments(cfgs, opt, log) == 0);
    CHECK(fs::exists(dir / "sweep.svg"));
    CHECK(slurp(dir / "sweep.svg").find("<svg") != std::string::npos);
    fs::remove_all(dir);
  }

  TEST_CASE("atomic writes land complete, nested, and overwrite") {
    fs::path dir = fresh_dir("speclab_cli_atomic");
    fs::path f = dir / "sub" / "x.csv";
    atomic_write_file(f.string(), "a,b\n1,2\n");
    CHECK(slurp(f) == "a,b\n1,2\n");
    atomic_write_file(f.string(), "new\n");
    CHECK(slurp(f) == "new\n");
    CHECK_FALSE(fs::exists(dir / "sub" / "x.csv.tmp"));
    fs::remove_all(dir);
  }
}
