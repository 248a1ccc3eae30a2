// Long-running experiment checks kept out of the default ctest set: the
// gated torus3 / zonal-sphere runs and the full block-ratio scan. One line
// per experiment, exit code = number of failures.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>

#include "speclab/config.hpp"
#include "speclab/runner.hpp"

using namespace speclab;

namespace {

int g_failures = 0;

void run_one(const std::string& label, const std::string& cfg_text) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    auto cfgs = config::parse_config(cfg_text);
    runner::RunOptions opt;
    opt.out_dir.clear();
    opt.slow = true;
    std::ostringstream log;
    const auto reps = runner::run_experiment(cfgs.at(0), opt, log);
    if (reps.empty()) {
      ok = false;
      detail = "no reports produced";
    }
    for (const auto& r : reps) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%sslope %.4f vs %.4f", detail.empty() ? "" : ", ",
                    r.fit.slope, r.threshold);
      detail += buf;
      if (!r.pass) {
        ok = false;
        detail += " FAIL";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %s (%s, %.1fs)\n", ok ? "PASS" : "FAIL", label.c_str(), detail.c_str(), elapsed);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

}  // namespace

int main() {
  run_one("torus3 space-time scaling", "[torus_6_3]\n");
  run_one("zonal sphere beam scaling", "[sphere_sharp_1_8]\nmodel = sphere_zonal3\n");
  run_one("frequency-block maximal ratios", "[lemma_5_7]\n");
  return g_failures;
}
