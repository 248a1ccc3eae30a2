#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "speclab/spectra.hpp"

using namespace speclab;
using namespace speclab::spectra;

TEST_SUITE("spectra") {
  TEST_CASE("mode counts match brute-force enumeration") {
    struct Case {
      ManifoldModel model;
      double cutoff;
    };
    const Case cases[] = {
        {ManifoldModel::circle(), 16.0},     {ManifoldModel::circle(), 16.5},
        {ManifoldModel::torus(2), 12.0},     {ManifoldModel::torus(2), 9.7},
        {ManifoldModel::torus(3), 6.0},      {ManifoldModel::sphere2(), 20.0},
        {ManifoldModel::sphere2(), 20.6},    {ManifoldModel::sphere_zonal3(), 14.0},
        {ManifoldModel::sphere_zonal3(), 0.0}};
    for (const auto& c : cases) {
      auto table = enumerate_modes(c.model, c.cutoff);
      CHECK(static_cast<std::int64_t>(table->size()) ==
            oracles::brute_mode_count(c.model, c.cutoff));
    }
  }

  TEST_CASE("eigenvalues and multiplicities") {
    CHECK(sphere_eigenvalue(5, 2) == 30.0);
    CHECK(sphere_eigenvalue(5, 3) == 35.0);
    CHECK(sphere_multiplicity(5, 2) == 11);
    CHECK(sphere_multiplicity(5, 3) == 36);
    CHECK(sphere_multiplicity(0, 3) == 1);
    CHECK_THROWS_AS(sphere_eigenvalue(-1, 2), domain_error);

    auto s2 = enumerate_modes(ManifoldModel::sphere2(), 12.0);
    for (const auto& m : s2->modes)
      CHECK(m.eigenvalue == static_cast<double>(m.q[0]) * (m.q[0] + 1));
    auto z3 = enumerate_modes(ManifoldModel::sphere_zonal3(), 12.0);
    for (const auto& m : z3->modes)
      CHECK(m.eigenvalue == static_cast<double>(m.q[0]) * (m.q[0] + 2));
  }

  TEST_CASE("tables are sorted with reproducible ids") {
    auto table = enumerate_modes(ManifoldModel::torus(2), 8.0);
    for (std::size_t j = 0; j < table->size(); ++j) {
      CHECK(table->modes[j].id == static_cast<int>(j));
      if (j) {
        const Mode &a = table->modes[j - 1], &b = table->modes[j];
        bool ordered = a.eigenvalue < b.eigenvalue ||
                       (a.eigenvalue == b.eigenvalue && a.q < b.q);
        CHECK(ordered);
      }
    }
    auto again = enumerate_modes(ManifoldModel::torus(2), 8.0);
    REQUIRE(again->size() == table->size());
    for (std::size_t j = 0; j < table->size(); ++j) CHECK(again->modes[j].q == table->modes[j].q);
  }

  TEST_CASE("gauss-legendre rule integrates monomials exactly") {
    for (int n : {2, 5, 8, 16}) {
      std::vector<double> xs, ws;
      gauss_legendre_rule(n, xs, ws);
      REQUIRE(static_cast<int>(xs.size()) == n);
      CHECK(std::is_sorted(xs.begin(), xs.end()));
      for (int d = 0; d <= 2 * n - 1; ++d) {
        double got = 0.0;
        for (int i = 0; i < n; ++i) got += ws[i] * std::pow(xs[i], d);
        double want = d % 2 ? 0.0 : 2.0 / (d + 1);
        CHECK(std::abs(got - want) <= 1e-13);
      }
    }
  }

  TEST_CASE("normalized legendre rows are orthonormal under gauss weights") {
    const int K = 24;
    std::vector<double> xs, ws;
    gauss_legendre_rule(K + 1, xs, ws);
    for (int m : {0, 1, 2, 7, 15}) {
      std::vector<std::vector<double>> rows(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) normalized_legendre_row(K, m, xs[i], rows[i]);
      for (int k = m; k <= K; ++k)
        for (int l = m; l <= k; ++l) {
          double acc = 0.0;
          for (std::size_t i = 0; i < xs.size(); ++i)
            acc += ws[i] * rows[i][k - m] * rows[i][l - m];
          // rows absorb 1/sqrt(2 pi) of the sphere normalization
          double want = (k == l) ? 1.0 / two_pi : 0.0;
          CHECK(std::abs(acc - want) <= 1e-13);
        }
    }
  }

  TEST_CASE("sphere addition theorem at random points") {
    auto model = ManifoldModel::sphere2();
    auto table = enumerate_modes(model, 18.0);
    const std::array<double, 3> pts[] = {
        {0.3, 1.1, 0.0}, {1.2, 4.4, 0.0}, {2.9, 0.2, 0.0}, {1.5707, 3.0, 0.0}};
    for (const auto& x : pts) {
      std::vector<double> level_sum(32, 0.0);
      for (const auto& md : table->modes)
        level_sum[md.q[0]] += sq(eval_eigenfunction_real(model, md, x));
      for (int k = 0; k <= 17; ++k)
        CHECK(std::abs(level_sum[k] - (2.0 * k + 1.0) / (4.0 * pi)) <= 1e-12 * (2 * k + 1));
    }
  }

  TEST_CASE("eigenfunction evaluation conventions") {
    auto circle = ManifoldModel::circle();
    Mode m3{0, 9.0, {3, 0, 0}};
    cplx v = eval_eigenfunction(circle, m3, {0.7, 0.0, 0.0});
    cplx want = std::polar(1.0 / std::sqrt(two_pi), 3 * 0.7);
    CHECK(std::abs(v - want) <= 1e-15);
    CHECK_THROWS_AS(eval_eigenfunction_real(circle, m3, {0.7, 0.0, 0.0}), domain_error);
    CHECK_THROWS_AS(
        eval_eigenfunction(circle, m3,
                           {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0}),
        domain_error);

    // real sphere modes come back through the complex interface unchanged
    auto s2 = ManifoldModel::sphere2();
    Mode y{0, 6.0, {2, -1, 0}};
    cplx w = eval_eigenfunction(s2, y, {0.9, 2.0, 0.0});
    CHECK(w.imag() == 0.0);
    CHECK(w.real() == eval_eigenfunction_real(s2, y, {0.9, 2.0, 0.0}));
  }

  TEST_CASE("quadrature grids integrate mode pair products exactly") {
    for (auto model : {ManifoldModel::circle(), ManifoldModel::torus(2),
                       ManifoldModel::sphere2(), ManifoldModel::sphere_zonal3()}) {
      double cutoff = model.kind == ModelKind::Torus2 ? 6.0 : 10.0;
      auto table = enumerate_modes(model, cutoff);
      auto grid = grid_for_table(*table);
      CHECK(grid.admissible_for(*table));
      double wsum = 0.0;
      for (double w : grid.weights) {
        CHECK(w > 0.0);
        wsum += w;
      }
      CHECK(std::abs(wsum - model.measure()) <= 1e-12 * model.measure());
      // deterministic strided selection of pairs
      std::size_t n = table->size();
      for (std::size_t a = 0; a < n; a += 3)
        for (std::size_t b = a; b < n; b += 5) {
          cplx acc{0.0, 0.0};
          for (std::size_t i = 0; i < grid.size(); ++i) {
            cplx ea = eval_eigenfunction(model, table->modes[a], grid.points[i]);
            cplx eb = eval_eigenfunction(model, table->modes[b], grid.points[i]);
            acc += grid.weights[i] * ea * std::conj(eb);
          }
          cplx want = a == b ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
          CHECK(std::abs(acc - want) <= 2e-13);
        }
    }
  }

  TEST_CASE("grid metadata matches enumeration order") {
    auto g2 = quadrature_grid(ManifoldModel::torus(2), 5);
    REQUIRE(g2.size() == 25);
    CHECK(g2.axis_n == 5);
    // row-major, last axis fastest
    CHECK(g2.points[1][0] == 0.0);
    CHECK(std::abs(g2.points[1][1] - two_pi / 5) <= 1e-15);
    CHECK(std::abs(g2.points[5][0] - two_pi / 5) <= 1e-15);
    CHECK(g2.points[5][1] == 0.0);

    auto gs = quadrature_grid(ManifoldModel::sphere2(), 4);
    CHECK(gs.n_theta == 5);
    CHECK(gs.n_phi == 9);
    REQUIRE(gs.size() == 45);
    CHECK(gs.points[9][0] == gs.theta_nodes[1]);
    CHECK(gs.admissible_quantum() == 4);

    auto gz = quadrature_grid(ManifoldModel::sphere_zonal3(), 6);
    CHECK(gz.n_rho == 6);
    CHECK(gz.admissible_quantum() == 5);

    CHECK_THROWS_AS(quadrature_grid(ManifoldModel::circle(), 0), config_error);
  }

  TEST_CASE("model parsing and naming round-trip") {
    for (const char* name : {"circle", "torus2", "torus3", "sphere2", "sphere_zonal3"}) {
      auto model = ManifoldModel::parse(name);
      CHECK(model.name() == name);
    }
    CHECK_THROWS_AS(ManifoldModel::parse("klein_bottle"), config_error);
    CHECK(ManifoldModel::torus(2).dim() == 2);
    CHECK(ManifoldModel::sphere_zonal3().dim() == 3);
    CHECK(ManifoldModel::sphere_zonal3().qlen() == 1);
    CHECK_THROWS_AS(ManifoldModel::torus(4), domain_error);
  }

  TEST_CASE("mode table csv is deterministic and complete") {
    auto table = enumerate_modes(ManifoldModel::torus(2), 4.0);
    std::string csv = mode_table_csv(*table);
    CHECK(csv == mode_table_csv(*table));
    std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows >= table->size());  // header/comments plus one line per mode
    CHECK(csv.find("eigenvalue") != std::string::npos);
  }
}
