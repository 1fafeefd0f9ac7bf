#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "abc/analysis.hpp"
#include "doctest.h"

using namespace abc;

namespace {

double f(double x, double y) { return std::sqrt((x + y - 2) / (x * y)); }

double central_diff(const std::function<double(double)>& fn, double x) {
  const double h = 1e-5 * std::max(1.0, x);
  return (fn(x + h) - fn(x - h)) / (2 * h);
}

}  // namespace

TEST_CASE("A020 vanishes on the boundary y = 2") {
  for (double x = 2; x <= 50; x += 0.5) CHECK(prop_value(PropId::A020, x, 2) == 0.0);
}

TEST_CASE("A030 is A020 with arguments swapped and negated") {
  for (double x = 2; x <= 50; x += 0.5)
    for (double y = 2; y <= 50; y += 0.5) {
      REQUIRE(std::abs(prop_value(PropId::A030, x, y) + prop_value(PropId::A020, y - 1, x)) <=
              1e-15);
      REQUIRE(std::abs(prop_value(PropId::A040, x, y) - prop_value(PropId::A030, y, x)) <= 1e-15);
    }
}

TEST_CASE("A010 telescopes into unit steps") {
  for (double x = 2; x <= 50; x += 0.5)
    for (double y = 2; y <= 50; y += 0.5)
      for (int dx = 0; dx <= 3; ++dx)
        for (int dy = 0; dy <= 3 && dy < y; ++dy) {
          double sum = 0;
          for (int i = 0; i < dx; ++i) sum += -f(x + i, y) + f(x + i + 1, y);
          for (int j = 0; j < dy; ++j) sum += -f(x + dx, y - j) + f(x + dx, y - j - 1);
          REQUIRE(std::abs(prop_value(PropId::A010, x, y, dx, dy) - sum) <= 1e-12);
        }
}

TEST_CASE("A050 matches its definition") {
  for (double x = 2; x <= 20; x += 1)
    for (double k = 2; k <= 10; ++k)
      CHECK(prop_value(PropId::A050, x, k) ==
            doctest::Approx(k * (-f(x, 6) + f(x + 1, 5)) + f(x + 1, 3)).epsilon(1e-14));
}

TEST_CASE("every proposition holds on the default grid") {
  const auto start = std::chrono::steady_clock::now();
  for (PropId id : all_prop_ids()) {
    const auto rep = monotonicity_scan(id);
    INFO(to_string(id));
    CHECK(rep.ok());
    CHECK(rep.checked > 0);
  }
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 10);
  CHECK(monotonicity_scan(PropId::A020).checked == 97 * 97);
  CHECK(monotonicity_scan(PropId::A050).checked == 9 * 96);
}

TEST_CASE("scans reject grids outside the domain") {
  Grid g;
  g.lo = 1.5;
  CHECK_THROWS_AS(monotonicity_scan(PropId::A020, g), std::domain_error);
  Grid s;
  s.shifts = {-1};
  CHECK_THROWS_AS(monotonicity_scan(PropId::A010, s), std::domain_error);
  Grid k;
  k.k_values = {1};
  CHECK_THROWS_AS(monotonicity_scan(PropId::A050, k), std::domain_error);
  CHECK_THROWS_AS(parse_prop_id("A999"), std::invalid_argument);
  CHECK(parse_prop_id("A040") == PropId::A040);
}

TEST_CASE("printed derivatives agree in sign with numerical ones") {
  const std::pair<const char*, const char*> pairs[] = {
      {"bk_merge_at_six", "bk_merge_at_six_slope"},
      {"b3star_common_pair_bound", "b3star_common_pair_slope"},
      {"b3star_single_bound", "b3star_single_slope"},
  };
  for (auto [fn_id, slope_id] : pairs) {
    const auto& fn = expression(fn_id).eval;
    const auto& slope = expression(slope_id).eval;
    for (double u = 6; u <= 200; u += 0.75) {
      const double num = central_diff(fn, u);
      if (std::abs(num) < 1e-9) continue;
      INFO(slope_id << " at " << u);
      REQUIRE((num > 0) == (slope(u) > 0));
    }
  }
}

TEST_CASE("sign changes") {
  const auto a = sign_change_scan("bk_merge_at_six_slope", 6, 100, 1);
  REQUIRE(a.found);
  CHECK(a.root() == doctest::Approx(31.3997).epsilon(1e-3 / 31.3997));
  CHECK(a.root_hi - a.root_lo <= 1e-4);
  CHECK(a.changes == 1);

  const auto b = sign_change_scan("b1_b4_merge", 6, 400, 1);
  REQUIRE(b.found);
  CHECK(b.bracket_lo == 241);
  CHECK(b.bracket_hi == 242);

  const auto c = sign_change_scan("b3star_common_pair_slope", 6, 20, 1);
  REQUIRE(c.found);
  CHECK(std::abs(c.root() - 8.8) <= 0.05);

  const auto d = sign_change_scan("b3star_single_slope", 6, 20, 1);
  REQUIRE(d.found);
  CHECK(std::abs(d.root() - 6.27567) <= 1e-3);

  CHECK_FALSE(sign_change_scan("b2_b4_shift", 6, 100, 1).found);
  CHECK_THROWS_AS(sign_change_scan("nope", 0, 1, 1), std::invalid_argument);
}

TEST_CASE("limits") {
  const auto e = limit_eval("b6_b5_edge_gain");
  CHECK(e.converged);
  CHECK(std::abs(e.value - 0.0389653) <= 1e-5);
  CHECK(std::abs(e.value - (std::sqrt(0.2) - std::sqrt(1.0 / 6))) <= 1e-9);
  CHECK(std::abs(limit_eval("b2star_split_bound").value + 0.0128606) <= 1e-5);
  CHECK(std::abs(limit_eval("b3dstar_common_bound").value + 0.00478432) <= 1e-5);
  CHECK(e.trace.front().first == 1e3);

  // The move bound approaches its limit like 1/sqrt(u): the ladder does not settle.
  const auto slow = limit_eval("b1_b4_move_bound");
  CHECK_FALSE(slow.converged);
  CHECK(slow.trace.size() == 10);

  for (const auto& ex : expressions()) {
    if (!ex.analytic_limit || ex.id == "b1_b4_move_bound") continue;
    const auto r = limit_eval(ex.id);
    INFO(ex.id);
    CHECK(r.converged);
    CHECK(std::abs(r.value - *ex.analytic_limit) < 1e-8);
  }
}

TEST_CASE("move bound is negative from 170 on") {
  const auto d = negative_from("b1_b4_move_bound", 6, 400);
  REQUIRE(d);
  CHECK(*d == 170);
  CHECK(expression("b1_b4_move_bound").eval(169) > 0);
}

TEST_CASE("constant table reproduces every quoted value") {
  const auto start = std::chrono::steady_clock::now();
  const auto rows = constant_table();
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 5);
  CHECK(rows.size() >= 20);
  for (const auto& r : rows) {
    INFO(r.id << " computed " << r.computed);
    CHECK(r.pass);
  }
  const auto csv = constant_table_csv(rows);
  CHECK(csv.rfind("id,paper_value,computed,abs_error,pass\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rows.size()) + 1);
}
