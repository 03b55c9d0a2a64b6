#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "mcd/cone2.hpp"
#include "support.hpp"

using namespace mcd;
using testsupport::Rng;

namespace {

ClassVec cv(long long x, long long y) { return {Rat(x), Rat(y)}; }
ClassVec cvq(long long xn, long long xd, long long yn, long long yd) {
  return {make_rat(xn, xd), make_rat(yn, yd)};
}
Ray ray(long long u, long long v) { return Ray{Int(u), Int(v)}; }

}  // namespace

TEST_CASE("normalize reduces to the primitive direction") {
  CHECK(normalize(cv(2, 4)) == ray(1, 2));
  CHECK(normalize(cv(-3, 6)) == ray(-1, 2));
  CHECK(normalize(cvq(0, 1, 5, 2)) == ray(0, 1));
  CHECK_THROWS_WITH(normalize(cv(0, 0)), "zero class has no ray");
}

TEST_CASE("normalize is idempotent on random classes") {
  Rng rng(20240901);
  for (int i = 0; i < 10000; ++i) {
    ClassVec v = testsupport::rand_class(rng);
    Ray r = normalize(v);
    CHECK(normalize(r.class_vec()) == r);
    // positive scaling never moves the ray
    CHECK(normalize(testsupport::rand_pos_rat(rng) * v) == r);
  }
}

TEST_CASE("cross products") {
  CHECK(cross(cv(1, 0), cv(0, 1)) == 1);
  CHECK(cross(cv(1, 1), cv(2, 2)) == 0);
  CHECK(cross(cv(0, 1), cv(1, 0)) == -1);
}

TEST_CASE("cross is antisymmetric on random classes") {
  Rng rng(20240902);
  for (int i = 0; i < 10000; ++i) {
    ClassVec u = testsupport::rand_class(rng);
    ClassVec v = testsupport::rand_class(rng);
    CHECK(cross(u, v) == -cross(v, u));
  }
}

TEST_CASE("cone_hull canonical variants") {
  CHECK(cone_hull({}).kind() == ConeKind::Zero);
  CHECK(cone_hull({cv(2, 0), cv(3, 0)}) == Cone2::ray(ray(1, 0)));
  CHECK(cone_hull({cv(1, 0), cv(0, 1), cv(1, 1)}) == Cone2::wedge(ray(1, 0), ray(0, 1)));
  CHECK(cone_hull({cv(1, 0), cv(-1, 0)}) == Cone2::line(ray(1, 0)));
  CHECK(cone_hull({cv(1, 0), cv(-1, 1), cv(0, -1)}).kind() == ConeKind::Full);
  CHECK(cone_hull({cv(1, 0), cv(-1, 0), cv(0, 1)}) == Cone2::half_plane(ray(1, 0)));
  CHECK_THROWS_AS(cone_hull({cv(1, 0), cv(0, 0)}), std::invalid_argument);
}

TEST_CASE("cone_hull contains its generators and ignores order") {
  Rng rng(20240903);
  for (int i = 0; i < 10000; ++i) {
    int m = testsupport::rand_int(rng, 1, 5);
    std::vector<ClassVec> vs;
    for (int j = 0; j < m; ++j) vs.push_back(testsupport::rand_class(rng));
    Cone2 hull = cone_hull(vs);
    for (const auto& v : vs) CHECK(contains(hull, v));
    std::shuffle(vs.begin(), vs.end(), rng);
    CHECK(cone_hull(vs) == hull);
  }
}

TEST_CASE("contains") {
  Cone2 quad = Cone2::wedge(ray(1, 0), ray(0, 1));
  CHECK(contains(quad, cv(1, 1)));
  CHECK_FALSE(contains(quad, cv(-1, 1)));
  for (const Cone2& c : {Cone2::zero(), Cone2::ray(ray(1, 2)), quad,
                         Cone2::half_plane(ray(1, 0)), Cone2::line(ray(1, 1)), Cone2::full()})
    CHECK(contains(c, cv(0, 0)));
}

TEST_CASE("meets_only_at_origin") {
  Cone2 q1 = Cone2::wedge(ray(1, 0), ray(0, 1));
  Cone2 q3 = Cone2::wedge(ray(-1, 0), ray(0, -1));
  CHECK(meets_only_at_origin(q1, q3));
  CHECK_FALSE(meets_only_at_origin(q1, Cone2::ray(ray(1, 1))));
  CHECK(meets_only_at_origin(Cone2::zero(), Cone2::full()));
  CHECK_FALSE(meets_only_at_origin(Cone2::half_plane(ray(1, 0)), Cone2::half_plane(ray(-1, 0))));
}

TEST_CASE("meets_only_at_origin is symmetric on random hulls") {
  Rng rng(20240904);
  for (int i = 0; i < 10000; ++i) {
    std::vector<ClassVec> a, b;
    for (int j = 0, m = testsupport::rand_int(rng, 1, 3); j < m; ++j)
      a.push_back(testsupport::rand_class(rng));
    for (int j = 0, m = testsupport::rand_int(rng, 1, 3); j < m; ++j)
      b.push_back(testsupport::rand_class(rng));
    Cone2 ca = cone_hull(a), cb = cone_hull(b);
    CHECK(meets_only_at_origin(ca, cb) == meets_only_at_origin(cb, ca));
  }
}

TEST_CASE("succeq solves the two-generator membership exactly") {
  CHECK(succeq(cv(1, 1), cv(0, 1), cv(1, 2)));         // alpha = beta = 1
  CHECK_FALSE(succeq(cv(1, 0), cv(0, 1), cv(0, -1)));  // negative coefficient forced
  CHECK(succeq(cv(1, 7), cv(2, 3), cv(2, 3)));  // alpha = 1, beta = 0
  CHECK_THROWS_AS(succeq(cv(0, 0), cv(1, 0), cv(0, 1)), std::invalid_argument);
  // collinear D1 || A falls back to ray membership
  CHECK(succeq(cv(1, 1), cv(2, 2), cv(3, 3)));
  CHECK_FALSE(succeq(cv(1, 1), cv(2, 2), cv(1, 0)));
}

TEST_CASE("succeq is reflexive on random classes") {
  Rng rng(20240905);
  for (int i = 0; i < 10000; ++i) {
    ClassVec a = testsupport::rand_class(rng);
    ClassVec d = testsupport::rand_class(rng);
    CHECK(succeq(a, d, d));
  }
}

TEST_CASE("succeq is transitive on strictly convex triples") {
  Rng rng(20240906);
  int checked = 0;
  while (checked < 10000) {
    auto cfg = testsupport::rand_one_side(rng, 3);
    const auto& m = cfg.members;
    bool ab = succeq(cfg.ample, m[0], m[1]);
    bool bc = succeq(cfg.ample, m[1], m[2]);
    if (ab && bc) {
      CHECK(succeq(cfg.ample, m[0], m[2]));
      ++checked;
    }
  }
}

TEST_CASE("strictly_convex") {
  CHECK(strictly_convex(Cone2::wedge(ray(1, 0), ray(0, 1))));
  CHECK_FALSE(strictly_convex(Cone2::half_plane(ray(1, 0))));
  CHECK(strictly_convex(Cone2::zero()));
  CHECK(strictly_convex(Cone2::ray(ray(1, 0))));
  CHECK_FALSE(strictly_convex(Cone2::line(ray(1, 0))));
  CHECK_FALSE(strictly_convex(Cone2::full()));
}

TEST_CASE("angular_sort matches the worked orders") {
  auto sorted = angular_sort(cv(1, 0), {cv(0, 1), cv(-1, 2), cv(1, 1)});
  REQUIRE(sorted.size() == 3);
  CHECK(sorted[0] == cv(-1, 2));
  CHECK(sorted[1] == cv(0, 1));
  CHECK(sorted[2] == cv(1, 1));

  auto single = angular_sort(cv(1, 0), {cv(3, 4)});
  CHECK(single == std::vector<ClassVec>{cv(3, 4)});

  auto chain = angular_sort(cv(4, -3), {cv(1, -2), cv(3, -4), cv(2, -3)});
  CHECK(chain[0] == cv(1, -2));
  CHECK(chain[1] == cv(2, -3));
  CHECK(chain[2] == cv(3, -4));
}

TEST_CASE("angular_sort rejects unorderable configurations") {
  CHECK_THROWS_WITH(angular_sort(cv(1, 1), {cv(1, 0), cv(0, 1)}),
                    "family not >=_A-orderable against this ample class");
  CHECK_THROWS_WITH(angular_sort(cv(1, 0), {cv(0, 1), cv(0, -1)}),
                    "family not >=_A-orderable against this ample class");
  CHECK_THROWS_WITH(angular_sort(cv(1, 0), {cv(-1, 0)}),
                    "family not >=_A-orderable against this ample class");
}

TEST_CASE("angular_sort ties keep input order") {
  std::vector<ClassVec> vs{cv(0, 2), cv(1, 1), cv(0, 3), cv(0, 1)};
  auto order = angular_sort_order(cv(1, 0), vs);
  // the three multiples of (0,1) stay in positions 0, 2, 3 order
  CHECK(order == std::vector<std::size_t>{0, 2, 3, 1});
}

TEST_CASE("angular_sort is deterministic with succeq-sorted adjacency") {
  Rng rng(20240907);
  for (int i = 0; i < 10000; ++i) {
    auto cfg = testsupport::rand_one_side(rng, testsupport::rand_int(rng, 1, 6));
    auto sorted = angular_sort(cfg.ample, cfg.members);
    CHECK(angular_sort(cfg.ample, sorted) == sorted);
    for (std::size_t j = 0; j + 1 < sorted.size(); ++j)
      CHECK(succeq(cfg.ample, sorted[j], sorted[j + 1]));
  }
}

TEST_CASE("separating_ample dyadic search") {
  ClassVec a1 = separating_ample(cv(1, 0), cv(0, 1), Cone2::ray(ray(-1, 2)));
  CHECK(a1 == cvq(1, 2, 1, 1));

  ClassVec a2 = separating_ample(cv(1, 0), cv(0, 1), Cone2::zero());
  CHECK(a2 == cvq(1, 2, 1, 1));

  ClassVec a3 = separating_ample(cv(1, 1), cv(1, 0), Cone2::wedge(ray(1, 1), ray(0, 1)));
  CHECK(a3 == cvq(3, 2, 1, 2));

  CHECK_THROWS_AS(separating_ample(cv(1, 0), cv(1, 1), Cone2::wedge(ray(1, 1), ray(0, 1))),
                  std::invalid_argument);
  CHECK_THROWS_AS(separating_ample(cv(2, 2), cv(1, 1), Cone2::zero()), std::invalid_argument);
}

TEST_CASE("exact predicates agree with the floating-angle comparator") {
  Rng rng(20240908);
  int checked = 0;
  while (checked < 10000) {
    ClassVec A = testsupport::rand_class(rng);
    ClassVec d1 = testsupport::rand_class(rng);
    ClassVec d2 = testsupport::rand_class(rng);
    if (testsupport::cross_margin(d1, A) < 1e-6) continue;
    if (testsupport::cross_margin(d2, A) < 1e-6) continue;
    if (testsupport::cross_margin(d1, d2) < 1e-6) continue;
    CHECK(succeq(A, d1, d2) == testsupport::float_succeq(A, d1, d2));
    ++checked;
  }
}

TEST_CASE("sorted order agrees with descending angle distance from the ample") {
  Rng rng(20240909);
  for (int i = 0; i < 2000; ++i) {
    auto cfg = testsupport::rand_one_side(rng, testsupport::rand_int(rng, 2, 6));
    auto sorted = angular_sort(cfg.ample, cfg.members);
    double ample_angle = testsupport::angle_of(cfg.ample);
    for (std::size_t j = 0; j + 1 < sorted.size(); ++j) {
      double da = std::abs(testsupport::wrap_angle(testsupport::angle_of(sorted[j]) - ample_angle));
      double db =
          std::abs(testsupport::wrap_angle(testsupport::angle_of(sorted[j + 1]) - ample_angle));
      CHECK(da >= db - 1e-9);
    }
  }
}

TEST_CASE("hull variants agree with a floating angular-gap classifier") {
  Rng rng(20240910);
  int checked = 0;
  while (checked < 10000) {
    int m = testsupport::rand_int(rng, 1, 5);
    std::vector<ClassVec> vs;
    for (int j = 0; j < m; ++j) vs.push_back(testsupport::rand_class(rng));

    // degeneracy gauge: skip configurations with any near-collinear pair
    bool degenerate = false;
    for (int a = 0; a < m && !degenerate; ++a)
      for (int b = a + 1; b < m && !degenerate; ++b)
        if (testsupport::cross_margin(vs[static_cast<std::size_t>(a)],
                                      vs[static_cast<std::size_t>(b)]) < 1e-6 &&
            normalize(vs[static_cast<std::size_t>(a)]) != normalize(vs[static_cast<std::size_t>(b)]))
          degenerate = true;
    if (degenerate) continue;

    std::vector<double> angles;
    for (const auto& v : vs) angles.push_back(testsupport::angle_of(v));
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                 angles.end());
    double max_gap = 0;
    for (std::size_t j = 0; j < angles.size(); ++j) {
      double next = j + 1 < angles.size() ? angles[j + 1] : angles[0] + 2 * M_PI;
      max_gap = std::max(max_gap, next - angles[j]);
    }
    ConeKind expected;
    if (angles.size() == 1)
      expected = ConeKind::Ray;
    else if (angles.size() == 2 && std::abs(max_gap - M_PI) < 1e-9)
      expected = ConeKind::Line;
    else if (max_gap > M_PI + 1e-9)
      expected = ConeKind::Wedge;
    else if (std::abs(max_gap - M_PI) < 1e-9)
      expected = ConeKind::HalfPlane;
    else
      expected = ConeKind::Full;
    CHECK(cone_hull(vs).kind() == expected);
    ++checked;
  }
}
