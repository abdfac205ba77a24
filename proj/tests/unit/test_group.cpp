#include <doctest.h>

#include <limits>
#include <random>

#include <heisenwave/group.hpp>

using namespace heisenwave;

namespace {

GroupPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  return {u(rng), u(rng), u(rng)};
}

void check_close(const GroupPoint& a, const GroupPoint& b, double tol) {
  CHECK(a.p == doctest::Approx(b.p).epsilon(tol));
  CHECK(a.q == doctest::Approx(b.q).epsilon(tol));
  CHECK(a.t == doctest::Approx(b.t).epsilon(tol));
}

}  // namespace

TEST_CASE("group law matches the twisted product written out by hand") {
  const GroupPoint x{1.0, 2.0, 3.0}, y{-4.0, 0.5, 7.0};
  const GroupPoint z = x * y;
  CHECK(z.p == -3.0);
  CHECK(z.q == 2.5);
  // t1 + t2 + (p1 q2 - q1 p2)/2 = 10 + (0.5 + 8)/2
  CHECK(z.t == 14.25);
}

TEST_CASE("identity, inverse and associativity") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    const GroupPoint x = random_point(rng), y = random_point(rng), z = random_point(rng);
    CHECK(x * GroupPoint{} == x);
    CHECK(x * inverse(x) == GroupPoint{});
    check_close((x * y) * z, x * (y * z), 1e-13);
  }
}

TEST_CASE("the group is not abelian and the commutator is central") {
  const GroupPoint x{1.0, 0.0, 0.0}, y{0.0, 1.0, 0.0};
  const GroupPoint c = x * y * inverse(x) * inverse(y);
  CHECK(c.p == 0.0);
  CHECK(c.q == 0.0);
  CHECK(c.t == doctest::Approx(bracket(x, y)));
  CHECK(bracket(x, y) == 1.0);
  CHECK(bracket(y, x) == -1.0);
}

TEST_CASE("dilations are automorphisms and compose multiplicatively") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const GroupPoint x = random_point(rng), y = random_point(rng);
    const Scale a(0.3 + 0.01 * i), b(1.7);
    check_close(dilate_point(a, x * y), dilate_point(a, x) * dilate_point(a, y), 1e-13);
    check_close(dilate_point(a, dilate_point(b, x)), dilate_point(Scale(a.value() * b.value()), x), 1e-14);
  }
  const GroupPoint d = dilate_point(Scale(3.0), {1.0, -1.0, 2.0});
  CHECK(d == GroupPoint{3.0, -3.0, 18.0});
}

TEST_CASE("homogeneous norm") {
  CHECK(homogeneous_norm({0.0, 0.0, 0.0}) == 0.0);
  CHECK(homogeneous_norm({0.0, 0.0, 16.0}) == doctest::Approx(4.0));
  CHECK(homogeneous_norm({2.0, 0.0, 0.0}) == doctest::Approx(2.0));
  const GroupPoint x{0.7, -1.3, 2.2};
  CHECK(homogeneous_norm(dilate_point(Scale(2.5), x)) == doctest::Approx(2.5 * homogeneous_norm(x)).epsilon(1e-14));
  CHECK(homogeneous_norm(inverse(x)) == homogeneous_norm(x));
}

TEST_CASE("Scale rejects non-positive and non-finite values") {
  CHECK_THROWS_AS(Scale(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Scale(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Scale(std::numeric_limits<double>::infinity()), std::invalid_argument);
  CHECK_THROWS_AS(Scale(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  CHECK(Scale(0.5).value() == 0.5);
}
