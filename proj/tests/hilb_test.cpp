#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "measfield/generators.hpp"
#include "measfield/hilb.hpp"
#include "test_oracles.hpp"

using namespace measfield;

TEST_CASE("op_norm") {
  CHECK(op_norm(Operator::identity(HilbertSpace(3))) == doctest::Approx(1.0));
  CHECK(op_norm(Operator::zero(HilbertSpace(2), HilbertSpace(2))) == 0.0);

  // singular values of [[0,1],[0,0]] are {1, 0}
  Operator shift(HilbertSpace(2), HilbertSpace(2),
                 {cd(0, 0), cd(1, 0), cd(0, 0), cd(0, 0)});
  CHECK(op_norm(shift) == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(21);
  for (int n = 0; n < 25; ++n) {
    Operator a = rng.matrix(HilbertSpace(rng.uniform_int(1, 4)),
                            HilbertSpace(rng.uniform_int(1, 4)));
    CHECK(op_norm(a) ==
          doctest::Approx(oracle::power_norm(a)).epsilon(1e-9));
  }
}

TEST_CASE("adjoint") {
  Rng rng(22);
  Operator a = rng.matrix(HilbertSpace(3), HilbertSpace(2));
  CHECK(adjoint(adjoint(a)) == a);
  CHECK(adjoint(Operator::identity(HilbertSpace(2))) ==
        Operator::identity(HilbertSpace(2)));

  Operator i_mat(HilbertSpace(1), HilbertSpace(1), {cd(0, 1)});
  CHECK(adjoint(i_mat).at(0, 0) == cd(0, -1));
}

TEST_CASE("biproduct") {
  SUBCASE("zero first summand") {
    Biproduct b = biproduct(HilbertSpace(0), HilbertSpace(2));
    CHECK(b.inj2 == Operator::identity(HilbertSpace(2)));
    CHECK(b.proj2 == Operator::identity(HilbertSpace(2)));
  }
  SUBCASE("dimension count") {
    CHECK(biproduct(HilbertSpace(1), HilbertSpace(2)).space.dim == 3);
  }
  SUBCASE("equations hold exactly") {
    Rng rng(23);
    for (int n = 0; n < 20; ++n) {
      HilbertSpace h(2), k(2);
      Biproduct b = biproduct(h, k);
      CHECK(b.proj1 * b.inj1 == Operator::identity(h));
      CHECK(b.proj2 * b.inj2 == Operator::identity(k));
      CHECK(b.proj1 * b.inj2 == Operator::zero(k, h));
      CHECK(b.proj2 * b.inj1 == Operator::zero(h, k));
      CHECK(b.inj1 * b.proj1 + b.inj2 * b.proj2 ==
            Operator::identity(b.space));
    }
  }
}

TEST_CASE("kernel_of") {
  SUBCASE("zero operator has everything in its kernel") {
    Operator zero = Operator::zero(HilbertSpace(3), HilbertSpace(2));
    CHECK(kernel_of(zero, 1e-9) == Operator::identity(HilbertSpace(3)));
  }
  SUBCASE("invertible operator has trivial kernel") {
    Operator a(HilbertSpace(2), HilbertSpace(2),
               {cd(2, 0), cd(1, 0), cd(0, 0), cd(1, 0)});
    CHECK(kernel_of(a, 1e-9).cols() == 0);
  }
  SUBCASE("row vector (1,1)") {
    Operator a(HilbertSpace(2), HilbertSpace(1), {cd(1, 0), cd(1, 0)});
    Operator inc = kernel_of(a, 1e-9);
    REQUIRE(inc.cols() == 1);
    // spanned by (1,-1)/sqrt(2), up to phase
    Vector expected({cd(1.0 / std::sqrt(2.0), 0), cd(-1.0 / std::sqrt(2.0), 0)});
    CHECK(std::abs(inner(expected, inc.column(0))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(op_norm(a * inc) <= 1e-12);
  }
}

TEST_CASE("tensor") {
  CHECK(tensor(HilbertSpace(2), HilbertSpace(3)).dim == 6);

  Rng rng(24);
  Operator a = rng.matrix(HilbertSpace(2), HilbertSpace(2));
  CHECK(tensor_op(a, Operator::identity(HilbertSpace(1))) == a);

  for (int n = 0; n < 25; ++n) {
    Operator x = rng.matrix(HilbertSpace(2), HilbertSpace(2));
    Operator y = rng.matrix(HilbertSpace(2), HilbertSpace(2));
    CHECK(op_norm(tensor_op(x, y)) ==
          doctest::Approx(op_norm(x) * op_norm(y)).epsilon(1e-9));
  }
}

TEST_CASE("gram_schmidt") {
  SUBCASE("orthonormal input is a fixed point") {
    std::vector<Vector> vs{Vector({cd(1, 0), cd(0, 0)}),
                           Vector({cd(0, 0), cd(1, 0)})};
    std::vector<Vector> out = gram_schmidt(vs, 1e-9);
    REQUIRE(out.size() == 2);
    for (int i = 0; i < 2; ++i)
      CHECK((out[i] - vs[i]).norm() <= 1e-12);
  }
  SUBCASE("orthogonalization") {
    std::vector<Vector> vs{Vector({cd(1, 0), cd(0, 0)}),
                           Vector({cd(1, 0), cd(1, 0)})};
    std::vector<Vector> out = gram_schmidt(vs, 1e-9);
    REQUIRE(out.size() == 2);
    CHECK((out[0] - Vector({cd(1, 0), cd(0, 0)})).norm() <= 1e-12);
    CHECK((out[1] - Vector({cd(0, 0), cd(1, 0)})).norm() <= 1e-12);
  }
  SUBCASE("dependent vector dropped") {
    std::vector<Vector> vs{Vector({cd(1, 0), cd(0, 0)}),
                           Vector({cd(2, 0), cd(0, 0)})};
    std::vector<Vector> out = gram_schmidt(vs, 1e-9);
    REQUIRE(out.size() == 1);
    CHECK((out[0] - Vector({cd(1, 0), cd(0, 0)})).norm() <= 1e-12);
  }
}

TEST_CASE("cstar identity on random operators") {
  Rng rng(25);
  for (int n = 0; n < 60; ++n) {
    Operator a = rng.matrix(HilbertSpace(rng.uniform_int(1, 4)),
                            HilbertSpace(rng.uniform_int(1, 4)));
    double na = op_norm(a);
    if (na == 0.0) continue;
    CHECK(std::abs(op_norm(adjoint(a) * a) - na * na) <= 1e-9 * na * na);
  }
}

TEST_CASE("norm submultiplicativity on random composable pairs") {
  Rng rng(26);
  for (int n = 0; n < 60; ++n) {
    HilbertSpace h(rng.uniform_int(1, 4)), k(rng.uniform_int(1, 4)),
        l(rng.uniform_int(1, 4));
    Operator b = rng.matrix(h, k);
    Operator a = rng.matrix(k, l);
    CHECK(op_norm(a * b) <= op_norm(a) * op_norm(b) + 1e-9);
  }
}

TEST_CASE("kernel inclusion is isometric and ranks add up") {
  Rng rng(27);
  for (int n = 0; n < 40; ++n) {
    HilbertSpace src(rng.uniform_int(1, 4)), tgt(rng.uniform_int(1, 4));
    std::vector<cd> entries(static_cast<std::size_t>(src.dim) * tgt.dim);
    for (auto& e : entries) e = cd(rng.uniform_int(-2, 2), 0.0);
    Operator a(src, tgt, std::move(entries));
    Operator inc = kernel_of(a, 1e-9);
    CHECK(max_abs_diff(adjoint(inc) * inc,
                       Operator::identity(inc.source())) <= 1e-12);
    std::vector<double> sv = singular_values(a);
    double smax = sv.empty() ? 0.0 : sv.front();
    int rank = 0;
    for (double s : sv)
      if (s > 1e-9 * smax) ++rank;
    CHECK(rank + inc.cols() == src.dim);
  }
}

TEST_CASE("composition matches an independent triple loop") {
  Rng rng(28);
  for (int n = 0; n < 20; ++n) {
    HilbertSpace h(rng.uniform_int(0, 3)), k(rng.uniform_int(0, 3)),
        l(rng.uniform_int(0, 3));
    Operator b = rng.matrix(h, k);
    Operator a = rng.matrix(k, l);
    CHECK(a * b == oracle::multiply(a, b));
  }
}
