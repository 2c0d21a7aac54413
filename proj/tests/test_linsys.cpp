#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "arcflux/linear_system.hpp"

using namespace arcflux::linsys;
using cplx = std::complex<double>;

namespace {

Eigen::MatrixXcd random_matrix(int m, std::mt19937& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Eigen::MatrixXcd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = cplx(coef(rng), coef(rng));
  // shift the diagonal so every draw is comfortably invertible
  for (int i = 0; i < m; ++i) a(i, i) += cplx(m + 2.0, 0.0);
  return a;
}

Eigen::VectorXcd random_vector(int m, std::mt19937& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Eigen::VectorXcd b(m);
  for (int i = 0; i < m; ++i) b(i) = cplx(coef(rng), coef(rng));
  return b;
}

}  // namespace

TEST_CASE("make_system validates shapes") {
  Eigen::MatrixXcd rect = Eigen::MatrixXcd::Zero(2, 3);
  Eigen::VectorXcd b2 = Eigen::VectorXcd::Zero(2);
  CHECK_THROWS_AS(make_system(rect, b2), std::invalid_argument);

  Eigen::MatrixXcd sq = Eigen::MatrixXcd::Identity(3, 3);
  CHECK_THROWS_AS(make_system(sq, b2), std::invalid_argument);

  Eigen::MatrixXcd empty(0, 0);
  Eigen::VectorXcd bempty(0);
  CHECK_THROWS_AS(make_system(empty, bempty), std::invalid_argument);
}

TEST_CASE("make_system detects hermiticity") {
  Eigen::MatrixXcd h(2, 2);
  h << cplx(1, 0), cplx(0.5, -0.25), cplx(0.5, 0.25), cplx(3, 0);
  CHECK(make_system(h, Eigen::VectorXcd::Zero(2)).hermitian);
  CHECK(is_hermitian(h));

  Eigen::MatrixXcd g = h;
  g(0, 1) = cplx(0.5, 0.25);  // now symmetric but not hermitian
  CHECK_FALSE(make_system(g, Eigen::VectorXcd::Zero(2)).hermitian);

  // a real symmetric matrix through the real overload
  Eigen::MatrixXd s(2, 2);
  s << 1.0, -1.0 / 3.0, -1.0 / 3.0, 1.0;
  Eigen::VectorXd br(2);
  br << 1.0, 0.0;
  LinearSystem sys = make_system(s, br);
  CHECK(sys.hermitian);
  CHECK(sys.dim() == 2);
  CHECK(sys.rhs(0) == cplx(1.0, 0.0));

  Eigen::MatrixXd ns(2, 2);
  ns << 1.0, 2.0, 3.0, 4.0;
  CHECK_FALSE(make_system(ns, br).hermitian);
}

TEST_CASE("hermitian_embed block structure") {
  std::mt19937 rng(77);
  Eigen::MatrixXcd m = random_matrix(3, rng);
  Eigen::VectorXcd b = random_vector(3, rng);
  Provenance prov;
  prov.unknown_labels = {"A0", "A1", "P0"};
  LinearSystem sys = make_system(m, b, prov);
  REQUIRE_FALSE(sys.hermitian);

  LinearSystem big = hermitian_embed(sys);
  REQUIRE(big.dim() == 6);
  CHECK(big.hermitian);
  CHECK(big.matrix.topLeftCorner(3, 3).norm() == 0.0);
  CHECK(big.matrix.bottomRightCorner(3, 3).norm() == 0.0);
  CHECK((big.matrix.topRightCorner(3, 3) - m).norm() == 0.0);
  CHECK((big.matrix.bottomLeftCorner(3, 3) - m.adjoint()).norm() == 0.0);
  CHECK((big.rhs.head(3) - b).norm() == 0.0);
  CHECK(big.rhs.tail(3).norm() == 0.0);

  REQUIRE(big.provenance.unknown_labels.size() == 6);
  CHECK(big.provenance.unknown_labels[0] == "dual:A0");
  CHECK(big.provenance.unknown_labels[2] == "dual:P0");
  CHECK(big.provenance.unknown_labels[3] == "A0");
  CHECK(big.provenance.unknown_labels[5] == "P0");
  REQUIRE_FALSE(big.provenance.notes.empty());
  CHECK(big.provenance.notes.back() ==
        "hermitian embedding applied; original solution is the lower half");
}

TEST_CASE("embedded solve reproduces the direct solution") {
  // the lower half of the embedded solution solves the original system and
  // the dual upper half vanishes for invertible matrices
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = dim(rng);
    LinearSystem sys = make_system(random_matrix(m, rng), random_vector(m, rng));
    Eigen::VectorXcd direct = classical_solve(sys);

    LinearSystem big = hermitian_embed(sys);
    Eigen::VectorXcd y = classical_solve(big);
    const double scale = 1.0 + direct.norm();
    CHECK((y.tail(m) - direct).norm() <= 1e-10 * scale);
    CHECK(y.head(m).norm() <= 1e-10 * scale);
  }
}

TEST_CASE("pad_to_power_of_two") {
  std::mt19937 rng(9);
  Eigen::MatrixXcd m = random_matrix(3, rng);
  Eigen::VectorXcd b = random_vector(3, rng);
  Provenance prov;
  prov.unknown_labels = {"a", "b", "c"};
  LinearSystem sys = make_system(m, b, prov);

  LinearSystem padded = pad_to_power_of_two(sys);
  REQUIRE(padded.dim() == 4);
  CHECK((padded.matrix.topLeftCorner(3, 3) - m).norm() == 0.0);
  CHECK(padded.matrix(3, 3) == cplx(1.0, 0.0));
  CHECK(padded.matrix.row(3).head(3).norm() == 0.0);
  CHECK(padded.matrix.col(3).head(3).norm() == 0.0);
  CHECK(padded.rhs(3) == cplx(0.0, 0.0));
  REQUIRE(padded.provenance.unknown_labels.size() == 4);
  CHECK(padded.provenance.unknown_labels[3] == "pad0");
  CHECK(padded.provenance.notes.back() == "padded from dimension 3 to 4");

  // already a power of two: untouched
  Eigen::MatrixXcd eye4 = Eigen::MatrixXcd::Identity(4, 4);
  Eigen::VectorXcd ones4 = Eigen::VectorXcd::Ones(4);
  LinearSystem four = make_system(eye4, ones4);
  CHECK(pad_to_power_of_two(four).dim() == 4);
  CHECK(pad_to_power_of_two(four).provenance.notes.empty());
}

TEST_CASE("scale_spectrum maps the radius onto the band edge") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, -1.0 / 3.0, -1.0 / 3.0, 1.0;  // eigenvalues 2/3 and 4/3
  Eigen::VectorXd b(2);
  b << 1.0, 0.0;
  LinearSystem sys = make_system(m, b);

  SpectralScaling scaling;
  LinearSystem scaled = scale_spectrum(sys, &scaling);
  CHECK(scaling.spectral_radius == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(scaling.scale == doctest::Approx(0.375).epsilon(1e-14));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(scaled.matrix);
  CHECK(es.eigenvalues().cwiseAbs().maxCoeff() ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(es.eigenvalues().minCoeff() == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(scaled.provenance.notes.back() == "spectrum scaled into [-1/2, 1/2]");

  // the rhs is left alone
  CHECK((scaled.rhs - sys.rhs).norm() == 0.0);

  SUBCASE("rejects non-hermitian input") {
    Eigen::MatrixXd ns(2, 2);
    ns << 1.0, 2.0, 3.0, 4.0;
    CHECK_THROWS_AS(scale_spectrum(make_system(ns, b)), std::invalid_argument);
  }

  SUBCASE("zero matrix keeps scale 1") {
    Eigen::MatrixXcd zm = Eigen::MatrixXcd::Zero(2, 2);
    Eigen::VectorXcd zb = Eigen::VectorXcd::Ones(2);
    LinearSystem zero = make_system(zm, zb);
    SpectralScaling sc;
    scale_spectrum(zero, &sc);
    CHECK(sc.scale == 1.0);
    CHECK(sc.spectral_radius == 0.0);
  }
}

TEST_CASE("classical_solve on a known system") {
  Eigen::MatrixXd m(2, 2);
  m << 2.0, 1.0, 1.0, 3.0;
  Eigen::VectorXd b(2);
  b << 4.0, 7.0;  // solution (1, 2)
  SolveInfo info;
  Eigen::VectorXcd x = classical_solve(make_system(m, b), &info);
  CHECK(x(0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x(1).real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(x(0).imag() == 0.0);
  CHECK(info.residual_norm <= 1e-15);

  Eigen::MatrixXd d = Eigen::Vector2d(1.0, 10.0).asDiagonal();
  classical_solve(make_system(d, b), &info);
  CHECK(info.condition_number == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("classical_solve flags rank deficiency with the pivot index") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 2.0, 2.0, 4.0;  // rank 1
  Eigen::VectorXd b(2);
  b << 1.0, 2.0;
  try {
    classical_solve(make_system(m, b));
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.pivot_index() == 1);
  }

  Eigen::MatrixXcd zm = Eigen::MatrixXcd::Zero(3, 3);
  Eigen::VectorXcd zb = Eigen::VectorXcd::Ones(3);
  LinearSystem zero = make_system(zm, zb);
  try {
    classical_solve(zero);
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.pivot_index() == 0);
  }
}

TEST_CASE("condition_number") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = -4.0;
  d(1, 1) = 8.0;
  CHECK(condition_number(d) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(condition_number(Eigen::MatrixXcd::Identity(3, 3)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(condition_number(Eigen::MatrixXcd::Zero(2, 2)) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("matrix dump round trip is exact") {
  std::mt19937 rng(5150);
  Eigen::MatrixXcd m = random_matrix(3, rng);
  m(0, 1) = cplx(1.0 / 3.0, -2.0 / 7.0);  // force non-representable decimals

  std::stringstream ss;
  dump_matrix(m, ss);
  Eigen::MatrixXcd back = read_matrix(ss);
  REQUIRE(back.rows() == 3);
  // 17 significant digits survive the text round trip bit for bit
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(back(i, j) == m(i, j));

  std::stringstream bad("not-a-number\n");
  CHECK_THROWS_AS(read_matrix(bad), std::runtime_error);
  std::stringstream truncated("2\n1 0 2 0\n");
  CHECK_THROWS_AS(read_matrix(truncated), std::runtime_error);
}

TEST_CASE("prepare_for_quantum embeds, pads and scales") {
  std::mt19937 rng(31337);
  Eigen::MatrixXcd m = random_matrix(3, rng);
  Eigen::VectorXcd b = random_vector(3, rng);
  LinearSystem sys = make_system(m, b);

  PreparedSystem prep = prepare_for_quantum(sys);
  CHECK(prep.embedded);
  CHECK(prep.original_dim == 3);
  CHECK(prep.system.dim() == 8);  // 3 -> embed 6 -> pad 8
  CHECK(prep.solution_qubits() == 3);
  CHECK(prep.system.hermitian);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(prep.system.matrix,
                                                     Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().cwiseAbs().maxCoeff() <= 0.5 + 1e-12);

  // solving the prepared system classically and mapping back recovers the
  // original solution
  Eigen::VectorXcd direct = classical_solve(sys);
  Eigen::VectorXcd prepared = classical_solve(prep.system);
  double spill = 1.0;
  Eigen::VectorXcd x = prep.extract_values(prepared, &spill);
  CHECK((x - direct).norm() <= 1e-10 * (1.0 + direct.norm()));
  CHECK(spill <= 1e-20);

  Eigen::VectorXcd dir = prep.extract_direction(prepared);
  CHECK((dir * prep.scaling.scale - x).norm() == 0.0);

  Eigen::VectorXcd wrong(3);
  CHECK_THROWS_AS(prep.extract_values(wrong), std::invalid_argument);
}

TEST_CASE("prepare_for_quantum leaves hermitian systems unembedded") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, -1.0 / 3.0, -1.0 / 3.0, 1.0;
  Eigen::VectorXd b(2);
  b << 1.0, 0.0;
  PreparedSystem prep = prepare_for_quantum(make_system(m, b));
  CHECK_FALSE(prep.embedded);
  CHECK(prep.system.dim() == 2);
  CHECK(prep.solution_qubits() == 1);
  CHECK(prep.scaling.scale == doctest::Approx(0.375).epsilon(1e-14));

  Eigen::VectorXcd prepared = classical_solve(prep.system);
  Eigen::VectorXcd x = prep.extract_values(prepared);
  // direct solution of the 2x2 is (9/8, 3/8)
  CHECK(x(0).real() == doctest::Approx(1.125).epsilon(1e-12));
  CHECK(x(1).real() == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("prepare_for_quantum grows a scalar system to one qubit") {
  Eigen::MatrixXd m(1, 1);
  m << 5.0;
  Eigen::VectorXd b(1);
  b << 2.0;
  PreparedSystem prep = prepare_for_quantum(make_system(m, b));
  CHECK_FALSE(prep.embedded);
  CHECK(prep.original_dim == 1);
  CHECK(prep.system.dim() == 2);
  CHECK(prep.scaling.scale == doctest::Approx(0.1).epsilon(1e-14));

  Eigen::VectorXcd prepared = classical_solve(prep.system);
  Eigen::VectorXcd x = prep.extract_values(prepared);
  CHECK(x(0).real() == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("random hermitian systems stay unembedded through preparation") {
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXcd raw = random_matrix(4, rng);
    Eigen::MatrixXcd herm = 0.5 * (raw + raw.adjoint());
    PreparedSystem prep =
        prepare_for_quantum(make_system(herm, random_vector(4, rng)));
    CHECK_FALSE(prep.embedded);
    CHECK(prep.system.dim() == 4);
  }
}
