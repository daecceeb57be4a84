#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "freud/quadrature.hpp"
#include "freud/special_functions.hpp"

using namespace freud;

namespace {

// independent oracle: Gaussian-ensemble partition function at N=2 by direct
// 2-D quadrature, inner integral split at the |l1-l2|^beta kink
double z2_bruteforce(double beta) {
  const double c = 2.0 * beta;  // weight exp(-c lambda^2) per particle
  const double L = std::max(6.0, 7.0 / std::sqrt(c));
  auto inner = [&](double l2) {
    auto f = [&](double l1) {
      return std::pow(std::abs(l1 - l2), beta) * std::exp(-c * l1 * l1);
    };
    return adaptive_gk(f, -L, l2, 1e-13, 1e-11) + adaptive_gk(f, l2, L, 1e-13, 1e-11);
  };
  return adaptive_gk([&](double l2) { return inner(l2) * std::exp(-c * l2 * l2); }, -L,
                     L, 1e-12, 1e-10);
}

double fg_minus1_oracle(double beta) {
  return (0.5 - 1.0 / beta) * (std::log(beta / 2.0) + std::log(2.0)) - 0.5 / beta -
         0.25 + std::log(2.0 * M_PI / std::exp(std::lgamma(beta / 2.0))) / beta;
}

double mehta_expansion_residual(int N, double beta) {
  const double predicted = -beta / 2.0 * (0.75 + std::log(2.0)) * N * N +
                           beta / 2.0 * N * std::log(static_cast<double>(N)) +
                           fg_minus1_oracle(beta) * beta * N;
  return mehta_log_partition(N, beta) - predicted;
}

}  // namespace

TEST_CASE("log_gamma matches reference values and std::lgamma") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  for (double x = 1e-3; x < 1.1e6; x *= 3.7) {
    const double ref = std::lgamma(x);
    CHECK(std::abs(log_gamma(x) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
  }
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-2.5), std::domain_error);
}

TEST_CASE("log_gamma satisfies the recurrence on a grid") {
  for (double x = 0.1; x <= 50.0; x += 0.1) {
    const double lhs = log_gamma(x + 1.0);
    const double rhs = log_gamma(x) + std::log(x);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("c_p closed-form values") {
  CHECK(c_p(2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c_p(1.0) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(c_p(4.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(c_p(0.9), std::domain_error);
}

TEST_CASE("c_p is continuous and decreasing on [1,8]") {
  double prev = c_p(1.0);
  for (double p = 1.05; p <= 8.0; p += 0.05) {
    const double cur = c_p(p);
    CHECK(cur < prev);
    CHECK(std::abs(cur - prev) < 0.2);
    prev = cur;
  }
}

TEST_CASE("schatten_dim") {
  CHECK(schatten_dim(2, 2) == 4);
  CHECK(schatten_dim(1, 1) == 1);
  CHECK(schatten_dim(3, 4) == 15);
}

TEST_CASE("log_c_N at N=1 is zero for each beta") {
  for (int beta : {1, 2, 4}) CHECK(std::abs(log_c_N(1, beta)) <= 1e-12);
}

TEST_CASE("log_c_N regression at N=2, beta=2") {
  // c_2 = |U_2(C)| / (2! |U_1(C)|^2) = (2 pi)^3 / (2 (2 pi)^2) = pi
  CHECK(log_c_N(2, 2) == doctest::Approx(std::log(M_PI)).epsilon(1e-13));
}

TEST_CASE("mehta_log_partition exact small-N values") {
  CHECK(mehta_log_partition(1, 3.0) ==
        doctest::Approx(0.5 * std::log(M_PI / 3.0)).epsilon(1e-13));
  // N=1 is a plain Gaussian integral for every beta
  for (double beta : {0.5, 1.0, 2.0, 4.0}) {
    CHECK(mehta_log_partition(1, beta) ==
          doctest::Approx(0.5 * std::log(M_PI / beta)).epsilon(1e-13));
  }
}

TEST_CASE("mehta_log_partition matches 2-D brute-force quadrature") {
  for (double beta : {0.5, 1.0, 2.0, 4.0}) {
    const double oracle = std::log(z2_bruteforce(beta));
    CHECK(mehta_log_partition(2, beta) == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("mehta_log_partition matches the free-energy expansion for large N") {
  for (double beta : {1.0, 2.0}) {
    std::vector<double> scaled;
    for (int N : {64, 128, 256, 512})
      scaled.push_back(std::abs(mehta_expansion_residual(N, beta)) / N);
    CHECK(scaled[0] > scaled[1]);
    CHECK(scaled[1] > scaled[2]);
    CHECK(scaled[2] > scaled[3]);
    CHECK(scaled[3] < 0.05);
  }
  // spec example: N=200, beta=1 residual already o(N)-small
  CHECK(std::abs(mehta_expansion_residual(200, 1.0)) / 200.0 <
        std::abs(mehta_expansion_residual(100, 1.0)) / 100.0);
}
