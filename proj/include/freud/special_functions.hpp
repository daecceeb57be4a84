#ifndef FREUD_SPECIAL_FUNCTIONS_HPP
#define FREUD_SPECIAL_FUNCTIONS_HPP

namespace freud {

/// log Gamma(x) for x > 0, Lanczos approximation with reflection for small
/// arguments. Relative error below 1e-13 on [1e-3, 1e6].
double log_gamma(double x);

/// c_p = Gamma(p/2) Gamma(1/2) / Gamma((p+1)/2), the constant that puts the
/// equilibrium measure of |x|^p on [-1,1]. Requires p >= 1.
double c_p(double p);

/// Real dimension of the space of N x N self-adjoint matrices over
/// R / C / H (beta = 1 / 2 / 4):  beta N(N-1)/2 + N.
long schatten_dim(int N, int beta);

/// log of c_N = |U_N(F)| / (N! |U_1(F)|^N), where |U_N(F)| is the volume of
/// the unitary group over F. Used in the Weyl integration formula.
double log_c_N(int N, int beta);

/// log Z_N^G for the quadratic potential V_G(x) = 2x^2 with weight
/// exp(-(beta N / 2) sum V_G(lambda_i)), via the Mehta-Selberg product form
/// after rescaling x = lambda sqrt(2 N beta).
double mehta_log_partition(int N, double beta);

}  // namespace freud

#endif
