#pragma once

// Independent reference computations. Nothing here calls into the library's series code.

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "thetaprod/exact.hpp"
#include "thetaprod/fqm.hpp"

namespace oracle {

using thp::Int;
using thp::Rat;

// c(n, r) of a two-variable series, n < trunc
using Coeffs2 = std::map<std::pair<long, long>, Rat>;

// theta quotients: theta1^2 / eta^6 and 4 sum_i theta_i(z)^2 / theta_i(0)^2
Coeffs2 phi_m2_1(long trunc);
Coeffs2 phi_0_1(long trunc);

// q prod (1 - q^n)^24, coefficients of q^0 .. q^(n-1)
std::vector<Int> delta_product(long n);
// 240 sigma_3, with constant 1
std::vector<Int> e4_divisor_sums(long n);

// E8 in the even-coordinate model (Z^8 union (Z+1/2)^8, even sum); counts of (v,v)/2 = 0 .. n-1
std::vector<long> e8_counts(long n);
// counts of x in [-box, box]^r with x G x^T / 2 = k, k = 0 .. n-1
std::vector<long> box_counts(const thp::IntMatrix& gram, long n, long box);

// sum_x e(q(x)) in floating point
std::complex<double> gauss_sum(const thp::Fqm& a);

}  // namespace oracle
