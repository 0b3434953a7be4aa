#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

namespace {

// q exponents in units of 1/8, zeta exponents in units of 1/2
using Ser = std::map<std::pair<long, long>, Rat>;
using Scal = std::map<long, Rat>;

Ser mul(const Ser& a, const Ser& b, long qmax) {
  Ser out;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      long q = ka.first + kb.first;
      if (q >= qmax) continue;
      out[{q, ka.second + kb.second}] += va * vb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Scal at_zero(const Ser& a) {
  Scal out;
  for (const auto& [k, v] : a) out[k.first] += v;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Scal smul(const Scal& a, const Scal& b, long qmax) {
  Scal out;
  for (const auto& [ea, va] : a)
    for (const auto& [eb, vb] : b)
      if (ea + eb < qmax) out[ea + eb] += va * vb;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// a / s, valid for q < qmax - lead(s)
Ser divide(const Ser& a, const Scal& s, long qmax) {
  const long e0 = s.begin()->first;
  const Rat c0 = s.begin()->second;
  std::vector<Rat> u(qmax, Rat(0)), v(qmax, Rat(0));
  for (const auto& [e, c] : s)
    if (e - e0 < qmax) u[e - e0] = c / c0;
  v[0] = 1;
  for (long k = 1; k < qmax; ++k) {
    Rat acc = 0;
    for (long i = 1; i <= k; ++i) acc -= u[i] * v[k - i];
    v[k] = acc;
  }
  Ser out;
  for (const auto& [k, c] : a)
    for (long i = 0; k.first + i < qmax; ++i)
      if (v[i] != 0) out[{k.first + i - e0, k.second}] += c * v[i] / c0;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

// theta_2 / theta_1 (half) or theta_3 / theta_4 in halves of zeta, eighths of q
Ser theta_sum(bool half, bool alternate, long qmax) {
  Ser out;
  for (long n = -64; n <= 64; ++n) {
    long m = half ? 2 * n + 1 : 2 * n;
    long q = m * m;  // (m/2)^2 / 2 = m^2 / 8
    if (q >= qmax) continue;
    long sign = (alternate && (n % 2 != 0)) ? -1 : 1;
    out[{q, m}] += Rat(sign);
  }
  return out;
}

Coeffs2 integral(const Ser& s, long trunc) {
  Coeffs2 out;
  for (const auto& [k, v] : s) {
    if (k.first % 8 != 0 || k.second % 2 != 0) throw std::runtime_error("oracle: non-integral exponent");
    long n = k.first / 8;
    if (n < trunc) out[{n, k.second / 2}] = v;
  }
  return out;
}

}  // namespace

Coeffs2 phi_m2_1(long trunc) {
  const long qmax = 8 * trunc + 24;
  Ser t1 = theta_sum(true, true, qmax);
  Ser num = mul(t1, t1, qmax);
  Scal eta6;  // q^{1/4} prod (1 - q^n)^6
  eta6[2] = 1;
  for (long n = 1; 8 * n < qmax; ++n)
    for (int k = 0; k < 6; ++k) eta6 = smul(eta6, Scal{{0, Rat(1)}, {8 * n, Rat(-1)}}, qmax);
  return integral(divide(num, eta6, qmax), trunc);
}

Coeffs2 phi_0_1(long trunc) {
  const long qmax = 8 * trunc + 24;
  Ser acc;
  for (int i = 2; i <= 4; ++i) {
    Ser th = theta_sum(i == 2, i == 4, qmax);
    Ser sq = mul(th, th, qmax);
    Scal z = at_zero(th);
    for (const auto& [k, v] : divide(sq, smul(z, z, qmax), qmax)) acc[k] += 4 * v;
  }
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  return integral(acc, trunc);
}

std::vector<Int> delta_product(long n) {
  std::vector<Int> c(n, Int(0));
  if (n > 1) c[1] = 1;
  for (long m = 1; m < n; ++m)
    for (int k = 0; k < 24; ++k)
      for (long e = n - 1; e >= m; --e) c[e] -= c[e - m];
  return c;
}

std::vector<Int> e4_divisor_sums(long n) {
  std::vector<Int> c(n, Int(0));
  if (n > 0) c[0] = 1;
  for (long k = 1; k < n; ++k) {
    Int s = 0;
    for (long d = 1; d <= k; ++d)
      if (k % d == 0) s += Int(d) * d * d;
    c[k] = 240 * s;
  }
  return c;
}

std::vector<long> e8_counts(long n) {
  // work with w = 2v; (v,v)/2 = |w|^2 / 8; w all even or all odd, sum w = 0 mod 4
  std::vector<long> out(n, 0);
  const long maxw2 = 8 * (n - 1);
  long lim = 0;
  while ((lim + 1) * (lim + 1) <= maxw2) ++lim;
  std::function<void(int, long, long, bool)> rec = [&](int i, long norm, long sum, bool odd) {
    if (norm > maxw2) return;
    if (i == 8) {
      if (((sum % 4) + 4) % 4 == 0 && norm % 8 == 0) ++out[norm / 8];
      return;
    }
    for (long x = -lim; x <= lim; ++x) {
      if ((x % 2 != 0) != odd) continue;
      rec(i + 1, norm + x * x, sum + x, odd);
    }
  };
  rec(0, 0, 0, false);
  rec(0, 0, 0, true);
  return out;
}

std::vector<long> box_counts(const thp::IntMatrix& gram, long n, long box) {
  const std::size_t r = gram.rows();
  std::vector<long> out(n, 0), x(r, -box);
  while (true) {
    Int s = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) s += gram(i, j) * x[i] * x[j];
    if (s >= 0 && s < 2 * n) {
      if (s % 2 != 0) throw std::runtime_error("oracle: odd lattice");
      ++out[thp::to_ll(Int(s / 2))];
    }
    std::size_t k = 0;
    while (k < r && x[k] == box) x[k++] = -box;
    if (k == r) break;
    ++x[k];
  }
  return out;
}

std::complex<double> gauss_sum(const thp::Fqm& a) {
  std::complex<double> s = 0;
  for (long i = 0; i < a.size(); ++i) {
    double t = 2 * M_PI * a.q(a.elem(i)).get_d();
    s += std::complex<double>(std::cos(t), std::sin(t));
  }
  return s;
}

}  // namespace oracle
