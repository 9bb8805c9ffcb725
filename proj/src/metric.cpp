#include "spinphase/metric.hpp"

namespace spinphase {

const Metric& Metric::minkowski() {
  static const Metric m;
  return m;
}

int Metric::eps_upper(int a, int b, int c, int d) {
  if (a == b || a == c || a == d || b == c || b == d || c == d) return 0;
  std::array<int, 4> idx{a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (idx[i] > idx[j]) sign = -sign;
  return sign;
}

Tensor4 eps_contract_lower(const Vec4& a, const Vec4& b, const Metric& metric) {
  Tensor4 out = Tensor4::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int r = 0; r < 4; ++r)
        for (int l = 0; l < 4; ++l) out(m, n) += metric.eps_lower(m, n, r, l) * a[r] * b[l];
  return out;
}

Tensor4 eps_contract_upper(const Vec4& a, const Vec4& b, const Metric& metric) {
  const Vec4 al = metric.lower(a);
  const Vec4 bl = metric.lower(b);
  Tensor4 out = Tensor4::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) out(m, n) += Metric::eps_upper(m, n, r, s) * al[r] * bl[s];
  return out;
}

}  // namespace spinphase
