#pragma once

namespace test_support {

// Second transcription of the right-hand side, written term by term from the
// printed two-line display with long double and no shared helpers.
inline long double reference_bound(long double n, long double m, long double delta, long double eps, long double eps1,
                            long double eps2, long double ratio, long double p, long double C) {
  const long double dn = (delta - (eps1 / eps) * (eps1 / eps) - p + eps2) / (C * ratio);
  const long double one_minus = 1.0L - 1.0L / n;
  long double line1 = 1.0L / (dn * dn);
  line1 /= (1.0L - eps) * (1.0L - eps) * (1.0L - eps);
  line1 /= one_minus * one_minus * one_minus;
  line1 *= n / (m * m * m) + (n * n) / (m * m * m);
  line1 *= 15.0L * m * m * m / (n * n * n) + 25.0L * m * m / (n * n) + m / n;

  long double brace = 0.0L;
  brace += one_minus / (n * n * n * m * m * m);
  brace += one_minus * one_minus * one_minus * one_minus / (m * m * m);
  brace += (m - 1.0L) * one_minus * one_minus / (n * m * m * m);
  brace += 4.0L * (n - 1.0L) / (n * n * n * m);
  brace += 1.0L / (m * m);
  brace -= 1.0L / (n * m * m);
  brace += (n - 1.0L) / (n * n * n * m * m * m);
  brace += 4.0L * (n - 1.0L) / (n * n * m * m * m);
  brace -= one_minus * one_minus / (m * m);
  const long double line2 = (1.0L / (eps * eps)) * (m * m / one_minus) * brace;
  return line1 + line2;
}

}  // namespace test_support
