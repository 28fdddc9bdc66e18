#include "ugrowth/counting.hpp"

#include <cmath>

#include "ugrowth/error.hpp"

namespace ugrowth::counting {

BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

double log_big(const BigInt& value) {
  if (value <= 0) fail(ErrorCategory::invalid_argument, "log of a non-positive integer");
  const auto bits = static_cast<long long>(boost::multiprecision::msb(value));
  if (bits < 960) return std::log(value.convert_to<double>());
  const long long shift = bits - 900;
  const BigInt top = value >> static_cast<unsigned>(shift);
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

BigInt count_monotone(long long length, long long alphabet) {
  if (length < 0 || alphabet < 1) {
    fail(ErrorCategory::invalid_argument, "count_monotone needs R >= 0 and C >= 1");
  }
  return binomial(alphabet + length - 1, length);
}

BigInt count_codes(long long n, long long c0, long long radius) {
  if (n < 0 || c0 < 0 || radius < 0) fail(ErrorCategory::invalid_argument, "parameters must be >= 0");
  const long long bound = n + c0 * radius;
  BigInt total = 0;
  BigInt signs = 1;
  for (long long r = 0; r <= radius; ++r) {
    total += signs * binomial(bound + r - 1, r);
    signs *= 2;
  }
  return total;
}

BoundValue wr_bound(long long n, long long c0, long long radius) {
  if (n < 0 || c0 < 0 || radius < 0) fail(ErrorCategory::invalid_argument, "parameters must be >= 0");
  BoundValue out;
  out.value = BigInt(1) << static_cast<unsigned>(radius);
  out.value *= binomial(n + radius * (c0 + 1), radius);
  out.log_per_step = radius == 0 ? 0.0 : log_big(out.value) / static_cast<double>(radius);
  return out;
}

double binary_entropy(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) fail(ErrorCategory::invalid_argument, "entropy argument must lie in (0, 1]");
  if (eps == 1.0) return 0.0;
  return eps * std::log(1.0 / eps) + (1.0 - eps) * std::log(1.0 / (1.0 - eps));
}

double wr_limit(int c0) {
  return std::log(2.0) + (c0 + 1.0) * binary_entropy(1.0 / (c0 + 1.0));
}

double wr_limit_expanded(int c0) {
  const double tail = c0 == 0 ? 0.0 : c0 * std::log1p(1.0 / c0);
  return std::log(2.0) + std::log(c0 + 1.0) + tail;
}

BigInt graph_code_count(long long rank, long long radius) {
  const long long exponent = 5 * rank - 5 + 3 * radius;
  if (exponent < 0) fail(ErrorCategory::invalid_argument, "rank must be >= 1");
  return BigInt(1) << static_cast<unsigned>(2 * exponent);
}

}  // namespace ugrowth::counting
