#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ugrowth::counting {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(long long n, long long k);

/// Natural log of a positive big integer, exact to double precision even
/// far beyond the double range.
double log_big(const BigInt& value);

/// #W(R, C): non-decreasing sequences of length R over {1..C}, binom(C+R-1, R).
BigInt count_monotone(long long length, long long alphabet);

/// Exact count of sentinel-padded monotone signed codes of length R with
/// alphabet bound C_R = n + c0 R: sum over r of 2^r binom(C_R + r - 1, r).
BigInt count_codes(long long n, long long c0, long long radius);

struct BoundValue {
  BigInt value;
  double log_per_step = 0.0;  // log(value) / R; 0 when R == 0
};

/// 2^R binom(n + R(c0+1), R), the closed-form upper bound for count_codes.
BoundValue wr_bound(long long n, long long c0, long long radius);

/// eps log(1/eps) + (1 - eps) log(1/(1 - eps)) for eps in (0, 1].
double binary_entropy(double eps);

/// log 2 + (c0+1) H(1/(c0+1)): the limit of log(wr_bound)/R.
double wr_limit(int c0);

/// log 2 + log(c0+1) + c0 log(1 + 1/c0): the expanded form of wr_limit.
double wr_limit_expanded(int c0);

/// 4^(5n - 5 + 3R) for trivalent graphs of rank n.
BigInt graph_code_count(long long rank, long long radius);

}  // namespace ugrowth::counting
