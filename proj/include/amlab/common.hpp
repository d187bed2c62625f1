// Shared vocabulary for the amlab library: exact numbers, errors, budgets.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace amlab {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Integers print plainly, everything else as "p/q".
std::string to_string(const Rational& value);
Rational parse_rational(std::string_view text);

enum class ErrorCode {
  Config,       // bad parameters or configuration
  Domain,       // input violates a mathematical precondition
  Budget,       // enumeration budget exceeded
  Parse,        // malformed input file or string
  Unavailable,  // requested data source does not exist for this input
  Certificate,  // a numerical certificate could not be established
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Limits that gate every brute-force computation.
struct Budget {
  std::uint64_t steps = 100'000'000;     // elementary operations per oracle
  std::uint64_t dense_cap = 2048;        // max |X| for dense operator work
  std::uint64_t shell_cap = 1'000'000;   // max shell size enumerated
  unsigned threads = 1;
};

/// Binomial coefficient as an exact integer; zero outside 0 <= k <= n.
Integer binomial(long n, long k);

/// Binomial coefficient into 64 bits; caller guarantees no overflow.
std::uint64_t binomial_u64(int n, int k);

}  // namespace amlab
