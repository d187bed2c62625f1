#include "amlab/common.hpp"

#include <string>

namespace amlab {

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(ErrorCode::Parse, "malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t slash = s.find('/');
  auto check_int = [&](const std::string& part, bool allow_sign) {
    if (part.empty()) throw bad();
    std::size_t start = (allow_sign && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (start == part.size()) throw bad();
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') throw bad();
    }
  };
  std::string num = s.substr(0, slash);
  check_int(num, true);
  if (num[0] == '+') num.erase(0, 1);
  Rational r;
  if (slash == std::string::npos) {
    r = Rational(Integer(num));
  } else {
    std::string den = s.substr(slash + 1);
    check_int(den, false);
    Integer d(den);
    if (d == 0) throw bad();
    r = Rational(Integer(num), d);
  }
  r.canonicalize();
  return r;
}

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config: return "config";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Budget: return "budget";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Unavailable: return "unavailable";
    case ErrorCode::Certificate: return "certificate";
  }
  return "unknown";
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

}  // namespace amlab
