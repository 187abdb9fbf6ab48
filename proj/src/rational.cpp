#include "forge/rational.hpp"

#include <algorithm>
#include <cctype>

#include "forge/error.hpp"

namespace forge {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kDependentBasis: return "DependentBasis";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kVertexMismatch: return "VertexMismatch";
    case ErrorCode::kUnknownElement: return "UnknownElement";
    case ErrorCode::kNotIntegral: return "NotIntegral";
    case ErrorCode::kOverlap: return "OverlapError";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kEmptyMatroid: return "EmptyMatroid";
    case ErrorCode::kLabelMismatch: return "LabelMismatch";
    case ErrorCode::kInvalidTree: return "InvalidTree";
    case ErrorCode::kInvalidTrace: return "InvalidTrace";
    case ErrorCode::kNoCircuits: return "NoCircuits";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kBudgetOpen: return "BudgetOpen";
    case ErrorCode::kNotBipartition: return "NotBipartition";
    case ErrorCode::kBoxTooSmall: return "BoxTooSmall";
    case ErrorCode::kVerificationFailed: return "VerificationFailed";
    case ErrorCode::kBadParams: return "BadParams";
  }
  return "Unknown";
}

std::size_t bit_length(const Integer& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

Integer parse_integer(std::string_view s) {
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view token) {
  const auto slash = token.find('/');
  const auto num_part = token.substr(0, slash);
  if (!is_integer_token(num_part)) {
    throw Error(ErrorCode::kParseError, "bad numerator in '" + std::string(token) + "'");
  }
  Rational q;
  q.get_num() = parse_integer(num_part);
  q.get_den() = 1;
  if (slash != std::string_view::npos) {
    const auto den_part = token.substr(slash + 1);
    if (!is_integer_token(den_part)) {
      throw Error(ErrorCode::kParseError, "bad denominator in '" + std::string(token) + "'");
    }
    Integer den = parse_integer(den_part);
    if (den == 0) {
      throw Error(ErrorCode::kParseError, "zero denominator in '" + std::string(token) + "'");
    }
    q.get_den() = den;
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

IntVector canonical_primitive(IntVector v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) return v;
  const auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : v) x /= g;
  return v;
}

IntVector integral_primitive(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& q : v) den = lcm(den, q.get_den());
  IntVector out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_num() * (den / q.get_den()));
  Integer g = 0;
  for (const auto& x : out) g = gcd(g, x);
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

}  // namespace forge
