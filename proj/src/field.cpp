#include "forge/field.hpp"

#include <cstring>

#include "forge/error.hpp"

namespace forge {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p)) {
    throw Error(ErrorCode::kBadParams, "field characteristic must be a prime below 2^32, got " +
                                           std::to_string(p));
  }
  return FieldSpec(p);
}

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.rfind("gf:", 0) == 0 || text.rfind("gf ", 0) == 0) {
    try {
      return prime(std::stoull(text.substr(3)));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kBadParams, "bad field '" + text + "'");
    }
  }
  throw Error(ErrorCode::kBadParams, "bad field '" + text + "'");
}

std::string FieldSpec::to_string() const {
  return is_rational() ? std::string("q") : "gf:" + std::to_string(p_);
}

void RationalField::append_key(std::string& key, const value_type& a) {
  key += to_string(a);
  key += ',';
}

PrimeField::value_type PrimeField::from_rational(const Rational& q) const {
  if (q.get_den() != 1) {
    throw Error(ErrorCode::kNotIntegral, "entry " + to_string(q) + " is not integral");
  }
  Integer r = q.get_num() % Integer(static_cast<unsigned long>(p_));
  if (r < 0) r += static_cast<unsigned long>(p_);
  return r.get_ui();
}

void PrimeField::append_key(std::string& key, value_type a) {
  char buf[sizeof(std::uint32_t)];
  const auto v = static_cast<std::uint32_t>(a);
  std::memcpy(buf, &v, sizeof v);
  key.append(buf, sizeof buf);
}

}  // namespace forge
