#include "relaxlab/rational.hpp"

#include <cctype>

namespace relaxlab {

Rat::Rat(long num, long den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

bool is_int_literal(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view n = text.substr(0, slash);
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_int_literal(n) || !is_int_literal(d) || d[0] == '-' || d[0] == '+')
    throw std::invalid_argument("not an exact rational literal: '" + std::string(text) + "'");
  mpz_class num(std::string(n[0] == '+' ? n.substr(1) : n), 10);
  mpz_class den(std::string(d), 10);
  if (den == 0) throw std::domain_error("Rat: zero denominator in '" + std::string(text) + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return Rat(q);
}

std::string Rat::str() const { return v_.get_str(10); }

Rat Rat::pow(const Rat& base, long e) {
  if (e < 0) {
    if (base.is_zero()) throw std::domain_error("Rat::pow: zero to a negative power");
    return Rat(1) / pow(base, -e);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.v_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), base.v_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rat(mpq_class(n, d));
}

}  // namespace relaxlab
