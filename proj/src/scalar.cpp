#include "spinor_forge/scalar.hpp"

#include <stdexcept>

namespace spinor_forge {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational d = norm(o);
  if (sgn(d) == 0) throw std::domain_error("division by zero Gaussian rational");
  Rational r = (re_ * o.re_ + im_ * o.im_) / d;
  Rational i = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string GaussianRational::to_string() const {
  return "(" + rational_to_string(re_) + "," + rational_to_string(im_) + ")";
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto dot = text.find('.');
  const bool has_exp = text.find_first_of("eE") != std::string::npos;
  if (has_exp) throw std::invalid_argument("exponent notation not accepted for exact rational: " + text);
  if (dot != std::string::npos) {
    if (text.find('/') != std::string::npos) throw std::invalid_argument("malformed rational: " + text);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac = text.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("malformed rational: " + text);
    if (digits[0] == '+') digits.erase(0, 1);
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("malformed rational: " + text);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  std::string s = text;
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + text);
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  Rational r = q;  // callers may hand over an unreduced value
  r.canonicalize();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace spinor_forge
