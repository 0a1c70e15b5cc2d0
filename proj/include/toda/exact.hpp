#pragma once

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>

namespace toda {

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exact element of Q(i), stored as a pair of canonical GMP rationals.
class ExactComplexRational {
 public:
  ExactComplexRational() = default;
  ExactComplexRational(long re) : re_(re) {}  // NOLINT(implicit)
  ExactComplexRational(long re, long im) : re_(re), im_(im) {}
  ExactComplexRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static ExactComplexRational i() { return {0L, 1L}; }
  static ExactComplexRational rational(long num, long den, long inum = 0, long iden = 1) {
    if (den == 0 || iden == 0) throw DivisionByZero("zero denominator");
    return {mpq_class(num, den), mpq_class(inum, iden)};
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  ExactComplexRational conj() const { return {re_, -im_}; }

  ExactComplexRational& operator+=(const ExactComplexRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ExactComplexRational& operator-=(const ExactComplexRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ExactComplexRational& operator*=(const ExactComplexRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  ExactComplexRational& operator/=(const ExactComplexRational& o) {
    if (o.is_zero()) throw DivisionByZero("division by zero in Q(i)");
    mpq_class d = o.re_ * o.re_ + o.im_ * o.im_;
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
    mpq_class m = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }

  friend ExactComplexRational operator+(ExactComplexRational a, const ExactComplexRational& b) { return a += b; }
  friend ExactComplexRational operator-(ExactComplexRational a, const ExactComplexRational& b) { return a -= b; }
  friend ExactComplexRational operator*(ExactComplexRational a, const ExactComplexRational& b) { return a *= b; }
  friend ExactComplexRational operator/(ExactComplexRational a, const ExactComplexRational& b) { return a /= b; }
  friend ExactComplexRational operator-(const ExactComplexRational& a) { return {mpq_class(-a.re_), mpq_class(-a.im_)}; }
  friend bool operator==(const ExactComplexRational& a, const ExactComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string str() const {
    if (sgn(im_) == 0) return re_.get_str();
    if (sgn(re_) == 0) return im_.get_str() + "i";
    return "(" + re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_.get_str() + "i)";
  }
  friend std::ostream& operator<<(std::ostream& os, const ExactComplexRational& q) { return os << q.str(); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

using QI = ExactComplexRational;

}  // namespace toda
