#pragma once

// Exact arithmetic substrate: arbitrary-precision rationals (GMP-backed),
// dense rational matrices with exact inversion, and small finite fields with
// fixed, table-driven representations.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pqi/common.hpp"

namespace pqi {

// Always reduced with positive denominator (GMP canonical form), so equal
// values have identical representations.
using Rational = mpq_class;

Rational ratio(long long num, long long den = 1);
std::string rat_str(const Rational& r);       // "p" or "p/q"
Rational rat_parse(const std::string& text);  // inverse of rat_str
bool rat_is_int(const Rational& r);
long long rat_to_ll(const Rational& r);  // requires an integer that fits

struct MatrixInverse;

class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {}

    static RationalMatrix identity(int n);
    static RationalMatrix constant(int rows, int cols, const Rational& v);
    static RationalMatrix ones(int rows, int cols) { return constant(rows, cols, 1); }
    static RationalMatrix col_vector(const std::vector<Rational>& v);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rational& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const Rational& at(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    RationalMatrix transpose() const;
    bool is_zero() const;

    RationalMatrix& operator+=(const RationalMatrix& o);
    RationalMatrix& operator-=(const RationalMatrix& o);
    friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
    friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix scaled(const Rational& s) const;
    bool operator==(const RationalMatrix&) const = default;

    // Exact Gauss-Jordan elimination, pivoting on the first nonzero entry.
    MatrixInverse inverse() const;

    std::vector<Rational> apply(const std::vector<Rational>& v) const;  // A*v

  private:
    int r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

// When singular, `inv` is empty and `kernel` is a nonzero vector with
// A*kernel = 0.
struct MatrixInverse {
    std::optional<RationalMatrix> inv;
    std::vector<Rational> kernel;
};

// GF(q) for q in {2,3,4,5,7,8,9}. Element i stands for the polynomial whose
// base-p digits are its coefficients, lowest degree first. Fixed moduli:
// x^2+x+1 for q=4, x^3+x+1 for q=8, x^2+1 for q=9.
class FiniteField {
  public:
    static const FiniteField& get(int q);

    int q() const { return q_; }
    int p() const { return p_; }
    int deg() const { return deg_; }

    int add(int a, int b) const { return addT_[a * q_ + b]; }
    int mul(int a, int b) const { return mulT_[a * q_ + b]; }
    int neg(int a) const { return negT_[a]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int inv(int a) const;  // a != 0

  private:
    explicit FiniteField(int q);

    int q_, p_, deg_;
    std::vector<std::uint8_t> addT_, mulT_, negT_, invT_;
};

using GfVec = std::vector<std::uint8_t>;

// Row space over GF(q) in reduced echelon form; supports membership tests.
class GfSpan {
  public:
    GfSpan(const FiniteField& f, int width) : f_(&f), width_(width) {}

    bool absorb(const GfVec& v);  // true when the rank grew
    int rank() const { return int(rows_.size()); }
    bool contains(const GfVec& v) const;
    const std::vector<GfVec>& basis() const { return rows_; }

  private:
    GfVec reduce(GfVec v) const;

    const FiniteField* f_;
    int width_;
    std::vector<GfVec> rows_;  // sorted by leading column, leading entry 1
};

}  // namespace pqi
