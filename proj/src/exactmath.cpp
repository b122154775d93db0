#include "pqi/exactmath.hpp"

#include <array>
#include <map>
#include <mutex>

namespace pqi {

Rational ratio(long long num, long long den) {
    if (den == 0) throw UserError("rational with zero denominator");
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

std::string rat_str(const Rational& r) { return r.get_str(); }

Rational rat_parse(const std::string& text) {
    try {
        Rational r(text);
        if (r.get_den() == 0) throw UserError("rational with zero denominator: " + text);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw UserError("bad rational literal: " + text);
    }
}

bool rat_is_int(const Rational& r) { return r.get_den() == 1; }

long long rat_to_ll(const Rational& r) {
    if (!rat_is_int(r)) throw UserError("expected an integer, got " + rat_str(r));
    if (!r.get_num().fits_slong_p()) throw UserError("integer out of range: " + rat_str(r));
    return r.get_num().get_si();
}

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::constant(int rows, int cols, const Rational& v) {
    RationalMatrix m(rows, cols);
    for (auto& x : m.a_) x = v;
    return m;
}

RationalMatrix RationalMatrix::col_vector(const std::vector<Rational>& v) {
    RationalMatrix m(int(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m.a_[i] = v[i];
    return m;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

bool RationalMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
    if (r_ != o.r_ || c_ != o.c_) throw UserError("matrix shape mismatch in addition");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& o) {
    if (r_ != o.r_ || c_ != o.c_) throw UserError("matrix shape mismatch in subtraction");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (c_ != o.r_) throw UserError("matrix shape mismatch in product");
    RationalMatrix m(r_, o.c_);
    Rational acc, term;
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < o.c_; ++j) {
            acc = 0;
            for (int k = 0; k < c_; ++k) {
                const Rational& x = at(i, k);
                if (x == 0) continue;
                term = x * o.at(k, j);
                acc += term;
            }
            m.at(i, j) = acc;
        }
    }
    return m;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
    RationalMatrix m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
    return m;
}

MatrixInverse RationalMatrix::inverse() const {
    if (r_ != c_) throw UserError("inverse of a non-square matrix");
    int n = r_;
    RationalMatrix a(*this), inv = identity(n);
    // pivot_of_col[j] = row holding the pivot of column j, or -1
    std::vector<int> pivot_of_col(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int pr = -1;
        for (int i = row; i < n; ++i)
            if (a.at(i, col) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        for (int j = 0; j < n; ++j) {
            std::swap(a.at(pr, j), a.at(row, j));
            std::swap(inv.at(pr, j), inv.at(row, j));
        }
        Rational d = a.at(row, col);
        for (int j = 0; j < n; ++j) {
            a.at(row, j) /= d;
            inv.at(row, j) /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == row || a.at(i, col) == 0) continue;
            Rational f = a.at(i, col);
            for (int j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(row, j);
                inv.at(i, j) -= f * inv.at(row, j);
            }
        }
        pivot_of_col[col] = row;
        ++row;
    }
    if (row == n) return {std::move(inv), {}};
    // Singular: the first pivotless column yields a kernel vector.
    int free_col = 0;
    while (pivot_of_col[free_col] >= 0) ++free_col;
    std::vector<Rational> kernel(n, Rational(0));
    kernel[free_col] = 1;
    for (int j = 0; j < free_col; ++j)
        if (pivot_of_col[j] >= 0) kernel[j] = -a.at(pivot_of_col[j], free_col);
    return {std::nullopt, std::move(kernel)};
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
    if (int(v.size()) != c_) throw UserError("matrix/vector shape mismatch");
    std::vector<Rational> out(r_, Rational(0));
    for (int i = 0; i < r_; ++i) {
        Rational acc = 0;
        for (int j = 0; j < c_; ++j)
            if (at(i, j) != 0 && v[j] != 0) acc += at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

namespace {

struct FieldSpec {
    int p, deg;
    std::array<int, 3> mod;  // low-first coefficients of the modulus below the leading term
};

FieldSpec field_spec(int q) {
    switch (q) {
        case 2: return {2, 1, {}};
        case 3: return {3, 1, {}};
        case 5: return {5, 1, {}};
        case 7: return {7, 1, {}};
        case 4: return {2, 2, {1, 1, 0}};  // x^2 + x + 1
        case 8: return {2, 3, {1, 1, 0}};  // x^3 + x + 1
        case 9: return {3, 2, {1, 0, 0}};  // x^2 + 1
        default: throw UserError("unsupported field order " + std::to_string(q));
    }
}

std::vector<int> digits_of(int v, int p, int deg) {
    std::vector<int> d(deg);
    for (int i = 0; i < deg; ++i, v /= p) d[i] = v % p;
    return d;
}

int index_of(const std::vector<int>& d, int p, int deg) {
    int v = 0;
    for (int i = deg - 1; i >= 0; --i) v = v * p + d[i];
    return v;
}

}  // namespace

FiniteField::FiniteField(int q) : q_(q) {
    FieldSpec spec = field_spec(q);
    p_ = spec.p;
    deg_ = spec.deg;
    addT_.resize(q * q);
    mulT_.resize(q * q);
    negT_.resize(q);
    invT_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        auto da = digits_of(a, p_, deg_);
        std::vector<int> nd(deg_);
        for (int i = 0; i < deg_; ++i) nd[i] = (p_ - da[i]) % p_;
        negT_[a] = std::uint8_t(index_of(nd, p_, deg_));
        for (int b = 0; b < q; ++b) {
            auto db = digits_of(b, p_, deg_);
            std::vector<int> sum(deg_);
            for (int i = 0; i < deg_; ++i) sum[i] = (da[i] + db[i]) % p_;
            addT_[a * q + b] = std::uint8_t(index_of(sum, p_, deg_));
            // polynomial product, then reduction by the fixed modulus
            std::vector<int> prod(2 * deg_ - 1, 0);
            for (int i = 0; i < deg_; ++i)
                for (int j = 0; j < deg_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            for (int d = 2 * deg_ - 2; d >= deg_; --d) {
                int c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                for (int i = 0; i < deg_; ++i) {
                    int lowered = d - deg_ + i;
                    prod[lowered] = (prod[lowered] + c * (p_ - spec.mod[i])) % p_;
                }
            }
            prod.resize(deg_);
            mulT_[a * q + b] = std::uint8_t(index_of(prod, p_, deg_));
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul(a, b) == 1) invT_[a] = std::uint8_t(b);
}

int FiniteField::inv(int a) const {
    if (a == 0) throw UserError("inverse of zero in GF(" + std::to_string(q_) + ")");
    return invT_[a];
}

const FiniteField& FiniteField::get(int q) {
    static std::map<int, FiniteField> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, FiniteField(q)).first;
    return it->second;
}

GfVec GfSpan::reduce(GfVec v) const {
    for (const auto& row : rows_) {
        int lead = 0;
        while (row[lead] == 0) ++lead;
        if (v[lead] == 0) continue;
        int c = v[lead];
        for (int j = 0; j < width_; ++j) v[j] = std::uint8_t(f_->sub(v[j], f_->mul(c, row[j])));
    }
    return v;
}

bool GfSpan::absorb(const GfVec& v) {
    if (int(v.size()) != width_) throw UserError("vector width mismatch");
    GfVec r = reduce(v);
    int lead = 0;
    while (lead < width_ && r[lead] == 0) ++lead;
    if (lead == width_) return false;
    int c = f_->inv(r[lead]);
    for (int j = 0; j < width_; ++j) r[j] = std::uint8_t(f_->mul(c, r[j]));
    // keep earlier rows reduced against the new one
    for (auto& row : rows_) {
        if (row[lead] == 0) continue;
        int d = row[lead];
        for (int j = 0; j < width_; ++j) row[j] = std::uint8_t(f_->sub(row[j], f_->mul(d, r[j])));
    }
    auto pos = rows_.begin();
    auto lead_of = [&](const GfVec& x) {
        int l = 0;
        while (x[l] == 0) ++l;
        return l;
    };
    while (pos != rows_.end() && lead_of(*pos) < lead) ++pos;
    rows_.insert(pos, std::move(r));
    return true;
}

bool GfSpan::contains(const GfVec& v) const {
    if (int(v.size()) != width_) throw UserError("vector width mismatch");
    GfVec r = reduce(v);
    for (int j = 0; j < width_; ++j)
        if (r[j]) return false;
    return true;
}

}  // namespace pqi
