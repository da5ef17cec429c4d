#ifndef CIQL_EXACTMATH_HPP
#define CIQL_EXACTMATH_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Exact scalar arithmetic (prime fields F_p and arbitrary-precision
// rationals) and dense matrix algebra over either field.

namespace ciql {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class math_error : public std::runtime_error {
public:
    explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Element of F_p, p < 2^31, p prime and not 2, 3 or 5. Each element
// carries its modulus; mixing moduli is a hard error.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(std::uint32_t value, std::uint32_t p) : v_(value % p), p_(p) {}

    static Fp from_int(std::int64_t value, std::uint32_t p) {
        std::int64_t r = value % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        return Fp(static_cast<std::uint32_t>(r), p);
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    Fp zero() const { return Fp(0, p_); }
    Fp one() const { return Fp(1, p_); }

    friend Fp operator+(Fp a, Fp b) {
        a.check(b);
        std::uint64_t s = std::uint64_t(a.v_) + b.v_;
        if (s >= a.p_) s -= a.p_;
        return Fp(std::uint32_t(s), a.p_);
    }
    friend Fp operator-(Fp a, Fp b) {
        a.check(b);
        std::uint64_t s = std::uint64_t(a.v_) + a.p_ - b.v_;
        if (s >= a.p_) s -= a.p_;
        return Fp(std::uint32_t(s), a.p_);
    }
    friend Fp operator*(Fp a, Fp b) {
        a.check(b);
        return Fp(std::uint32_t((std::uint64_t(a.v_) * b.v_) % a.p_), a.p_);
    }
    Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }

    // Modular inverse via extended Euclid. Division by a non-invertible
    // scalar is a hard error, never silent.
    Fp inv() const {
        if (v_ == 0) throw math_error("Fp: inverse of zero");
        std::int64_t t = 0, nt = 1;
        std::int64_t r = p_, nr = v_;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (r != 1) throw math_error("Fp: modulus not prime");
        if (t < 0) t += p_;
        return Fp(std::uint32_t(t), p_);
    }
    friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }

    Fp& operator+=(Fp b) { *this = *this + b; return *this; }
    Fp& operator-=(Fp b) { *this = *this - b; return *this; }
    Fp& operator*=(Fp b) { *this = *this * b; return *this; }

    friend bool operator==(Fp a, Fp b) { return a.p_ == b.p_ && a.v_ == b.v_; }
    friend bool operator!=(Fp a, Fp b) { return !(a == b); }

    std::string to_string() const { return std::to_string(v_); }

private:
    void check(const Fp& b) const {
        if (p_ != b.p_) throw math_error("Fp: mixed moduli");
    }
    std::uint32_t v_;
    std::uint32_t p_;
};

// Field context for F_p. Rejects p not prime and the excluded
// characteristics 2, 3 and 5.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p >= (1u << 31)) throw math_error("PrimeField: p >= 2^31");
        if (!is_prime_u32(p)) throw math_error("PrimeField: p = " + std::to_string(p) + " is not prime");
        if (p == 2 || p == 3 || p == 5)
            throw math_error("PrimeField: characteristic 2, 3 and 5 excluded");
    }
    std::uint32_t p() const { return p_; }
    Fp elem(std::int64_t v) const { return Fp::from_int(v, p_); }
    Fp zero() const { return Fp(0, p_); }
    Fp one() const { return Fp(1, p_); }

private:
    std::uint32_t p_;
};

// Arbitrary-precision rational, always in lowest terms with positive
// denominator (cpp_rational keeps that canonical form).
class Rat {
public:
    Rat() : v_(0) {}
    Rat(std::int64_t n) : v_(n) {}
    Rat(const BigInt& n) : v_(n) {}
    Rat(const BigInt& n, const BigInt& d) : v_(0) {
        if (d == 0) throw math_error("Rat: zero denominator");
        v_ = d < 0 ? BigRational(-n, -d) : BigRational(n, d);
    }
    Rat(std::int64_t n, std::int64_t d) : Rat(BigInt(n), BigInt(d)) {}
    explicit Rat(const BigRational& v) : v_(v) {}

    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(BigInt(s));
        return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    }

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }
    bool is_zero() const { return v_ == 0; }

    Rat zero() const { return Rat(); }
    Rat one() const { return Rat(1); }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(BigRational(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(BigRational(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(BigRational(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw math_error("Rat: division by zero");
        return Rat(BigRational(a.v_ / b.v_));
    }
    Rat operator-() const { return Rat(BigRational(-v_)); }
    Rat inv() const {
        if (is_zero()) throw math_error("Rat: inverse of zero");
        return Rat(BigRational(1 / v_));
    }

    Rat& operator+=(const Rat& b) { v_ += b.v_; return *this; }
    Rat& operator-=(const Rat& b) { v_ -= b.v_; return *this; }
    Rat& operator*=(const Rat& b) { v_ *= b.v_; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

    // "a" for integers, "a/b" otherwise.
    std::string to_string() const {
        std::ostringstream os;
        os << v_;
        return os.str();
    }

private:
    BigRational v_;
};

template <class F>
struct RrefResult;

// Dense matrix over one exact field, row-major.
template <class F>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const F& zero)
        : rows_(rows), cols_(cols), e_(rows * cols, zero) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<F> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows * cols) throw math_error("Matrix: entry count mismatch");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    F& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const F& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    static Matrix identity(std::size_t n, const F& one) {
        Matrix m(n, n, one.zero());
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, e_.empty() ? F() : e_[0].zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw math_error("Matrix: dimension mismatch");
        F z = a.e_.empty() ? (b.e_.empty() ? F() : b.e_[0].zero()) : a.e_[0].zero();
        Matrix c(a.rows_, b.cols_, z);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c.at(i, j) += aik * b.at(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    // Reduced row-echelon form. Pivot selection scans top to bottom for
    // the first nonzero entry, so the reduced form is deterministic.
    RrefResult<F> rref() const;

    std::size_t rank() const { return rref().rank; }

    // Basis of the right null space, each vector normalized so its first
    // nonzero entry is 1, ordered by position of free column.
    std::vector<std::vector<F>> kernel_basis() const {
        RrefResult<F> r = rref();
        std::vector<bool> is_pivot(cols_, false);
        for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
        F zero = sample().zero();
        F one = sample().one();
        std::vector<std::vector<F>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<F> v(cols_, zero);
            v[f] = one;
            for (std::size_t k = 0; k < r.pivot_cols.size(); ++k)
                v[r.pivot_cols[k]] = -r.reduced.at(k, f);
            // normalize first nonzero entry to 1
            for (auto& x : v) {
                if (!x.is_zero()) {
                    F s = x.inv();
                    for (auto& y : v) y = y * s;
                    break;
                }
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

    F det() const {
        if (rows_ != cols_) throw math_error("Matrix: determinant of non-square matrix");
        Matrix a = *this;
        F result = sample().one();
        std::size_t n = rows_;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = n;
            for (std::size_t r = col; r < n; ++r)
                if (!a.at(r, col).is_zero()) { piv = r; break; }
            if (piv == n) return sample().zero();
            if (piv != col) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
                result = -result;
            }
            result = result * a.at(col, col);
            F pinv = a.at(col, col).inv();
            for (std::size_t r = col + 1; r < n; ++r) {
                if (a.at(r, col).is_zero()) continue;
                F factor = a.at(r, col) * pinv;
                for (std::size_t j = col; j < n; ++j)
                    a.at(r, j) = a.at(r, j) - factor * a.at(col, j);
            }
        }
        return result;
    }

private:
    F sample() const {
        if (e_.empty()) throw math_error("Matrix: empty matrix has no field sample");
        return e_[0];
    }
    std::size_t rows_, cols_;
    std::vector<F> e_;
};

template <class F>
struct RrefResult {
    Matrix<F> reduced;
    std::size_t rank;
    std::vector<std::size_t> pivot_cols;
};

template <class F>
RrefResult<F> Matrix<F>::rref() const {
    Matrix a = *this;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t piv = rows_;
        for (std::size_t r = row; r < rows_; ++r)
            if (!a.at(r, col).is_zero()) { piv = r; break; }
        if (piv == rows_) continue;
        if (piv != row)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(a.at(piv, j), a.at(row, j));
        F pinv = a.at(row, col).inv();
        for (std::size_t j = col; j < cols_; ++j) a.at(row, j) = a.at(row, j) * pinv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row || a.at(r, col).is_zero()) continue;
            F factor = a.at(r, col);
            for (std::size_t j = col; j < cols_; ++j)
                a.at(r, j) = a.at(r, j) - factor * a.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    std::size_t rk = pivots.size();
    return RrefResult<F>{std::move(a), rk, std::move(pivots)};
}

}  // namespace ciql

#endif  // CIQL_EXACTMATH_HPP
