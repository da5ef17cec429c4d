#ifndef CIQL_PROJGEOM_HPP
#define CIQL_PROJGEOM_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <type_traits>
#include <vector>

#include "exactmath.hpp"

// Projective points, monomial bases, evaluation matrices against
// degree-d forms, and the geometric predicates and seven-point
// classifier used by the verification drivers.

namespace ciql {

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Point of P^m with canonical representative: first nonzero coordinate
// equals 1. The zero vector is rejected.
template <class F>
class Point {
public:
    explicit Point(std::vector<F> coords) : c_(std::move(coords)) {
        std::size_t lead = c_.size();
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) { lead = i; break; }
        if (lead == c_.size()) throw math_error("Point: zero coordinate vector");
        F s = c_[lead].inv();
        for (auto& x : c_) x = x * s;
    }

    std::size_t ambient_dim() const { return c_.size() - 1; }
    const std::vector<F>& coords() const { return c_; }
    const F& operator[](std::size_t i) const { return c_[i]; }

    friend bool operator==(const Point& a, const Point& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
    friend bool operator<(const Point& a, const Point& b) {
        for (std::size_t i = 0; i < a.c_.size() && i < b.c_.size(); ++i) {
            if constexpr (std::is_same_v<F, Fp>) {
                if (a.c_[i].value() != b.c_[i].value()) return a.c_[i].value() < b.c_[i].value();
            } else {
                if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
            }
        }
        return a.c_.size() < b.c_.size();
    }

private:
    std::vector<F> c_;
};

// Ordered list of pairwise distinct points with a common ambient space.
template <class F>
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<Point<F>> pts) : pts_(std::move(pts)) {
        for (std::size_t i = 1; i < pts_.size(); ++i)
            if (pts_[i].ambient_dim() != pts_[0].ambient_dim())
                throw math_error("Configuration: mixed ambient dimensions");
        for (std::size_t i = 0; i < pts_.size(); ++i)
            for (std::size_t j = i + 1; j < pts_.size(); ++j)
                if (pts_[i] == pts_[j])
                    throw math_error("Configuration: repeated point");
    }

    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    std::size_t ambient_dim() const {
        if (pts_.empty()) throw math_error("Configuration: empty has no ambient dim");
        return pts_[0].ambient_dim();
    }
    const Point<F>& operator[](std::size_t i) const { return pts_[i]; }
    const std::vector<Point<F>>& points() const { return pts_; }

    Configuration subset(const std::vector<std::size_t>& idx) const {
        std::vector<Point<F>> s;
        s.reserve(idx.size());
        for (std::size_t i : idx) s.push_back(pts_[i]);
        return Configuration(std::move(s));
    }

private:
    std::vector<Point<F>> pts_;
};

struct Monomial {
    std::vector<int> exponents;

    int degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

    template <class F>
    F eval(const std::vector<F>& coords) const {
        F r = coords[0].one();
        for (std::size_t i = 0; i < exponents.size(); ++i)
            for (int e = 0; e < exponents[i]; ++e) r = r * coords[i];
        return r;
    }
};

// All monomials of total degree d in numVars variables, graded-lex
// order (largest exponent on the first variable first).
inline std::vector<Monomial> monomial_basis(std::size_t num_vars, int degree) {
    if (num_vars < 1) throw math_error("monomial_basis: need at least one variable");
    std::vector<Monomial> out;
    std::vector<int> exp(num_vars, 0);
    // recursive descent over exponent prefixes, highest first
    auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (pos + 1 == num_vars) {
            exp[pos] = remaining;
            out.push_back(Monomial{exp});
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            exp[pos] = e;
            self(self, pos + 1, remaining - e);
        }
    };
    rec(rec, 0, degree);
    return out;
}

// Row i holds the values of every degree-d monomial at point i. Row
// values depend on the chosen representative but ranks do not.
template <class F>
Matrix<F> evaluation_matrix(const Configuration<F>& cfg, int degree) {
    if (cfg.empty()) throw math_error("evaluation_matrix: empty configuration");
    std::size_t m = cfg.ambient_dim();
    std::vector<Monomial> basis = monomial_basis(m + 1, degree);
    Matrix<F> mat(cfg.size(), basis.size(), cfg[0][0].zero());
    for (std::size_t i = 0; i < cfg.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            mat.at(i, j) = basis[j].eval(cfg[i].coords());
    return mat;
}

template <class F>
Matrix<F> coordinate_matrix(const Configuration<F>& cfg) {
    std::size_t m = cfg.ambient_dim();
    Matrix<F> mat(cfg.size(), m + 1, cfg[0][0].zero());
    for (std::size_t i = 0; i < cfg.size(); ++i)
        for (std::size_t j = 0; j <= m; ++j) mat.at(i, j) = cfg[i][j];
    return mat;
}

template <class F>
bool imposes_independent_conditions(const Configuration<F>& cfg, int degree) {
    return evaluation_matrix(cfg, degree).rank() == cfg.size();
}

namespace detail {
// Visit all k-subsets of {0..n-1} until the visitor returns true.
inline bool any_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        if (f(idx)) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}
}  // namespace detail

// True iff some k of the points lie on a line (coordinate-matrix rank
// of the subset is at most 2). Checked per spanned line, not per
// subset, so it stays O(n^3) rank computations.
template <class F>
bool exists_k_collinear(const Configuration<F>& cfg, std::size_t k) {
    if (k < 3) throw math_error("exists_k_collinear: k must be >= 3");
    std::size_t n = cfg.size();
    if (n < k) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::size_t on_line = 2;
            for (std::size_t l = 0; l < n; ++l) {
                if (l == i || l == j) continue;
                if (coordinate_matrix(cfg.subset({i, j, l})).rank() <= 2) ++on_line;
            }
            if (on_line >= k) return true;
        }
    return false;
}

template <class F>
bool all_coplanar(const Configuration<F>& cfg) {
    if (cfg.ambient_dim() != 3) throw math_error("all_coplanar: ambient dimension must be 3");
    return coordinate_matrix(cfg).rank() <= 3;
}

namespace detail {

// Rewrite coplanar points in a 3-coordinate basis of their plane. The
// basis is the first three points when they span the plane, else a
// row-space basis of the coordinate matrix.
template <class F>
std::vector<Point<F>> plane_coordinates(const Configuration<F>& cfg) {
    Matrix<F> coords = coordinate_matrix(cfg);
    std::size_t cols = coords.cols();
    F zero = cfg[0][0].zero();

    std::vector<std::vector<F>> basis;
    if (cfg.size() >= 3 && coordinate_matrix(cfg.subset({0, 1, 2})).rank() == 3) {
        for (std::size_t i = 0; i < 3; ++i) basis.push_back(cfg[i].coords());
    } else {
        RrefResult<F> r = coords.rref();
        for (std::size_t i = 0; i < r.rank; ++i) {
            std::vector<F> row(cols, zero);
            for (std::size_t j = 0; j < cols; ++j) row[j] = r.reduced.at(i, j);
            basis.push_back(std::move(row));
        }
        while (basis.size() < 3) {
            // degenerate (collinear) input: pad with any independent row
            for (std::size_t j = 0; j < cols; ++j) {
                std::vector<F> cand(cols, zero);
                cand[j] = zero.one();
                Matrix<F> test(basis.size() + 1, cols, zero);
                for (std::size_t b = 0; b < basis.size(); ++b)
                    for (std::size_t c = 0; c < cols; ++c) test.at(b, c) = basis[b][c];
                for (std::size_t c = 0; c < cols; ++c) test.at(basis.size(), c) = cand[c];
                if (test.rank() == basis.size() + 1) { basis.push_back(cand); break; }
            }
        }
    }

    // solve point = a*b0 + b*b1 + c*b2 for each point
    std::vector<Point<F>> out;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        Matrix<F> sys(cols, 4, zero);
        for (std::size_t r = 0; r < cols; ++r) {
            for (std::size_t b = 0; b < 3; ++b) sys.at(r, b) = basis[b][r];
            sys.at(r, 3) = cfg[i][r];
        }
        RrefResult<F> red = sys.rref();
        std::vector<F> sol(3, zero);
        for (std::size_t k = 0; k < red.pivot_cols.size(); ++k) {
            if (red.pivot_cols[k] == 3)
                throw math_error("plane_coordinates: point not in plane span");
            sol[red.pivot_cols[k]] = red.reduced.at(k, 3);
        }
        out.push_back(Point<F>(sol));
    }
    return out;
}

}  // namespace detail

// True iff some 6-subset is coplanar and its 6x6 matrix of plane-conic
// monomial values is singular.
template <class F>
bool exists_six_on_plane_conic(const Configuration<F>& cfg) {
    if (cfg.ambient_dim() != 3) throw math_error("exists_six_on_plane_conic: ambient dimension must be 3");
    if (cfg.size() < 6) return false;
    return detail::any_subset(cfg.size(), 6, [&](const std::vector<std::size_t>& idx) {
        Configuration<F> six = cfg.subset(idx);
        if (coordinate_matrix(six).rank() > 3) return false;
        std::vector<Point<F>> planar = detail::plane_coordinates(six);
        Configuration<F> plane_cfg(planar);
        Matrix<F> conic = evaluation_matrix(plane_cfg, 2);  // 6x6
        return conic.det().is_zero();
    });
}

struct SevenPointClassification {
    bool independent = false;
    bool coplanar7 = false;
    bool six_on_conic = false;
    bool four_collinear = false;
};

// Flags are computed independently of one another; the dichotomy
// independent == !(coplanar7 || six_on_conic || four_collinear) is a
// tested contract, not an assumption.
template <class F>
SevenPointClassification classify_seven_points(const Configuration<F>& cfg) {
    if (cfg.size() != 7) throw math_error("classify_seven_points: need exactly 7 points");
    if (cfg.ambient_dim() != 3) throw math_error("classify_seven_points: ambient dimension must be 3");
    SevenPointClassification r;
    r.independent = imposes_independent_conditions(cfg, 2);
    r.coplanar7 = all_coplanar(cfg);
    r.six_on_conic = exists_six_on_plane_conic(cfg);
    r.four_collinear = exists_k_collinear(cfg, 4);
    return r;
}

template <class F>
bool is_hyperplanar(const Configuration<F>& cfg) {
    if (cfg.ambient_dim() != 4) throw math_error("is_hyperplanar: ambient dimension must be 4");
    return coordinate_matrix(cfg).rank() <= 4;
}

}  // namespace ciql

#endif  // CIQL_PROJGEOM_HPP
