#ifndef CIQL_TAUTCALC_HPP
#define CIQL_TAUTCALC_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exactmath.hpp"

// Symbolic graded calculus over exact rationals for tautological
// classes: Chern-class arithmetic, Whitney quotients, Chern character /
// Todd / pushforward expansions, symmetric squares, line twists,
// Porteous classes and the relation table.

namespace ciql {

struct Gen {
    std::string name;
    int degree;

    friend bool operator<(const Gen& a, const Gen& b) { return a.name < b.name; }
    friend bool operator==(const Gen& a, const Gen& b) { return a.name == b.name; }
};

inline Gen psi_gen(int i) { return Gen{"psi" + std::to_string(i), 1}; }
inline Gen lambda_gen(int j) {
    if (j < 1 || j > 5) throw math_error("lambda generators are capped at lambda5");
    return Gen{"lambda" + std::to_string(j), j};
}
inline Gen kappa_gen(int j) {
    if (j < 1) throw math_error("kappa0 is eliminated at construction (scalar 2g-2)");
    return Gen{"kappa" + std::to_string(j), j};
}
inline Gen chern_gen(const std::string& name, int degree) { return Gen{name, degree}; }

// Monomial: sorted (generator, exponent) pairs, exponents positive.
using GradedMono = std::vector<std::pair<Gen, int>>;

inline int mono_degree(const GradedMono& m) {
    int d = 0;
    for (const auto& [g, e] : m) d += g.degree * e;
    return d;
}

// Truncated graded polynomial with rational coefficients. Arithmetic
// silently drops degrees above the truncation bound; zero coefficients
// are never stored.
class GradedPoly {
public:
    explicit GradedPoly(int truncation) : n_(truncation) {}

    static GradedPoly constant(const Rat& c, int truncation) {
        GradedPoly p(truncation);
        p.add_term({}, c);
        return p;
    }
    static GradedPoly generator(const Gen& g, int truncation) {
        GradedPoly p(truncation);
        p.add_term({{g, 1}}, Rat(1));
        return p;
    }

    int truncation() const { return n_; }
    const std::map<GradedMono, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    Rat constant_term() const {
        auto it = t_.find({});
        return it == t_.end() ? Rat() : it->second;
    }

    void add_term(const GradedMono& m, const Rat& c) {
        if (c.is_zero() || mono_degree(m) > n_) return;
        auto [it, inserted] = t_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) {
        GradedPoly r = a;
        for (const auto& [m, c] : b.t_) r.add_term(m, c);
        return r;
    }
    friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) {
        GradedPoly r = a;
        for (const auto& [m, c] : b.t_) r.add_term(m, -c);
        return r;
    }
    GradedPoly operator-() const {
        GradedPoly r(n_);
        for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
        return r;
    }
    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
        GradedPoly r(std::min(a.n_, b.n_));
        for (const auto& [ma, ca] : a.t_) {
            int da = mono_degree(ma);
            for (const auto& [mb, cb] : b.t_) {
                if (da + mono_degree(mb) > r.n_) continue;
                r.add_term(merge(ma, mb), ca * cb);
            }
        }
        return r;
    }
    friend GradedPoly operator*(const Rat& c, const GradedPoly& a) {
        GradedPoly r(a.n_);
        if (c.is_zero()) return r;
        for (const auto& [m, k] : a.t_) r.t_.emplace(m, c * k);
        return r;
    }

    GradedPoly pow(int e) const {
        GradedPoly r = constant(Rat(1), n_);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    GradedPoly graded_part(int d) const {
        GradedPoly r(n_);
        for (const auto& [m, c] : t_)
            if (mono_degree(m) == d) r.t_.emplace(m, c);
        return r;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& [m, c] : t_) d = std::max(d, mono_degree(m));
        return d;
    }

    bool is_homogeneous(int d) const {
        for (const auto& [m, c] : t_)
            if (mono_degree(m) != d) return false;
        return true;
    }

    // Replace generators by polynomials; unmapped generators persist.
    GradedPoly substitute(const std::map<std::string, GradedPoly>& subs) const {
        GradedPoly r(n_);
        for (const auto& [m, c] : t_) {
            GradedPoly term = constant(c, n_);
            for (const auto& [g, e] : m) {
                auto it = subs.find(g.name);
                GradedPoly factor = it != subs.end() ? it->second : generator(g, n_);
                term = term * factor.pow(e);
            }
            r = r + term;
        }
        return r;
    }

    friend bool operator==(const GradedPoly& a, const GradedPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const GradedPoly& a, const GradedPoly& b) { return !(a == b); }

    // Canonical text: degree ascending, graded-reverse-lex within a
    // degree (generator order = name order).
    std::string to_string() const;

private:
    static GradedMono merge(const GradedMono& a, const GradedMono& b) {
        GradedMono r;
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                r.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                r.push_back(b[j++]);
            } else {
                r.emplace_back(a[i].first, a[i].second + b[j].second);
                ++i; ++j;
            }
        }
        return r;
    }

    int n_;
    std::map<GradedMono, Rat> t_;
};

namespace detail {

// grevlex comparison: a > b when the last nonzero entry of a-b over the
// combined variable list (name order) is negative.
inline bool grevlex_greater(const GradedMono& a, const GradedMono& b) {
    std::vector<std::string> vars;
    for (const auto& [g, e] : a) vars.push_back(g.name);
    for (const auto& [g, e] : b) vars.push_back(g.name);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    auto exp_of = [](const GradedMono& m, const std::string& v) {
        for (const auto& [g, e] : m)
            if (g.name == v) return e;
        return 0;
    };
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        int d = exp_of(a, *it) - exp_of(b, *it);
        if (d != 0) return d < 0;
    }
    return false;
}

}  // namespace detail

inline std::string GradedPoly::to_string() const {
    if (t_.empty()) return "0";
    std::vector<std::pair<GradedMono, Rat>> ordered(t_.begin(), t_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
        int dx = mono_degree(x.first), dy = mono_degree(y.first);
        if (dx != dy) return dx < dy;
        return detail::grevlex_greater(x.first, y.first);
    });
    std::string out;
    bool first = true;
    for (const auto& [m, c] : ordered) {
        Rat abs = c.num() < 0 ? -c : c;
        bool neg = c.num() < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string coef = abs.to_string();
        if (m.empty()) {
            out += coef;
            continue;
        }
        bool wrote = false;
        if (coef != "1") {
            out += coef;
            wrote = true;
        }
        for (const auto& [g, e] : m) {
            if (wrote) out += "*";
            out += g.name;
            if (e > 1) out += "^" + std::to_string(e);
            wrote = true;
        }
    }
    return out;
}

// Graded polynomial with constant term exactly 1.
class TotalClass {
public:
    explicit TotalClass(GradedPoly p, std::optional<int> declared_rank = std::nullopt)
        : p_(std::move(p)), rank_(declared_rank) {
        if (p_.constant_term() != Rat(1))
            throw math_error("TotalClass: constant term must be 1");
    }
    static TotalClass one(int truncation) {
        return TotalClass(GradedPoly::constant(Rat(1), truncation));
    }

    const GradedPoly& poly() const { return p_; }
    std::optional<int> declared_rank() const { return rank_; }
    int truncation() const { return p_.truncation(); }
    GradedPoly chern(int i) const { return p_.graded_part(i); }

    friend bool operator==(const TotalClass& a, const TotalClass& b) { return a.p_ == b.p_; }

private:
    GradedPoly p_;
    std::optional<int> rank_;
};

// Multiplicative inverse of a total class modulo degree > N, by the
// geometric series in the positive-degree part.
inline TotalClass total_class_inverse(const TotalClass& c, int truncation) {
    GradedPoly one = GradedPoly::constant(Rat(1), truncation);
    GradedPoly a = c.poly() - one;  // positive degrees only
    GradedPoly inv = one;
    GradedPoly power = one;
    for (int k = 1; k <= truncation; ++k) {
        power = power * (-a);
        if (power.is_zero()) break;
        inv = inv + power;
    }
    return TotalClass(inv);
}

// c(quotient) with c(sub) * result = c(total) mod degree > N.
inline TotalClass whitney_quotient(const TotalClass& c_total, const TotalClass& c_sub,
                                   int truncation) {
    return TotalClass(c_total.poly() * total_class_inverse(c_sub, truncation).poly());
}

inline Rat factorial_rat(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rat(f);
}

inline Rat binomial_rat(int n, int k) {
    if (k < 0 || k > n) return Rat(0);
    BigInt r = 1;
    for (int i = 0; i < k; ++i) { r *= (n - i); r /= (i + 1); }
    return Rat(r);
}

// Newton-identity conversion: ch_0 = rank, ch_m = p_m / m! with
// p_m = sum_{i<m} (-1)^{i-1} e_i p_{m-i} + (-1)^{m-1} m e_m.
inline std::vector<GradedPoly> chern_to_character(const TotalClass& c, int rank, int truncation) {
    std::vector<GradedPoly> ch;
    ch.push_back(GradedPoly::constant(Rat(rank), truncation));
    std::vector<GradedPoly> power_sums(truncation + 1, GradedPoly(truncation));
    for (int m = 1; m <= truncation; ++m) {
        GradedPoly pm(truncation);
        for (int i = 1; i < m; ++i) {
            GradedPoly term = c.chern(i) * power_sums[m - i];
            pm = (i % 2 == 1) ? pm + term : pm - term;
        }
        GradedPoly last = Rat(m) * c.chern(m);
        pm = (m % 2 == 1) ? pm + last : pm - last;
        power_sums[m] = pm;
        ch.push_back(factorial_rat(m).inv() * pm);
    }
    return ch;
}

// Exact inverse of chern_to_character up to the truncation bound.
inline TotalClass character_to_chern(const std::vector<GradedPoly>& ch, int truncation) {
    std::vector<GradedPoly> e(truncation + 1, GradedPoly(truncation));
    std::vector<GradedPoly> power_sums(truncation + 1, GradedPoly(truncation));
    GradedPoly total = GradedPoly::constant(Rat(1), truncation);
    for (int m = 1; m <= truncation; ++m) {
        power_sums[m] = m < int(ch.size()) ? factorial_rat(m) * ch[m] : GradedPoly(truncation);
        GradedPoly rhs = power_sums[m];
        for (int i = 1; i < m; ++i) {
            GradedPoly term = e[i] * power_sums[m - i];
            rhs = (i % 2 == 1) ? rhs - term : rhs + term;
        }
        Rat sign = (m % 2 == 1) ? Rat(1) : Rat(-1);
        e[m] = (sign / Rat(m)) * rhs;
        total = total + e[m];
    }
    return TotalClass(total);
}

// Truncated series in the formal symbol K = c1(omega_f), with rational
// coefficients.
struct KSeries {
    std::vector<Rat> coeffs;  // index = power of K

    static KSeries exponential(int k, int truncation) {
        KSeries s;
        s.coeffs.resize(truncation + 1);
        for (int n = 0; n <= truncation; ++n)
            s.coeffs[n] = Rat(BigInt(boost::multiprecision::pow(BigInt(k), unsigned(n)))) /
                          factorial_rat(n);
        return s;
    }

    friend KSeries operator*(const KSeries& a, const KSeries& b) {
        KSeries r;
        std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
        r.coeffs.assign(n, Rat());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; i + j < n; ++j)
                r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        return r;
    }
};

// Exact Bernoulli-derived coefficients of y/(1 - e^{-y}) through y^12,
// i.e. B_n/n! with B_1 = +1/2.
inline const std::vector<Rat>& todd_coefficient_table() {
    static const std::vector<Rat> table = {
        Rat(1),           Rat(1, 2),        Rat(1, 12),       Rat(0),
        Rat(-1, 720),     Rat(0),           Rat(1, 30240),    Rat(0),
        Rat(-1, 1209600), Rat(0),           Rat(1, 47900160), Rat(0),
        Rat(BigInt(-691), BigInt("1307674368000"))};
    return table;
}

// Td of a line bundle with first Chern class sign*K: series of
// y/(1 - e^{-y}) with y = sign*K. sign = -1 gives Td(omega^dual).
inline KSeries todd_of_line_bundle(int sign, int truncation) {
    if (truncation > 12) throw math_error("todd_of_line_bundle: coefficient table ends at degree 12");
    if (sign != 1 && sign != -1) throw math_error("todd_of_line_bundle: sign must be +1 or -1");
    KSeries s;
    s.coeffs.resize(truncation + 1);
    const auto& table = todd_coefficient_table();
    for (int n = 0; n <= truncation; ++n)
        s.coeffs[n] = (sign == 1 || n % 2 == 0) ? table[n] : -table[n];
    return s;
}

// Linear pushforward rule K^{m+1} -> kappa_m (kappa_0 = 2g-2, K^0 -> 0)
// applied to the degree-(m+1) coefficient.
inline GradedPoly push_forward_k_power(const KSeries& s, int power, int genus, int truncation) {
    if (power < 1 || power >= int(s.coeffs.size())) return GradedPoly(truncation);
    const Rat& c = s.coeffs[power];
    if (power == 1) return GradedPoly::constant(c * Rat(2 * genus - 2), truncation);
    return c * GradedPoly::generator(kappa_gen(power - 1), truncation);
}

// ch_m(f_* omega^k) for k >= 2: pushforward of e^{kK} * Td(omega^dual).
// The f_*(omega^dual) correction vanishes for k >= 2.
inline std::vector<GradedPoly> grr_pushforward_omega_power(int k, int genus, int truncation) {
    if (k < 2) throw math_error("grr_pushforward_omega_power: requires k >= 2");
    KSeries integrand = KSeries::exponential(k, truncation + 1) *
                        todd_of_line_bundle(-1, truncation + 1);
    std::vector<GradedPoly> ch;
    for (int m = 0; m <= truncation; ++m)
        ch.push_back(push_forward_k_power(integrand, m + 1, genus, truncation));
    return ch;
}

// c_k(E tensor L) = sum_i binom(rank-i, k-i) x^{k-i} c_i(E) for a line
// bundle with first Chern class x.
inline TotalClass twist_by_line(const TotalClass& c, int rank, const GradedPoly& x,
                                int truncation) {
    if (!x.is_homogeneous(1)) throw math_error("twist_by_line: twist class must have degree 1");
    GradedPoly out = GradedPoly::constant(Rat(1), truncation);
    for (int k = 1; k <= truncation; ++k) {
        GradedPoly ck(truncation);
        for (int i = 0; i <= k; ++i) {
            Rat binom = binomial_rat(rank - i, k - i);
            if (binom.is_zero()) continue;
            ck = ck + binom * (x.pow(k - i) * c.chern(i));
        }
        out = out + ck;
    }
    return TotalClass(out, rank);
}

// ---------------------------------------------------------------------
// Polynomials in r formal Chern roots, for splitting-principle work.

using RootMono = std::vector<int>;  // exponent per root variable

class RootPoly {
public:
    explicit RootPoly(std::size_t num_roots) : r_(num_roots) {}

    static RootPoly zero(std::size_t num_roots) { return RootPoly(num_roots); }
    static RootPoly constant(const Rat& c, std::size_t num_roots) {
        RootPoly p(num_roots);
        p.add_term(RootMono(num_roots, 0), c);
        return p;
    }
    static RootPoly variable(std::size_t i, std::size_t num_roots) {
        RootPoly p(num_roots);
        RootMono m(num_roots, 0);
        m[i] = 1;
        p.add_term(m, Rat(1));
        return p;
    }

    std::size_t num_roots() const { return r_; }
    const std::map<RootMono, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const RootMono& m, const Rat& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = t_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    friend RootPoly operator+(const RootPoly& a, const RootPoly& b) {
        RootPoly r = a;
        for (const auto& [m, c] : b.t_) r.add_term(m, c);
        return r;
    }
    friend RootPoly operator-(const RootPoly& a, const RootPoly& b) {
        RootPoly r = a;
        for (const auto& [m, c] : b.t_) r.add_term(m, -c);
        return r;
    }
    friend RootPoly operator*(const RootPoly& a, const RootPoly& b) {
        RootPoly r(a.r_);
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) {
                RootMono m(a.r_);
                for (std::size_t i = 0; i < a.r_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    friend RootPoly operator*(const Rat& c, const RootPoly& a) {
        RootPoly r(a.r_);
        for (const auto& [m, k] : a.t_) r.add_term(m, c * k);
        return r;
    }

    RootPoly swap_vars(std::size_t i, std::size_t j) const {
        RootPoly r(r_);
        for (const auto& [m, c] : t_) {
            RootMono s = m;
            std::swap(s[i], s[j]);
            r.add_term(s, c);
        }
        return r;
    }

    bool is_symmetric() const {
        for (std::size_t i = 0; i + 1 < r_; ++i)
            if (!(swap_vars(i, i + 1) == *this)) return false;
        return true;
    }

    Rat eval(const std::vector<Rat>& values) const {
        Rat acc;
        for (const auto& [m, c] : t_) {
            Rat term = c;
            for (std::size_t i = 0; i < r_; ++i)
                for (int e = 0; e < m[i]; ++e) term *= values[i];
            acc += term;
        }
        return acc;
    }

    friend bool operator==(const RootPoly& a, const RootPoly& b) { return a.t_ == b.t_; }

private:
    std::size_t r_;
    std::map<RootMono, Rat> t_;
};

inline RootPoly elementary_symmetric(std::size_t k, std::size_t num_roots) {
    RootPoly acc = RootPoly::zero(num_roots);
    std::vector<std::size_t> idx(k);
    if (k == 0) return RootPoly::constant(Rat(1), num_roots);
    if (k > num_roots) return acc;
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        RootMono m(num_roots, 0);
        for (std::size_t i : idx) m[i] = 1;
        acc.add_term(m, Rat(1));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == num_roots - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return acc;
}

// A polynomial in the elementary symmetric generators e_1..e_r.
struct SymmetricReduction {
    std::map<std::vector<int>, Rat> terms;  // exponent of e_1..e_r -> coefficient
};

// Rewrite a symmetric polynomial in the elementary symmetric basis by
// lex-leading-term elimination. Non-symmetric input is rejected.
inline SymmetricReduction symmetric_reduce(RootPoly p) {
    if (!p.is_symmetric()) throw math_error("symmetric_reduce: input is not symmetric");
    std::size_t r = p.num_roots();
    std::vector<RootPoly> elem;
    for (std::size_t k = 0; k <= r; ++k) elem.push_back(elementary_symmetric(k, r));
    SymmetricReduction out;
    while (!p.is_zero()) {
        // lex-leading term: largest exponent vector
        auto lead = std::prev(p.terms().end());
        RootMono lambda = lead->first;
        Rat coef = lead->second;
        std::vector<int> e_exp(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
            int next = i + 1 < r ? lambda[i + 1] : 0;
            if (lambda[i] < next)
                throw math_error("symmetric_reduce: leading term is not partition-shaped");
            e_exp[i] = lambda[i] - next;
        }
        RootPoly expansion = RootPoly::constant(coef, r);
        for (std::size_t i = 0; i < r; ++i)
            for (int e = 0; e < e_exp[i]; ++e) expansion = expansion * elem[i + 1];
        p = p - expansion;
        auto [it, inserted] = out.terms.emplace(e_exp, coef);
        if (!inserted) it->second += coef;
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
    return out;
}

// Chern class of Sym^2 E via roots {x_i + x_j, i <= j}, reduced to the
// elementary symmetric basis and evaluated at e_i = c_i(E).
inline TotalClass sym_square_chern(const TotalClass& c, int rank, int truncation) {
    if (rank < 1 || rank > 5)
        throw math_error("sym_square_chern: universal-formula table covers ranks 1..5");
    std::size_t r = std::size_t(rank);
    std::vector<RootPoly> pair_roots;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j)
            pair_roots.push_back(RootPoly::variable(i, r) + RootPoly::variable(j, r));

    GradedPoly out = GradedPoly::constant(Rat(1), truncation);
    std::size_t nroots = pair_roots.size();
    for (int k = 1; k <= truncation && k <= int(nroots); ++k) {
        // elementary symmetric function of the pairwise-sum roots
        RootPoly ek = RootPoly::zero(r);
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            RootPoly prod = RootPoly::constant(Rat(1), r);
            for (std::size_t i : idx) prod = prod * pair_roots[i];
            ek = ek + prod;
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == nroots - std::size_t(k) + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < std::size_t(k); ++j) idx[j] = idx[j - 1] + 1;
        }
        SymmetricReduction red = symmetric_reduce(ek);
        GradedPoly ck(truncation);
        for (const auto& [e_exp, coef] : red.terms) {
            GradedPoly term = GradedPoly::constant(coef, truncation);
            for (std::size_t i = 0; i < r; ++i)
                for (int e = 0; e < e_exp[i]; ++e) term = term * c.chern(int(i) + 1);
            ck = ck + term;
        }
        out = out + ck;
    }
    return TotalClass(out, rank * (rank + 1) / 2);
}

// Truncated series in the formal parameter t with GradedPoly
// coefficients; the internal grading is tracked by the coefficients.
struct ChernSeries {
    std::vector<GradedPoly> coeffs;  // index = power of t
};

// (1 + psi_1 t)...(1 + psi_n t) / (1 + lambda_1 t + ... + lambda_5 t^5),
// t-coefficients through t^max_power.
inline ChernSeries porteous_quotient_series(const std::vector<GradedPoly>& psi, int max_power,
                                            int truncation) {
    std::size_t len = std::size_t(max_power) + 1;
    std::vector<GradedPoly> num(len, GradedPoly(truncation));
    num[0] = GradedPoly::constant(Rat(1), truncation);
    for (const GradedPoly& x : psi)
        for (std::size_t k = len - 1; k >= 1; --k)
            num[k] = num[k] + x * num[k - 1];

    std::vector<GradedPoly> den(len, GradedPoly(truncation));
    den[0] = GradedPoly::constant(Rat(1), truncation);
    for (int j = 1; j <= 5 && j < int(len); ++j)
        den[j] = GradedPoly::generator(lambda_gen(j), truncation);

    // q = num * den^{-1}: q_k = num_k - sum_{i=1..k} den_i q_{k-i}
    ChernSeries q;
    q.coeffs.assign(len, GradedPoly(truncation));
    for (std::size_t k = 0; k < len; ++k) {
        GradedPoly v = num[k];
        for (std::size_t i = 1; i <= k; ++i) v = v - den[i] * q.coeffs[k - i];
        q.coeffs[k] = v;
    }
    return q;
}

inline GradedPoly series_determinant(const std::vector<std::vector<GradedPoly>>& m, int truncation) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    GradedPoly det(truncation);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<std::vector<GradedPoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<GradedPoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != col) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        GradedPoly cof = m[0][col] * series_determinant(minor, truncation);
        det = (col % 2 == 0) ? det + cof : det - cof;
    }
    return det;
}

// Delta^b_a of the quotient series: the b x b determinant with (i,j)
// entry the t-coefficient of index a + j - i. For b = 1 this is the t^a
// coefficient; the case (n = 8, a = 4, b = 1) is the degeneracy-locus
// class of the rank-drop locus on the 8-marked-point space.
inline GradedPoly porteous_class(const std::vector<GradedPoly>& psi, int a, int b,
                                 int truncation) {
    if (b < 1) throw math_error("porteous_class: b must be >= 1");
    if (a * b > truncation) throw math_error("porteous_class: a*b exceeds the truncation bound");
    ChernSeries q = porteous_quotient_series(psi, a + b - 1, truncation);
    auto coeff = [&](int idx) {
        if (idx < 0) return GradedPoly(truncation);
        if (idx == 0) return GradedPoly::constant(Rat(1), truncation);
        return q.coeffs[std::size_t(idx)];
    };
    std::vector<std::vector<GradedPoly>> mat(b, std::vector<GradedPoly>(b, GradedPoly(truncation)));
    for (int i = 0; i < b; ++i)
        for (int j = 0; j < b; ++j) mat[i][j] = coeff(a + j - i);
    return series_determinant(mat, truncation);
}

struct Relation {
    std::string name;
    GradedPoly lhs;
    GradedPoly rhs;
};

// Named first-Chern-class identities usable for substitution:
//   eta1  = c1(eta_i^* O(1)) on the configuration bundle,
//   s1    = c1(det S^dual) for the universal net subbundle,
//   cL    = c1(L) on the rank-drop locus,
//   etaF1 = c1(b^* eta_i^* O_PF(1)) there.
inline std::vector<Relation> relation_table(int truncation) {
    auto gen = [&](const Gen& g) { return GradedPoly::generator(g, truncation); };
    GradedPoly psi1 = gen(psi_gen(1));
    GradedPoly lambda1 = gen(lambda_gen(1));
    GradedPoly eta1 = gen(chern_gen("eta1", 1));
    GradedPoly s1 = gen(chern_gen("s1", 1));
    GradedPoly cL = gen(chern_gen("cL", 1));
    GradedPoly etaF1 = gen(chern_gen("etaF1", 1));
    return {
        {"eta-first-chern", eta1, psi1 - Rat(1, 5) * lambda1},
        {"lambda1-from-det-S", lambda1, Rat(5) * s1},
        {"L-on-M-omega", cL, Rat(2) * psi1},
        {"eta-F-first-chern", etaF1, psi1 + cL},
    };
}

}  // namespace ciql

#endif  // CIQL_TAUTCALC_HPP
