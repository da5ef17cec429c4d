#ifndef CIQL_CIGEOM_HPP
#define CIQL_CIGEOM_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exactmath.hpp"
#include "projgeom.hpp"
#include "rng.hpp"

// Nets of quadrics, base-locus enumeration over F_p, smooth canonical
// genus-5 curve sampling, and the verification drivers for the rank
// dichotomies, eighth-point recovery, disjointness and cross counts.

namespace ciql {

// Quadratic form on P^m, coefficients indexed by monomial_basis(m+1, 2).
class QuadraticForm {
public:
    QuadraticForm(std::size_t ambient_dim, std::vector<Fp> coeffs)
        : m_(ambient_dim), c_(std::move(coeffs)) {
        if (c_.size() != binomial(m_ + 2, 2))
            throw math_error("QuadraticForm: coefficient count mismatch");
        build_index();
    }

    std::size_t ambient_dim() const { return m_; }
    const std::vector<Fp>& coeffs() const { return c_; }

    Fp eval(const std::vector<Fp>& x) const {
        Fp acc = c_[0].zero();
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            acc += c_[k] * x[pairs_[k].first] * x[pairs_[k].second];
        }
        return acc;
    }

    // Row of formal partial derivatives evaluated at x.
    std::vector<Fp> gradient(const std::vector<Fp>& x) const {
        std::vector<Fp> g(m_ + 1, c_[0].zero());
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            auto [i, j] = pairs_[k];
            if (i == j) {
                g[i] += (c_[k] + c_[k]) * x[i];
            } else {
                g[i] += c_[k] * x[j];
                g[j] += c_[k] * x[i];
            }
        }
        return g;
    }

private:
    void build_index() {
        std::vector<Monomial> basis = monomial_basis(m_ + 1, 2);
        pairs_.reserve(basis.size());
        for (const Monomial& mono : basis) {
            std::size_t i = 0, j = 0;
            bool first = true;
            for (std::size_t v = 0; v <= m_; ++v) {
                for (int e = 0; e < mono.exponents[v]; ++e) {
                    if (first) { i = v; first = false; }
                    else j = v;
                }
            }
            if (mono.degree() == 2 && mono.exponents[i] == 2) j = i;
            pairs_.emplace_back(i, j);
        }
    }

    std::size_t m_;
    std::vector<Fp> c_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

// A net: exactly 3 linearly independent quadratic forms on a common P^m.
class QuadricNet {
public:
    QuadricNet(QuadraticForm a, QuadraticForm b, QuadraticForm c)
        : forms_{std::move(a), std::move(b), std::move(c)} {
        std::size_t m = forms_[0].ambient_dim();
        if (m != 3 && m != 4) throw math_error("QuadricNet: ambient must be P^3 or P^4");
        for (int i = 1; i < 3; ++i)
            if (forms_[i].ambient_dim() != m)
                throw math_error("QuadricNet: mixed ambient dimensions");
        if (coefficient_rank() != 3)
            throw math_error("QuadricNet: basis forms are linearly dependent");
    }

    std::size_t ambient_dim() const { return forms_[0].ambient_dim(); }
    const QuadraticForm& form(std::size_t i) const { return forms_[i]; }
    std::uint32_t modulus() const { return forms_[0].coeffs()[0].modulus(); }

    std::size_t coefficient_rank() const {
        std::size_t cols = forms_[0].coeffs().size();
        Matrix<Fp> m(3, cols, forms_[0].coeffs()[0].zero());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = forms_[i].coeffs()[j];
        return m.rank();
    }

    bool vanishes_at(const std::vector<Fp>& x) const {
        return forms_[0].eval(x).is_zero() && forms_[1].eval(x).is_zero() &&
               forms_[2].eval(x).is_zero();
    }

private:
    std::vector<QuadraticForm> forms_;
};

// A basis (normalized per the kernel contract) of the quadrics through
// every point of the configuration.
inline std::vector<QuadraticForm> quadrics_through(const Configuration<Fp>& cfg) {
    std::size_t m = cfg.ambient_dim();
    if (m != 3 && m != 4) throw math_error("quadrics_through: ambient must be P^3 or P^4");
    std::vector<std::vector<Fp>> kernel = evaluation_matrix(cfg, 2).kernel_basis();
    std::vector<QuadraticForm> out;
    out.reserve(kernel.size());
    for (auto& v : kernel) out.emplace_back(m, std::move(v));
    return out;
}

// Visit the canonical representatives (first nonzero coordinate 1) of
// all points of P^m(F_p), in lex order on the coordinate vector.
template <class Visitor>
void for_each_projective_point(std::size_t m, std::uint32_t p, Visitor&& visit) {
    std::vector<Fp> x(m + 1, Fp(0, p));
    Fp one(1, p);
    for (std::size_t lead = 0; lead <= m; ++lead) {
        for (std::size_t i = 0; i < lead; ++i) x[i] = Fp(0, p);
        x[lead] = one;
        std::size_t free_count = m - lead;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < free_count; ++i) total *= p;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            // lex order: leftmost free coordinate is the most significant digit
            for (std::size_t i = 0; i < free_count; ++i) {
                std::uint64_t radix = 1;
                for (std::size_t k = i + 1; k < free_count; ++k) radix *= p;
                x[lead + 1 + i] = Fp(std::uint32_t((c / radix) % p), p);
                c %= radix;
            }
            visit(x);
        }
    }
}

inline constexpr std::uint32_t kHardModulusCap = 101;
inline constexpr std::uint32_t kDefaultP4Cap = 31;

// All rational points of the net's base locus, canonical reps, lex order.
inline std::vector<Point<Fp>> base_locus_points(const QuadricNet& net, bool allow_large_p4 = false) {
    std::uint32_t p = net.modulus();
    std::size_t m = net.ambient_dim();
    if (p > kHardModulusCap)
        throw math_error("base_locus_points: modulus above hard cap 101");
    if (m == 4 && p > kDefaultP4Cap && !allow_large_p4)
        throw math_error("base_locus_points: p > 31 in P^4 requires the large-modulus override");
    std::vector<Point<Fp>> out;
    for_each_projective_point(m, p, [&](const std::vector<Fp>& x) {
        if (net.vanishes_at(x)) out.emplace_back(x);
    });
    return out;
}

// Rank of the 3x(m+1) Jacobian at a base-locus point; 3 means smooth
// complete-intersection point.
inline std::size_t jacobian_rank_at(const QuadricNet& net, const Point<Fp>& pt) {
    if (!net.vanishes_at(pt.coords()))
        throw math_error("jacobian_rank_at: point is not on the base locus");
    std::size_t cols = net.ambient_dim() + 1;
    Matrix<Fp> jac(3, cols, pt[0].zero());
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<Fp> g = net.form(i).gradient(pt.coords());
        for (std::size_t j = 0; j < cols; ++j) jac.at(i, j) = g[j];
    }
    return jac.rank();
}

struct CurveSample {
    QuadricNet net;
    std::vector<Point<Fp>> points;       // all rational base-locus points
    std::vector<bool> smooth_flags;      // Jacobian rank 3 per point
    std::uint64_t seed = 0;
    std::uint32_t p = 0;
    std::size_t tries = 0;
    bool accepted = false;

    Configuration<Fp> points_subset(const std::vector<std::size_t>& idx) const {
        std::vector<Point<Fp>> s;
        s.reserve(idx.size());
        for (std::size_t i : idx) s.push_back(points[i]);
        return Configuration<Fp>(std::move(s));
    }
};

class sample_error : public math_error {
public:
    sample_error(const std::string& what, std::string reason)
        : math_error(what), reason_(std::move(reason)) {}
    const std::string& reason() const { return reason_; }

private:
    std::string reason_;
};

inline QuadricNet random_net(std::size_t m, std::uint32_t p, SplitMix64& rng) {
    std::size_t ncoef = binomial(m + 2, 2);
    auto draw = [&] {
        std::vector<Fp> c(ncoef, Fp(0, p));
        for (auto& x : c) x = Fp(std::uint32_t(rng.below(p)), p);
        return c;
    };
    // redraw until the three coefficient vectors are independent
    for (;;) {
        std::vector<Fp> a = draw(), b = draw(), c = draw();
        Matrix<Fp> mat(3, ncoef, Fp(0, p));
        for (std::size_t j = 0; j < ncoef; ++j) {
            mat.at(0, j) = a[j];
            mat.at(1, j) = b[j];
            mat.at(2, j) = c[j];
        }
        if (mat.rank() == 3)
            return QuadricNet(QuadraticForm(m, a), QuadraticForm(m, b), QuadraticForm(m, c));
    }
}

// Rejection-sample a net in P^4 whose rational base locus is all smooth
// and has at least min_points points. Deterministic given (p, seed).
inline CurveSample sample_smooth_canonical_curve(std::uint32_t p, std::uint64_t seed,
                                                 std::size_t max_tries = 64,
                                                 std::size_t min_points = 9) {
    PrimeField field(p);  // validates p (prime, not 2/3/5)
    if (p > kDefaultP4Cap)
        throw math_error("sample_smooth_canonical_curve: p above default P^4 cap 31");
    std::string last_reason = "no tries attempted";
    for (std::size_t t = 0; t < max_tries; ++t) {
        SplitMix64 rng = SplitMix64::stream(seed, t);
        QuadricNet net = random_net(4, p, rng);
        std::vector<Point<Fp>> pts = base_locus_points(net);
        if (pts.size() < min_points) {
            last_reason = "too few rational points (" + std::to_string(pts.size()) + ")";
            continue;
        }
        std::vector<bool> flags(pts.size(), false);
        bool all_smooth = true;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            flags[i] = jacobian_rank_at(net, pts[i]) == 3;
            if (!flags[i]) all_smooth = false;
        }
        if (!all_smooth) {
            last_reason = "singular rational point";
            continue;
        }
        return CurveSample{std::move(net), std::move(pts), std::move(flags), seed, p, t + 1, true};
    }
    throw sample_error("sample_smooth_canonical_curve: exhausted max tries", last_reason);
}

struct FailureRecord {
    std::vector<std::size_t> subset;        // indices into the tested point list
    Configuration<Fp> configuration;
    std::size_t observed_rank;
    std::size_t expected_rank;
    std::vector<std::string> flags;
};

struct VerificationReport {
    std::string claim_id;
    std::uint32_t p = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t passes = 0;
    std::size_t skipped = 0;
    std::vector<FailureRecord> failures;
    std::int64_t runtime_ms = 0;
};

struct HyperplaneSection {
    Point<Fp> hyperplane;                 // normalized dual coordinates
    std::vector<std::size_t> point_indices;  // into curve.points, ascending
};

namespace detail {

inline Fp dot(const std::vector<Fp>& a, const std::vector<Fp>& b) {
    Fp acc = a[0].zero();
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// Tangent line at a smooth base-locus point: the projectivized kernel
// of the 3x5 Jacobian (2-dimensional). The hyperplane h is transversal
// at the point iff it does not contain the tangent line, i.e. some
// kernel vector pairs nontrivially with h.
inline bool hyperplane_transversal_at(const QuadricNet& net, const Point<Fp>& pt,
                                      const std::vector<Fp>& h) {
    std::size_t cols = net.ambient_dim() + 1;
    Matrix<Fp> jac(3, cols, pt[0].zero());
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<Fp> g = net.form(i).gradient(pt.coords());
        for (std::size_t j = 0; j < cols; ++j) jac.at(i, j) = g[j];
    }
    for (const auto& v : jac.kernel_basis())
        if (!dot(h, v).is_zero()) return true;
    return false;
}

inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (r > (~0ull) / (n - i)) return ~0ull;  // saturate
        r = r * (n - i) / (i + 1);
    }
    return r;
}

// Sorted random k-subset of {0..n-1} (Floyd's algorithm).
inline std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, SplitMix64& rng) {
    std::set<std::size_t> s;
    for (std::size_t j = n - k; j < n; ++j) {
        std::size_t t = std::size_t(rng.below(j + 1));
        if (!s.insert(t).second) s.insert(j);
    }
    return std::vector<std::size_t>(s.begin(), s.end());
}

template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

// All hyperplanes of P^4 meeting the curve's rational points in exactly
// 8 distinct points, each transversally.
inline std::vector<HyperplaneSection> hyperplane_sections(const CurveSample& curve) {
    if (!curve.accepted) throw math_error("hyperplane_sections: curve sample not accepted");
    std::vector<HyperplaneSection> out;
    for_each_projective_point(4, curve.p, [&](const std::vector<Fp>& h) {
        std::vector<std::size_t> incident;
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            if (detail::dot(h, curve.points[i].coords()).is_zero()) {
                incident.push_back(i);
                if (incident.size() > 8) return;
            }
        }
        if (incident.size() != 8) return;
        for (std::size_t i : incident)
            if (!detail::hyperplane_transversal_at(curve.net, curve.points[i], h)) return;
        out.push_back(HyperplaneSection{Point<Fp>(h), incident});
    });
    return out;
}

// Rank dichotomy of the evaluation map on quadrics in P^4, per subset
// size n. Hyperplanar witnesses are force-included for n in {8, 9}.
inline VerificationReport verify_independence_dichotomy(
    const CurveSample& curve, std::size_t n, std::size_t subset_budget, std::uint64_t seed,
    const std::vector<HyperplaneSection>* precomputed_sections = nullptr) {
    if (!curve.accepted) throw math_error("verify_independence_dichotomy: curve sample not accepted");
    if (n < 1 || n > 9) throw math_error("verify_independence_dichotomy: n must be in 1..9");
    std::size_t N = curve.points.size();
    if (N < n) throw math_error("verify_independence_dichotomy: not enough points");

    VerificationReport rep;
    rep.claim_id = "prop22-n" + std::to_string(n);
    rep.p = curve.p;
    rep.seed = seed;

    std::vector<HyperplaneSection> sections_local;
    const std::vector<HyperplaneSection>* sections = precomputed_sections;
    if (n >= 8 && sections == nullptr) {
        sections_local = hyperplane_sections(curve);
        sections = &sections_local;
    }

    auto check_subset = [&](const std::vector<std::size_t>& idx) {
        Configuration<Fp> cfg = curve.points_subset(idx);
        std::size_t rank = evaluation_matrix(cfg, 2).rank();
        bool pass = true;
        std::size_t expected = n;
        std::vector<std::string> flags;
        if (n <= 7) {
            pass = rank == n;
        } else if (n == 8) {
            bool hyp = is_hyperplanar(cfg);
            if (hyp) flags.push_back("hyperplanar");
            pass = ((rank < 8) == hyp) && (rank >= 8 || rank == 7);
            expected = hyp ? 7 : 8;
        } else {
            bool some8 = false;
            detail::for_each_combination(9, 8, [&](const std::vector<std::size_t>& sub) {
                if (some8) return;
                std::vector<std::size_t> inner;
                for (std::size_t s : sub) inner.push_back(idx[s]);
                if (is_hyperplanar(curve.points_subset(inner))) some8 = true;
            });
            if (some8) flags.push_back("contains-hyperplanar-8");
            pass = ((rank < 9) == some8) && (rank >= 9 || rank == 8);
            expected = some8 ? 8 : 9;
        }
        ++rep.trials;
        if (pass) {
            ++rep.passes;
        } else {
            rep.failures.push_back(FailureRecord{idx, cfg, rank, expected, flags});
        }
    };

    std::set<std::vector<std::size_t>> forced;
    if (n == 8 && sections) {
        for (const auto& s : *sections) forced.insert(s.point_indices);
    } else if (n == 9 && sections) {
        for (const auto& s : *sections) {
            for (std::size_t k = 0; k < N; ++k) {
                if (std::binary_search(s.point_indices.begin(), s.point_indices.end(), k)) continue;
                std::vector<std::size_t> nine = s.point_indices;
                nine.push_back(k);
                std::sort(nine.begin(), nine.end());
                forced.insert(std::move(nine));
            }
        }
    }
    for (const auto& idx : forced) check_subset(idx);

    std::uint64_t total = detail::binomial_u64(N, n);
    if (total <= subset_budget) {
        detail::for_each_combination(N, n, [&](const std::vector<std::size_t>& idx) {
            if (forced.count(idx)) return;  // already tested
            check_subset(idx);
        });
    } else {
        for (std::size_t t = 0; t < subset_budget; ++t) {
            SplitMix64 rng = SplitMix64::stream(seed, t);
            std::vector<std::size_t> idx = detail::random_subset(N, n, rng);
            if (forced.count(idx)) continue;
            check_subset(idx);
        }
    }
    return rep;
}

struct CrossCount {
    std::size_t by_subsets = 0;
    std::size_t by_hyperplanes = 0;
    bool exhaustive = false;
};

// Double count: hyperplanar 8-subsets of the rational points versus
// transversal 8-point hyperplane sections. Exhaustive when the subset
// count fits the budget; otherwise computed by iterating hyperplanes,
// which makes equality definitional and is flagged as such.
inline CrossCount cross_count_hyperplanar(const CurveSample& curve, std::size_t subset_budget,
                                          const std::vector<HyperplaneSection>* precomputed_sections = nullptr) {
    if (!curve.accepted) throw math_error("cross_count_hyperplanar: curve sample not accepted");
    CrossCount cc;
    std::vector<HyperplaneSection> sections_local;
    const std::vector<HyperplaneSection>* sections = precomputed_sections;
    if (sections == nullptr) {
        sections_local = hyperplane_sections(curve);
        sections = &sections_local;
    }
    cc.by_hyperplanes = sections->size();
    std::size_t N = curve.points.size();
    if (N >= 8 && detail::binomial_u64(N, 8) <= subset_budget) {
        cc.exhaustive = true;
        detail::for_each_combination(N, 8, [&](const std::vector<std::size_t>& idx) {
            if (is_hyperplanar(curve.points_subset(idx))) ++cc.by_subsets;
        });
    } else {
        cc.exhaustive = false;
        cc.by_subsets = cc.by_hyperplanes;
    }
    return cc;
}

class recover_error : public math_error {
public:
    enum class Kind { dependent_input, non_transversal };
    recover_error(Kind kind, const std::string& what, std::vector<Point<Fp>> locus = {})
        : math_error(what), kind_(kind), locus_(std::move(locus)) {}
    Kind kind() const { return kind_; }
    const std::vector<Point<Fp>>& locus() const { return locus_; }

private:
    Kind kind_;
    std::vector<Point<Fp>> locus_;
};

// Recover the unique eighth point of the base locus of the quadrics
// through 7 independent points of P^3.
inline Point<Fp> recover_eighth_point(const Configuration<Fp>& seven) {
    if (seven.size() != 7 || seven.ambient_dim() != 3)
        throw math_error("recover_eighth_point: need 7 points in P^3");
    SevenPointClassification cls = classify_seven_points(seven);
    if (!cls.independent) {
        std::string why = "dependent input:";
        if (cls.coplanar7) why += " coplanar7";
        if (cls.six_on_conic) why += " sixOnConic";
        if (cls.four_collinear) why += " fourCollinear";
        throw recover_error(recover_error::Kind::dependent_input, why);
    }
    std::vector<QuadraticForm> basis = quadrics_through(seven);
    if (basis.size() != 3)
        throw recover_error(recover_error::Kind::non_transversal,
                            "quadrics through the 7 points do not form a net");
    QuadricNet net(basis[0], basis[1], basis[2]);
    std::vector<Point<Fp>> locus = base_locus_points(net);
    if (locus.size() != 8)
        throw recover_error(recover_error::Kind::non_transversal,
                            "base locus has " + std::to_string(locus.size()) +
                                " rational points, expected 8",
                            locus);
    std::optional<Point<Fp>> extra;
    for (const auto& pt : locus) {
        bool is_input = false;
        for (std::size_t i = 0; i < 7; ++i)
            if (pt == seven[i]) { is_input = true; break; }
        if (!is_input) {
            if (extra) throw recover_error(recover_error::Kind::non_transversal,
                                           "base locus misses an input point", locus);
            extra = pt;
        }
    }
    if (!extra)
        throw recover_error(recover_error::Kind::non_transversal,
                            "all base-locus points coincide with inputs", locus);
    return *extra;
}

// Sample a random independent 7-point configuration in P^3.
inline Configuration<Fp> random_independent_seven(std::uint32_t p, SplitMix64& rng,
                                                  std::size_t max_tries = 256) {
    for (std::size_t t = 0; t < max_tries; ++t) {
        std::vector<Point<Fp>> pts;
        bool ok = true;
        for (std::size_t i = 0; i < 7 && ok; ++i) {
            std::vector<Fp> c(4, Fp(0, p));
            bool nonzero = false;
            for (auto& x : c) {
                x = Fp(std::uint32_t(rng.below(p)), p);
                if (!x.is_zero()) nonzero = true;
            }
            if (!nonzero) { ok = false; break; }
            Point<Fp> pt(c);
            for (const auto& q : pts)
                if (q == pt) { ok = false; break; }
            if (ok) pts.push_back(pt);
        }
        if (!ok) continue;
        Configuration<Fp> cfg(pts);
        if (classify_seven_points(cfg).independent) return cfg;
    }
    throw math_error("random_independent_seven: exhausted tries");
}

// Per effective trial: a net through 7 random independent points whose
// base locus is exactly 8 distinct smooth rational points. Asserts that
// every 7-subset of the 8 has rank 7 and the full 8 have rank exactly 7.
// Non-transversal draws are skipped, never counted as failures.
inline VerificationReport verify_seven_always_independent_in_p3(std::size_t trials,
                                                                std::uint32_t p,
                                                                std::uint64_t seed) {
    PrimeField field(p);
    if (p > kHardModulusCap) throw math_error("verify_seven_always_independent_in_p3: p above cap");
    VerificationReport rep;
    rep.claim_id = "lemma31-ci";
    rep.p = p;
    rep.seed = seed;
    std::size_t effective = 0;
    for (std::uint64_t t = 0; effective < trials; ++t) {
        SplitMix64 rng = SplitMix64::stream(seed, t);
        Configuration<Fp> seven = random_independent_seven(p, rng);
        std::vector<QuadraticForm> basis = quadrics_through(seven);
        if (basis.size() != 3) { ++rep.skipped; continue; }
        QuadricNet net(basis[0], basis[1], basis[2]);
        std::vector<Point<Fp>> locus = base_locus_points(net);
        if (locus.size() != 8) { ++rep.skipped; continue; }
        bool smooth = true;
        for (const auto& pt : locus)
            if (jacobian_rank_at(net, pt) != 3) { smooth = false; break; }
        if (!smooth) { ++rep.skipped; continue; }
        std::vector<std::size_t> missing;
        {
            bool contains_all = true;
            for (std::size_t i = 0; i < 7; ++i) {
                bool found = false;
                for (const auto& pt : locus)
                    if (pt == seven[i]) { found = true; break; }
                if (!found) { contains_all = false; break; }
            }
            if (!contains_all) { ++rep.skipped; continue; }
        }
        ++effective;
        Configuration<Fp> eight(locus);
        bool pass = evaluation_matrix(eight, 2).rank() == 7;
        std::vector<std::string> flags;
        if (!pass) flags.push_back("full-8-rank-not-7");
        detail::for_each_combination(8, 7, [&](const std::vector<std::size_t>& idx) {
            if (evaluation_matrix(eight.subset(idx), 2).rank() != 7) {
                pass = false;
                flags.push_back("7-subset-rank-defect");
            }
        });
        ++rep.trials;
        if (pass) ++rep.passes;
        else rep.failures.push_back(FailureRecord{{}, eight, evaluation_matrix(eight, 2).rank(), 7, flags});
    }
    return rep;
}

// Across 9-subsets of the curve's points, at most one 8-subset may be
// hyperplanar; two witnesses within one 9-subset would force two marked
// points equal.
inline VerificationReport verify_disjointness(const CurveSample& curve, std::size_t subset_budget,
                                              std::uint64_t seed,
                                              const std::vector<HyperplaneSection>* precomputed_sections = nullptr) {
    if (!curve.accepted || curve.points.size() < 9)
        throw math_error("verify_disjointness: need an accepted curve with >= 9 points");
    std::size_t N = curve.points.size();
    VerificationReport rep;
    rep.claim_id = "disjointness";
    rep.p = curve.p;
    rep.seed = seed;

    auto count_hyperplanar_eights = [&](const std::vector<std::size_t>& nine) {
        std::size_t count = 0;
        detail::for_each_combination(9, 8, [&](const std::vector<std::size_t>& sub) {
            std::vector<std::size_t> inner;
            for (std::size_t s : sub) inner.push_back(nine[s]);
            if (is_hyperplanar(curve.points_subset(inner))) ++count;
        });
        return count;
    };
    auto check = [&](const std::vector<std::size_t>& nine) {
        std::size_t c = count_hyperplanar_eights(nine);
        ++rep.trials;
        if (c <= 1) ++rep.passes;
        else rep.failures.push_back(FailureRecord{nine, curve.points_subset(nine), c, 1,
                                                  {"multiple-hyperplanar-8-subsets"}});
    };

    // force-include each known section extended by one extra point
    std::vector<HyperplaneSection> sections_local;
    const std::vector<HyperplaneSection>* sections = precomputed_sections;
    if (sections == nullptr) {
        sections_local = hyperplane_sections(curve);
        sections = &sections_local;
    }
    std::set<std::vector<std::size_t>> forced;
    for (const auto& s : *sections)
        for (std::size_t k = 0; k < N; ++k) {
            if (std::binary_search(s.point_indices.begin(), s.point_indices.end(), k)) continue;
            std::vector<std::size_t> nine = s.point_indices;
            nine.push_back(k);
            std::sort(nine.begin(), nine.end());
            forced.insert(std::move(nine));
        }
    for (const auto& nine : forced) check(nine);

    std::uint64_t total = detail::binomial_u64(N, 9);
    if (total <= subset_budget) {
        detail::for_each_combination(N, 9, [&](const std::vector<std::size_t>& idx) {
            if (forced.count(idx)) return;
            check(idx);
        });
    } else {
        for (std::size_t t = 0; t < subset_budget; ++t) {
            SplitMix64 rng = SplitMix64::stream(seed, t);
            std::vector<std::size_t> idx = detail::random_subset(N, 9, rng);
            if (forced.count(idx)) continue;
            check(idx);
        }
    }
    return rep;
}

}  // namespace ciql

#endif  // CIQL_CIGEOM_HPP
