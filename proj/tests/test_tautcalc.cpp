#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ciql/rng.hpp>
#include <ciql/tautcalc.hpp>

using namespace ciql;

namespace {

GradedPoly gen(const Gen& g, int n) { return GradedPoly::generator(g, n); }

// formal total class 1 + c1 + ... + c_rank with fresh generator names
TotalClass formal_chern(const std::string& prefix, int rank, int n) {
    GradedPoly total = GradedPoly::constant(Rat(1), n);
    for (int i = 1; i <= rank && i <= n; ++i)
        total = total + gen(chern_gen(prefix + std::to_string(i), i), n);
    return TotalClass(total, rank);
}

Rat random_rat(SplitMix64& rng) {
    std::int64_t num = std::int64_t(rng.below(19)) - 9;
    std::int64_t den = 1 + std::int64_t(rng.below(4));
    return Rat(num, den);
}

// substitute prefix1..prefixR -> numeric constants and return the
// degree-d part's value (which must collapse to a constant)
Rat numeric_part(const GradedPoly& p, const std::string& prefix,
                 const std::vector<Rat>& values, int d) {
    std::map<std::string, GradedPoly> subs;
    for (std::size_t i = 0; i < values.size(); ++i)
        subs.emplace(prefix + std::to_string(i + 1),
                     GradedPoly::constant(values[i], p.truncation()));
    return p.graded_part(d).substitute(subs).constant_term();
}

std::vector<Rat> elementary_values(const std::vector<Rat>& roots) {
    // e_1..e_r of the given numeric roots
    std::vector<Rat> e(roots.size() + 1);
    e[0] = Rat(1);
    std::vector<Rat> acc = {Rat(1)};
    for (const Rat& x : roots) {
        acc.push_back(Rat(0));
        for (std::size_t k = acc.size() - 1; k >= 1; --k) acc[k] += x * acc[k - 1];
    }
    return std::vector<Rat>(acc.begin() + 1, acc.end());
}

}  // namespace

TEST_CASE("graded polynomial arithmetic and truncation") {
    const int n = 3;
    GradedPoly a = gen(psi_gen(1), n);
    GradedPoly b = gen(lambda_gen(2), n);
    GradedPoly p = (a + b) * (a + b);
    CHECK(p.graded_part(2) == a * a);
    CHECK(p.graded_part(3) == Rat(2) * (a * b));
    CHECK(p.graded_part(4).is_zero());  // lambda2^2 dropped at truncation 3
    CHECK((a - a).is_zero());
    CHECK(a.pow(4).is_zero());
    CHECK(gen(lambda_gen(2), 8).pow(2).max_degree() == 4);
    CHECK_THROWS_AS(lambda_gen(6), math_error);
    CHECK_THROWS_AS(kappa_gen(0), math_error);
}

TEST_CASE("pretty printing order") {
    const int n = 4;
    GradedPoly l1 = gen(lambda_gen(1), n), l2 = gen(lambda_gen(2), n);
    GradedPoly l3 = gen(lambda_gen(3), n), l4 = gen(lambda_gen(4), n);
    GradedPoly p = l1.pow(4) - Rat(3) * (l1 * l1 * l2) + l2 * l2 + Rat(2) * (l1 * l3) - l4;
    CHECK(p.to_string() ==
          "lambda1^4 - 3*lambda1^2*lambda2 + lambda2^2 + 2*lambda1*lambda3 - lambda4");
    CHECK(GradedPoly(3).to_string() == "0");
    GradedPoly mixed = GradedPoly::constant(Rat(-1, 2), n) + gen(psi_gen(2), n);
    CHECK(mixed.to_string() == "-1/2 + psi2");
}

TEST_CASE("total class inverse multiplies back to 1") {
    const int n = 6;
    TotalClass c = formal_chern("c", 4, n);
    TotalClass inv = total_class_inverse(c, n);
    CHECK(c.poly() * inv.poly() == GradedPoly::constant(Rat(1), n));
    CHECK_THROWS_AS(TotalClass(gen(psi_gen(1), n)), math_error);
}

TEST_CASE("whitney quotient satisfies sub * quotient = total") {
    const int n = 5;
    TotalClass total = formal_chern("a", 5, n);
    TotalClass sub = formal_chern("b", 2, n);
    TotalClass q = whitney_quotient(total, sub, n);
    CHECK(sub.poly() * q.poly() == total.poly());
}

TEST_CASE("chern character basics and round trip") {
    const int n = 4;
    TotalClass c = formal_chern("c", 2, n);
    auto ch = chern_to_character(c, 2, n);
    GradedPoly c1 = c.chern(1), c2 = c.chern(2);
    CHECK(ch[0] == GradedPoly::constant(Rat(2), n));
    CHECK(ch[1] == c1);
    CHECK(ch[2] == Rat(1, 2) * (c1 * c1 - Rat(2) * c2));
    CHECK(ch[3] == Rat(1, 6) * (c1.pow(3) - Rat(3) * (c1 * c2)));

    TotalClass back = character_to_chern(ch, n);
    CHECK(back == c);

    // round trip the other way, rank 4 through degree 5
    TotalClass c4 = formal_chern("d", 4, 5);
    CHECK(character_to_chern(chern_to_character(c4, 4, 5), 5) == c4);
}

TEST_CASE("chern character is additive on direct sums") {
    const int n = 4;
    TotalClass a = formal_chern("a", 2, n);
    TotalClass b = formal_chern("b", 3, n);
    TotalClass sum(a.poly() * b.poly(), 5);
    auto cha = chern_to_character(a, 2, n);
    auto chb = chern_to_character(b, 3, n);
    auto chs = chern_to_character(sum, 5, n);
    for (int m = 0; m <= n; ++m) CHECK(chs[m] == cha[m] + chb[m]);
}

TEST_CASE("todd coefficients invert the series (1 - e^{-y})/y") {
    // s_n = (-1)^n / (n+1)!; the todd table must satisfy todd * s = 1
    const auto& todd = todd_coefficient_table();
    REQUIRE(todd.size() == 13);
    std::vector<Rat> s(13);
    for (int k = 0; k <= 12; ++k) {
        s[k] = factorial_rat(k + 1).inv();
        if (k % 2 == 1) s[k] = -s[k];
    }
    for (int m = 0; m <= 12; ++m) {
        Rat conv;
        for (int i = 0; i <= m; ++i) conv += todd[i] * s[m - i];
        CHECK(conv == (m == 0 ? Rat(1) : Rat(0)));
    }
    CHECK(todd[1] == Rat(1, 2));
    CHECK(todd[2] == Rat(1, 12));
    CHECK(todd[12] == Rat(BigInt(-691), BigInt("1307674368000")));
}

TEST_CASE("todd of line bundle handles both signs") {
    KSeries plus = todd_of_line_bundle(1, 4);
    KSeries minus = todd_of_line_bundle(-1, 4);
    CHECK(plus.coeffs[1] == Rat(1, 2));
    CHECK(minus.coeffs[1] == Rat(-1, 2));
    CHECK(plus.coeffs[2] == minus.coeffs[2]);
    CHECK_THROWS_AS(todd_of_line_bundle(1, 13), math_error);
    CHECK_THROWS_AS(todd_of_line_bundle(0, 4), math_error);
}

TEST_CASE("exponential K-series") {
    KSeries e3 = KSeries::exponential(3, 4);
    CHECK(e3.coeffs[0] == Rat(1));
    CHECK(e3.coeffs[1] == Rat(3));
    CHECK(e3.coeffs[2] == Rat(9, 2));
    CHECK(e3.coeffs[3] == Rat(27, 6));
    KSeries prod = KSeries::exponential(2, 4) * KSeries::exponential(3, 4);
    KSeries e5 = KSeries::exponential(5, 4);
    for (int i = 0; i <= 4; ++i) CHECK(prod.coeffs[i] == e5.coeffs[i]);
}

TEST_CASE("pushforward of omega powers, k = 2, genus 5") {
    const int n = 3;
    auto ch = grr_pushforward_omega_power(2, 5, n);
    CHECK(ch[0] == GradedPoly::constant(Rat(12), n));  // (2k-1)(g-1) = 3*4
    CHECK(ch[1] == Rat(13, 12) * gen(kappa_gen(1), n));
    CHECK(ch[2] == Rat(1, 2) * gen(kappa_gen(2), n));
    CHECK_THROWS_AS(grr_pushforward_omega_power(1, 5, n), math_error);
}

TEST_CASE("pushforward rank formula over genus and k ranges") {
    for (int g = 2; g <= 8; ++g)
        for (int k = 2; k <= 4; ++k) {
            auto ch = grr_pushforward_omega_power(k, g, 2);
            CHECK(ch[0] == GradedPoly::constant(Rat((2 * k - 1) * (g - 1)), 2));
            // ch_1 coefficient of kappa1 is (6k^2 - 6k + 1)/12
            GradedPoly expect = Rat(6 * k * k - 6 * k + 1, 12) * gen(kappa_gen(1), 2);
            CHECK(ch[1] == expect);
        }
}

TEST_CASE("line twist agrees with the splitting principle numerically") {
    const int n = 3;
    SplitMix64 rng(77);
    for (int rank = 1; rank <= 5; ++rank) {
        TotalClass c = formal_chern("c", rank, n);
        GradedPoly x = gen(chern_gen("x1", 1), n);
        TotalClass tw = twist_by_line(c, rank, x, n);
        for (int t = 0; t < 10; ++t) {
            std::vector<Rat> roots;
            for (int i = 0; i < rank; ++i) roots.push_back(random_rat(rng));
            Rat tv = random_rat(rng);
            std::vector<Rat> e = elementary_values(roots);
            std::vector<Rat> shifted;
            for (const Rat& r : roots) shifted.push_back(r + tv);
            std::vector<Rat> e_shift = elementary_values(shifted);
            for (int d = 1; d <= n; ++d) {
                std::map<std::string, GradedPoly> subs;
                for (int i = 1; i <= rank; ++i)
                    subs.emplace("c" + std::to_string(i), GradedPoly::constant(e[i - 1], n));
                subs.emplace("x1", GradedPoly::constant(tv, n));
                Rat got = tw.chern(d).substitute(subs).constant_term();
                Rat want = d <= rank ? e_shift[d - 1] : Rat(0);
                CHECK(got == want);
            }
        }
    }
    CHECK_THROWS_AS(twist_by_line(formal_chern("c", 2, 3), 2, gen(lambda_gen(2), 3), 3),
                    math_error);
}

TEST_CASE("symmetric reduction examples") {
    // x1^2 + x2^2 = e1^2 - 2 e2
    RootPoly p = RootPoly::variable(0, 2) * RootPoly::variable(0, 2) +
                 RootPoly::variable(1, 2) * RootPoly::variable(1, 2);
    SymmetricReduction r = symmetric_reduce(p);
    REQUIRE(r.terms.size() == 2);
    CHECK(r.terms.at({2, 0}) == Rat(1));
    CHECK(r.terms.at({0, 1}) == Rat(-2));

    // p3 in 3 variables = e1^3 - 3 e1 e2 + 3 e3
    RootPoly p3 = RootPoly::zero(3);
    for (std::size_t i = 0; i < 3; ++i) {
        RootPoly v = RootPoly::variable(i, 3);
        p3 = p3 + v * v * v;
    }
    SymmetricReduction r3 = symmetric_reduce(p3);
    CHECK(r3.terms.at({3, 0, 0}) == Rat(1));
    CHECK(r3.terms.at({1, 1, 0}) == Rat(-3));
    CHECK(r3.terms.at({0, 0, 1}) == Rat(3));

    CHECK_THROWS_AS(symmetric_reduce(RootPoly::variable(0, 2)), math_error);
}

TEST_CASE("symmetric reduction round trips on random symmetric polys") {
    SplitMix64 rng(31);
    for (int t = 0; t < 20; ++t) {
        std::size_t r = 2 + rng.below(3);
        // random polynomial in e_1..e_r, expanded into roots
        RootPoly p = RootPoly::zero(r);
        for (int term = 0; term < 4; ++term) {
            RootPoly prod = RootPoly::constant(random_rat(rng), r);
            for (std::size_t k = 1; k <= r; ++k) {
                int e = int(rng.below(3));
                for (int i = 0; i < e; ++i) prod = prod * elementary_symmetric(k, r);
            }
            p = p + prod;
        }
        if (p.is_zero()) continue;
        SymmetricReduction red = symmetric_reduce(p);
        // rebuild and compare
        RootPoly back = RootPoly::zero(r);
        for (const auto& [e_exp, coef] : red.terms) {
            RootPoly prod = RootPoly::constant(coef, r);
            for (std::size_t i = 0; i < r; ++i)
                for (int e = 0; e < e_exp[i]; ++e) prod = prod * elementary_symmetric(i + 1, r);
            back = back + prod;
        }
        CHECK(back == p);
    }
}

TEST_CASE("sym^2 chern classes: low-rank closed forms") {
    const int n = 2;
    TotalClass c2 = sym_square_chern(formal_chern("c", 2, n), 2, n);
    GradedPoly c1 = gen(chern_gen("c1", 1), n);
    CHECK(c2.chern(1) == Rat(3) * c1);  // rank 2: c1(Sym^2) = 3 c1
    TotalClass c5 = sym_square_chern(formal_chern("c", 5, n), 5, n);
    CHECK(c5.chern(1) == Rat(6) * c1);  // rank r: (r+1) c1
    CHECK_THROWS_AS(sym_square_chern(formal_chern("c", 6, 2), 6, 2), math_error);
}

TEST_CASE("sym^2 agrees with the splitting principle numerically") {
    const int n = 3;
    SplitMix64 rng(123);
    for (int rank = 2; rank <= 5; ++rank) {
        TotalClass sym = sym_square_chern(formal_chern("c", rank, n), rank, n);
        for (int t = 0; t < 10; ++t) {
            std::vector<Rat> roots;
            for (int i = 0; i < rank; ++i) roots.push_back(random_rat(rng));
            std::vector<Rat> pair_roots;
            for (int i = 0; i < rank; ++i)
                for (int j = i; j < rank; ++j) pair_roots.push_back(roots[i] + roots[j]);
            std::vector<Rat> e = elementary_values(roots);
            std::vector<Rat> e_pairs = elementary_values(pair_roots);
            for (int d = 1; d <= n; ++d) {
                Rat got = numeric_part(sym.poly(), "c", e, d);
                Rat want = d <= int(e_pairs.size()) ? e_pairs[d - 1] : Rat(0);
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("porteous quotient series matches the geometric-series oracle") {
    const int n = 4;
    std::vector<GradedPoly> psi;
    for (int i = 1; i <= 8; ++i) psi.push_back(gen(psi_gen(i), n));
    ChernSeries q = porteous_quotient_series(psi, 4, n);

    // oracle: num * sum_{k} (-den_+)^k expanded as explicit series
    std::vector<GradedPoly> num(5, GradedPoly(n));
    num[0] = GradedPoly::constant(Rat(1), n);
    for (const GradedPoly& x : psi)
        for (std::size_t k = 4; k >= 1; --k) num[k] = num[k] + x * num[k - 1];
    std::vector<GradedPoly> denp(5, GradedPoly(n));
    for (int j = 1; j <= 4; ++j) denp[j] = gen(lambda_gen(j), n);
    std::vector<GradedPoly> inv(5, GradedPoly(n));
    inv[0] = GradedPoly::constant(Rat(1), n);
    std::vector<GradedPoly> power(5, GradedPoly(n));
    power[0] = GradedPoly::constant(Rat(1), n);
    for (int k = 1; k <= 4; ++k) {
        std::vector<GradedPoly> next(5, GradedPoly(n));
        for (int i = 0; i <= 4; ++i)
            for (int j = 1; i + j <= 4; ++j) next[i + j] = next[i + j] - power[i] * denp[j];
        power = next;
        for (int i = 0; i <= 4; ++i) inv[i] = inv[i] + power[i];
    }
    for (int idx = 0; idx <= 4; ++idx) {
        GradedPoly expect(n);
        for (int i = 0; i <= idx; ++i) expect = expect + num[i] * inv[idx - i];
        CHECK(q.coeffs[idx] == expect);
    }
}

TEST_CASE("porteous class at psi = 0") {
    const int n = 4;
    std::vector<GradedPoly> psi(8, GradedPoly(n));  // all psi set to zero
    GradedPoly delta = porteous_class(psi, 4, 1, n);
    GradedPoly l1 = gen(lambda_gen(1), n), l2 = gen(lambda_gen(2), n);
    GradedPoly l3 = gen(lambda_gen(3), n), l4 = gen(lambda_gen(4), n);
    GradedPoly expect = l1.pow(4) - Rat(3) * (l1 * l1 * l2) + l2 * l2 + Rat(2) * (l1 * l3) - l4;
    CHECK(delta == expect);
    CHECK(delta.to_string() ==
          "lambda1^4 - 3*lambda1^2*lambda2 + lambda2^2 + 2*lambda1*lambda3 - lambda4");
}

TEST_CASE("porteous class is homogeneous of degree a*b") {
    const int n = 6;
    std::vector<GradedPoly> psi;
    for (int i = 1; i <= 8; ++i) psi.push_back(gen(psi_gen(i), n));
    CHECK(porteous_class(psi, 4, 1, n).is_homogeneous(4));
    CHECK(porteous_class(psi, 3, 2, n).is_homogeneous(6));
    CHECK(porteous_class(psi, 2, 1, n).is_homogeneous(2));
    CHECK_THROWS_AS(porteous_class(psi, 4, 2, n), math_error);
    CHECK_THROWS_AS(porteous_class(psi, 4, 0, n), math_error);
}

TEST_CASE("porteous b = 1 equals the plain series coefficient") {
    const int n = 3;
    std::vector<GradedPoly> psi;
    for (int i = 1; i <= 8; ++i) psi.push_back(gen(psi_gen(i), n));
    ChernSeries q = porteous_quotient_series(psi, 3, n);
    CHECK(porteous_class(psi, 3, 1, n) == q.coeffs[3]);
}

TEST_CASE("relation table composes to 3 psi1") {
    const int n = 2;
    auto rels = relation_table(n);
    REQUIRE(rels.size() == 4);
    std::map<std::string, GradedPoly> subs;
    for (const auto& r : rels) {
        REQUIRE(r.lhs.terms().size() == 1);
        subs.emplace(r.lhs.terms().begin()->first[0].first.name, r.rhs);
    }
    // etaF1 = psi1 + cL, cL = 2 psi1  =>  etaF1 = 3 psi1
    GradedPoly etaF1 = GradedPoly::generator(chern_gen("etaF1", 1), n);
    GradedPoly once = etaF1.substitute(subs);
    GradedPoly twice = once.substitute(subs);
    CHECK(twice == Rat(3) * GradedPoly::generator(psi_gen(1), n));
    // eta1 in kappa/lambda-free form: psi1 - s1 after both substitutions
    GradedPoly eta1 = GradedPoly::generator(chern_gen("eta1", 1), n);
    GradedPoly eta_sub = eta1.substitute(subs).substitute(subs);
    GradedPoly expect = GradedPoly::generator(psi_gen(1), n) -
                        GradedPoly::generator(chern_gen("s1", 1), n);
    CHECK(eta_sub == expect);
}
