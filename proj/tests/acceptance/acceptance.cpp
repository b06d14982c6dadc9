// Acceptance gate: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "altmoments/altmoments.hpp"
#include "generators.hpp"

using namespace altmoments;

namespace
{
//! Collects the first few mismatches of a criterion.
class Check
{
  public:
    void expect(bool ok, std::string const& what)
    {
        ++checks_;
        if (!ok && failures_.size() < 3)
            failures_.push_back(what);
        failed_ += ok ? 0 : 1;
    }

    std::size_t checks() const { return checks_; }
    std::size_t failed() const { return failed_; }

    std::string summary() const
    {
        std::string s;
        for (auto const& f : failures_)
            s += "\n    " + f;
        return s;
    }

  private:
    std::size_t checks_{0};
    std::size_t failed_{0};
    std::vector<std::string> failures_;
};

struct Criterion
{
    char const* id;
    char const* title;
    double time_limit;  // seconds, 0 for none
    std::function<std::string(Check&)> body;  // returns extra detail
};

Rational q(long p, long d = 1)
{
    return Rational{Integer{p}, Integer{d}};
}

Rational r(std::size_t n)
{
    return Rational{static_cast<unsigned long>(n)};
}

std::string str(std::size_t v)
{
    return std::to_string(v);
}

// Full difference table D[j][n] = nabla^j c(n), built one level at a time.
std::vector<std::vector<Rational>> difference_table(FiniteSequence const& c)
{
    std::vector<std::vector<Rational>> table{c.values()};
    while (table.back().size() > 1)
    {
        auto const& prev = table.back();
        std::vector<Rational> next(prev.size() - 1);
        for (std::size_t n = 0; n + 1 < prev.size(); ++n)
            next[n] = prev[n] - prev[n + 1];
        table.push_back(std::move(next));
    }
    return table;
}

//---------------------------------------------------------------------------//
std::string ac1_identities(Check& check)
{
    gen::Engine rng(1001);
    constexpr std::size_t depth = 12;
    for (int trial = 0; trial < 200; ++trial)
    {
        auto const x = gen::random_sequence(rng, depth);
        auto const y = gen::random_sequence(rng, depth);
        auto const xy = FiniteSequence::generate(depth, [&](std::size_t n) { return x[n] * y[n]; });
        auto const dx = difference_table(x);
        auto const dy = difference_table(y);
        auto const dxy = difference_table(xy);
        bool leibniz = true;
        for (std::size_t j = 0; j <= depth; ++j)
        {
            for (std::size_t n = 0; n + j <= depth; ++n)
            {
                Rational rhs{0};
                for (std::size_t i = 0; i <= j; ++i)
                    rhs += binomial(j, i) * dx[j - i][n + i] * dy[i][n];
                leibniz = leibniz && dxy[j][n] == rhs;
            }
        }
        check.expect(leibniz, "product rule, trial " + std::to_string(trial));

        // Differences of a(n) = n c(n-1), with c(-1) = 0.
        auto const& c = x;
        auto const a = a_from_c(c);
        auto const da = difference_table(a);
        auto const dc = difference_table(c);
        bool assoc = true;
        for (std::size_t j = 0; j <= depth + 1; ++j)
        {
            for (std::size_t n = 0; n + j <= depth + 1; ++n)
            {
                Rational rhs{0};
                if (n > 0)
                {
                    // nabla^j c(n-1) needs c(n-1..n-1+j), all inside the table.
                    rhs += r(n) * dc[j][n - 1];
                }
                if (j > 0)
                    rhs -= r(j) * dc[j - 1][n];
                assoc = assoc && da[j][n] == rhs;
            }
        }
        check.expect(assoc, "associated differences, trial " + std::to_string(trial));

        // Row increments of the triangular array.
        auto c1 = c.values();
        c1[0] = 1;
        FiniteSequence const cu(std::move(c1));
        auto const au = difference_table(a_from_c(cu));
        auto const du = difference_table(cu);
        bool rows = true;
        for (std::size_t n = 1; n <= depth; ++n)
        {
            for (std::size_t m = 0; m < n; ++m)
            {
                auto const lhs = binomial(n, m + 1) * du[n - m - 1][m + 1] - binomial(n, m) * du[n - m][m];
                auto const rhs = Rational{-1} / r(m + 1) * binomial(n, m) * au[n - m][m + 1];
                rows = rows && lhs == rhs;
            }
        }
        check.expect(rows, "row increments, trial " + std::to_string(trial));
    }
    return "";
}

std::string ac2_round_trip(Check& check)
{
    gen::Engine rng(1002);
    for (int trial = 0; trial < 100; ++trial)
    {
        auto const nu = gen::random_probability(rng, 6, 64);
        auto const a = a_from_c(moments_from_nu(nu, 12));
        check.expect(a == alt_sequence_from_nu(nu, 13), "a_from_c(moments) != alternating sequence, trial "
                                                            + std::to_string(trial));
        auto const cert = certify_completely_alternating(a);
        check.expect(cert.certified() && cert.depth == 13, "not certified to depth 13, trial "
                                                                + std::to_string(trial));
    }
    return "";
}

std::string ac3_df_bridge(Check& check)
{
    gen::Engine rng(1003);
    std::size_t positives = 0;
    std::size_t negatives = 0;
    for (int trial = 0; trial < 500; ++trial)
    {
        auto values = moments_from_nu(gen::random_probability(rng), 10).values();
        if (trial % 2 == 1)
            values[gen::uniform_index(rng, 1, 10)] += gen::signed_rational(rng, 1, 500);
        FiniteSequence const c(std::move(values));
        bool const df = df_condition(c).certified();
        bool const ca = certify_completely_alternating(a_from_c(c)).certified();
        check.expect(df == ca, "verdicts differ, trial " + std::to_string(trial));
        (df ? positives : negatives) += 1;
    }
    check.expect(positives > 0 && negatives > 0, "sample lacks both verdicts");
    return str(positives) + " certified, " + str(negatives) + " violated";
}

std::string ac4_exponent(Check& check)
{
    gen::Engine rng(1004);
    for (int trial = 0; trial < 100; ++trial)
    {
        auto const data = gen::random_laplace_data(rng);
        check.expect(certify_completely_alternating(phi_sequence(data, 20)).certified(),
                     "Phi not alternating, trial " + std::to_string(trial));
        auto const nu = nu_from_nutilde(data);
        bool same = true;
        for (std::size_t lam = 0; lam <= 20; ++lam)
            same = same && phi(data, lam) == phi_nu_scale(data.drift(), nu, lam);
        check.expect(same, "scales disagree, trial " + std::to_string(trial));
    }
    return "";
}

std::string ac5_qmatrix(Check& check)
{
    gen::Engine rng(1005);
    for (int trial = 0; trial < 50; ++trial)
    {
        auto const data = gen::random_laplace_data(rng);
        for (std::size_t n = 1; n <= 20; ++n)
        {
            auto const fd = q_row_fd(data, n);
            check.expect(fd == q_row_integral(data, n), "formulas differ at n=" + str(n));
            check.expect(fd.sum() == 1, "row sum != 1 at n=" + str(n));
        }
    }
    return "";
}

std::string ac6_worked_example(Check& check)
{
    LaplaceExponentData const data(q(0), DiscreteMeasure::point_mass(q(1, 2)));
    auto const phis = phi_sequence(data, 10);
    for (std::size_t n = 0; n <= 10; ++n)
        check.expect(phis[n] == 1 - ipow(q(1, 2), n), "Phi(" + str(n) + ")");
    check.expect(q_row_fd(data, 3).q == std::vector<Rational>{q(3, 7), q(3, 7), q(1, 7)}, "q(3, .)");

    auto const law = composition_pmf(data, 3);
    CompositionDistribution const expected(3, {{Composition{1, 1, 1}, q(2, 7)},
                                               {Composition{1, 2}, q(1, 7)},
                                               {Composition{2, 1}, q(3, 7)},
                                               {Composition{3}, q(1, 7)}});
    check.expect(law == expected && law.probabilities().size() == 4, "law of C_3");
    CompositionDistribution const projected(2, {{Composition{1, 1}, q(2, 3)}, {Composition{2}, q(1, 3)}});
    check.expect(deletion_projection(law) == projected, "projection to n=2");
    return "";
}

std::string ac7_sampling_consistency(Check& check)
{
    gen::Engine rng(1007);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto const data = gen::random_laplace_data(rng);
        auto previous = composition_pmf(data, 1);
        for (std::size_t n = 2; n <= 12; ++n)
        {
            auto current = composition_pmf(data, n);
            check.expect(deletion_projection(current) == previous,
                         "trial " + std::to_string(trial) + ", n=" + str(n));
            previous = std::move(current);
        }
    }
    return "";
}

std::string ac8_samplers(Check& check)
{
    constexpr std::size_t n = 6;
    constexpr std::size_t draws = 100000;
    std::vector<std::pair<char const*, LaplaceExponentData>> cases{
        {"drift", LaplaceExponentData::pure_drift(q(1))},
        {"jump", LaplaceExponentData(q(0), DiscreteMeasure::point_mass(q(1, 2)))},
        {"mixed", LaplaceExponentData(q(1, 2), DiscreteMeasure({{q(1, 2), q(1)}, {q(1), q(1, 4)}}))},
    };
    std::ostringstream detail;
    detail.precision(3);
    gen::Engine rng(1008);
    for (auto const& [name, data] : cases)
    {
        auto const law = composition_pmf(data, n);
        auto run = [&](auto const& sampler, char const* method) {
            std::map<Composition, std::size_t> counts;
            for (std::size_t i = 0; i < draws; ++i)
                ++counts[sampler(rng)];
            auto const report = chi_square_gof(counts, law);
            check.expect(report.pvalue > 1e-3, std::string(name) + "/" + method + " p=" + std::to_string(report.pvalue));
            detail << ' ' << name << '/' << method << " p=" << report.pvalue;
        };
        run(RecursiveCompositionSampler(data, n), "recursive");
        run(PaintboxCompositionSampler(data, n), "paintbox");
    }
    return detail.str().substr(1);
}

std::string ac9_reconstruction(Check& check)
{
    constexpr std::size_t n = 200;
    auto const uniform = FiniteSequence::generate(n, [](std::size_t k) { return q(1, static_cast<long>(k + 1)); });
    auto const steps = hausdorff_reconstruct(uniform, n);
    // Step CDF: value F_m on [m/n, (m+1)/n); compare with x at both ends.
    double sup = 0;
    for (std::size_t m = 0; m < steps.size(); ++m)
    {
        double const value = to_double(steps[m].cumulative);
        double const left = to_double(steps[m].x);
        double const right = m + 1 < steps.size() ? to_double(steps[m + 1].x) : 1.0;
        sup = std::max({sup, std::abs(value - left), std::abs(value - right)});
    }
    check.expect(sup <= 0.02, "sup distance " + std::to_string(sup));

    for (std::size_t k = 1; k <= 60; ++k)
    {
        auto const ones = FiniteSequence::generate(k, [](std::size_t) { return q(1); });
        auto const atom = hausdorff_reconstruct(ones, k);
        bool exact = true;
        for (std::size_t m = 0; m <= k; ++m)
            exact = exact && atom[m].cumulative == (m == k ? q(1) : q(0));
        check.expect(exact, "unit mass at 1 not exact at n=" + str(k));
    }
    std::ostringstream detail;
    detail << "uniform sup distance " << sup;
    return detail.str();
}

std::string ac10_higher_convexity(Check& check)
{
    gen::Engine rng(1010);
    for (std::size_t k = 1; k <= 3; ++k)
    {
        for (int trial = 0; trial < 50; ++trial)
        {
            auto const nu = gen::random_probability(rng);
            auto const c = moments_kconvex_from_nu(nu, k, 12);
            auto const cert = certify_k_alternating(k_associated(c, k));
            check.expect(cert.certified() && cert.depth == 12 + k,
                         "k=" + str(k) + " not certified, trial " + std::to_string(trial));
            if (k == 1)
            {
                check.expect(c == moments_from_nu(nu, 12) && k_associated(c, 1).sequence() == a_from_c(c),
                             "k=1 path differs, trial " + std::to_string(trial));
            }
        }
    }

    std::uniform_real_distribution<double> unit(0.0, 0.95);
    double worst = 0;
    for (int point = 0; point < 20; ++point)
    {
        double const xi = unit(rng);
        std::size_t const k = gen::uniform_index(rng, 1, 5);
        std::size_t const n = gen::uniform_index(rng, 0, 30);
        auto f = [&](double x) {
            return std::pow(x, n) * k * std::pow(x - xi, static_cast<double>(k) - 1)
                   / std::pow(1 - xi, static_cast<double>(k));
        };
        double const numeric = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, xi, 1.0, 15, 1e-14);
        auto const exact = moments_kconvex_from_nu(DiscreteMeasure::point_mass(from_double(xi)), k, n);
        double const rel = std::abs(to_double(exact[n]) - numeric) / numeric;
        worst = std::max(worst, rel);
        check.expect(rel <= 1e-10, "quadrature mismatch " + std::to_string(rel));
    }
    std::ostringstream detail;
    detail << "worst quadrature relative error " << worst;
    return detail.str();
}

std::string ac11_newton(Check& check)
{
    double const linear = newton_interpolate(FiniteSequence{q(0), q(1)}, 2.5);
    check.expect(linear == 2.5, "linear case gave " + std::to_string(linear));
    LaplaceExponentData const data(q(0), DiscreteMeasure::point_mass(q(1, 2)));
    double const value = newton_interpolate(phi_sequence(data, 20), 1.5);
    double const err = std::abs(value - (1 - std::pow(2.0, -1.5)));
    check.expect(err <= 1e-6, "error " + std::to_string(err));
    std::ostringstream detail;
    detail << "error at 1.5: " << err;
    return detail.str();
}

}  // namespace

int main()
{
    std::vector<Criterion> const criteria{
        {"AC1", "difference identities hold exactly (200 sequences, depth 12)", 5, ac1_identities},
        {"AC2", "moments and alternating sequence of 100 mixtures round trip", 0, ac2_round_trip},
        {"AC3", "row condition agrees with alternation on 500 sequences", 0, ac3_df_bridge},
        {"AC4", "Laplace exponents alternate; both scales agree to lambda 20", 0, ac4_exponent},
        {"AC5", "q rows: both formulas agree and sum to 1 (n <= 20, 50 data sets)", 0, ac5_qmatrix},
        {"AC6", "worked example with a single jump atom at 1/2", 1, ac6_worked_example},
        {"AC7", "deletion consistency of exact laws (n <= 12, 20 data sets)", 60, ac7_sampling_consistency},
        {"AC8", "both samplers fit the exact law (1e5 draws, n = 6)", 30, ac8_samplers},
        {"AC9", "moment reconstruction of uniform and unit mass at 1", 0, ac9_reconstruction},
        {"AC10", "k-associated moment sequences are k-alternating (k <= 3)", 0, ac10_higher_convexity},
        {"AC11", "Newton interpolation of the Laplace exponent", 0, ac11_newton},
    };

    int failures = 0;
    for (auto const& c : criteria)
    {
        Check check;
        std::string detail;
        std::string error;
        auto const start = std::chrono::steady_clock::now();
        try
        {
            detail = c.body(check);
        }
        catch (std::exception const& e)
        {
            error = e.what();
        }
        double const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool const too_slow = c.time_limit > 0 && seconds > c.time_limit;
        bool const pass = error.empty() && check.failed() == 0 && !too_slow;
        failures += pass ? 0 : 1;

        std::printf("[%s] %-4s %s (%zu checks, %.2fs", pass ? "PASS" : "FAIL", c.id, c.title, check.checks(),
                    seconds);
        if (c.time_limit > 0)
            std::printf(" of %.0fs allowed", c.time_limit);
        std::printf(")");
        if (!detail.empty())
            std::printf(": %s", detail.c_str());
        std::printf("\n");
        if (!error.empty())
            std::printf("    exception: %s\n", error.c_str());
        if (check.failed() > 0)
            std::printf("    %zu failed checks:%s\n", check.failed(), check.summary().c_str());
        if (too_slow)
            std::printf("    exceeded the time limit\n");
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
