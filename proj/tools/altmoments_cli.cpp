// Command-line front end for the altmoments library.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "altmoments/altmoments.hpp"

using namespace altmoments;

namespace
{
constexpr std::size_t shard_size = 8192;

//! Input error already formatted for the user.
struct UsageFailure
{
    std::string message;
};

struct Input
{
    std::string name;
    std::string text;
};

Input load_input(std::string const& arg)
{
    auto const first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{'))
        return {"<inline>", arg};
    std::ifstream in(arg, std::ios::binary);
    if (!in)
        throw UsageFailure{"cannot read input file '" + arg + "'"};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return {arg, buffer.str()};
}

SourceLocation location_of_byte(std::string const& text, std::size_t byte)
{
    SourceLocation loc;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i)
    {
        if (text[i] == '\n')
        {
            ++loc.line;
            loc.column = 1;
        }
        else
        {
            ++loc.column;
        }
    }
    return loc;
}

std::string where(Input const& input, SourceLocation loc)
{
    return input.name + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

//! Parse the input and run a decoder, mapping failures to a source position.
template<class F>
auto decode(Input const& input, F&& decoder)
{
    json j;
    try
    {
        j = json::parse(input.text);
    }
    catch (json::parse_error const& e)
    {
        throw UsageFailure{where(input, location_of_byte(input.text, e.byte)) + ": malformed JSON: " + e.what()};
    }
    try
    {
        return decoder(j);
    }
    catch (DecodeError const& e)
    {
        auto const loc = locate_pointer(input.text, e.pointer()).value_or(SourceLocation{});
        throw UsageFailure{where(input, loc) + ": " + e.what()};
    }
}

std::vector<CompositionDistribution> decode_laws(json const& j)
{
    std::vector<CompositionDistribution> laws;
    for (std::size_t i = 0; i < j.size(); ++i)
    {
        auto const pointer = "/" + std::to_string(i);
        laws.push_back(decode_distribution(j[i], pointer));
        if (laws.back().n() != i + 1)
            throw DecodeError("entry " + std::to_string(i) + " must be the law of C_" + std::to_string(i + 1),
                              pointer + "/n");
    }
    return laws;
}

void print(json const& j)
{
    std::cout << j.dump(2) << '\n';
}

//---------------------------------------------------------------------------//
// Options shared by subcommands
//---------------------------------------------------------------------------//
struct Globals
{
    std::size_t cap{default_enumeration_cap};
    std::string scale{"nutilde"};

    MeasureScale measure_scale() const { return scale == "nu" ? MeasureScale::nu : MeasureScale::nutilde; }
};

LaplaceExponentData load_laplace(std::string const& arg, Globals const& g)
{
    auto const input = load_input(arg);
    return decode(input, [&](json const& j) { return decode_laplace_data(j, g.measure_scale()); });
}

//! Laws of C_1..C_n, either enumerated from exponent data or read directly.
std::vector<CompositionDistribution> load_laws(std::string const& arg, std::size_t n, Globals const& g)
{
    auto const input = load_input(arg);
    return decode(input, [&](json const& j) {
        std::vector<CompositionDistribution> laws;
        if (j.is_array())
        {
            laws = decode_laws(j);
            if (laws.size() < n)
                throw DecodeError("need the laws of C_1..C_" + std::to_string(n) + ", got "
                                      + std::to_string(laws.size()),
                                  "");
            laws.erase(laws.begin() + static_cast<std::ptrdiff_t>(n), laws.end());
            return laws;
        }
        auto const data = decode_laplace_data(j, g.measure_scale());
        for (std::size_t k = 1; k <= n; ++k)
            laws.push_back(composition_pmf(data, k, g.cap));
        return laws;
    });
}

//---------------------------------------------------------------------------//
// Subcommands
//---------------------------------------------------------------------------//
struct CertifyArgs
{
    std::string input;
    std::string mode{"cm"};
    std::size_t k{1};
    bool derive{false};
};

int run_certify(CertifyArgs const& args)
{
    auto const input = load_input(args.input);
    auto const seq = decode(input, [](json const& j) { return decode_sequence(j); });
    DepthCertificate cert;
    if (args.mode == "cm")
        cert = certify_completely_monotone(seq);
    else if (args.mode == "ca")
        cert = certify_completely_alternating(args.derive ? a_from_c(seq) : seq);
    else if (args.mode == "df")
        cert = df_condition(seq);
    else
        cert = certify_k_alternating(args.derive ? k_associated(seq, args.k) : KAssociated(args.k, seq));

    auto out = encode(cert);
    out["mode"] = args.mode;
    if (args.mode == "k-alt")
        out["k"] = args.k;
    print(out);
    return cert.certified() ? 0 : 1;
}

struct MomentsArgs
{
    std::string input;
    std::size_t n{};
    std::optional<std::size_t> k;
};

int run_moments(MomentsArgs const& args)
{
    auto const input = load_input(args.input);
    auto const nu = decode(input, [](json const& j) { return decode_measure(j); });
    print(encode(args.k ? moments_kconvex_from_nu(nu, *args.k, args.n) : moments_from_nu(nu, args.n)));
    return 0;
}

struct PhiArgs
{
    std::string input;
    std::optional<std::size_t> n;
    std::optional<double> lam;
};

int run_phi(PhiArgs const& args, Globals const& g)
{
    auto const data = load_laplace(args.input, g);
    if (args.lam)
    {
        std::size_t const nodes = args.n.value_or(30);
        double const value = newton_interpolate(phi_sequence(data, nodes), *args.lam);
        print(json{{"lam", *args.lam}, {"nodes", nodes}, {"value", value}});
        return 0;
    }
    if (!args.n)
        throw UsageFailure{"phi needs --n N or --lam X --interp"};
    print(encode(phi_sequence(data, *args.n)));
    return 0;
}

struct QMatrixArgs
{
    std::string input;
    std::size_t n{};
    std::string method{"fd"};
};

int run_qmatrix(QMatrixArgs const& args, Globals const& g)
{
    auto const data = load_laplace(args.input, g);
    json rows = json::array();
    for (std::size_t m = 1; m <= args.n; ++m)
        rows.push_back(encode(args.method == "fd" ? q_row_fd(data, m) : q_row_integral(data, m)));
    print(json{{"method", args.method}, {"rows", std::move(rows)}});
    return 0;
}

struct PmfArgs
{
    std::string input;
    std::size_t n{};
};

int run_pmf(PmfArgs const& args, Globals const& g)
{
    print(encode(composition_pmf(load_laplace(args.input, g), args.n, g.cap)));
    return 0;
}

struct SampleArgs
{
    std::string input;
    std::size_t n{};
    std::size_t count{};
    std::string method{"recursive"};
    std::optional<std::uint64_t> seed;
    std::size_t threads{1};
    bool gof{false};
    std::string format{"csv"};
};

/*!
 * Draw in fixed-size shards. Each shard has its own engine seeded from
 * (seed, shard index), so the output does not depend on the thread count.
 */
template<class Sampler>
std::vector<Composition> draw_sharded(Sampler const& sampler, std::size_t count, std::uint64_t seed,
                                      std::size_t threads)
{
    std::size_t const shards = (count + shard_size - 1) / shard_size;
    std::vector<std::vector<Composition>> results(shards);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t s = next++; s < shards; s = next++)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(s)};
            std::mt19937_64 rng(seq);
            std::size_t const todo = std::min(shard_size, count - s * shard_size);
            auto& out = results[s];
            out.reserve(todo);
            for (std::size_t i = 0; i < todo; ++i)
                out.push_back(sampler(rng));
        }
    };
    threads = std::max<std::size_t>(1, std::min(threads, shards));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    std::vector<Composition> all;
    all.reserve(count);
    for (auto& shard : results)
        std::move(shard.begin(), shard.end(), std::back_inserter(all));
    return all;
}

int run_sample(SampleArgs const& args, Globals const& g)
{
    auto const data = load_laplace(args.input, g);
    std::uint64_t const seed = args.seed ? *args.seed
                                         : (std::uint64_t{std::random_device{}()} << 32) | std::random_device{}();
    std::size_t threads = args.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : args.threads;

    std::vector<Composition> draws;
    if (args.method == "paintbox")
        draws = draw_sharded(PaintboxCompositionSampler(data, args.n), args.count, seed, threads);
    else
        draws = draw_sharded(RecursiveCompositionSampler(data, args.n), args.count, seed, threads);

    std::optional<ChiSquareReport> report;
    if (args.gof)
    {
        std::map<Composition, std::size_t> counts;
        for (auto const& lambda : draws)
            ++counts[lambda];
        report = chi_square_gof(counts, composition_pmf(data, args.n, g.cap));
    }

    if (args.format == "json")
    {
        json samples = json::array();
        for (auto const& lambda : draws)
            samples.push_back(encode(lambda));
        json out{{"seed", seed},
                 {"n", args.n},
                 {"count", args.count},
                 {"method", args.method},
                 {"samples", std::move(samples)}};
        if (report)
            out["gof"] = encode(*report);
        std::cout << out.dump() << '\n';
        return 0;
    }

    std::string text = "# seed=" + std::to_string(seed) + "\n";
    for (auto const& lambda : draws)
    {
        text += composition_csv_line(lambda);
        text += '\n';
    }
    if (report)
        text += "# gof " + encode(*report).dump() + "\n";
    std::cout << text;
    return 0;
}

struct NArgs
{
    std::string input;
    std::size_t n{};
};

int run_consistency(NArgs const& args, Globals const& g)
{
    if (args.n < 2)
        throw UsageFailure{"consistency needs --n >= 2"};
    auto const laws = load_laws(args.input, args.n, g);
    json out{{"n", args.n}, {"consistent", true}};
    for (std::size_t k = 2; k <= args.n; ++k)
    {
        if (deletion_projection(laws[k - 1]) != laws[k - 2])
        {
            out["consistent"] = false;
            out["failed_at"] = k;
            break;
        }
    }
    print(out);
    return out["consistent"].get<bool>() ? 0 : 1;
}

int run_regeneration(NArgs const& args, Globals const& g)
{
    auto const laws = load_laws(args.input, args.n, g);
    auto const report = regeneration_check(laws, args.n);
    json out{{"n", args.n}, {"passed", report.passed}};
    if (report.violation)
    {
        auto const& v = *report.violation;
        out["violation"] = {{"first_part", v.first_part},
                            {"remainder", encode(v.remainder)},
                            {"conditional", encode(v.conditional)},
                            {"expected", encode(v.expected)}};
    }
    print(out);
    return report.passed ? 0 : 1;
}

struct ReconstructArgs
{
    std::string input;
    std::optional<std::size_t> n;
    std::string format{"csv"};
};

json exact_points(std::vector<CdfStep> const& steps)
{
    json points = json::array();
    for (auto const& s : steps)
        points.push_back({{"x", encode(s.x)}, {"F", encode(s.cumulative)}});
    return points;
}

int run_reconstruct(ReconstructArgs const& args)
{
    auto const input = load_input(args.input);
    auto const c = decode(input, [](json const& j) { return decode_sequence(j); });
    std::size_t const n = args.n.value_or(c.depth());
    auto const steps = hausdorff_reconstruct(c, n);
    if (args.format == "json")
        print(json{{"n", n}, {"points", exact_points(steps)}});
    else
        std::cout << reconstruction_csv(steps);
    return 0;
}

struct CdfArgs
{
    std::string input;
    std::size_t grid{10};
    std::string format{"csv"};
};

int run_cdf(CdfArgs const& args)
{
    auto const input = load_input(args.input);
    auto const nu = decode(input, [](json const& j) { return decode_measure(j); });
    ConvexCdf const F(nu);
    std::vector<CdfStep> points;
    Rational const g{static_cast<unsigned long>(args.grid)};
    for (std::size_t i = 0; i <= args.grid; ++i)
    {
        Rational x = Rational{static_cast<unsigned long>(i)} / g;
        auto value = cdf_eval(F, x);
        points.push_back({std::move(x), std::move(value)});
    }
    if (args.format == "json")
        print(json{{"grid", args.grid}, {"points", exact_points(points)}});
    else
        std::cout << reconstruction_csv(points);
    return 0;
}

struct AllocateArgs
{
    std::string input;
    std::size_t n{};
    std::optional<std::uint64_t> seed;
};

int run_allocate(AllocateArgs const& args)
{
    auto const input = load_input(args.input);
    auto const breakpoints = decode(input, [](json const& j) { return decode_rational_list(j); });
    std::uint64_t const seed = args.seed ? *args.seed
                                         : (std::uint64_t{std::random_device{}()} << 32) | std::random_device{}();
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    std::mt19937_64 rng(seq);
    auto const allocation = definetti_allocation(breakpoints, args.n, rng);
    print(json{{"seed", seed}, {"n", args.n}, {"counts", allocation.counts}, {"residual", allocation.residual}});
    return 0;
}

//---------------------------------------------------------------------------//
int guarded(std::function<int()> const& action)
{
    try
    {
        return action();
    }
    catch (UsageFailure const& e)
    {
        std::cerr << "error: " << e.message << '\n';
    }
    catch (CertificationError const& e)
    {
        // The input failed the property the operation requires.
        print(encode(e.certificate()));
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (ResourceError const& e)
    {
        std::cerr << "error: " << e.what() << "; raise it with --cap or ALTMOMENTS_CAP\n";
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Completely alternating sequences, convex distributions and regenerative compositions"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--cap", g.cap, "Largest n for exact composition enumeration")
        ->envname("ALTMOMENTS_CAP")
        ->check(CLI::PositiveNumber);
    app.add_option("--scale", g.scale, "Convention for Levy measure input")
        ->check(CLI::IsMember({"nu", "nutilde"}));

    std::function<int()> action;
    auto const formats = CLI::IsMember({"csv", "json"});

    CertifyArgs certify;
    auto* cmd = app.add_subcommand("certify", "Certify a sequence property to its available depth");
    cmd->add_option("input", certify.input, "Sequence file or inline JSON")->required();
    cmd->add_option("--mode", certify.mode)->check(CLI::IsMember({"cm", "ca", "df", "k-alt"}));
    cmd->add_option("--k", certify.k, "Order for k-alt")->check(CLI::PositiveNumber);
    cmd->add_flag("--derive", certify.derive, "Input is a moment sequence c; check the sequence derived from it");
    cmd->callback([&] { action = [&] { return run_certify(certify); }; });

    MomentsArgs moments;
    cmd = app.add_subcommand("moments", "Moments of the mixture defined by a mixing measure");
    cmd->add_option("input", moments.input, "Measure file or inline JSON")->required();
    cmd->add_option("--n", moments.n, "Depth")->required();
    cmd->add_option("--k", moments.k, "Power of the mixture kernel")->check(CLI::PositiveNumber);
    cmd->callback([&] { action = [&] { return run_moments(moments); }; });

    PhiArgs phi_args;
    bool interp = false;
    cmd = app.add_subcommand("phi", "Laplace exponent at integers, or interpolated");
    cmd->add_option("input", phi_args.input, "Exponent data file or inline JSON")->required();
    cmd->add_option("--n", phi_args.n, "Depth, or number of interpolation nodes");
    auto* lam = cmd->add_option("--lam", phi_args.lam, "Real argument")->check(CLI::NonNegativeNumber);
    auto* interp_flag = cmd->add_flag("--interp", interp, "Newton interpolation through Phi(0..n)");
    lam->needs(interp_flag);
    interp_flag->needs(lam);
    cmd->callback([&] { action = [&] { return run_phi(phi_args, g); }; });

    QMatrixArgs qmatrix;
    cmd = app.add_subcommand("qmatrix", "Rows 1..n of the first-part distribution");
    cmd->add_option("input", qmatrix.input, "Exponent data file or inline JSON")->required();
    cmd->add_option("--n", qmatrix.n)->required()->check(CLI::PositiveNumber);
    cmd->add_option("--method", qmatrix.method)->check(CLI::IsMember({"fd", "integral"}));
    cmd->callback([&] { action = [&] { return run_qmatrix(qmatrix, g); }; });

    PmfArgs pmf;
    cmd = app.add_subcommand("pmf", "Exact law of the composition of n");
    cmd->add_option("input", pmf.input, "Exponent data file or inline JSON")->required();
    cmd->add_option("--n", pmf.n)->required()->check(CLI::PositiveNumber);
    cmd->callback([&] { action = [&] { return run_pmf(pmf, g); }; });

    SampleArgs sample;
    cmd = app.add_subcommand("sample", "Draw random compositions of n");
    cmd->add_option("input", sample.input, "Exponent data file or inline JSON")->required();
    cmd->add_option("--n", sample.n)->required()->check(CLI::PositiveNumber);
    cmd->add_option("--count", sample.count)->required()->check(CLI::PositiveNumber);
    cmd->add_option("--method", sample.method)->check(CLI::IsMember({"recursive", "paintbox"}));
    cmd->add_option("--seed", sample.seed, "Random seed (echoed in the output)");
    cmd->add_option("--threads", sample.threads, "Worker threads, 0 for all cores");
    cmd->add_flag("--gof", sample.gof, "Chi-square test against the exact law");
    cmd->add_option("--format", sample.format)->check(formats);
    cmd->callback([&] { action = [&] { return run_sample(sample, g); }; });

    NArgs consistency;
    cmd = app.add_subcommand("consistency", "Check deletion consistency of C_1..C_n");
    cmd->add_option("input", consistency.input, "Exponent data or a list of laws")->required();
    cmd->add_option("--n", consistency.n)->required();
    cmd->callback([&] { action = [&] { return run_consistency(consistency, g); }; });

    NArgs regeneration;
    cmd = app.add_subcommand("regeneration", "Check the regenerative property of C_n");
    cmd->add_option("input", regeneration.input, "Exponent data or a list of laws")->required();
    cmd->add_option("--n", regeneration.n)->required()->check(CLI::PositiveNumber);
    cmd->callback([&] { action = [&] { return run_regeneration(regeneration, g); }; });

    ReconstructArgs reconstruct;
    cmd = app.add_subcommand("reconstruct", "Approximate a distribution from its moments");
    cmd->add_option("input", reconstruct.input, "Sequence file or inline JSON")->required();
    cmd->add_option("--n", reconstruct.n, "Order (default: depth of the input)")->check(CLI::PositiveNumber);
    cmd->add_option("--format", reconstruct.format)->check(formats);
    cmd->callback([&] { action = [&] { return run_reconstruct(reconstruct); }; });

    CdfArgs cdf;
    cmd = app.add_subcommand("cdf", "Evaluate a convex CDF on a grid");
    cmd->add_option("input", cdf.input, "Measure file or inline JSON")->required();
    cmd->add_option("--grid", cdf.grid, "Number of grid intervals")->check(CLI::PositiveNumber);
    cmd->add_option("--format", cdf.format)->check(formats);
    cmd->callback([&] { action = [&] { return run_cdf(cdf); }; });

    AllocateArgs allocate;
    cmd = app.add_subcommand("allocate", "Allocate n uniforms to the intervals of given breakpoints");
    cmd->add_option("input", allocate.input, "Breakpoint list file or inline JSON")->required();
    cmd->add_option("--n", allocate.n)->required();
    cmd->add_option("--seed", allocate.seed, "Random seed (echoed in the output)");
    cmd->callback([&] { action = [&] { return run_allocate(allocate); }; });

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return guarded(action);
}
