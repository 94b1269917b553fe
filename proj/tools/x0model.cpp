// x0model: plane models of the modular curves X_0(N).
//
//   x0model compute 5              print P_5 (cached under --cache-dir)
//   x0model verify 4 --prec 100    check P_4(j, Delta(4.)/Delta) = 0 further out
//   x0model certificate 5          pole degrees and the birationality verdict

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <x0/commands.hpp>

int main(int argc, char **argv)
{
    CLI::App app{"Plane models of the modular curves X_0(N)", "x0model"};
    app.set_version_flag("--version", X0MODEL_VERSION);
    app.require_subcommand(1);

    std::optional<std::string> cache_dir;
    app.add_option("--cache-dir", cache_dir,
                   std::string("Record cache directory (default: $") + x0::kCacheDirEnv +
                       ", then $XDG_CACHE_HOME/x0model, then ~/.cache/x0model)");

    std::int64_t N = 0;
    std::int64_t guard = x0::kDefaultGuard;
    std::int64_t prec = 64;
    bool no_cache = false;
    bool json = false;

    auto *compute = app.add_subcommand("compute", "Compute, verify and cache P_N");
    compute->add_option("N", N, "Level")->required();
    compute->add_option("--guard", guard, "Extra rows beyond the column count")->capture_default_str();
    compute->add_flag("--no-cache", no_cache, "Neither read nor write the cache");
    compute->add_flag("--json", json, "Print the full record instead of the polynomial");

    auto *verify = app.add_subcommand("verify", "Check P_N(j, Delta(N.)/Delta) = 0 to higher q-precision");
    verify->add_option("N", N, "Level")->required();
    verify->add_option("--prec", prec, "Extra q-precision beyond the solving precision")->capture_default_str();
    verify->add_flag("--no-cache", no_cache, "Neither read nor write the cache");

    auto *divisors = app.add_subcommand("divisors", "Cusp classes and the divisors of Delta, Delta(N.)");
    divisors->add_option("N", N, "Level")->required();
    divisors->add_flag("--json", json, "Structured output");

    auto *invariants = app.add_subcommand("invariants", "psi, elliptic points, cusps, genus, dim M_12");
    invariants->add_option("N", N, "Level")->required();
    invariants->add_flag("--json", json, "Structured output");

    auto *certificate = app.add_subcommand("certificate", "Pole degrees d(f1), d(f2) and their gcd");
    certificate->add_option("N", N, "Level")->required();
    certificate->add_flag("--json", json, "Structured output");

    auto *height = app.add_subcommand("height", "Logarithmic height of P_N");
    height->add_option("N", N, "Level")->required();
    height->add_flag("--no-cache", no_cache, "Neither read nor write the cache");
    height->add_flag("--json", json, "Structured output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : x0::cli::kBadArguments;
    }

    x0::cli::Context ctx{x0::resolve_cache_dir(cache_dir), !no_cache, json, std::cout, std::cerr};
    try {
        if (*compute) {
            return x0::cli::cmd_compute(ctx, N, guard);
        }
        if (*verify) {
            return x0::cli::cmd_verify(ctx, N, prec);
        }
        if (*divisors) {
            return x0::cli::cmd_divisors(ctx, N);
        }
        if (*invariants) {
            return x0::cli::cmd_invariants(ctx, N);
        }
        if (*certificate) {
            return x0::cli::cmd_certificate(ctx, N);
        }
        if (*height) {
            return x0::cli::cmd_height(ctx, N);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return x0::cli::kComputeFailed;
    }
    return x0::cli::kBadArguments;
}
