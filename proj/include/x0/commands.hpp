#pragma once

// Implementations of the x0model subcommands. Each returns the process exit code.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cuspdiv.hpp"
#include "invariants.hpp"
#include "minpoly.hpp"
#include "record.hpp"

namespace x0::cli
{

enum ExitCode : int
{
    kOk = 0,
    kVerifyFailed = 1,
    kComputeFailed = 2,
    kBadArguments = 3
};

struct Context
{
    std::filesystem::path cache_dir;
    bool use_cache = true;
    bool json = false;
    std::ostream &out;
    std::ostream &err;
};

namespace detail
{

inline bool check_level(const Context &ctx, std::int64_t N)
{
    if (N < 2) {
        ctx.err << "error: level N must be at least 2, got " << N << "\n";
        return false;
    }
    return true;
}

inline std::string fixed(double x, int digits = 2)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

struct Obtained
{
    PolynomialRecord record;
    bool from_cache = false;
};

inline PolynomialRecord compute_record(std::int64_t N, std::int64_t guard)
{
    const PlaneModel model = compute_plane_model(N, guard);
    const Exponent prec = verification_precision(N, 64);
    if (!verify(N, model.solution.poly, 64)) {
        throw InternalInconsistency("N=" + std::to_string(N) + ": solved polynomial failed re-verification");
    }
    return make_record(model.solution.poly, prec, model.solution.normalization_fallback);
}

/// Loads the record from the cache when allowed; otherwise computes and stores
/// it. A record that cannot be parsed, or (when `check_cached`) fails
/// verification, is recomputed with a warning.
inline Obtained obtain(const Context &ctx, std::int64_t N, std::int64_t guard, bool check_cached)
{
    RecordCache cache(ctx.cache_dir);
    if (ctx.use_cache) {
        try {
            if (auto r = cache.load(N)) {
                if (!check_cached || verify(N, r->to_poly(), 64)) {
                    return {*r, true};
                }
                ctx.err << "warning: cached record " << cache.path_for(N).string()
                        << " failed verification; recomputing\n";
            }
        } catch (const CorruptRecord &e) {
            ctx.err << "warning: corrupt cache record " << cache.path_for(N).string() << " (" << e.what()
                    << "); recomputing\n";
        }
    }
    Obtained o{compute_record(N, guard), false};
    if (ctx.use_cache) {
        cache.store(o.record);
    }
    return o;
}

} // namespace detail

inline int cmd_compute(const Context &ctx, std::int64_t N, std::int64_t guard = kDefaultGuard)
{
    if (!detail::check_level(ctx, N)) {
        return kBadArguments;
    }
    if (guard < 0) {
        ctx.err << "error: guard must be nonnegative\n";
        return kBadArguments;
    }
    const auto t0 = std::chrono::steady_clock::now();
    detail::Obtained o;
    try {
        o = detail::obtain(ctx, N, guard, true);
    } catch (const Error &e) {
        ctx.err << "error: " << e.what() << "\n";
        return kComputeFailed;
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const BivariatePoly P = o.record.to_poly();
    if (ctx.json) {
        ctx.out << serialize(o.record);
    } else {
        ctx.out << P.to_string() << "\n";
    }
    ctx.err << "N=" << N << " bidegree=(" << o.record.bidegree.dx << "," << o.record.bidegree.dy
            << ") psi=" << o.record.psi << " terms=" << o.record.terms.size()
            << " height=" << detail::fixed(log_height(P)) << " source=" << (o.from_cache ? "cache" : "computed")
            << " elapsed=" << detail::fixed(elapsed, 3) << "s\n";
    return kOk;
}

/// `extra_prec` is checked beyond the precision used to solve for P_N.
inline int cmd_verify(const Context &ctx, std::int64_t N, std::int64_t extra_prec = 64)
{
    if (!detail::check_level(ctx, N)) {
        return kBadArguments;
    }
    if (extra_prec < 0) {
        ctx.err << "error: precision must be nonnegative\n";
        return kBadArguments;
    }
    detail::Obtained o;
    try {
        o = detail::obtain(ctx, N, kDefaultGuard, false);
    } catch (const Error &e) {
        ctx.err << "error: " << e.what() << "\n";
        return kComputeFailed;
    }
    const Exponent target = verification_precision(N, extra_prec);
    const auto residual = first_residual(N, o.record.to_poly(), target);
    if (residual) {
        ctx.out << "N=" << N << " verified=false precision=" << target << "\n";
        ctx.out << "first nonzero residual: coefficient of q^" << residual->exponent << " is "
                << residual->coefficient.get_str() << "\n";
        return kVerifyFailed;
    }
    ctx.out << "N=" << N << " verified=true precision=" << target << "\n";
    return kOk;
}

inline int cmd_divisors(const Context &ctx, std::int64_t N)
{
    if (!detail::check_level(ctx, N)) {
        return kBadArguments;
    }
    const auto classes = cusp_classes(N);
    const auto poles = div_inf_f(N);
    auto pole_at = [&](std::int64_t d) -> std::int64_t {
        for (const auto &t : poles) {
            if (t.cusp.d == d) {
                return t.order;
            }
        }
        return 0;
    };
    if (ctx.json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &c : classes) {
            rows.push_back({{"d", c.d},
                            {"multiplicity", c.multiplicity},
                            {"ord_delta", c.ord_delta.get_str()},
                            {"ord_deltaN", c.ord_deltaN.get_str()},
                            {"pole_order_f", pole_at(c.d)}});
        }
        ctx.out << nlohmann::json{{"N", N}, {"cusp_classes", rows}, {"degree_f", degree_f(N)}}.dump(2) << "\n";
        return kOk;
    }
    ctx.out << "N=" << N << " cusp classes c/d (d | N)\n";
    ctx.out << std::setw(8) << "d" << std::setw(14) << "multiplicity" << std::setw(12) << "ord_Delta"
            << std::setw(14) << "ord_DeltaN" << std::setw(12) << "pole_f" << "\n";
    for (const auto &c : classes) {
        ctx.out << std::setw(8) << c.d << std::setw(14) << c.multiplicity << std::setw(12) << c.ord_delta.get_str()
                << std::setw(14) << c.ord_deltaN.get_str() << std::setw(12) << pole_at(c.d) << "\n";
    }
    ctx.out << "deg div_inf(Delta(N.)/Delta)=" << degree_f(N) << "\n";
    return kOk;
}

inline int cmd_invariants(const Context &ctx, std::int64_t N)
{
    if (!detail::check_level(ctx, N)) {
        return kBadArguments;
    }
    CurveInvariants inv;
    try {
        inv = curve_invariants(N);
    } catch (const Error &e) {
        ctx.err << "error: " << e.what() << "\n";
        return kComputeFailed;
    }
    if (ctx.json) {
        ctx.out << nlohmann::json{{"N", inv.N},         {"psi", inv.psi},         {"nu2", inv.nu2},
                                  {"nu3", inv.nu3},     {"nu_inf", inv.nu_inf},   {"genus", inv.genus},
                                  {"dim_M12", inv.dim_M12}, {"deg_CN", inv.deg_CN}}
                       .dump(2)
                << "\n";
        return kOk;
    }
    ctx.out << "N=" << inv.N << " psi=" << inv.psi << " nu2=" << inv.nu2 << " nu3=" << inv.nu3
            << " nu_inf=" << inv.nu_inf << " genus=" << inv.genus << " dim_M12=" << inv.dim_M12
            << " deg_CN=" << inv.deg_CN << "\n";
    return kOk;
}

inline int cmd_certificate(const Context &ctx, std::int64_t N)
{
    if (!detail::check_level(ctx, N)) {
        return kBadArguments;
    }
    DegreeReport r;
    try {
        r = birational_certificate(N);
    } catch (const Error &e) {
        ctx.err << "error: " << e.what() << "\n";
        return kComputeFailed;
    }
    if (ctx.json) {
        ctx.out << nlohmann::json{{"N", r.N},
                                  {"d_f1", r.d_f1},
                                  {"d_f2", r.d_f2},
                                  {"gcd", r.gcd_value},
                                  {"birational", r.birational}}
                       .dump(2)
                << "\n";
        return kOk;
    }
    ctx.out << "d(f1)=" << r.d_f1 << " d(f2)=" << r.d_f2 << " gcd=" << r.gcd_value
            << " birational=" << (r.birational ? "true" : "false") << "\n";
    return kOk;
}

inline int cmd_height(const Context &ctx, std::int64_t N)
{
    if (!detail::check_level(ctx, N)) {
        return kBadArguments;
    }
    detail::Obtained o;
    try {
        o = detail::obtain(ctx, N, kDefaultGuard, true);
    } catch (const Error &e) {
        ctx.err << "error: " << e.what() << "\n";
        return kComputeFailed;
    }
    const HeightReport h = height_report(o.record.to_poly());
    if (ctx.json) {
        nlohmann::json j{{"N", N}, {"ln_height", h.ln_height}, {"log10_height", h.log10_height}};
        if (h.prime_bound) {
            j["prime_bound"] = *h.prime_bound;
            j["within_bound"] = h.ln_height <= *h.prime_bound;
        }
        ctx.out << j.dump(2) << "\n";
        return kOk;
    }
    ctx.out << "N=" << N << " ln_height=" << detail::fixed(h.ln_height, 4)
            << " log10_height=" << detail::fixed(h.log10_height, 4);
    if (h.prime_bound) {
        ctx.out << " bound(6l*ln(l)+18l)=" << detail::fixed(*h.prime_bound, 4)
                << " within_bound=" << (h.ln_height <= *h.prime_bound ? "true" : "false");
    }
    ctx.out << "\n";
    return kOk;
}

} // namespace x0::cli
