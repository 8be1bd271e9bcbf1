// Command-line front end. One subcommand per operation group, JSON (or
// flattened text) on stdout, diagnostics on stderr.
//
// Exit codes:
//   0  success
//   1  domain error: bad flags, unparsable input, violated precondition
//   2  unresolved verdict (the decision procedure ran out of budget)
//   3  internal check failure: a verified invariant did not hold
#pragma once

#include "certificate.hpp"
#include "dynamics.hpp"
#include "parse.hpp"
#include "search.hpp"
#include "serialize.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace orbita::cli {

inline constexpr std::uint64_t DEFAULT_BUDGET = 100'000'000;

/// ORBITA_BUDGET caps enumeration sizes; an explicit --budget flag wins.
inline std::uint64_t env_budget() {
    const char* s = std::getenv("ORBITA_BUDGET");
    if (s == nullptr || *s == '\0') return DEFAULT_BUDGET;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == nullptr || *end != '\0')
        throw DomainError("ORBITA_BUDGET must be a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

namespace detail {

struct GlobalOpts {
    std::string format = "json";
    std::uint64_t seed = 0;
};

struct MapOpts {
    std::string path;
    std::string inline_text;

    std::string text() const {
        if (path.empty() == inline_text.empty())
            throw DomainError("provide exactly one of --map or --map-text");
        if (!path.empty()) {
            std::ifstream in(path);
            if (!in) throw DomainError("cannot read map file: " + path);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }
        return inline_text;
    }

    PolyMap load() const { return parse_map(text()); }
};

struct DecideOpts {
    std::string bound = "auto";
    std::size_t cap_bits = 4096;
    std::size_t max_primes = 25;

    DecideConfig config() const {
        DecideConfig c;
        if (bound == "auto")
            c.bound_source = BoundSource::Auto;
        else if (bound == "divisor")
            c.bound_source = BoundSource::Divisor;
        else if (bound == "plane")
            c.bound_source = BoundSource::Plane;
        else
            c.bound_source = BoundSource::Elementary;
        c.cap_bits = cap_bits;
        c.max_primes = max_primes;
        return c;
    }
};

struct FamilyOpts {
    std::size_t dim = 1;
    std::uint64_t degree = 1;
    std::int64_t coeff_bound = 1;
    std::int64_t point_box = 1;
    bool linear_only = false;

    FamilySpec spec() const { return {dim, degree, coeff_bound, point_box, linear_only}; }
};

inline void add_map_opts(CLI::App* sub, MapOpts& m) {
    sub->add_option("--map", m.path, "map file")->check(CLI::ExistingFile);
    sub->add_option("--map-text", m.inline_text, "map given inline");
}

inline void add_decide_opts(CLI::App* sub, DecideOpts& d) {
    sub->add_option("--bound-source", d.bound, "candidate bound to use")
        ->check(CLI::IsMember({"auto", "divisor", "plane", "elementary"}));
    sub->add_option("--cap-bits", d.cap_bits, "coordinate bit budget for exact iteration");
    sub->add_option("--max-primes", d.max_primes, "escalation ceiling on modular filters");
}

inline void add_family_opts(CLI::App* sub, FamilyOpts& f, bool with_dim = true) {
    if (with_dim) sub->add_option("--dim", f.dim, "ambient dimension")->required();
    sub->add_option("--degree", f.degree, "maximal total degree");
    sub->add_option("--coeff-bound", f.coeff_bound, "coefficient box radius");
    sub->add_option("--point-box", f.point_box, "seed point box radius");
    sub->add_flag("--linear-only", f.linear_only, "enumerate affine maps only");
}

inline void emit(const Json& j, const GlobalOpts& g, std::ostream& out) {
    if (g.format == "text")
        render_text(j, out);
    else
        out << j.dump(2) << "\n";
}

}  // namespace detail

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"integral orbit toolkit for polynomial self-maps of affine space", "orbita"};
    app.require_subcommand(1);

    auto g = std::make_shared<detail::GlobalOpts>();
    app.add_option("--format", g->format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--seed", g->seed, "seed for sampled sweeps")->capture_default_str();

    int rc = 0;

    {  // parse: canonicalize a map
        auto sub = app.add_subcommand("parse", "parse a map and print its canonical form");
        auto m = std::make_shared<detail::MapOpts>();
        detail::add_map_opts(sub, *m);
        sub->callback([&, g, m] {
            const PolyMap f = m->load();
            Json j;
            j["map"] = print_map(f);
            j["dim"] = f.dim;
            j["degree"] = f.degree();
            detail::emit(j, *g, out);
        });
    }

    {  // eval: one application of the map, exact or mod p
        auto sub = app.add_subcommand("eval", "evaluate the map at a point");
        auto m = std::make_shared<detail::MapOpts>();
        auto point = std::make_shared<std::string>();
        auto prime = std::make_shared<std::int64_t>(0);
        detail::add_map_opts(sub, *m);
        sub->add_option("--point", *point, "point, e.g. \"(1, 0)\"")->required();
        sub->add_option("--prime", *prime, "evaluate modulo this prime");
        sub->callback([&, g, m, point, prime, sub] {
            const PolyMap f = m->load();
            const Point P = parse_point(*point, f.dim);
            Json j;
            if (sub->count("--prime") > 0) {
                j["point"] = json_of(eval_map_mod(f, reduce_point(P, *prime), *prime));
                j["prime"] = *prime;
            } else {
                j["point"] = json_of(eval_map(f, P));
            }
            detail::emit(j, *g, out);
        });
    }

    {  // period: full orbit report
        auto sub = app.add_subcommand("period", "decide periodicity and report the orbit");
        auto m = std::make_shared<detail::MapOpts>();
        auto point = std::make_shared<std::string>();
        auto d = std::make_shared<detail::DecideOpts>();
        detail::add_map_opts(sub, *m);
        sub->add_option("--point", *point, "point to test")->required();
        detail::add_decide_opts(sub, *d);
        sub->callback([&, g, m, point, d] {
            const PolyMap f = m->load();
            const OrbitReport rep = orbit_report(f, parse_point(*point, f.dim), d->config());
            detail::emit(json_of(rep), *g, out);
            if (rep.verdict == Verdict::Unresolved) rc = 2;
        });
    }

    {  // decide: verdict and certificate only
        auto sub = app.add_subcommand("decide", "decide periodicity with a certificate");
        auto m = std::make_shared<detail::MapOpts>();
        auto point = std::make_shared<std::string>();
        auto d = std::make_shared<detail::DecideOpts>();
        detail::add_map_opts(sub, *m);
        sub->add_option("--point", *point, "point to test")->required();
        detail::add_decide_opts(sub, *d);
        sub->callback([&, g, m, point, d] {
            const PolyMap f = m->load();
            const Decision dec = decide_periodic(f, parse_point(*point, f.dim), d->config());
            detail::emit(json_of(dec), *g, out);
            if (dec.verdict == Verdict::Unresolved) rc = 2;
        });
    }

    {  // decompose: period factorization certificate at a prime
        auto sub = app.add_subcommand("decompose", "factor the period through the local period");
        auto m = std::make_shared<detail::MapOpts>();
        auto point = std::make_shared<std::string>();
        auto prime = std::make_shared<std::int64_t>();
        auto d = std::make_shared<detail::DecideOpts>();
        detail::add_map_opts(sub, *m);
        sub->add_option("--point", *point, "periodic point")->required();
        sub->add_option("--prime", *prime, "prime to decompose at")->required();
        detail::add_decide_opts(sub, *d);
        sub->callback([&, g, m, point, prime, d] {
            const PolyMap f = m->load();
            const DecompositionCertificate cert =
                decompose(f, parse_point(*point, f.dim), *prime, d->config());
            detail::emit(json_of(cert), *g, out);
            if (!cert.checks.all_pass) {
                err << "certificate check failed\n";
                rc = 3;
            }
        });
    }

    {  // verify-lemma: exhaustive idempotent-power sweep
        auto sub = app.add_subcommand("verify-lemma",
                                      "sweep all matrices over F_p for the idempotent-power bound");
        auto dim = std::make_shared<std::size_t>();
        auto prime = std::make_shared<std::int64_t>();
        auto jobs = std::make_shared<unsigned>(1);
        auto budget = std::make_shared<std::uint64_t>(0);
        auto maxw = std::make_shared<std::size_t>(4);
        sub->add_option("--dim", *dim, "matrix size")->required();
        sub->add_option("--prime", *prime, "field characteristic")->required();
        sub->add_option("--jobs", *jobs, "worker threads");
        sub->add_option("--budget", *budget, "enumeration budget override");
        sub->add_option("--max-witnesses", *maxw, "witnesses to include in the output");
        sub->callback([&, g, dim, prime, jobs, budget, maxw] {
            SweepConfig cfg;
            cfg.jobs = *jobs;
            cfg.budget = *budget != 0 ? *budget : env_budget();
            const LemmaSweepReport rep = verify_lemma(*dim, *prime, cfg);
            Json j = json_of(rep);
            while (j["witnesses"].size() > *maxw)
                j["witnesses"].erase(j["witnesses"].size() - 1);
            detail::emit(j, *g, out);
            if (!rep.ok) {
                err << "bound violated: max_g exceeds p^n - 1\n";
                rc = 3;
            }
        });
    }

    {  // bounds
        auto sub = app.add_subcommand("bounds", "period bounds for a dimension");
        auto dim = std::make_shared<std::size_t>();
        sub->add_option("--dim", *dim, "ambient dimension")->required();
        sub->callback([&, g, dim] { detail::emit(json_of(bounds_report(*dim)), *g, out); });
    }

    {  // candidates
        auto sub = app.add_subcommand("candidates", "candidate orbit sizes for a dimension");
        auto dim = std::make_shared<std::size_t>();
        auto sharp = std::make_shared<bool>(false);
        sub->add_option("--dim", *dim, "ambient dimension")->required();
        sub->add_flag("--sharp", *sharp, "use the exact attainable set where known");
        sub->callback([&, g, dim, sharp] {
            Json j;
            j["dim"] = *dim;
            j["sharp"] = *sharp;
            j["candidates"] = candidate_periods(*dim, *sharp);
            detail::emit(j, *g, out);
        });
    }

    {  // census
        auto sub = app.add_subcommand("census", "sweep a family and tally orbit sizes");
        auto fam = std::make_shared<detail::FamilyOpts>();
        auto d = std::make_shared<detail::DecideOpts>();
        auto jobs = std::make_shared<unsigned>(1);
        auto budget = std::make_shared<std::uint64_t>(0);
        auto checkpoint = std::make_shared<std::string>();
        auto resume = std::make_shared<bool>(false);
        auto stop_after = std::make_shared<std::uint64_t>(0);
        auto sample = std::make_shared<std::uint64_t>(0);
        detail::add_family_opts(sub, *fam);
        detail::add_decide_opts(sub, *d);
        sub->add_option("--jobs", *jobs, "worker threads");
        sub->add_option("--budget", *budget, "enumeration budget override");
        sub->add_option("--checkpoint", *checkpoint, "checkpoint file to write after each chunk");
        sub->add_flag("--resume", *resume, "continue from the checkpoint file");
        sub->add_option("--stop-after", *stop_after, "pause after this many pairs");
        sub->add_option("--sample-pairs", *sample, "decide a seeded random sample instead");
        sub->callback([&, g, fam, d, jobs, budget, checkpoint, resume, stop_after, sample] {
            const FamilySpec spec = fam->spec();
            CensusConfig cfg;
            cfg.jobs = *jobs;
            cfg.budget = *budget != 0 ? *budget : env_budget();
            cfg.decide = d->config();
            cfg.stop_after = *stop_after;
            cfg.sample_pairs = *sample;
            cfg.seed = g->seed;
            CensusState resumed;
            if (*resume) {
                if (checkpoint->empty()) throw DomainError("--resume requires --checkpoint");
                std::ifstream in(*checkpoint);
                if (!in) throw DomainError("cannot read checkpoint file: " + *checkpoint);
                auto [fam_saved, state] = checkpoint_from_json(Json::parse(in));
                if (!(fam_saved == spec))
                    throw DomainError("checkpoint was written for a different family");
                resumed = std::move(state);
                cfg.resume = &resumed;
            }
            if (!checkpoint->empty()) {
                cfg.checkpoint_sink = [checkpoint, spec](const CensusState& st) {
                    std::ofstream f(*checkpoint, std::ios::trunc);
                    f << checkpoint_to_json(spec, st).dump(2) << "\n";
                };
            }
            detail::emit(json_of(census(spec, cfg)), *g, out);
        });
    }

    {  // max-order
        auto sub = app.add_subcommand("max-order", "largest finite order in GL_n(Z)");
        auto n = std::make_shared<std::size_t>();
        sub->add_option("--n", *n, "matrix size")->required();
        sub->callback([&, g, n] {
            Json j;
            j["n"] = *n;
            j["max_order"] = max_order_gl(*n);
            detail::emit(j, *g, out);
        });
    }

    {  // open-question
        auto sub = app.add_subcommand(
            "open-question", "census maximum versus the largest finite order in GL_{N+1}(Z)");
        auto fam = std::make_shared<detail::FamilyOpts>();
        auto d = std::make_shared<detail::DecideOpts>();
        auto jobs = std::make_shared<unsigned>(1);
        auto budget = std::make_shared<std::uint64_t>(0);
        detail::add_family_opts(sub, *fam);
        detail::add_decide_opts(sub, *d);
        sub->add_option("--jobs", *jobs, "worker threads");
        sub->add_option("--budget", *budget, "enumeration budget override");
        sub->callback([&, g, fam, d, jobs, budget] {
            CensusConfig cfg;
            cfg.jobs = *jobs;
            cfg.budget = *budget != 0 ? *budget : env_budget();
            cfg.decide = d->config();
            cfg.seed = g->seed;
            detail::emit(json_of(open_question_report(fam->spec(), cfg)), *g, out);
        });
    }

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const InternalCheckError& e) {
        err << "internal check failed: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

}  // namespace orbita::cli
