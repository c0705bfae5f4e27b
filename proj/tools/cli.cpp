#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ciani/curve.hpp"
#include "ciani/oracle.hpp"
#include "ciani/scan.hpp"
#include "ciani/text.hpp"

namespace ciani::cli {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

int guard(const std::function<void()>& fn, std::ostream& err) {
    try {
        fn();
        return 0;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return 1;
    } catch (const ScanTooLarge& e) {
        err << "refused: " << e.what() << '\n';
        return 3;
    } catch (const CeilingExceeded& e) {
        err << "refused: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

int effective_workers(const RunConfig& cfg) {
    if (cfg.workers > 0) return cfg.workers;
    if (const char* env = std::getenv("CIANI_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;  // library chooses hardware concurrency
}

// Routes output to --out when given, otherwise to the stream.
void deliver(const RunConfig& cfg, std::ostream& fallback, const std::string& payload) {
    if (cfg.out.empty()) {
        fallback << payload;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + cfg.out);
    f << payload;
}

const char* fmt_bool(bool b) { return b ? "true" : "false"; }

std::string fmt_opt_count(const std::optional<uint64_t>& v) {
    return v ? std::to_string(*v) : std::string();
}

// ---- analyze ----

json analyze_json(const AnalysisReport& rep, uint64_t p, int level) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "ciani-analyze";
    j["p"] = p;
    j["level"] = level;
    j["r"] = encode(rep.curve.r());
    j["s"] = encode(rep.curve.s());
    j["t"] = encode(rep.curve.t());
    j["nonsingular"] = rep.nonsingular;
    if (rep.auto_group) j["auto_group"] = to_string(*rep.auto_group);
    if (rep.lambda) {
        j["lambda"] = {encode(rep.lambda->lambda1), encode(rep.lambda->lambda2),
                       encode(rep.lambda->lambda3)};
    }
    if (rep.superspecial) j["superspecial"] = *rep.superspecial;
    if (rep.munu) {
        j["delta"] = encode(rep.munu->delta);
        j["mu"] = {encode(rep.munu->mu1), encode(rep.munu->mu2), encode(rep.munu->mu3)};
        j["nu"] = {encode(rep.munu->nu1), encode(rep.munu->nu2), encode(rep.munu->nu3)};
        j["mu1_square"] = is_square(rep.munu->mu1);
    }
    if (rep.verdict) j["verdict"] = to_string(*rep.verdict);
    if (rep.oracle_count) j["oracle_count"] = *rep.oracle_count;
    return j;
}

std::string analyze_table(const AnalysisReport& rep, uint64_t p, int level) {
    std::ostringstream os;
    os << "schema: ciani-analyze/" << kSchemaVersion << '\n';
    os << "p: " << p << '\n';
    os << "level: " << level << '\n';
    os << "r: " << encode(rep.curve.r()) << '\n';
    os << "s: " << encode(rep.curve.s()) << '\n';
    os << "t: " << encode(rep.curve.t()) << '\n';
    os << "nonsingular: " << fmt_bool(rep.nonsingular) << '\n';
    if (rep.auto_group) os << "auto_group: " << to_string(*rep.auto_group) << '\n';
    if (rep.lambda) {
        os << "lambda1: " << encode(rep.lambda->lambda1) << '\n';
        os << "lambda2: " << encode(rep.lambda->lambda2) << '\n';
        os << "lambda3: " << encode(rep.lambda->lambda3) << '\n';
    }
    if (rep.superspecial) os << "superspecial: " << fmt_bool(*rep.superspecial) << '\n';
    if (rep.munu) {
        os << "delta: " << encode(rep.munu->delta) << '\n';
        os << "mu1: " << encode(rep.munu->mu1) << '\n';
        os << "nu1: " << encode(rep.munu->nu1) << '\n';
        os << "mu2: " << encode(rep.munu->mu2) << '\n';
        os << "nu2: " << encode(rep.munu->nu2) << '\n';
        os << "mu3: " << encode(rep.munu->mu3) << '\n';
        os << "nu3: " << encode(rep.munu->nu3) << '\n';
        os << "mu1_square: " << fmt_bool(is_square(rep.munu->mu1)) << '\n';
    }
    if (rep.verdict) os << "verdict: " << to_string(*rep.verdict) << '\n';
    if (rep.oracle_count) os << "oracle_count: " << *rep.oracle_count << '\n';
    return os.str();
}

constexpr const char* kCensusHeader =
    "p,r,s,t,nonsingular,superspecial,verdict,auto_group,mu1_square,oracle_count";

std::string analyze_csv(const AnalysisReport& rep, uint64_t p) {
    std::ostringstream os;
    os << "# ciani-census schema=" << kSchemaVersion << '\n' << kCensusHeader << '\n';
    os << p << ',' << encode(rep.curve.r()) << ',' << encode(rep.curve.s()) << ','
       << encode(rep.curve.t()) << ',' << fmt_bool(rep.nonsingular) << ','
       << (rep.superspecial ? fmt_bool(*rep.superspecial) : "") << ','
       << (rep.verdict ? to_string(*rep.verdict) : "") << ','
       << (rep.auto_group ? to_string(*rep.auto_group) : "") << ','
       << (rep.munu ? fmt_bool(is_square(rep.munu->mu1)) : "") << ','
       << fmt_opt_count(rep.oracle_count) << '\n';
    return os.str();
}

// ---- census ----

std::string census_csv_row(const CensusRow& r) {
    std::ostringstream os;
    os << r.p << ',' << r.r << ',' << r.s << ',' << r.t << ',' << fmt_bool(r.nonsingular) << ','
       << fmt_bool(r.superspecial) << ',' << to_string(r.verdict) << ','
       << to_string(r.auto_group) << ',' << fmt_bool(r.mu1_square) << ','
       << fmt_opt_count(r.oracle_count) << '\n';
    return os.str();
}

json census_json_row(const CensusRow& r) {
    json j;
    j["p"] = r.p;
    j["r"] = r.r;
    j["s"] = r.s;
    j["t"] = r.t;
    j["nonsingular"] = r.nonsingular;
    j["superspecial"] = r.superspecial;
    j["verdict"] = to_string(r.verdict);
    j["auto_group"] = to_string(r.auto_group);
    j["mu1_square"] = r.mu1_square;
    if (r.oracle_count) j["oracle_count"] = *r.oracle_count;
    return j;
}

json summary_json(const ScanSummary& s) {
    return json{{"scanned", s.scanned},
                {"nonsingular", s.nonsingular},
                {"superspecial", s.superspecial},
                {"maximal", s.maximal},
                {"minimal", s.minimal},
                {"oracle_verified", s.oracle_verified}};
}

std::string summary_line(const ScanSummary& s) {
    std::ostringstream os;
    os << "summary: scanned=" << s.scanned << " nonsingular=" << s.nonsingular
       << " superspecial=" << s.superspecial << " maximal=" << s.maximal
       << " minimal=" << s.minimal << " oracle_verified=" << s.oracle_verified << '\n';
    return os.str();
}

std::string census_payload(const EnumerateResult& res, Format format) {
    std::ostringstream os;
    switch (format) {
        case Format::Csv: {
            os << "# ciani-census schema=" << kSchemaVersion << '\n' << kCensusHeader << '\n';
            for (const CensusRow& r : res.rows) os << census_csv_row(r);
            break;
        }
        case Format::Json: {
            json j;
            j["schema_version"] = kSchemaVersion;
            j["kind"] = "ciani-census";
            j["rows"] = json::array();
            for (const CensusRow& r : res.rows) j["rows"].push_back(census_json_row(r));
            j["summary"] = summary_json(res.summary);
            os << j.dump(2) << '\n';
            break;
        }
        case Format::Table: {
            os << "census (schema " << kSchemaVersion << ")\n";
            os << std::left << std::setw(3) << "p" << std::setw(16) << "r" << std::setw(16) << "s"
               << std::setw(16) << "t" << std::setw(9) << "verdict" << std::setw(6) << "auto"
               << std::setw(11) << "mu1_square" << "count" << '\n';
            for (const CensusRow& r : res.rows) {
                os << std::left << std::setw(3) << r.p << std::setw(16) << r.r << std::setw(16)
                   << r.s << std::setw(16) << r.t << std::setw(9) << to_string(r.verdict)
                   << std::setw(6) << to_string(r.auto_group) << std::setw(11)
                   << fmt_bool(r.mu1_square) << fmt_opt_count(r.oracle_count) << '\n';
            }
            break;
        }
    }
    return os.str();
}

}  // namespace

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guard(
        [&] {
            FieldCtxPtr ctx = make_field(cfg.p, cfg.deg, cfg.d_override);
            CianiCurve c(parse_element(cfg.r, ctx), parse_element(cfg.s, ctx),
                         parse_element(cfg.t, ctx));
            AnalysisReport rep = analyze(c, cfg.oracle);
            std::string payload;
            switch (cfg.format) {
                case Format::Json:
                    payload = analyze_json(rep, cfg.p, cfg.deg).dump(2) + "\n";
                    break;
                case Format::Csv: payload = analyze_csv(rep, cfg.p); break;
                case Format::Table: payload = analyze_table(rep, cfg.p, cfg.deg); break;
            }
            deliver(cfg, out, payload);
        },
        err);
}

int run_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guard(
        [&] {
            if (cfg.deg != 2)
                throw Error("enumerate works over F_{p^2}; --deg must be 2");
            EnumerateOptions opt;
            opt.p = cfg.p;
            opt.d_override = cfg.d_override;
            opt.workers = effective_workers(cfg);
            opt.with_oracle = cfg.oracle;
            opt.oracle_sample = cfg.sample;
            opt.acknowledge_large = cfg.yes_i_know;
            EnumerateResult res = enumerate_census(opt);
            deliver(cfg, out, census_payload(res, cfg.format));
            // the summary goes to the terminal; alongside the census only if
            // the census went to a file
            (cfg.out.empty() ? err : out) << summary_line(res.summary);
        },
        err);
}

int run_scan_ext(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guard(
        [&] {
            ScanExtOptions opt;
            opt.p = cfg.p;
            opt.degree = cfg.deg;
            opt.workers = effective_workers(cfg);
            opt.acknowledge_large = cfg.yes_i_know;
            ScanExtSummary s = scan_ext(opt);
            std::string payload;
            if (cfg.format == Format::Json) {
                json j{{"schema_version", kSchemaVersion},
                       {"kind", "ciani-scan-ext"},
                       {"p", cfg.p},
                       {"degree", cfg.deg},
                       {"scanned", s.scanned},
                       {"nonsingular", s.nonsingular},
                       {"superspecial", s.superspecial},
                       {"superspecial_in_subfield", s.superspecial_in_subfield},
                       {"superspecial_outside_subfield", s.superspecial_outside_subfield}};
                payload = j.dump(2) + "\n";
            } else {
                std::ostringstream os;
                os << "scanned triples: " << s.scanned << '\n';
                os << "nonsingular: " << s.nonsingular << '\n';
                os << "superspecial: " << s.superspecial << '\n';
                os << "in-subfield superspecial curves: " << s.superspecial_in_subfield << '\n';
                os << "outside-subfield superspecial curves: " << s.superspecial_outside_subfield
                   << '\n';
                payload = os.str();
            }
            deliver(cfg, out, payload);
        },
        err);
}

int run_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guard(
        [&] {
            FieldCtxPtr ctx = make_field(cfg.p, cfg.deg, cfg.d_override);
            CianiCurve c(parse_element(cfg.r, ctx), parse_element(cfg.s, ctx),
                         parse_element(cfg.t, ctx));
            PlaneCount pc = count_ciani_points(c, ctx, effective_workers(cfg));
            std::string verdict;
            if (cfg.deg % 2 == 0) verdict = to_string(hw_verdict(pc.count, pc.q, 3));
            std::string payload;
            if (cfg.format == Format::Json) {
                json j{{"schema_version", kSchemaVersion},
                       {"kind", "ciani-count"},
                       {"q", pc.q},
                       {"count", pc.count},
                       {"elapsed_seconds", pc.elapsed_seconds}};
                if (!verdict.empty()) j["hasse_weil"] = verdict;
                payload = j.dump(2) + "\n";
            } else if (cfg.format == Format::Csv) {
                std::ostringstream os;
                os << "# ciani-count schema=" << kSchemaVersion << '\n';
                os << "q,count,hasse_weil,elapsed_seconds\n";
                os << pc.q << ',' << pc.count << ',' << verdict << ',' << pc.elapsed_seconds
                   << '\n';
                payload = os.str();
            } else {
                std::ostringstream os;
                os << "q: " << pc.q << '\n';
                os << "count: " << pc.count << '\n';
                if (!verdict.empty()) os << "hasse_weil: " << verdict << '\n';
                os << "elapsed_seconds: " << pc.elapsed_seconds << '\n';
                payload = os.str();
            }
            deliver(cfg, out, payload);
        },
        err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"analyzer for plane quartics x^4 + y^4 + z^4 + r x^2y^2 + s y^2z^2 + t z^2x^2 "
                 "over quadratic extension fields"};
    app.require_subcommand(1);

    RunConfig cfg;
    uint64_t d_value = 0;
    std::string format = "table";
    std::vector<CLI::Option*> d_opts;

    auto add_common = [&](CLI::App* sub, int default_deg) {
        sub->add_option("--p", cfg.p, "odd prime modulus")->required();
        sub->add_option("--deg", cfg.deg, "tower level of the field (1, 2 or 4)")
            ->default_val(default_deg);
        d_opts.push_back(
            sub->add_option("--d", d_value, "quadratic non-residue mod p for the bottom step"));
        sub->add_option("--workers", cfg.workers,
                        "worker threads (default: CIANI_WORKERS or hardware)");
        sub->add_option("--out", cfg.out, "write the result to this file");
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_flag("--yes-i-know", cfg.yes_i_know, "override the scan budget");
    };
    auto add_rst = [&](CLI::App* sub) {
        sub->add_option("--r", cfg.r, "coefficient of x^2y^2")->required();
        sub->add_option("--s", cfg.s, "coefficient of y^2z^2")->required();
        sub->add_option("--t", cfg.t, "coefficient of z^2x^2")->required();
    };

    CLI::App* analyze = app.add_subcommand(
        "analyze", "full verdict for one curve: nonsingularity, superspeciality, maximality");
    add_common(analyze, 2);
    add_rst(analyze);
    analyze->add_flag("--oracle", cfg.oracle, "verify the verdict by brute-force point count");

    CLI::App* enumerate = app.add_subcommand(
        "enumerate", "scan all p^6 coefficient triples over F_{p^2} and emit the census");
    add_common(enumerate, 2);
    enumerate->add_flag("--oracle", cfg.oracle,
                        "brute-force-count the survivors and check the verdicts");
    enumerate->add_option("--sample", cfg.sample,
                          "verify only this many randomly chosen survivors (0 = all)");

    CLI::App* scanext = app.add_subcommand(
        "scan-ext", "scan all triples over F_{p^4} for superspecial curves outside F_{p^2}");
    add_common(scanext, 4);

    CLI::App* count = app.add_subcommand("count", "brute-force projective point count");
    add_common(count, 2);
    add_rst(count);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    for (CLI::Option* o : d_opts)
        if (o->count() > 0) cfg.d_override = d_value;
    if (format == "json") cfg.format = Format::Json;
    else if (format == "csv") cfg.format = Format::Csv;
    else cfg.format = Format::Table;

    if (analyze->parsed()) return run_analyze(cfg, out, err);
    if (enumerate->parsed()) return run_enumerate(cfg, out, err);
    if (scanext->parsed()) return run_scan_ext(cfg, out, err);
    if (count->parsed()) return run_count(cfg, out, err);
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace ciani::cli
