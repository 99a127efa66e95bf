#include "abelkit/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "abelkit/counting.hpp"
#include "abelkit/picard3.hpp"

namespace abelkit::cli {

using nlohmann::json;

namespace {

json gram_json(const BinaryLattice& f)
{
    return json::array({f.a, f.b, f.c});
}

json counts_json(const DecompCounts& c)
{
    return {{"delta", c.delta}, {"delta_tilde", c.delta_tilde}, {"delta0", c.delta0}};
}

BinaryLattice lattice_from(const std::vector<int64_t>& gram)
{
    if (gram.size() != 3)
        throw std::domain_error("--gram expects three comma-separated integers a,b,c");
    BinaryLattice f{gram[0], gram[1], gram[2]};
    if (!f.is_positive_definite())
        throw std::domain_error("gram must define a positive-definite lattice");
    return f;
}

int64_t guard_from_env()
{
    const char* env = std::getenv("ABELKIT_MAX_BRUTE");
    if (env == nullptr)
        return kDefaultGuard;
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
        throw std::domain_error("ABELKIT_MAX_BRUTE must be a positive integer");
    return static_cast<int64_t>(v);
}

// One CSV row of the fixed lattice/class schema.
struct CsvRow {
    std::string a, b, c, det, content, disc_order, genus_size, proper_genus;
    std::string delta, delta_tilde, delta0;
};

constexpr const char* kCsvHeader =
    "a,b,c,det,content,disc_order,genus_size,proper_genus,delta,delta_tilde,delta0";

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows)
{
    out << kCsvHeader << "\n";
    for (const auto& r : rows)
        out << r.a << "," << r.b << "," << r.c << "," << r.det << "," << r.content
            << "," << r.disc_order << "," << r.genus_size << "," << r.proper_genus
            << "," << r.delta << "," << r.delta_tilde << "," << r.delta0 << "\n";
}

CsvRow lattice_row(const BinaryLattice& f, const GenusReport& rep, const DecompCounts& c)
{
    CsvRow row;
    row.a = std::to_string(f.a);
    row.b = std::to_string(f.b);
    row.c = std::to_string(f.c);
    row.det = std::to_string(f.det());
    row.content = std::to_string(f.content());
    row.disc_order = std::to_string(global_order(f));
    row.genus_size = std::to_string(rep.g_count);
    row.proper_genus = std::to_string(rep.proper_count);
    row.delta = std::to_string(c.delta);
    row.delta_tilde = std::to_string(c.delta_tilde);
    row.delta0 = std::to_string(c.delta0);
    return row;
}

struct Request {
    std::string format = "text";
    int64_t guard = kDefaultGuard;
};

json finish_record(json inputs, json results, json oracle, int64_t ms,
                   const std::string& command)
{
    return {{"command", command},
            {"inputs", std::move(inputs)},
            {"results", std::move(results)},
            {"oracle_agreement", std::move(oracle)},
            {"timing_ms", ms}};
}

class Timer {
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

public:
    int64_t ms() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }
};

int emit_count(const Request& req, int picard, int64_t n,
               const std::vector<int64_t>& gram, std::ostream& out)
{
    Timer timer;
    SurfaceSpec spec;
    json inputs{{"picard", picard}};
    if (picard == 2) {
        spec = SurfaceSpec::rho2();
    } else if (picard == 3) {
        if (n < 1)
            throw std::domain_error("picard 3 requires --N >= 1");
        spec = SurfaceSpec::rho3(n);
        inputs["N"] = n;
    } else if (picard == 4) {
        spec = SurfaceSpec::rho4(lattice_from(gram));
        inputs["gram"] = gram_json(spec.transcendental);
    } else {
        throw std::domain_error("--picard must be 2, 3 or 4");
    }
    DecompCounts c = count(spec, req.guard);
    json results = counts_json(c);
    if (picard == 4) {
        GenusReport rep = genus_of(spec.transcendental, req.guard);
        json members = json::array(), amb = json::array(), imgs = json::array();
        for (size_t i = 0; i < rep.members.size(); i++) {
            members.push_back(gram_json(rep.members[i]));
            amb.push_back(static_cast<bool>(rep.ambiguous[i]));
            imgs.push_back(rep.image_orders[i]);
        }
        results["genus"] = {{"members", members},
                            {"ambiguous", amb},
                            {"image_orders", imgs},
                            {"disc_order", global_order(spec.transcendental)},
                            {"genus_size", rep.g_count},
                            {"proper_genus", rep.proper_count}};
    }
    json record = finish_record(inputs, results, json::object(), timer.ms(), "count");

    if (req.format == "json") {
        out << record.dump(2) << "\n";
    } else if (req.format == "csv") {
        CsvRow row;
        if (picard == 4) {
            row = lattice_row(spec.transcendental, genus_of(spec.transcendental, req.guard), c);
        } else {
            row.delta = std::to_string(c.delta);
            row.delta_tilde = std::to_string(c.delta_tilde);
            row.delta0 = std::to_string(c.delta0);
        }
        write_csv(out, {row});
    } else {
        out << "picard " << picard;
        if (picard == 3)
            out << "  N = " << n;
        if (picard == 4)
            out << "  T = " << spec.transcendental << "  det = " << spec.transcendental.det();
        out << "\n";
        out << "delta = " << c.delta << "  delta_tilde = " << c.delta_tilde
            << "  delta0 = " << c.delta0 << "\n";
        if (picard == 4) {
            GenusReport rep = genus_of(spec.transcendental, req.guard);
            out << "genus (" << rep.g_count << " classes, proper " << rep.proper_count
                << ", |O(D)| = " << global_order(spec.transcendental) << "):";
            for (size_t i = 0; i < rep.members.size(); i++)
                out << " " << rep.members[i] << (rep.ambiguous[i] ? "*" : "")
                    << "[im " << rep.image_orders[i] << "]";
            out << "\n";
        }
    }
    return kOk;
}

int emit_tables(const Request& req, const std::string& which, int64_t max_det,
                std::ostream& out)
{
    Timer timer;
    json rows = json::array();
    std::vector<CsvRow> csv;
    std::ostringstream text;

    if (which == "cn1") {
        if (max_det < 164)
            throw guard_error(164);
        for (int64_t det = 3; det <= max_det; det++) {
            for (const auto& f : enumerate_reduced(det, true)) {
                if (f.b < 0)
                    continue;
                DecompCounts c = count(SurfaceSpec::rho4(f), req.guard);
                if (c.delta_tilde != 1)
                    continue;
                GenusReport rep = genus_of(f, req.guard);
                bool hcheck = class_number(-det) == 1;
                rows.push_back({{"gram", gram_json(f)},
                                {"det", det},
                                {"counts", counts_json(c)},
                                {"class_number_is_1", hcheck}});
                csv.push_back(lattice_row(f, rep, c));
                text << f << " det " << det << " delta " << c.delta << " h1 "
                     << (hcheck ? "ok" : "FAIL") << "\n";
            }
        }
    } else if (which == "cn2") {
        if (max_det < 748)
            throw guard_error(748);
        for (int64_t d = 3; d <= max_det; d++) {
            if (d % 4 != 0 && d % 4 != 3)
                continue;
            if (class_number(-d) != 2)
                continue;
            auto forms = enumerate_reduced(d, true);
            BinaryLattice nonprincipal{};
            bool found = false;
            for (const auto& f : forms)
                if (f.a != 1 && f.b >= 0) {
                    nonprincipal = f;
                    found = true;
                }
            if (!found)
                throw std::logic_error("tables cn2: class number 2 without a nonprincipal form");
            DecompCounts c = count(SurfaceSpec::rho4(nonprincipal), req.guard);
            bool verified = c.delta == 1 && c.delta_tilde == 2;
            rows.push_back({{"disc", -d},
                            {"class_number", 2},
                            {"nonprincipal", gram_json(nonprincipal)},
                            {"counts", counts_json(c)},
                            {"verified", verified}});
            csv.push_back(lattice_row(nonprincipal, genus_of(nonprincipal, req.guard), c));
            text << "disc -" << d << " nonprincipal " << nonprincipal << " delta "
                 << c.delta << " delta_tilde " << c.delta_tilde
                 << (verified ? "" : " FAIL") << "\n";
        }
    } else if (which == "nonprim") {
        if (max_det < 28)
            throw guard_error(28);
        for (int64_t det = 3; det <= max_det; det++) {
            for (const auto& f : enumerate_reduced(det, false)) {
                if (f.b < 0 || f.is_primitive())
                    continue;
                DecompCounts c = count(SurfaceSpec::rho4(f), req.guard);
                if (c.delta != 1)
                    continue;
                bool verified = c.delta_tilde == 2;
                rows.push_back({{"gram", gram_json(f)},
                                {"det", det},
                                {"counts", counts_json(c)},
                                {"verified", verified}});
                csv.push_back(lattice_row(f, genus_of(f, req.guard), c));
                text << f << " det " << det << " delta 1 delta_tilde " << c.delta_tilde
                     << (verified ? "" : " FAIL") << "\n";
            }
        }
    } else {
        throw std::domain_error("tables: expected cn1, cn2 or nonprim");
    }

    json record = finish_record({{"which", which}, {"max_det", max_det}},
                                {{"rows", rows}, {"count", rows.size()}}, json::object(),
                                timer.ms(), "tables");
    if (req.format == "json")
        out << record.dump(2) << "\n";
    else if (req.format == "csv")
        write_csv(out, csv);
    else
        out << text.str() << rows.size() << " rows\n";
    return kOk;
}

int emit_oracle(const Request& req, const std::string& mode,
                const std::vector<int64_t>& gram, int64_t max_det, std::ostream& out)
{
    Timer timer;
    json inputs{{"mode", mode}};
    json results, oracle;
    bool agree = true;

    if (mode == "odl") {
        BinaryLattice f = lattice_from(gram);
        inputs["gram"] = gram_json(f);
        if (f.det() > req.guard)
            throw guard_error(f.det());
        int64_t closed = global_order(f);
        int64_t brute = brute_force_order(disc_form_of(f), req.guard);
        agree = closed == brute;
        results = {{"closed", closed}, {"brute", brute}};
        oracle = {{"agree", agree}};
    } else if (mode == "weak") {
        BinaryLattice f = lattice_from(gram);
        inputs["gram"] = gram_json(f);
        int64_t closed = count(SurfaceSpec::rho4(f), req.guard).delta_tilde;
        int64_t brute = weak_delta_tilde_oracle(f, req.guard);
        agree = closed == brute;
        results = {{"closed", closed}, {"brute", brute}};
        oracle = {{"agree", agree}};
    } else if (mode == "sweep") {
        if (max_det < 3)
            throw std::domain_error("oracle sweep: --max-det must be at least 3");
        inputs["max_det"] = max_det;
        int64_t checked = 0, mismatches = 0;
        json bad = json::array();
        for (int64_t det = 3; det <= max_det; det++) {
            for (const auto& f : enumerate_reduced(det, false)) {
                checked++;
                int64_t closed = global_order(f);
                int64_t brute = brute_force_order(disc_form_of(f), req.guard);
                int64_t local = 1;
                for (const auto& s : local_symbols(f))
                    local = checked_mul(local, local_order(s));
                if (closed != brute || closed != local) {
                    mismatches++;
                    bad.push_back({{"gram", gram_json(f)},
                                   {"closed", closed},
                                   {"brute", brute},
                                   {"local_product", local}});
                }
            }
        }
        agree = mismatches == 0;
        results = {{"checked", checked}, {"mismatches", mismatches}, {"bad", bad}};
        oracle = {{"agree", agree}};
    } else {
        throw std::domain_error("oracle: expected odl, weak or sweep");
    }

    json record = finish_record(inputs, results, oracle, timer.ms(), "oracle");
    if (req.format == "json")
        out << record.dump(2) << "\n";
    else
        out << "oracle " << mode << ": " << results.dump() << " agree "
            << (agree ? "yes" : "NO") << "\n";
    return agree ? kOk : kMismatch;
}

int emit_picard3(const Request& req, int64_t n, const std::vector<double>& tau_opt,
                 double tol, std::ostream& out)
{
    Timer timer;
    if (n < 1)
        throw std::domain_error("picard3: --N must be >= 1");
    json inputs{{"N", n}};
    json sigmas = json::array();
    for (const auto& s : sigma_set(n)) {
        EmbeddingVectors v = embedding_vectors(n, s); // throws unless Gram-exact
        json entry{{"r", s.r},       {"s", s.s},
                   {"a", s.a},       {"b", s.b},
                   {"multiplier", multiplier_invariant(n, s)},
                   {"e", {v.e.x, v.e.y, v.e.z}},
                   {"f", {v.f.x, v.f.y, v.f.z}},
                   {"l", {v.l.x, v.l.y, v.l.z}},
                   {"gram_ok", true}};
        sigmas.push_back(entry);
    }
    json als = json::array();
    for (int64_t q : hall_divisors(n)) {
        ALMatrix w = atkin_lehner(n, q); // involution property checked inside
        als.push_back({{"Q", q},
                       {"matrix", {w.w.a, w.w.b, w.w.c, w.w.d}},
                       {"involution_ok", true}});
    }
    json results{{"sigma", sigmas},
                 {"atkin_lehner", als},
                 {"counts", counts_json(count(SurfaceSpec::rho3(n)))}};
    json oracle = json::object();
    if (!tau_opt.empty()) {
        if (tau_opt.size() != 2)
            throw std::domain_error("--tau expects re,im");
        std::complex<double> tau{tau_opt[0], tau_opt[1]};
        if (tau.imag() <= 0)
            throw std::domain_error("--tau must lie in the upper half plane");
        if (n == 1)
            throw std::domain_error("--tau orbit check requires N > 1");
        bool ok = al_orbit_check(n, tau, tol);
        oracle["al_orbit_matches"] = ok;
        results["tau"] = {tau.real(), tau.imag()};
    }
    json record = finish_record(inputs, results, oracle, timer.ms(), "picard3");
    if (req.format == "json") {
        out << record.dump(2) << "\n";
    } else {
        out << "N = " << n << "  |Sigma| = " << sigmas.size() << "\n";
        for (const auto& s : sigmas)
            out << "  (r,s) = (" << s["r"] << "," << s["s"] << ")  bezout ("
                << s["a"] << "," << s["b"] << ")  multiplier " << s["multiplier"]
                << " mod " << 2 * n << "  e = " << s["e"].dump()
                << " f = " << s["f"].dump() << " l = " << s["l"].dump()
                << " gram ok\n";
        for (const auto& w : als)
            out << "  W_" << w["Q"] << " = " << w["matrix"].dump() << "\n";
        if (oracle.contains("al_orbit_matches"))
            out << "  AL orbit check: "
                << (oracle["al_orbit_matches"].get<bool>() ? "ok" : "FAIL") << "\n";
    }
    if (oracle.contains("al_orbit_matches") && !oracle["al_orbit_matches"].get<bool>())
        return kMismatch;
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"abelkit: decomposition counts of Abelian surfaces from lattice data"};
    app.require_subcommand(1);
    // --format and --max-brute may appear after the subcommand name.
    app.fallthrough();

    Request req;
    std::string format = "text";
    int64_t guard_flag = -1;
    app.add_option("--format", format, "output format: json, text or csv")
        ->check(CLI::IsMember({"json", "text", "csv"}))
        ->capture_default_str();
    app.add_option("--max-brute", guard_flag,
                   "brute-force size limit for |D| (overrides ABELKIT_MAX_BRUTE, default "
                       + std::to_string(kDefaultGuard) + ")");

    auto* cmd_count = app.add_subcommand("count", "decomposition counts for one surface");
    int picard = 0;
    int64_t n3 = -1;
    std::vector<int64_t> gram;
    cmd_count->add_option("--picard", picard, "Picard number (2, 3 or 4)")->required();
    cmd_count->add_option("--N", n3, "N with det(T_A) = -2N (picard 3)");
    cmd_count->add_option("--gram", gram, "a,b,c of the Gram matrix (2a b; b 2c) (picard 4)")
        ->delimiter(',');

    auto* cmd_tables = app.add_subcommand("tables", "reproduce the classification tables");
    std::string which;
    int64_t max_det_tables = -1;
    cmd_tables->add_option("which", which, "cn1, cn2 or nonprim")->required();
    cmd_tables->add_option("--max-det", max_det_tables, "sweep bound");

    auto* cmd_oracle = app.add_subcommand("oracle", "closed formulas against brute force");
    std::string mode;
    std::vector<int64_t> gram_oracle;
    int64_t max_det_sweep = 150;
    cmd_oracle->add_option("mode", mode, "odl, weak or sweep")->required();
    cmd_oracle->add_option("--gram", gram_oracle, "a,b,c")->delimiter(',');
    cmd_oracle->add_option("--max-det", max_det_sweep, "sweep bound")->capture_default_str();

    auto* cmd_p3 = app.add_subcommand("picard3", "sigma set, embeddings and Atkin-Lehner data");
    int64_t np3 = -1;
    std::vector<double> tau_opt;
    double tol = 1e-9;
    cmd_p3->add_option("--N", np3, "level N")->required();
    cmd_p3->add_option("--tau", tau_opt, "re,im: run the Atkin-Lehner orbit check")
        ->delimiter(',');
    cmd_p3->add_option("--tol", tol, "tolerance for the orbit check")->capture_default_str();

    std::vector<std::string> argv(args);
    std::reverse(argv.begin(), argv.end()); // CLI11 parses reversed vectors
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kInvalidInput;
    }

    try {
        req.format = format;
        req.guard = guard_flag > 0 ? guard_flag : guard_from_env();
        if (cmd_oracle->parsed() || cmd_p3->parsed()) {
            if (req.format == "csv")
                throw std::domain_error("csv output is only available for count and tables");
        }
        if (cmd_count->parsed())
            return emit_count(req, picard, n3, gram, out);
        if (cmd_tables->parsed()) {
            if (max_det_tables < 0)
                max_det_tables = which == "cn2" ? 800 : 400;
            return emit_tables(req, which, max_det_tables, out);
        }
        if (cmd_oracle->parsed())
            return emit_oracle(req, mode, gram_oracle, max_det_sweep, out);
        if (cmd_p3->parsed())
            return emit_picard3(req, np3, tau_opt, tol, out);
        err << "no subcommand given\n";
        return kInvalidInput;
    } catch (const guard_error& e) {
        err << "error: " << e.what() << "\n";
        return kGuard;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::overflow_error& e) {
        err << "error: input too large for exact 64-bit arithmetic (" << e.what() << ")\n";
        return kInvalidInput;
    }
}

} // namespace abelkit::cli
