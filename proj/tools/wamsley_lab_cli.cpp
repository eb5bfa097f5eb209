#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "wamsley/hallwitt.hpp"
#include "wamsley/pc_json.hpp"
#include "wamsley/wamsley.hpp"

using namespace wamsley;
using nlohmann::ordered_json;

namespace {

enum Exit { Green = 0, Red = 1, Usage = 2 };

struct RunConfig {
    std::string alpha, gamma, prime;
    std::string format = "text";
    std::vector<std::string> checks{"all"};
    std::size_t max_cosets = 2000000;
    std::uint64_t max_enumerate = 2000000;
    std::uint64_t seed = 1;
    std::string out;
};

Int parse_int(const std::string& s, const char* what) {
    try {
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (s.size() == i || !std::all_of(s.begin() + i, s.end(), ::isdigit)) throw std::invalid_argument(s);
        return Int(s);
    } catch (const std::exception&) {
        throw Error(ErrorKind::Usage, std::string(what) + " must be an integer, got '" + s + "'");
    }
}

bool selected(const RunConfig& c, const std::string& name) {
    return std::find(c.checks.begin(), c.checks.end(), "all") != c.checks.end() ||
           std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end();
}

ReportOptions report_options(const RunConfig& c) {
    ReportOptions o;
    o.formulas = selected(c, "formulas");
    o.np = selected(c, "np");
    o.series = selected(c, "series");
    o.oracle = selected(c, "oracle");
    o.max_cosets = c.max_cosets;
    o.max_enumerate = c.max_enumerate;
    o.seed = c.seed;
    return o;
}

unsigned thread_cap() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WAMSLEY_LAB_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
        } catch (const std::exception&) {
        }
    }
    return n;
}

// Runs jobs on up to thread_cap() workers; results keep job order.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& job) {
    std::vector<T> out(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) out[i] = job(i);
    };
    unsigned n = std::min<std::size_t>(thread_cap(), std::max<std::size_t>(count, 1));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

void emit(const RunConfig& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::Usage, "cannot write " + c.out);
    f << text;
}

ordered_json num(const Int& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return to_string(x);
}

std::string factored(const std::vector<std::pair<Int, int>>& f) {
    std::string s;
    for (auto& [q, v] : f) {
        if (v == 0) continue;
        if (!s.empty()) s += " * ";
        s += to_string(q) + "^" + std::to_string(v);
    }
    return s.empty() ? "1" : s;
}

struct HallSummary {
    std::vector<WittRow> witt;
    bool cover_consistent = false;
    std::size_t hall_checked = 0, hall_failed = 0;
    bool pass() const {
        return cover_consistent && hall_failed == 0 &&
               std::all_of(witt.begin(), witt.end(), [](const WittRow& r) { return r.pass(); });
    }
};

HallSummary run_hall() {
    HallSummary h;
    h.witt = witt_table();
    HallCover cover = build_cover();
    h.cover_consistent = consistency_check(cover.pres).empty();
    for (const auto& c : check_hall_range(cover, -6, 6)) {
        ++h.hall_checked;
        if (!c.pass) ++h.hall_failed;
    }
    return h;
}

ordered_json hall_json(const HallSummary& h) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : h.witt)
        rows.push_back({{"weight", r.weight}, {"witt", num(r.witt)}, {"basis", r.basis_count},
                        {"table", r.table_count}, {"pass", r.pass()}});
    return {{"witt", rows},
            {"coverConsistent", h.cover_consistent},
            {"hallIdentity", {{"range", {-6, 6}}, {"checked", h.hall_checked}, {"failed", h.hall_failed}}},
            {"verdict", h.pass() ? "green" : "red"}};
}

std::string hall_text(const HallSummary& h) {
    std::ostringstream os;
    os << "weight  witt  basis  table\n";
    for (const auto& r : h.witt)
        os << std::setw(6) << r.weight << std::setw(6) << r.witt << std::setw(7) << r.basis_count << std::setw(7)
           << r.table_count << (r.pass() ? "" : "  FAIL") << "\n";
    os << "cover consistent: " << (h.cover_consistent ? "yes" : "no") << "\n";
    os << "hall identity on [-6,6]^2: " << h.hall_checked - h.hall_failed << "/" << h.hall_checked << " pass\n";
    os << "verdict: " << (h.pass() ? "green" : "red") << "\n";
    return os.str();
}

int cmd_report(const RunConfig& c) {
    Int alpha = parse_int(c.alpha, "--alpha"), gamma = parse_int(c.gamma, "--gamma");
    std::vector<Int> primes;
    if (!c.prime.empty()) {
        primes.push_back(parse_int(c.prime, "--prime"));
        classify(alpha, gamma, primes.back());
    } else {
        primes = relevant_primes(alpha, gamma);
    }
    ReportOptions opt = report_options(c);
    auto reports = parallel_map<StructureReport>(
        primes.size(), [&](std::size_t i) { return verify_instance(alpha, gamma, primes[i], opt); });
    std::optional<HallSummary> hall;
    if (selected(c, "hall")) hall = run_hall();

    bool green = std::all_of(reports.begin(), reports.end(), [](const StructureReport& r) { return r.green(); });
    if (hall) green = green && hall->pass();
    std::optional<OrderSummary> orders;
    if (c.prime.empty()) orders = order_summary(alpha, gamma, reports);
    if (orders) green = green && orders->agree();

    if (c.format == "json") {
        ordered_json j;
        ordered_json arr = ordered_json::array();
        for (const auto& r : reports) arr.push_back(ordered_json::parse(report_to_json(r)));
        j["reports"] = arr;
        ordered_json s;
        s["alpha"] = num(alpha);
        s["gamma"] = num(gamma);
        s["primes"] = ordered_json::array();
        for (const auto& p : primes) s["primes"].push_back(num(p));
        if (orders) {
            s["orderOfW"] = {{"formula", num(orders->formula)},
                             {"pipeline", num(orders->pipeline)},
                             {"factored", factored(order_of_W(alpha, gamma))},
                             {"agree", orders->agree()}};
        }
        if (hall) s["hall"] = hall_json(*hall);
        s["seed"] = c.seed;
        s["verdict"] = green ? "green" : "red";
        j["summary"] = s;
        emit(c, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        for (const auto& r : reports) os << report_to_text(r) << "\n";
        if (hall) os << hall_text(*hall) << "\n";
        if (orders)
            os << "|W(" << alpha << "," << alpha << "," << gamma << ")| = " << orders->pipeline << " from the pipeline, "
               << orders->formula << " = " << factored(order_of_W(alpha, gamma)) << " from the v table"
               << (orders->agree() ? "" : "  MISMATCH") << "\n";
        os << "verdict: " << (green ? "green" : "red") << "\n";
        emit(c, os.str());
    }
    return green ? Green : Red;
}

std::pair<Int, Int> parse_range(const std::string& s, const char* what) {
    auto colon = s.find(':', 1);
    if (colon == std::string::npos) {
        Int v = parse_int(s, what);
        return {v, v};
    }
    Int lo = parse_int(s.substr(0, colon), what), hi = parse_int(s.substr(colon + 1), what);
    if (lo > hi) throw Error(ErrorKind::Usage, std::string(what) + " range is empty");
    return {lo, hi};
}

struct SweepRow {
    Int alpha, gamma;
    std::string status;  // green, red, unsupported, invalid
    std::string detail;
    std::optional<OrderSummary> orders;
    std::vector<std::pair<Int, std::string>> verdicts;
    std::vector<StructureReport> reports;
};

SweepRow sweep_one(const Int& alpha, const Int& gamma, const ReportOptions& opt) {
    SweepRow row{alpha, gamma, "green", "", std::nullopt, {}, {}};
    try {
        for (const auto& p : relevant_primes(alpha, gamma)) {
            row.reports.push_back(verify_instance(alpha, gamma, p, opt));
            row.verdicts.push_back({p, row.reports.back().green() ? "green" : "red"});
        }
        row.orders = order_summary(alpha, gamma, row.reports);
        bool green = row.orders->agree() &&
                     std::all_of(row.reports.begin(), row.reports.end(), [](const auto& r) { return r.green(); });
        row.status = green ? "green" : "red";
    } catch (const Error& e) {
        row.status = e.kind() == ErrorKind::Unsupported ? "unsupported" : "invalid";
        row.detail = e.what();
    }
    return row;
}

int cmd_sweep(const RunConfig& c) {
    auto [alo, ahi] = parse_range(c.alpha, "--alpha");
    auto [glo, ghi] = parse_range(c.gamma, "--gamma");
    if (glo < 1) throw Error(ErrorKind::Usage, "--gamma must be positive");
    if ((ahi - alo + 1) * (ghi - glo + 1) > 100000) throw Error(ErrorKind::Usage, "sweep range is too large");
    std::vector<std::pair<Int, Int>> cells;
    for (Int a = alo; a <= ahi; ++a)
        for (Int g = glo; g <= ghi; ++g) cells.push_back({a, g});
    ReportOptions opt = report_options(c);
    auto rows = parallel_map<SweepRow>(cells.size(),
                                       [&](std::size_t i) { return sweep_one(cells[i].first, cells[i].second, opt); });
    bool red = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == "red"; });

    if (c.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json j{{"alpha", num(r.alpha)}, {"gamma", num(r.gamma)}, {"status", r.status}};
            if (r.orders) j["orderOfW"] = {{"formula", num(r.orders->formula)}, {"pipeline", num(r.orders->pipeline)}};
            ordered_json v = ordered_json::object();
            for (const auto& [p, s] : r.verdicts) v[to_string(p)] = s;
            j["verdicts"] = v;
            ordered_json mm = ordered_json::array();
            for (const auto& rep : r.reports)
                for (const auto& m : rep.mismatches()) mm.push_back("p=" + to_string(rep.params.p) + ": " + m);
            j["mismatches"] = mm;
            if (!r.detail.empty()) j["detail"] = r.detail;
            arr.push_back(j);
        }
        emit(c, ordered_json{{"rows", arr}, {"seed", c.seed}, {"verdict", red ? "red" : "green"}}.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << std::left << std::setw(7) << "alpha" << std::setw(7) << "gamma" << std::setw(24) << "|W|"
           << std::setw(13) << "status"
           << "per prime\n";
        for (const auto& r : rows) {
            os << std::setw(7) << r.alpha << std::setw(7) << r.gamma << std::setw(24)
               << (r.orders ? to_string(r.orders->pipeline) : "-") << std::setw(13) << r.status;
            for (const auto& [p, s] : r.verdicts) os << p << ":" << s << " ";
            if (!r.detail.empty()) os << r.detail;
            os << "\n";
        }
        os << "verdict: " << (red ? "red" : "green") << "\n";
        emit(c, os.str());
    }
    return red ? Red : Green;
}

int cmd_export(const RunConfig& c, const std::string& kind, const std::string& target, const std::string& beta_s) {
    Int alpha = parse_int(c.alpha, "--alpha"), gamma = parse_int(c.gamma, "--gamma");
    if (target == "general") {
        if (kind != "fp") throw Error(ErrorKind::Usage, "the general presentation exists only as fp text");
        Int beta = beta_s.empty() ? alpha : parse_int(beta_s, "--beta");
        emit(c, general_fp_text(alpha, beta, gamma));
        return Green;
    }
    if (c.prime.empty()) throw Error(ErrorKind::Usage, "--prime is required for this export");
    Params pr = classify(alpha, gamma, parse_int(c.prime, "--prime"));
    if (pr.tag == CaseTag::GammaOnly) throw Error(ErrorKind::Usage, "W_p is cyclic for this prime; nothing to export");
    if (target == "J" && kind == "fp") {
        emit(c, j_fp_text(pr));
        return Green;
    }
    JGroup J = build_J(pr);
    if (target == "J") {
        emit(c, pc_to_json(J.pres));
        return Green;
    }
    WpGroup W = build_Wp(J, compute_Np(J, c.seed).np);
    if (target == "quotient")
        emit(c, kind == "fp" ? quotient_fp_text(W) : pc_to_json(W.quotient.pres));
    else if (target == "Wp")
        emit(c, kind == "fp" ? wp_fp_text(W) : pc_to_json(W.pres));
    else
        throw Error(ErrorKind::Usage, "unknown target " + target);
    return Green;
}

int cmd_hall(const RunConfig& c) {
    HallSummary h = run_hall();
    emit(c, c.format == "json" ? hall_json(h).dump(2) + "\n" : hall_text(h));
    return h.pass() ? Green : Red;
}

void add_common(CLI::App* app, RunConfig& c, bool params) {
    if (params) {
        app->add_option("--alpha", c.alpha, "alpha (sweep: lo:hi)")->required();
        app->add_option("--gamma", c.gamma, "gamma (sweep: lo:hi)")->required();
    }
    app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app->add_option("--out", c.out, "write output to this file");
}

void add_checks(CLI::App* app, RunConfig& c) {
    app->add_option("--checks", c.checks, "checks to run")
        ->delimiter(',')
        ->check(CLI::IsMember({"formulas", "np", "series", "oracle", "hall", "all"}));
    app->add_option("--max-cosets", c.max_cosets, "coset enumeration budget");
    app->add_option("--max-enumerate", c.max_enumerate, "element enumeration budget");
    app->add_option("--seed", c.seed, "seed for sampled checks");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prime-by-prime structure checks for W(alpha, alpha, gamma)"};
    app.require_subcommand(1);
    RunConfig rc, sc, ec, hc;
    std::string kind = "fp", target = "quotient", beta;

    auto* report = app.add_subcommand("report", "verify one (alpha, gamma) at every relevant prime or at --prime");
    add_common(report, rc, true);
    add_checks(report, rc);
    report->add_option("--prime", rc.prime, "restrict to one prime");

    auto* sweep = app.add_subcommand("sweep", "verify every (alpha, gamma) in the given ranges");
    add_common(sweep, sc, true);
    add_checks(sweep, sc);

    auto* exp = app.add_subcommand("export", "write a presentation as pc JSON or fp text");
    add_common(exp, ec, true);
    exp->add_option("--prime", ec.prime, "prime");
    exp->add_option("--kind", kind, "pc-json or fp")->check(CLI::IsMember({"pc-json", "fp"}));
    exp->add_option("--target", target, "J, quotient, Wp or general")
        ->check(CLI::IsMember({"J", "quotient", "Wp", "general"}));
    exp->add_option("--beta", beta, "beta for the general presentation (default alpha)");
    exp->add_option("--seed", ec.seed, "seed for sampled checks");

    auto* hall = app.add_subcommand("hall", "Witt ranks, the seven-generator cover and the Hall identity");
    add_common(hall, hc, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Green : Usage;
    }

    try {
        if (*report) return cmd_report(rc);
        if (*sweep) return cmd_sweep(sc);
        if (*exp) return cmd_export(ec, kind, target, beta);
        if (*hall) return cmd_hall(hc);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::Usage:
            case ErrorKind::InvalidInstance:
            case ErrorKind::NotRelevantPrime:
            case ErrorKind::UndefinedValuation:
            case ErrorKind::Unsupported:
            case ErrorKind::Parse:
                return Usage;
            default:
                return Red;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Red;
    }
    return Usage;
}
