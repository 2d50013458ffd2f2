#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadvertex/checks.hpp"

namespace quadvertex::cli {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t h)
{
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

namespace {

json parse_json_arg(const std::string& s, const char* what)
{
    try {
        return json::parse(s);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("bad ") + what + " JSON: " + e.what());
    }
}

Legs3 legs3_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 3)
        throw InvalidInput("3-fold legs must be three line partitions");
    Legs3 out;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!j[i].is_array())
            throw InvalidInput("line partition must be an array");
        for (const auto& x : j[i]) {
            if (!x.is_number_integer() || x.get<int>() <= 0)
                throw InvalidInput("line partition parts must be positive integers");
            out[i].push_back(x.get<int>());
        }
        if (!std::is_sorted(out[i].rbegin(), out[i].rend()))
            throw InvalidInput("line partition parts must be nonincreasing");
    }
    return out;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw InvalidInput("cannot write " + path);
    f << text;
}

std::optional<std::string> read_text(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    if (!f)
        return std::nullopt;
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::string document(json manifest, const json& body, const char* field)
{
    json doc;
    doc["schema"] = 1;
    doc[field] = body;
    manifest["digest"] = hex64(fnv1a(body.dump()));
    doc["manifest"] = manifest;
    return doc.dump(2) + "\n";
}

struct VertexArgs {
    std::string mode = "dt";
    std::string legs = "[[],[],[],[]]";
    int q_max = 3;
    std::string signs = "formula";
    std::string out;
    int jobs = 1;
};

int cmd_vertex(const VertexArgs& a, std::ostream& out, std::ostream& err)
{
    Legs legs = legs_from_json(parse_json_arg(a.legs, "legs"));
    if (a.q_max < 0)
        throw InvalidInput("--qmax must be nonnegative");
    SignRule rule = a.signs == "formula" ? SignRule::Formula : a.signs == "dimred" ? SignRule::Dimred : SignRule::Unit;

    json args{{"mode", a.mode}, {"legs", legs_json(legs)}, {"q_max", a.q_max}, {"signs", a.signs}};
    json manifest{{"command", "vertex"}, {"arguments", args}};

    std::optional<std::filesystem::path> cache;
    if (const char* dir = std::getenv("QUADVERTEX_CACHE_DIR"); dir && *dir)
        cache = std::filesystem::path(dir) / ("vertex-" + hex64(fnv1a(args.dump())) + ".json");

    std::string text;
    if (cache)
        if (auto hit = read_text(*cache)) {
            text = *hit;
            err << "cache hit " << cache->string() << "\n";
        }
    if (text.empty()) {
        SeriesOptions so;
        so.jobs = a.jobs;
        QSeries s = a.mode == "dt" ? dt_vertex_series(legs, a.q_max, rule, so) : pt_vertex_series(legs, a.q_max, rule, so);
        text = document(manifest, s.to_json(), "series");
        if (cache) {
            std::filesystem::create_directories(cache->parent_path());
            write_text(cache->string(), text);
        }
    }
    if (a.out.empty())
        out << text;
    else
        write_text(a.out, text);
    return 0;
}

struct VerifyArgs {
    std::string target;
    std::string legs;
    int q_max = -1;
    int d_max = 2;
    int jobs = 1;
    std::uint64_t seed = 20240611;
    int points = 5;
    std::uint64_t sign_cap = std::uint64_t(1) << 20;
    int sign_q_max = 0;
    bool raw_frame = false;
    std::string json_out;
};

std::string row_summary(const json& row)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : row.items()) {
        if (k == "label" || k == "pass")
            continue;
        os << (first ? "" : " ") << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
        first = false;
    }
    return os.str();
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err)
{
    CheckOptions opt;
    opt.seed = a.seed;
    opt.points = a.points;
    opt.jobs = a.jobs;
    opt.sign_cap = a.sign_cap;
    opt.sign_q_max = a.sign_q_max;
    opt.free_fourth_leg = !a.raw_frame;
    if (a.points < 1)
        throw InvalidInput("--points must be positive");
    auto qmax = [&](int dflt) { return a.q_max < 0 ? dflt : a.q_max; };

    json args{{"target", a.target}, {"sign_cap", a.sign_cap}};
    std::vector<CheckReport> reports;
    auto t0 = std::chrono::steady_clock::now();
    if (a.target == "nekrasov") {
        args["q_max"] = qmax(3);
        reports.push_back(check_nekrasov(qmax(3), opt));
    } else if (a.target == "dtpt") {
        Legs legs = legs_from_json(parse_json_arg(a.legs.empty() ? "[[[1]],[],[],[]]" : a.legs, "legs"));
        args["legs"] = legs_json(legs);
        args["raw_frame"] = a.raw_frame;
        args["q_max"] = qmax(3);
        reports.push_back(check_dtpt(legs, qmax(3), opt));
    } else if (a.target == "conifold" || a.target == "koo") {
        args["q_max"] = qmax(3);
        args["d_max"] = a.d_max;
        args["sign_q_max"] = a.sign_q_max;
        reports.push_back(a.target == "conifold" ? check_conifold(a.d_max, qmax(3), opt)
                                                 : check_koo(a.d_max, qmax(3), opt));
    } else if (a.target == "dimred") {
        std::vector<Legs3> all;
        if (a.legs.empty()) {
            for (int t = 0; t <= 2; ++t)
                for (const auto& l : line_legs_of_size(t))
                    all.push_back(l);
            args["legs"] = "all, total size <= 2";
        } else {
            all.push_back(legs3_from_json(parse_json_arg(a.legs, "legs")));
            args["legs"] = parse_json_arg(a.legs, "legs");
        }
        args["q_max"] = qmax(2);
        reports.push_back(check_dimred(all, qmax(2), opt));
    } else if (a.target == "coho1" || a.target == "coho2") {
        args["q_max"] = qmax(3);
        reports.push_back(a.target == "coho1" ? check_coho1(qmax(3), opt) : check_coho2(qmax(3), opt));
    } else if (a.target == "properties") {
        reports.push_back(check_properties(opt));
    } else {
        throw InvalidInput("unknown verify target " + a.target);
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool pass = true;
    json body = json::array();
    for (const auto& r : reports) {
        out << r.name << "\n";
        for (const auto& row : r.rows)
            out << "  " << (row["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << row["label"].get<std::string>()
                << "  " << row_summary(row) << "\n";
        out << (r.pass ? "PASS" : "FAIL") << "\n";
        pass = pass && r.pass;
        body.push_back(r.to_json());
    }
    err << "wall time " << std::fixed << std::setprecision(2) << secs << " s\n";

    if (!a.json_out.empty()) {
        json manifest{{"command", "verify"}, {"arguments", args}, {"seed", a.seed}, {"points", a.points}};
        write_text(a.json_out, document(manifest, body, "reports"));
    }
    return pass ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"DT/PT 4-fold vertex computations", "quadvertex"};
    app.require_subcommand(1);

    VertexArgs va;
    CLI::App* vertex = app.add_subcommand("vertex", "vertex series as JSON");
    vertex->add_option("--mode", va.mode, "dt or pt")->check(CLI::IsMember({"dt", "pt"}));
    vertex->add_option("--legs", va.legs, "legs as JSON: four plane partitions, rows of heights");
    vertex->add_option("--qmax", va.q_max, "highest power of q kept");
    vertex->add_option("--signs", va.signs, "formula, dimred or unit")
        ->check(CLI::IsMember({"formula", "dimred", "unit"}));
    vertex->add_option("--out", va.out, "output file (default stdout)");
    vertex->add_option("--jobs", va.jobs, "worker threads")->check(CLI::PositiveNumber);

    VerifyArgs ya;
    CLI::App* verify = app.add_subcommand("verify", "run a verification and print a table");
    verify->add_option("target", ya.target, "nekrasov, dtpt, conifold, koo, dimred, coho1, coho2, properties")
        ->required()
        ->check(CLI::IsMember({"nekrasov", "dtpt", "conifold", "koo", "dimred", "coho1", "coho2", "properties"}));
    verify->add_option("--legs", ya.legs, "legs as JSON");
    verify->add_option("--qmax", ya.q_max, "highest power of q kept");
    verify->add_option("--dmax", ya.d_max, "highest curve degree")->check(CLI::Range(1, 6));
    verify->add_option("--jobs", ya.jobs, "worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--seed", ya.seed, "seed for the evaluation points");
    verify->add_option("--points", ya.points, "evaluation points");
    verify->add_option("--sign-cap", ya.sign_cap, "sign vectors tried per search before giving up or switching method");
    verify->add_option("--sign-qmax", ya.sign_q_max, "order used for the conifold edge sign search");
    verify->add_flag("--raw-frame", ya.raw_frame, "dtpt: keep a leg along x4 where it is instead of relabeling axes");
    verify->add_option("--json", ya.json_out, "write the machine-readable report here");

    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (vertex->parsed())
            return cmd_vertex(va, out, err);
        return cmd_verify(ya, out, err);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const SignCapExceeded& e) {
        err << "sign search cap exceeded: " << e.what() << "\n";
        return 3;
    }
}

} // namespace quadvertex::cli
