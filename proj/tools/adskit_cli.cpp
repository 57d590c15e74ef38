// Command-line front end for the toolkit: aggregated verification suites,
// chart factorization of group elements supplied as JSON, and pointwise
// evaluation of the boundary and bulk actions on polynomial fields.
//
// Exit codes follow one contract across subcommands:
//   0  success (factorize: element is in the requested cell)
//   1  verification ran and failed
//   2  factorize ran and the element is not in the cell
//   3  invalid input (bad flags, malformed JSON, matrix not in the group)
//
// Rationals cross the JSON boundary as "p/q" strings so exact pipelines stay
// exact; reports are byte-deterministic for identical inputs and seed
// (wall-clock timings only appear under --timings).

#include <adskit/json_io.hpp>
#include <adskit/verify.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace adskit;

// ADSKIT_MAX_Q can raise (never lower) the default ceiling of 8.  Everything
// is generic in q; the ceiling only keeps accidental q=40 runs from eating
// the machine.
int q_ceiling() {
    long ceiling = 8;
    if (const char* env = std::getenv("ADSKIT_MAX_Q")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > ceiling) ceiling = v;
    }
    return static_cast<int>(ceiling);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JsonError("cannot open " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::parse_error& e) {
        throw JsonError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw JsonError("cannot write " + path);
    out << text;
}

int run_verify(int q, const std::string& suite, std::uint64_t seed, const std::string& json_path,
               bool timings) {
    if (q < 2 || q > q_ceiling()) {
        std::cerr << "verify: q must be between 2 and " << q_ceiling()
                  << " (set ADSKIT_MAX_Q to raise the ceiling)\n";
        return 3;
    }
    std::vector<std::string> names;
    if (suite != "all") {
        const auto known = suite_names();
        if (std::find(known.begin(), known.end(), suite) == known.end()) {
            std::cerr << "verify: unknown suite '" << suite << "'\n";
            return 3;
        }
        names.push_back(suite);
    }
    const VerificationReport report = run_verification(q, seed, names);
    std::cout << report_text(report, timings);
    write_text_file(json_path, report_json(report, timings).dump(2) + "\n");
    return report.pass ? 0 : 1;
}

int run_factorize(const std::string& mode, const std::string& in_path,
                  const std::string& out_path) {
    const GroupElementData g = group_element_from_json(read_json_file(in_path));
    require_in_group(g, 1e-10, "factorize");

    bool in_cell = false;
    json out;
    const auto emit = [&](auto&& factors) {
        in_cell = factors.has_value();
        out = factorization_json(g.q, mode, factors);
    };
    if (mode == "sekiguchi") {
        if (g.exact)
            emit(sekiguchi_factorize(g.q, g.rational));
        else
            emit(sekiguchi_factorize(g.q, g.floating, 1e-10));
    } else {
        if (g.exact)
            emit(bruhat_factorize(g.q, g.rational));
        else
            emit(bruhat_factorize(g.q, g.floating, 1e-10));
    }
    write_text_file(out_path, out.dump(2) + "\n");
    return in_cell ? 0 : 2;
}

int run_act(const std::string& rep, const std::string& g_path, const std::string& delta_text,
            const std::string& poly_text, const std::string& pts_path,
            const std::string& out_path) {
    const GroupElementData g = group_element_from_json(read_json_file(g_path));
    require_in_group(g, 1e-10, "act");

    const auto delta = rat_parse(delta_text);
    if (!delta) throw JsonError("--delta: not a rational: '" + delta_text + "'");

    const bool bulk = rep == "bulk";
    const int point_len = bulk ? g.q + 1 : g.q;  // bulk rows carry y last
    const PointsData pts = points_from_json(read_json_file(pts_path), point_len);

    const VarTable vt(g.q);
    const Poly f = parse_poly(vt, poly_text);

    // The pipeline stays exact only when every ingredient is exact and the
    // weight is an integer; any float input or fractional weight drops the
    // whole evaluation to double (chart tolerance 1e-9).
    const bool exact = g.exact && pts.exact && *delta == Rat(delta->get_num());
    json values = json::array();
    if (exact) {
        if (!delta->get_num().fits_slong_p()) throw JsonError("--delta: weight is out of range");
        const long d = delta->get_num().get_si();
        for (const auto& row : pts.rational) {
            std::optional<Rat> v;
            if (bulk) {
                const std::vector<Rat> x(row.begin(), row.end() - 1);
                v = bulk_action_value(g.q, g.rational, f, x, row.back());
            } else {
                v = boundary_action_value(g.q, g.rational, d, f, row);
            }
            values.push_back(v ? json{{"value", rat_json(*v)}} : json{{"undefined", true}});
        }
    } else {
        const Mat<double> gf = g.exact ? to_double(g.rational) : g.floating;
        const double d = delta->get_d();
        for (const auto& row : pts.floating) {
            std::optional<double> v;
            if (bulk) {
                const std::vector<double> x(row.begin(), row.end() - 1);
                v = bulk_action_value(g.q, gf, f, x, row.back(), 1e-9);
            } else {
                v = boundary_action_value(g.q, gf, d, f, row, 1e-9);
            }
            values.push_back(v ? json{{"value", *v}} : json{{"undefined", true}});
        }
    }

    const json out{{"schema", 1},          {"rep", rep},
                   {"q", g.q},             {"mode", exact ? "exact" : "float"},
                   {"delta", rat_json(*delta)}, {"values", values}};
    const std::string text = out.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computational toolkit for the conformal Lie algebras so(q,2)"};
    app.require_subcommand(1);

    int q = 2;
    std::string suite = "all";
    std::uint64_t seed = 0;
    std::string verify_json = "verify_report.json";
    bool timings = false;
    auto* verify = app.add_subcommand("verify", "run invariant suites and write a report");
    verify->add_option("--q", q, "boundary dimension (2..8, see ADSKIT_MAX_Q)");
    verify->add_option("--suite", suite, "structure|subalgebras|charts|reps|casimir|all");
    verify->add_option("--seed", seed, "seed for the randomized checks");
    verify->add_option("--json", verify_json, "path for the JSON report");
    verify->add_flag("--timings", timings, "include wall-clock timings in the report");

    std::string mode, fact_in, fact_out;
    auto* fact = app.add_subcommand("factorize", "factor a group element through a chart");
    fact->add_option("--mode", mode, "sekiguchi|bruhat")->required();
    fact->add_option("--in", fact_in, "group element JSON file")->required();
    fact->add_option("--out", fact_out, "output path for the factorization JSON")->required();

    std::string rep, act_g, act_delta, act_poly, act_points, act_out;
    auto* act = app.add_subcommand("act", "evaluate a group action on a polynomial field");
    act->add_option("--rep", rep, "boundary|bulk")->required();
    act->add_option("--g", act_g, "group element JSON file")->required();
    act->add_option("--delta", act_delta, "conformal weight, a rational like 2 or 5/2")
        ->required();
    act->add_option("--poly", act_poly, "field: x0..x{q-1}, y, z0..z{q-1}, rationals, + - * ^")
        ->required();
    act->add_option("--points", act_points, "evaluation points JSON file")->required();
    act->add_option("--out", act_out, "write values JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;  // help/version exit clean, bad flags are invalid input
    }

    try {
        if (verify->parsed()) return run_verify(q, suite, seed, verify_json, timings);
        if (fact->parsed()) {
            if (mode != "sekiguchi" && mode != "bruhat") {
                std::cerr << "factorize: --mode must be sekiguchi or bruhat\n";
                return 3;
            }
            return run_factorize(mode, fact_in, fact_out);
        }
        if (rep != "boundary" && rep != "bulk") {
            std::cerr << "act: --rep must be boundary or bulk\n";
            return 3;
        }
        return run_act(rep, act_g, act_delta, act_poly, act_points, act_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
