// biloc: command-line front end.
//
// Exit codes: 0 success, 1 verification failure or internal error,
// 2 parse error, 3 invalid state, 4 resource limit.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "biloc/acceptance.hpp"
#include "biloc/criteria.hpp"
#include "biloc/errors.hpp"
#include "biloc/io.hpp"
#include "biloc/network.hpp"
#include "biloc/optimizer.hpp"

namespace {

using biloc::io::json;

constexpr int kExitVerify = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitResource = 4;
constexpr std::size_t kMaxGridPoints = 1'000'000;

struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

void print_row(const std::string& key, const std::string& value) { std::cout << std::left << std::setw(18) << key << value << '\n'; }

struct Loaded {
    json description;
    biloc::TwoQubitState state;
};

Loaded load(const std::string& text) {
    json d = biloc::io::load_description(text);
    biloc::TwoQubitState s = biloc::io::parse_state(d);
    return {std::move(d), std::move(s)};
}

const char* kCsvColumns = "s_max,violates,chsh_ab,chsh_bc,xi1,xi2,zeta1,zeta2";

std::string csv_fields(const biloc::BilocReport& r) {
    return num(r.sMax) + "," + yes_no(r.violates) + "," + num(r.chshAB) + "," + num(r.chshBC) + "," + num(r.xi[0]) + "," + num(r.xi[1]) + "," +
           num(r.zeta[0]) + "," + num(r.zeta[1]);
}

// ---------------------------------------------------------------- analyze

struct AnalyzeOptions {
    std::string ab, bc, format = "table";
    bool oracle = false;
    std::uint64_t seed = 0;
};

int cmd_analyze(const AnalyzeOptions& o) {
    const Loaded ab = load(o.ab), bc = load(o.bc);
    const biloc::BilocReport rep = biloc::mixed_pair_optimum(ab.state, bc.state);
    std::optional<biloc::SearchResult> search;
    if (o.oracle) {
        biloc::OptimizerConfig cfg;
        cfg.seed = o.seed;
        search = biloc::maximize_fixed_bsm(ab.state, bc.state, cfg);
    }

    if (o.format == "json") {
        json out{{"ab", ab.description}, {"bc", bc.description}, {"report", biloc::io::to_json(rep)}};
        if (search) out["oracle"] = {{"search", biloc::io::to_json(*search)}, {"gap", search->sBest - rep.sMax}};
        std::cout << out.dump(2) << '\n';
    } else if (o.format == "csv") {
        std::cout << kCsvColumns << (search ? ",oracle_s_best,oracle_gap" : "") << '\n';
        std::cout << csv_fields(rep);
        if (search) std::cout << ',' << num(search->sBest) << ',' << num(search->sBest - rep.sMax);
        std::cout << '\n';
    } else {
        print_row("s_max", num(rep.sMax));
        print_row("violates", yes_no(rep.violates));
        print_row("marginal", yes_no(rep.marginal));
        print_row("alpha", num(rep.alpha));
        print_row("gamma", num(rep.gamma));
        print_row("xi", num(rep.xi[0]) + " " + num(rep.xi[1]));
        print_row("zeta", num(rep.zeta[0]) + " " + num(rep.zeta[1]));
        print_row("chsh_ab", num(rep.chshAB));
        print_row("chsh_bc", num(rep.chshBC));
        if (search) {
            print_row("oracle_s_best", num(search->sBest));
            print_row("oracle_gap", num(search->sBest - rep.sMax));
            print_row("oracle_converged", yes_no(search->converged));
        }
    }
    return 0;
}

// ------------------------------------------------------------------ sweep

struct Axis {
    std::string name;
    std::vector<double> values;
};

double parse_number(const std::string& s, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw biloc::ParseError("bad number \"" + s + "\" in " + context);
    }
}

// "name=start:stop:step" or "name=value", comma separated; first axis outermost.
std::vector<Axis> parse_grid(const std::string& spec) {
    std::vector<Axis> axes;
    std::size_t total = 1;
    std::stringstream items(spec);
    std::string item;
    while (std::getline(items, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw biloc::ParseError("grid entry \"" + item + "\" must look like name=start:stop:step");
        Axis axis{item.substr(0, eq), {}};
        for (const auto& a : axes)
            if (a.name == axis.name) throw biloc::ParseError("grid parameter \"" + axis.name + "\" given twice");
        std::vector<std::string> parts;
        std::stringstream range(item.substr(eq + 1));
        std::string part;
        while (std::getline(range, part, ':')) parts.push_back(part);
        if (parts.size() == 1) {
            axis.values.push_back(parse_number(parts[0], item));
        } else if (parts.size() == 3) {
            const double start = parse_number(parts[0], item), stop = parse_number(parts[1], item), step = parse_number(parts[2], item);
            if (!(step > 0.0) || stop < start) throw biloc::ParseError("grid entry \"" + item + "\" needs start <= stop and step > 0");
            const double span = std::floor((stop - start) / step + 1e-9);
            if (span + 1.0 > static_cast<double>(kMaxGridPoints)) throw ResourceLimit("grid exceeds 1000000 points");
            const auto n = static_cast<std::size_t>(span) + 1;
            for (std::size_t k = 0; k < n; ++k) axis.values.push_back(start + static_cast<double>(k) * step);
        } else {
            throw biloc::ParseError("grid entry \"" + item + "\" must look like name=start:stop:step");
        }
        total *= axis.values.size();
        if (total > kMaxGridPoints) throw ResourceLimit("grid exceeds 1000000 points");
        axes.push_back(std::move(axis));
    }
    if (axes.empty()) throw biloc::ParseError("empty grid");
    return axes;
}

// Parameter names per family:
//   werner         V (both sources) or V_ab, V_bc
//   schmidt        c, q (concurrences; q defaults to c)
//   noisy_schmidt  c, q as above, plus V or V_ab, V_bc
std::pair<biloc::TwoQubitState, biloc::TwoQubitState> family_pair(const std::string& family, const std::vector<Axis>& axes,
                                                                  const std::vector<double>& point) {
    auto get = [&](const std::string& name) -> std::optional<double> {
        for (std::size_t i = 0; i < axes.size(); ++i)
            if (axes[i].name == name) return point[i];
        return std::nullopt;
    };
    auto visibilities = [&]() {
        const auto v = get("V");
        return std::pair{get("V_ab").value_or(v.value_or(1.0)), get("V_bc").value_or(v.value_or(1.0))};
    };
    auto pure = [](double concurrence) {
        const auto s = biloc::SchmidtPureState::from_concurrence(concurrence);
        return biloc::make_schmidt_state(s.c0, s.c1);
    };
    if (family == "werner") {
        const auto [vab, vbc] = visibilities();
        return {biloc::make_werner(vab), biloc::make_werner(vbc)};
    }
    const double c = get("c").value_or(1.0);
    const double q = get("q").value_or(c);
    if (family == "schmidt") return {pure(c), pure(q)};
    const auto [vab, vbc] = visibilities();
    return {biloc::add_isotropic_noise(pure(c), vab), biloc::add_isotropic_noise(pure(q), vbc)};
}

void check_axes(const std::string& family, const std::vector<Axis>& axes) {
    std::vector<std::string> allowed;
    if (family == "werner") allowed = {"V", "V_ab", "V_bc"};
    else if (family == "schmidt") allowed = {"c", "q"};
    else if (family == "noisy_schmidt") allowed = {"c", "q", "V", "V_ab", "V_bc"};
    else throw biloc::ParseError("unknown family \"" + family + "\" (werner, schmidt, noisy_schmidt)");
    bool hasV = false, hasSplit = false;
    for (const auto& a : axes) {
        if (std::find(allowed.begin(), allowed.end(), a.name) == allowed.end())
            throw biloc::ParseError("family " + family + " has no parameter \"" + a.name + "\"");
        hasV |= a.name == "V";
        hasSplit |= a.name == "V_ab" || a.name == "V_bc";
    }
    if (hasV && hasSplit) throw biloc::ParseError("give either V or V_ab/V_bc, not both");
}

int cmd_sweep(const std::string& family, const std::string& grid) {
    const std::vector<Axis> axes = parse_grid(grid);
    check_axes(family, axes);

    for (const auto& a : axes) std::cout << a.name << ',';
    std::cout << kCsvColumns << '\n';

    std::vector<std::size_t> idx(axes.size(), 0);
    std::vector<double> point(axes.size());
    std::string buffer;
    for (;;) {
        for (std::size_t i = 0; i < axes.size(); ++i) point[i] = axes[i].values[idx[i]];
        const auto [ab, bc] = family_pair(family, axes, point);
        const biloc::BilocReport rep = biloc::mixed_pair_optimum(ab, bc);
        for (double v : point) buffer += num(v) + ',';
        buffer += csv_fields(rep) + '\n';
        if (buffer.size() > (1u << 16)) {
            std::cout << buffer;
            buffer.clear();
        }
        std::size_t k = axes.size();
        while (k > 0 && ++idx[k - 1] == axes[k - 1].values.size()) idx[--k] = 0;
        if (k == 0) break;
    }
    std::cout << buffer;
    return 0;
}

// ----------------------------------------------------------------- sample

struct SampleOptions {
    std::string ab, bc, format = "table";
    std::uint64_t shots = 0, seed = 0;
    bool optimal = false;
    std::optional<double> alpha, gamma;
};

int cmd_sample(const SampleOptions& o) {
    const Loaded ab = load(o.ab), bc = load(o.bc);
    biloc::BilocReport rep = biloc::mixed_pair_optimum(ab.state, bc.state);
    if (!o.optimal && (o.alpha || o.gamma)) {
        // Same frames as the optimum, caller-chosen opening angles.
        const double alpha = o.alpha.value_or(rep.alpha), gamma = o.gamma.value_or(rep.gamma);
        const auto sa = biloc::correlation_spectrum(biloc::pauli_decompose(ab.state));
        const auto sc = biloc::correlation_spectrum(biloc::pauli_decompose(bc.state).swapped());
        rep.alice = {biloc::DichotomicSetting::in_plane(sa.leftAxes.column(0), sa.leftAxes.column(1), alpha),
                     biloc::DichotomicSetting::in_plane(sa.leftAxes.column(0), sa.leftAxes.column(1), -alpha)};
        rep.charlie = {biloc::DichotomicSetting::in_plane(sc.leftAxes.column(0), sc.leftAxes.column(1), gamma),
                       biloc::DichotomicSetting::in_plane(sc.leftAxes.column(0), sc.leftAxes.column(1), -gamma)};
        rep.alpha = alpha;
        rep.gamma = gamma;
    }
    const biloc::TripartiteDistribution dist = biloc::born_distribution(ab.state, bc.state, rep.alice, rep.charlie, rep.bob());
    const biloc::SampleEstimate e = biloc::sample_outcomes(dist, o.shots, o.seed);

    if (o.format == "json") {
        json out{{"ab", ab.description},
                 {"bc", bc.description},
                 {"seed", o.seed},
                 {"alpha", rep.alpha},
                 {"gamma", rep.gamma},
                 {"exact", {{"I", biloc::compute_I(dist)}, {"J", biloc::compute_J(dist)}, {"S", biloc::biloc_score(dist)}}},
                 {"estimate", biloc::io::to_json(e)}};
        std::cout << out.dump(2) << '\n';
    } else {
        auto se = [](double v) { return std::isfinite(v) ? num(v) : std::string("unreliable"); };
        print_row("shots", std::to_string(e.shotsPerSettingPair));
        print_row("seed", std::to_string(o.seed));
        print_row("I", num(e.I) + " +- " + se(e.stderr_I));
        print_row("J", num(e.J) + " +- " + se(e.stderr_J));
        print_row("S", num(e.S) + " +- " + se(e.stderr_S));
        print_row("S_exact", num(biloc::biloc_score(dist)));
        print_row("unreliable", yes_no(e.unreliable));
    }
    return 0;
}

// ----------------------------------------------------------------- search

struct SearchOptions {
    std::string mode = "fixed-bsm", ab, bc, format = "table";
    biloc::OptimizerConfig config;
};

int cmd_search(const SearchOptions& o) {
    if (o.config.restarts < 1 || o.config.maxIterations < 1 || !(o.config.tolerance > 0.0))
        throw biloc::ParseError("restarts and max-iterations must be positive, tolerance > 0");
    const Loaded ab = load(o.ab);
    if (o.mode == "activation") {
        if (!o.bc.empty()) throw biloc::ParseError("activation takes a single state (--ab)");
        const biloc::ActivationReport a = biloc::activation_scan(ab.state, o.config);
        const double closed = biloc::mixed_pair_optimum(ab.state, ab.state).sMax;
        if (o.format == "json") {
            std::cout << json{{"ab", ab.description}, {"search", biloc::io::to_json(a.search)}, {"closedFormBsm", closed}, {"activated", a.activated}}
                             .dump(2)
                      << '\n';
        } else {
            print_row("mode", "activation");
            print_row("s_best", num(a.search.sBest));
            print_row("closed_form_bsm", num(closed));
            print_row("activated", yes_no(a.activated));
            print_row("converged", yes_no(a.search.converged));
            print_row("evaluations", std::to_string(a.search.evaluations));
        }
        return 0;
    }

    const Loaded bc = o.bc.empty() ? ab : load(o.bc);
    biloc::SearchResult r;
    if (o.mode == "fixed-bsm") r = biloc::maximize_fixed_bsm(ab.state, bc.state, o.config);
    else if (o.mode == "general-bob") r = biloc::maximize_general_bob(ab.state, bc.state, o.config);
    else if (o.mode == "two-input-bob") r = biloc::maximize_two_input_bob(ab.state, bc.state, o.config);
    else throw biloc::ParseError("unknown mode \"" + o.mode + "\"");
    const double closed = biloc::mixed_pair_optimum(ab.state, bc.state).sMax;

    if (o.format == "json") {
        std::cout << json{{"ab", ab.description}, {"bc", bc.description}, {"search", biloc::io::to_json(r)}, {"closedFormBsm", closed}}.dump(2)
                  << '\n';
    } else {
        print_row("mode", std::string(biloc::mode_name(r.mode)));
        print_row("s_best", num(r.sBest));
        print_row("closed_form_bsm", num(closed));
        print_row("excess", num(r.sBest - closed));
        print_row("converged", yes_no(r.converged));
        print_row("evaluations", std::to_string(r.evaluations));
        std::string params;
        for (double p : r.settings) params += (params.empty() ? "" : " ") + num(p);
        print_row("settings", params);
    }
    return 0;
}

// ----------------------------------------------------------------- verify

int cmd_verify(const std::string& fault, const std::vector<std::string>& only) {
    if (fault == "j-sign") biloc::fault::inject(biloc::fault::Fault::JSign);
    else if (!fault.empty()) throw biloc::ParseError("unknown fault \"" + fault + "\"");

    std::printf("%-6s %-6s %-26s %-72s %s\n", "result", "id", "criterion", "reference value", "computed");
    int failed = 0;
    for (const auto& id : only) {
        bool known = false;
        for (const auto& c : biloc::acceptance::criteria()) known |= id == c.id;
        if (!known) throw biloc::ParseError("unknown criterion \"" + id + "\"");
    }
    for (const auto& entry : biloc::acceptance::criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), entry.id) == only.end()) continue;
        const auto r = biloc::acceptance::run_selected({entry.id}).front();
        std::printf("%-6s %-6s %-26s %-72s %s\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(), r.reference.c_str(), r.computed.c_str());
        std::fflush(stdout);
        if (!r.passed) ++failed;
    }
    std::printf("%d failed\n", failed);
    return failed == 0 ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bilocality inequality analysis for two-qubit source pairs"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"table", "json", "csv"};

    AnalyzeOptions analyze;
    auto* an = app.add_subcommand("analyze", "Closed-form optimum for a pair of states");
    an->add_option("--ab", analyze.ab, "State of the Alice-Bob source (JSON or file)")->required();
    an->add_option("--bc", analyze.bc, "State of the Bob-Charlie source (JSON or file)")->required();
    an->add_flag("--oracle", analyze.oracle, "Also run the numerical fixed-BSM search and report the gap");
    an->add_option("--seed", analyze.seed, "Seed for --oracle");
    an->add_option("--format", analyze.format)->check(CLI::IsMember(formats));

    std::string family, grid;
    auto* sw = app.add_subcommand("sweep", "Closed-form optimum over a parameter grid (CSV)");
    sw->add_option("--family", family, "werner | schmidt | noisy_schmidt")->required();
    sw->add_option("--grid", grid, "name=start:stop:step[,name=...], first axis outermost")->required();

    SampleOptions sample;
    double alpha = 0.0, gamma = 0.0;
    auto* sa = app.add_subcommand("sample", "Finite-shot estimate of I, J and S");
    sa->add_option("--ab", sample.ab)->required();
    sa->add_option("--bc", sample.bc)->required();
    sa->add_option("--shots", sample.shots, "Shots per (x, z) pair")->required()->check(CLI::PositiveNumber);
    sa->add_option("--seed", sample.seed);
    auto* optFlag = sa->add_flag("--optimal", sample.optimal, "Use the closed-form optimal settings (default)");
    auto* alphaOpt = sa->add_option("--alpha", alpha, "Alice's opening angle");
    auto* gammaOpt = sa->add_option("--gamma", gamma, "Charlie's opening angle");
    alphaOpt->excludes(optFlag);
    gammaOpt->excludes(optFlag);
    sa->add_option("--format", sample.format)->check(CLI::IsMember({"table", "json"}));

    SearchOptions search;
    auto* se = app.add_subcommand("search", "Numerical maximization of S over measurements");
    se->add_option("--mode", search.mode)->check(CLI::IsMember({"fixed-bsm", "general-bob", "two-input-bob", "activation"}));
    se->add_option("--ab", search.ab)->required();
    se->add_option("--bc", search.bc, "Defaults to --ab");
    se->add_option("--restarts", search.config.restarts);
    se->add_option("--seed", search.config.seed);
    se->add_option("--max-iterations", search.config.maxIterations);
    se->add_option("--tolerance", search.config.tolerance);
    se->add_option("--format", search.format)->check(CLI::IsMember({"table", "json"}));

    std::string fault;
    std::vector<std::string> only;
    auto* ve = app.add_subcommand("verify", "Run the acceptance criteria");
    ve->add_option("--inject-fault", fault)->group("");
    ve->add_option("--only", only, "Restrict to these criterion ids")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (*an) return cmd_analyze(analyze);
        if (*sw) return cmd_sweep(family, grid);
        if (*sa) {
            if (*alphaOpt) sample.alpha = alpha;
            if (*gammaOpt) sample.gamma = gamma;
            return cmd_sample(sample);
        }
        if (*se) return cmd_search(search);
        if (*ve) return cmd_verify(fault, only);
    } catch (const biloc::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ResourceLimit& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const biloc::InvalidState& e) {
        std::cerr << "invalid state: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const biloc::DomainError& e) {
        std::cerr << "invalid state: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
