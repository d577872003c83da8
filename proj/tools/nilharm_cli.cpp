#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "nilharm/checks.hpp"

using nlohmann::json;
using namespace nilharm;

namespace {

struct Config {
    checks::Options opt;
    std::optional<int> v;
    std::optional<std::uint64_t> seed;
    std::string group = "O";
    std::string lambda_range;
    std::string param;
    std::string point;
    std::string s_list = "0.5,1,2";
    int j = 1;
    std::string target = "n42";
    std::string out;
    std::string format = "json";
    bool sample = false;
};

/// Accepts inline JSON or a path to a JSON file.
json load_json(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) return json::parse(text);
    std::ifstream in(text);
    if (!in) throw std::invalid_argument("cannot open " + text);
    return json::parse(in);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

spherical::SphericalParam parse_param(const Config& c) {
    const int v = c.v.value_or(2);
    if (c.param.empty()) {
        std::vector<double> lam(v / 2, 0.0);
        lam[0] = 1.0;
        return spherical::make_param(v, v % 2 ? 0.5 : 0.0, lam, {0},
                                     c.opt.group == matpolar::OrthGroup::SO ? std::optional<int>(1) : std::nullopt);
    }
    const json j = load_json(c.param);
    std::optional<int> eps;
    if (j.contains("eps") && !j["eps"].is_null()) eps = j["eps"].get<int>();
    return spherical::make_param(v, j.value("r", 0.0), j.at("lambda").get<std::vector<double>>(),
                                 j.value("l", std::vector<int>{}), eps);
}

std::optional<group::GroupPoint> parse_point(const Config& c) {
    if (c.point.empty()) return std::nullopt;
    const json j = load_json(c.point);
    const auto x = j.at("x").get<std::vector<double>>();
    const auto a = j.at("a").get<std::vector<double>>();
    const int v = j.value("v", static_cast<int>(x.size()));
    if (static_cast<int>(x.size()) != v || static_cast<int>(a.size()) != v * (v - 1) / 2)
        throw std::invalid_argument("point: x must have v entries and a must have v(v-1)/2 entries");
    return group::GroupPoint{Eigen::Map<const Eigen::VectorXd>(x.data(), v),
                             Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<int>(a.size()))};
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json to_json(const checks::Report& r) {
    json j;
    j["command"] = r.command;
    j["seed"] = r.seed;
    j["inputs"] = json::object();
    for (const auto& [k, x] : r.inputs) j["inputs"][k] = number(x);
    j["values"] = json::object();
    for (const auto& [k, x] : r.values) j["values"][k] = number(x);
    j["residuals"] = json::object();
    j["tolerances"] = json::object();
    j["checks"] = json::array();
    for (const auto& m : r.metrics) {
        j["residuals"][m.name] = number(m.value);
        j["tolerances"][m.name] = number(m.tolerance);
        const char* kind = m.kind == checks::Metric::Kind::at_most ? "at_most" : m.kind == checks::Metric::Kind::at_least ? "at_least" : "flag";
        j["checks"].push_back({{"name", m.name}, {"value", number(m.value)}, {"tolerance", number(m.tolerance)}, {"kind", kind}, {"pass", m.pass}});
    }
    if (!r.table.columns.empty()) j["table"] = {{"columns", r.table.columns}, {"rows", r.table.rows}};
    j["pass"] = r.pass();
    j["timings"] = {{"seconds", r.seconds}};
    return j;
}

std::string to_csv(const checks::Report& r) {
    std::ostringstream os;
    os.precision(17);
    if (!r.table.columns.empty()) {
        for (std::size_t i = 0; i < r.table.columns.size(); ++i) os << (i ? "," : "") << r.table.columns[i];
        os << "\n";
        for (const auto& row : r.table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << "\n";
        }
        return os.str();
    }
    os << "name,value,tolerance,pass\n";
    for (const auto& m : r.metrics) os << m.name << "," << m.value << "," << m.tolerance << "," << (m.pass ? 1 : 0) << "\n";
    return os.str();
}

int emit(const checks::Report& r, const Config& c) {
    const std::string text = c.format == "csv" ? to_csv(r) : to_json(r).dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out);
        if (!f) throw std::invalid_argument("cannot write " + c.out);
        f << text;
    }
    if (!r.pass())
        for (const auto& m : r.metrics)
            if (!m.pass) std::cerr << "FAIL " << r.command << " " << m.name << " = " << m.value << " (tolerance " << m.tolerance << ")\n";
    return r.pass() ? 0 : 1;
}

void finalize(Config& c) {
    c.opt.v = c.v;
    if (c.seed) c.opt.seed = *c.seed;
    if (c.group == "SO") c.opt.group = matpolar::OrthGroup::SO;
    if (!c.lambda_range.empty()) {
        const auto r = parse_list(c.lambda_range);
        if (r.size() != 2 || !(r[0] > 0) || !(r[1] > r[0])) throw std::invalid_argument("--lambda-range expects a,b with 0 < a < b");
        c.opt.lambda_range = std::make_pair(r[0], r[1]);
    }
    if (c.opt.tol && !(*c.opt.tol > 0)) throw std::invalid_argument("--tol must be positive");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial Fourier analysis on free two-step nilpotent groups: computations and verification suites"};
    app.require_subcommand(1);
    app.fallthrough();
    Config c;
    app.add_option("--v", c.v, "Generator dimension v")->check(CLI::Range(2, 5));
    app.add_option("--group", c.group, "Compact group")->check(CLI::IsMember({"O", "SO"}));
    app.add_option("--seed", c.seed, "Random seed");
    app.add_option("--order", c.opt.order, "Quadrature order (meaning depends on the command)");
    app.add_option("--lmax", c.opt.l_max, "Truncation in l");
    app.add_option("--lambda-range", c.lambda_range, "Spectral window a,b");
    app.add_option("--rmax", c.opt.r_max, "Radial or s truncation");
    app.add_option("--tol", c.opt.tol, "Override for every upper-bound tolerance");
    app.add_option("--out", c.out, "Report path (stdout by default)");
    app.add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    std::function<checks::Report()> job;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<checks::Report()> f) {
        auto* sub = parent->add_subcommand(name, help);
        sub->fallthrough();
        sub->callback([&job, f] { job = f; });
        return sub;
    };
    leaf(&app, "specfun-check", "Laguerre orthonormality, Bessel ODE, shift identities", [&] { return checks::specfun_check(c.opt); });
    leaf(&app, "group-check", "Associativity, homogeneity, polar identity", [&] { return checks::group_check(c.opt); });
    leaf(&app, "polar-check", "Antisymmetric polar decomposition and polar integration", [&] { return checks::polar_check(c.opt); });

    auto* sph = app.add_subcommand("spherical", "Spherical functions");
    sph->require_subcommand(1);
    sph->fallthrough();
    auto* eval = leaf(sph, "eval", "Evaluate phi at a point", [&] {
        return c.sample ? checks::spherical_sample_check(c.opt) : checks::spherical_eval(parse_param(c), parse_point(c), c.opt);
    });
    eval->add_option("--param", c.param, "SphericalParam JSON (inline or file)");
    eval->add_option("--point", c.point, "GroupPoint JSON (inline or file)");
    eval->add_flag("--sample", c.sample, "Run the sampled check instead (identity, bound, v=2 closed form)");
    leaf(sph, "eigencheck", "Sub-Laplacian and center-Laplacian residuals", [&] { return checks::spherical_eigencheck(c.opt); });
    leaf(sph, "funceq-check", "Functional equation residual", [&] { return checks::spherical_funceq_check(c.opt); });

    auto* pl = app.add_subcommand("plancherel", "Radial Plancherel transform");
    pl->require_subcommand(1);
    pl->fallthrough();
    leaf(pl, "roundtrip", "Spectral bump -> f -> spectral values", [&] { return checks::plancherel_roundtrip(c.opt); });
    leaf(pl, "parseval", "Parseval residual on a refinement ladder", [&] { return checks::plancherel_parseval(c.opt); });
    leaf(pl, "kernel", "Heat-multiplier kernel", [&] { return checks::plancherel_kernel(c.opt); });

    auto* af = app.add_subcommand("areafn", "Spectral-side area functions");
    af->require_subcommand(1);
    af->fallthrough();
    auto* pair = leaf(af, "pair", "Pairing <mu_s, phi>, its s-derivatives and the area function", [&] {
        return checks::areafn_pair(parse_param(c), parse_list(c.s_list), c.j, c.opt);
    });
    pair->add_option("--param", c.param, "SphericalParam JSON (inline or file)");
    pair->add_option("--s", c.s_list, "Comma-separated s values");
    pair->add_option("--j", c.j, "Derivative order of the area function")->check(CLI::Range(1, 3));
    auto* scan = leaf(af, "scan", "Uniform-bound scan and scale invariance", [&] { return checks::areafn_scan(c.target, c.opt); });
    scan->add_option("--target", c.target, "h2 (Heisenberg H^2) or n42 (N_{4,2})")->check(CLI::IsMember({"h2", "n42"}));

    auto* mu = app.add_subcommand("multiplier", "Fourier-multiplier machinery");
    mu->require_subcommand(1);
    mu->fallthrough();
    leaf(mu, "partition-check", "Partition of unity, overlap and support", [&] { return checks::multiplier_partition_check(c.opt); });
    leaf(mu, "xi-check", "Xi identity", [&] { return checks::multiplier_xi_check(c.opt); });
    leaf(mu, "aleph-check", "aleph identity", [&] { return checks::multiplier_aleph_check(c.opt); });
    leaf(mu, "criterion", "Multiplier criterion: refinement stability and divergence", [&] { return checks::multiplier_criterion_check(c.opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        finalize(c);
        return emit(job(), c);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
