// Command-line front end: print symbolic objects, integrate problems to CSV,
// and run the verification suite with machine-readable JSON reports.
//
// Exit codes: 0 success / all checks pass, 1 check failure, 2 usage error,
// 3 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "riccati/chain.hpp"
#include "riccati/checks.hpp"
#include "riccati/hierarchy.hpp"
#include "riccati/jetlift.hpp"

namespace {

using namespace riccati;

int cmd_print(const std::vector<std::string>& args) {
    if (args.empty()) {
        std::cerr << "print needs a kind: chain n k | pii-hierarchy n | lenard-j n | "
                     "kdv-gradients n | f-xvi-template\n";
        return 2;
    }
    const std::string& kind = args[0];
    auto arg_int = [&](std::size_t i) {
        if (i >= args.size()) throw std::invalid_argument("missing argument");
        return std::stoi(args[i]);
    };
    try {
        if (kind == "chain") {
            int n = arg_int(1);
            DiffPoly k = args.size() > 2 ? parse(args[2]) : DiffPoly::symbol("k");
            std::cout << print(chain(n, k)) << "\n";
        } else if (kind == "pii-hierarchy") {
            std::cout << print(pii_n(arg_int(1))) << " = 0\n";
        } else if (kind == "lenard-j") {
            std::cout << print(lenard_j(arg_int(1)).j(arg_int(1))) << "\n";
        } else if (kind == "kdv-gradients") {
            int n = arg_int(1);
            auto seq = kdv_gradients(n);
            for (int m = 2; m <= n; ++m)
                std::cout << "g" << m << " = " << print(seq.g(m)) << "\n";
        } else if (kind == "f-xvi-template") {
            std::cout << print(f_xvi_template())
                      << " = 0   (A..E free coefficient functions; not verified)\n";
        } else {
            std::cerr << "unknown print kind '" << kind << "'\n";
            return 2;
        }
    } catch (const std::exception& ex) {
        std::cerr << "print: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}

struct IntegrateArgs {
    std::string problem;
    std::string v_text, w_text;
    std::vector<double> ics;
    double x0 = 0.0, x1 = 6.283185307179586;
    int grid = 512;
    double rtol = 1e-10, atol = 1e-12;
    double alpha = 0.0;
    double k = 1.0;
    double sigma = 1.0;
    int sign = 1;
    std::string out_path;
};

int write_csv(const IntegrateArgs& a, const IntegrateResult& res) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!a.out_path.empty()) {
        file.open(a.out_path);
        if (!file) {
            std::cerr << "cannot open " << a.out_path << "\n";
            return 2;
        }
        os = &file;
    }
    const Trajectory& t = res.trajectory;
    *os << "x";
    for (std::size_t c = 0; c < (t.states.empty() ? 0 : t.states[0].size()); ++c)
        *os << ",y" << c;
    *os << "\n";
    os->precision(15);
    for (std::size_t i = 0; i < t.size(); ++i) {
        *os << t.grid[i];
        for (double v : t.states[i]) *os << "," << v;
        *os << "\n";
    }
    if (!res.complete()) {
        *os << "# truncated at x=" << res.last_x << "\n";
        std::cerr << "integration truncated at x = " << res.last_x << "\n";
    }
    return 0;
}

int cmd_integrate(const IntegrateArgs& a) {
    IntegrateOptions opts;
    opts.rtol = a.rtol;
    opts.atol = a.atol;
    opts.grid_n = a.grid;

    FunctionSpec v, w;
    try {
        v = FunctionSpec::parse(a.v_text.empty() ? "trig:1;0.3,0" : a.v_text);
        w = FunctionSpec::parse(a.w_text.empty() ? "const:0" : a.w_text);
    } catch (const std::exception& ex) {
        std::cerr << "bad coefficient spec: " << ex.what() << "\n";
        return 2;
    }

    Rhs rhs;
    std::vector<double> y0 = a.ics;
    std::size_t dim = 0;
    double alpha = a.alpha, k = a.k, sigma = a.sigma, sgn = a.sign;

    if (a.problem == "hill") {
        dim = 2;
        rhs = [v, k](double x, const std::vector<double>& y, std::vector<double>& dy) {
            dy[0] = y[1];
            dy[1] = -k * v.eval(x) * y[0];
        };
    } else if (a.problem == "pvf") {
        dim = 3;
        rhs = [v, k](double x, const std::vector<double>& y, std::vector<double>& dy) {
            auto vj = v.jet(x, 1);
            dy[0] = y[1];
            dy[1] = y[2];
            dy[2] = -4.0 * k * vj[0] * y[1] - 2.0 * k * vj[1] * y[0];
        };
    } else if (a.problem == "riccati") {
        dim = 1;
        rhs = [v](double x, const std::vector<double>& y, std::vector<double>& dy) {
            dy[0] = y[0] * y[0] + v.eval(x);
        };
    } else if (a.problem == "airy") {
        dim = 2;
        rhs = [sgn](double x, const std::vector<double>& y, std::vector<double>& dy) {
            dy[0] = y[1];
            dy[1] = -sgn * x * y[0];
        };
    } else if (a.problem == "pii") {
        dim = 2;
        rhs = [alpha](double x, const std::vector<double>& y, std::vector<double>& dy) {
            dy[0] = y[1];
            dy[1] = 2.0 * y[0] * y[0] * y[0] + x * y[0] + alpha;
        };
    } else if (a.problem == "pii-hamiltonian") {
        dim = 2;
        rhs = [alpha](double x, const std::vector<double>& y, std::vector<double>& dy) {
            dy[0] = y[1] - y[0] * y[0] - 0.5 * x;
            dy[1] = 2.0 * y[0] * y[1] + alpha + 0.5;
        };
    } else if (a.problem == "cdis") {
        dim = 3;
        rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
            dy[0] = y[1];
            dy[1] = y[2];
            dy[2] = -(3.0 * y[0] * y[0] * y[2] + 9.0 * y[0] * y[1] * y[1] +
                      3.0 * y[0] * y[0] * y[0] * y[0] * y[1]);
        };
    } else if (a.problem == "milne-pinney") {
        dim = 2;
        rhs = [v, sigma](double x, const std::vector<double>& y, std::vector<double>& dy) {
            dy[0] = y[1];
            dy[1] = -v.eval(x) * y[0] + sigma / (y[0] * y[0] * y[0]);
        };
    } else {
        // Treat the problem text as a differential polynomial, monic in the
        // top derivative of u, integrated as a first-order system.
        DiffPoly p;
        try {
            p = parse(a.problem);
        } catch (const ParseError& pe) {
            std::cerr << "cannot parse problem: " << pe.what() << "\n";
            return 2;
        }
        try {
            SolvedOde ode(p, "u");
            dim = static_cast<std::size_t>(ode.order());
            EvalContext ctx;
            ctx.coeff_specs["v"] = v;
            ctx.coeff_specs["w"] = w;
            ctx.consts = {{"k", k}, {"alpha", alpha}, {"sigma", sigma}};
            rhs = [ode, ctx](double x, const std::vector<double>& y,
                             std::vector<double>& dy) {
                std::map<DiffSymbol, double> jet;
                jet[DiffSymbol("x", 0)] = x;
                for (std::size_t j = 0; j < y.size(); ++j)
                    jet[DiffSymbol("u", static_cast<int>(j))] = y[j];
                const DiffPoly& top = ode.derivative_expr(0);
                for (const auto& base : top.jet_bases()) {
                    if (kind_of_base(base) != SymbolKind::Coefficient) continue;
                    auto it = ctx.coeff_specs.find(base);
                    if (it == ctx.coeff_specs.end()) throw MissingCoefficient(base);
                    auto vals = it->second.jet(x, top.max_order(base));
                    for (std::size_t j = 0; j < vals.size(); ++j)
                        jet[DiffSymbol(base, static_cast<int>(j))] = vals[j];
                }
                for (std::size_t j = 0; j + 1 < y.size(); ++j) dy[j] = y[j + 1];
                dy[y.size() - 1] = eval_jet(top, jet, ctx.consts);
            };
        } catch (const std::exception& ex) {
            std::cerr << "cannot set up problem: " << ex.what() << "\n";
            return 2;
        }
    }

    if (y0.size() != dim) {
        std::cerr << "problem '" << a.problem << "' needs " << dim << " initial values\n";
        return 2;
    }
    try {
        IntegrateResult res = integrate(rhs, a.x0, y0, a.x1, opts);
        if (res.status == IntegrateStatus::NonFinite && res.trajectory.size() == 0) {
            std::cerr << "numerical failure at x = " << res.last_x << "\n";
            return 3;
        }
        return write_csv(a, res);
    } catch (const std::exception& ex) {
        std::cerr << "integrate: " << ex.what() << "\n";
        return 3;
    }
}

} // namespace

// key=value lines; '#' starts a comment. Explicit flags always win.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.pop_back();
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

int main(int argc, char** argv) {
    CLI::App app{"Riccati-chain and Painleve verification toolkit"};
    app.require_subcommand(1);

    // print
    auto* print_cmd = app.add_subcommand("print", "print symbolic objects");
    std::vector<std::string> print_args;
    print_cmd->add_option("args", print_args, "chain n [k] | pii-hierarchy n | lenard-j n | "
                                              "kdv-gradients n | f-xvi-template");

    // integrate
    auto* int_cmd = app.add_subcommand("integrate", "integrate a problem and write CSV");
    IntegrateArgs ia;
    int_cmd->add_option("problem", ia.problem,
                        "hill|pvf|riccati|airy|pii|pii-hamiltonian|cdis|milne-pinney or a "
                        "differential polynomial in u")
        ->required();
    int_cmd->add_option("--v", ia.v_text, "coefficient v(x) spec");
    int_cmd->add_option("--w", ia.w_text, "coefficient w(x) spec");
    int_cmd->add_option("--ics", ia.ics, "initial values a,b[,c]")->delimiter(',');
    std::vector<double> domain;
    int_cmd->add_option("--domain", domain, "x0,x1")->delimiter(',')->expected(2);
    int_cmd->add_option("--grid", ia.grid, "output grid points");
    int_cmd->add_option("--tol", ia.rtol, "relative tolerance");
    int_cmd->add_option("--alpha", ia.alpha, "parameter alpha");
    int_cmd->add_option("--sigma", ia.sigma, "parameter sigma");
    int_cmd->add_option("--k", ia.k, "parameter k");
    int_cmd->add_option("--sign", ia.sign, "sign +1|-1")->check(CLI::IsMember({1, -1}));
    int_cmd->add_option("--out", ia.out_path, "CSV output path");

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "run verification checks");
    std::vector<std::string> check_args;
    ver_cmd->add_option("checks", check_args, "check names or 'all'");
    bool list_checks = false;
    ver_cmd->add_flag("--list", list_checks, "list known checks");
    std::string ver_v, ver_w, ver_out;
    double ver_tol = 0.0, ver_alpha = 0.0, ver_k = 0.0;
    std::uint64_t ver_seed = 0;
    int ver_grid = 0, ver_sign = 0;
    std::vector<double> ver_domain, ver_ics;
    auto* opt_v = ver_cmd->add_option("--v", ver_v, "coefficient v(x) spec");
    auto* opt_w = ver_cmd->add_option("--w", ver_w, "coefficient w(x) spec");
    auto* opt_tol = ver_cmd->add_option("--tol", ver_tol, "tolerance override");
    auto* opt_seed = ver_cmd->add_option("--seed", ver_seed, "random seed");
    auto* opt_grid = ver_cmd->add_option("--grid", ver_grid, "grid points");
    auto* opt_alpha = ver_cmd->add_option("--alpha", ver_alpha, "parameter alpha");
    auto* opt_k = ver_cmd->add_option("--k", ver_k, "parameter k");
    auto* opt_sign = ver_cmd->add_option("--sign", ver_sign, "sign +1|-1");
    auto* opt_domain =
        ver_cmd->add_option("--domain", ver_domain, "x0,x1")->delimiter(',')->expected(2);
    auto* opt_ics = ver_cmd->add_option("--ics", ver_ics, "initial values")->delimiter(',');
    ver_cmd->add_option("--out", ver_out, "JSON output path");
    std::string ver_config;
    ver_cmd->add_option("--config", ver_config, "key=value file replicating flags");

    CLI11_PARSE(app, argc, argv);

    if (print_cmd->parsed()) return cmd_print(print_args);

    if (int_cmd->parsed()) {
        if (domain.size() == 2) {
            ia.x0 = domain[0];
            ia.x1 = domain[1];
        }
        return cmd_integrate(ia);
    }

    if (ver_cmd->parsed()) {
        if (list_checks) {
            for (const auto& n : riccati::check_names()) std::cout << n << "\n";
            return 0;
        }
        if (check_args.empty()) {
            std::cerr << "verify needs check names or 'all' (see --list)\n";
            return 2;
        }
        riccati::CheckParams params;
        if (!ver_config.empty()) {
            try {
                auto kv = read_config(ver_config);
                auto get = [&](const char* key) -> const std::string* {
                    auto it = kv.find(key);
                    return it == kv.end() ? nullptr : &it->second;
                };
                if (auto* s = get("v")) params.v = *s;
                if (auto* s = get("w")) params.w = *s;
                if (auto* s = get("tol")) params.tol = std::stod(*s);
                if (auto* s = get("seed")) params.seed = std::stoull(*s);
                if (auto* s = get("grid")) params.grid = std::stoi(*s);
                if (auto* s = get("alpha")) params.alpha = std::stod(*s);
                if (auto* s = get("k")) params.k = std::stod(*s);
                if (auto* s = get("sign")) params.sign = std::stoi(*s);
                if (auto* s = get("domain")) {
                    auto comma = s->find(',');
                    params.x0 = std::stod(s->substr(0, comma));
                    params.x1 = std::stod(s->substr(comma + 1));
                }
                if (auto* s = get("ics")) {
                    std::vector<double> vals;
                    std::stringstream ss(*s);
                    std::string piece;
                    while (std::getline(ss, piece, ',')) vals.push_back(std::stod(piece));
                    params.ics = vals;
                }
            } catch (const std::exception& ex) {
                std::cerr << "config: " << ex.what() << "\n";
                return 2;
            }
        }
        if (*opt_v) params.v = ver_v;
        if (*opt_w) params.w = ver_w;
        if (*opt_tol) params.tol = ver_tol;
        if (*opt_seed) params.seed = ver_seed;
        if (*opt_grid) params.grid = ver_grid;
        if (*opt_alpha) params.alpha = ver_alpha;
        if (*opt_k) params.k = ver_k;
        if (*opt_sign) params.sign = ver_sign;
        if (*opt_domain) {
            params.x0 = ver_domain[0];
            params.x1 = ver_domain[1];
        }
        if (*opt_ics) params.ics = ver_ics;

        try {
            auto entries = riccati::run_checks(check_args, params);
            auto json = riccati::report_json(entries);
            std::string text = json.dump(2) + "\n";
            if (!ver_out.empty()) {
                std::ofstream f(ver_out);
                if (!f) {
                    std::cerr << "cannot open " << ver_out << "\n";
                    return 2;
                }
                f << text;
            } else {
                std::cout << text;
            }
            bool all_pass = true;
            for (const auto& e : entries) all_pass = all_pass && e.pass;
            if (!all_pass) {
                for (const auto& e : entries)
                    if (!e.pass)
                        std::cerr << "FAIL " << e.check << " " << e.params.dump() << "\n";
            }
            return all_pass ? 0 : 1;
        } catch (const riccati::UnknownCheck& ex) {
            std::cerr << ex.what() << "\n";
            return 2;
        } catch (const std::exception& ex) {
            std::cerr << "verify: " << ex.what() << "\n";
            return 3;
        }
    }
    return 2;
}
