// Command-line front end: Lévy characteristics of killed/conditioned stable
// processes, path simulation, the statistical validation battery, and the
// small-time first-passage table.

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pssmp/characteristics.hpp"
#include "pssmp/path_engine.hpp"
#include "pssmp/validate.hpp"

namespace {

struct CommonOpts {
    double alpha = 1.5;
    double c_plus = 1.0;
    double c_minus = 1.0;
    std::string variant = "killed";
    double x0 = 1.0;
    double dt = 1e-3;
    double horizon = 1.0;
    long paths = 1000;
    std::uint64_t seed = 1;
    double epsilon = 1e-3;
    double quad_rel_tol = 1e-10;
    std::string out;
    std::string format = "csv";
    std::string dump_config;
};

void add_common(CLI::App& app, CommonOpts& o) {
    app.set_config("--config", "", "key=value config file (flag names without --)");
    app.add_option("--dump-config", o.dump_config,
                   "write the effective configuration to this file and continue")
        ->configurable(false);
    app.add_option("--alpha", o.alpha, "stability index in (0,2)");
    app.add_option("--c-plus", o.c_plus, "positive-jump intensity");
    app.add_option("--c-minus", o.c_minus, "negative-jump intensity");
    app.add_option("--variant", o.variant, "killed | up | down")
        ->check(CLI::IsMember({"killed", "up", "down"}));
    app.add_option("--x0", o.x0, "starting point");
    app.add_option("--dt", o.dt, "grid step");
    app.add_option("--horizon", o.horizon, "time horizon");
    app.add_option("--paths", o.paths, "number of Monte Carlo paths");
    app.add_option("--seed", o.seed, "master seed");
    app.add_option("--epsilon", o.epsilon, "small-jump cutoff");
    app.add_option("--quad-rel-tol", o.quad_rel_tol, "quadrature relative tolerance");
    app.add_option("--out", o.out, "output file (stdout when empty)");
    app.add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

pssmp::Variant parse_variant(const std::string& v) {
    if (v == "killed") return pssmp::Variant::KILLED;
    if (v == "up") return pssmp::Variant::STAY_POSITIVE;
    return pssmp::Variant::HIT_ZERO;
}

pssmp::QuadratureSpec quad_of(const CommonOpts& o) {
    pssmp::QuadratureSpec q;
    q.rel_tol = o.quad_rel_tol;
    return q;
}

int write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open output file " << path << "\n";
        return 2;
    }
    os << content;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lamperti characteristics and simulation of killed/conditioned stable processes"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string lambdas = "0.5,1,2";
    std::string t_grid = "0.001,0.002,0.005";
    add_common(app, o);

    CLI::App* c_chars = app.add_subcommand("characteristics",
                                           "Lévy triplet, drift constants and consistency report");
    c_chars->fallthrough();
    c_chars->add_option("--lambda", lambdas, "comma-separated frequencies for Phi");

    CLI::App* c_sim = app.add_subcommand("simulate", "simulate paths and write them as CSV");
    c_sim->fallthrough();

    CLI::App* c_val = app.add_subcommand("validate", "run the statistical test battery");
    c_val->fallthrough();

    CLI::App* c_tail = app.add_subcommand("tail", "small-time first-passage table");
    c_tail->fallthrough();
    c_tail->add_option("--t-grid", t_grid, "comma-separated small times");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }

    if (!o.dump_config.empty()) {
        std::ofstream os(o.dump_config);
        if (!os) {
            std::cerr << "argument error: cannot open " << o.dump_config << "\n";
            return 2;
        }
        os << app.config_to_str(true, false);
    }

    pssmp::StableParams params{o.alpha, o.c_plus, o.c_minus};
    try {
        params.validate();
    } catch (const std::exception& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }

    const pssmp::QuadratureSpec q = quad_of(o);
    const pssmp::Variant variant = parse_variant(o.variant);

    try {
        if (c_chars->parsed()) {
            nlohmann::ordered_json j =
                nlohmann::ordered_json::parse(pssmp::triplet_json(variant, params, q));
            std::vector<double> ls;
            std::stringstream ss(lambdas);
            for (std::string item; std::getline(ss, item, ',');)
                if (!item.empty()) ls.push_back(std::stod(item));
            nlohmann::ordered_json phi = nlohmann::ordered_json::array();
            for (double l : ls) {
                const std::complex<double> v = pssmp::char_exponent(variant, params, l, q);
                phi.push_back({{"lambda", l}, {"re", v.real()}, {"im", v.imag()}});
            }
            j["phi"] = phi;
            return write_output(o.out, j.dump(2) + "\n");
        }

        if (c_sim->parsed()) {
            pssmp::McConfig mc{o.paths, o.dt, o.horizon, o.x0, o.seed};
            std::vector<pssmp::SamplePath> out;
            out.reserve(o.paths);
            if (variant == pssmp::Variant::KILLED) {
                for (long i = 0; i < o.paths; ++i) {
                    pssmp::RngStream rng(o.seed, i);
                    out.push_back(pssmp::killed_stable_path(params, mc, rng).path);
                }
            } else {
                pssmp::SimScheme scheme;
                scheme.epsilon = o.epsilon;
                pssmp::ConditionedSimulator sim(variant, params, mc, q, scheme);
                for (long i = 0; i < o.paths; ++i) {
                    pssmp::RngStream rng(o.seed, i);
                    out.push_back(sim.sample(rng));
                }
            }
            if (o.format == "json") {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (std::size_t id = 0; id < out.size(); ++id) {
                    const auto& path = out[id];
                    nlohmann::ordered_json pj;
                    pj["path_id"] = id;
                    pj["dt"] = path.dt;
                    pj["values"] = std::vector<double>(
                        path.values.begin(), path.values.begin() + path.living_count());
                    if (path.lifetime_index) pj["lifetime_index"] = *path.lifetime_index;
                    j.push_back(pj);
                }
                return write_output(o.out, j.dump(2) + "\n");
            }
            std::ostringstream os;
            pssmp::write_paths_csv(os, out);
            return write_output(o.out, os.str());
        }

        if (c_val->parsed()) {
            pssmp::McConfig mc{o.paths, o.dt, o.horizon, o.x0, o.seed};
            const pssmp::ValidationReport rep = pssmp::run_suite(params, mc, q);
            const int rc = write_output(o.out, rep.to_json() + "\n");
            if (rc != 0) return rc;
            return rep.all_passed() ? 0 : 1;
        }

        if (c_tail->parsed()) {
            std::vector<double> ts;
            std::stringstream ss(t_grid);
            for (std::string item; std::getline(ss, item, ',');)
                if (!item.empty()) ts.push_back(std::stod(item));
            if (ts.empty()) {
                std::cerr << "argument error: --t-grid is empty\n";
                return 2;
            }
            const auto rows = pssmp::first_passage_stats(params, o.x0, ts, o.paths, o.seed);
            if (o.format == "json") {
                nlohmann::ordered_json j = nlohmann::ordered_json::array();
                for (const auto& r : rows)
                    j.push_back({{"t", r.t},
                                 {"est_T", r.est_t},
                                 {"se_T", r.se_t},
                                 {"est_neg", r.est_neg},
                                 {"se_neg", r.se_neg},
                                 {"n", r.n}});
                return write_output(o.out, j.dump(2) + "\n");
            }
            std::ostringstream os;
            os << "t,est_T,se_T,est_neg,se_neg,n\n";
            char buf[200];
            for (const auto& r : rows) {
                std::snprintf(buf, sizeof(buf), "%.12g,%.10g,%.10g,%.10g,%.10g,%ld\n", r.t, r.est_t,
                              r.se_t, r.est_neg, r.se_neg, r.n);
                os << buf;
            }
            return write_output(o.out, os.str());
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
