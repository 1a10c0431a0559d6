// Command-line driver: declarative JSON experiments around the spherical
// transform, its inverse, the fan operators and the support estimators.
// Every subcommand runs end-to-end from --config alone and writes CSV/JSON
// artifacts plus a run manifest into --out. Outputs are byte-identical for
// identical configs regardless of --threads.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hsph/hsph.hpp"

namespace fs = std::filesystem;
using namespace hsph;
using nlohmann::json;

namespace {

struct RunContext {
    ExperimentConfig cfg;
    json cfg_json;
    fs::path out_dir;
    unsigned threads = 0;
    unsigned long long seed = 0;
    std::vector<std::string> outputs;
    json timings = json::object();
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

class StepTimer {
public:
    StepTimer(RunContext& ctx, std::string name)
        : ctx_(ctx), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
    ~StepTimer() {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
        ctx_.timings[name_] = ms;
    }

private:
    RunContext& ctx_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
};

void write_text(RunContext& ctx, const std::string& name,
                const std::function<void(std::ostream&)>& body) {
    const fs::path path = ctx.out_dir / name;
    write_file(path.string(), body);
    ctx.outputs.push_back(name);
}

void write_json_file(RunContext& ctx, const std::string& name, const json& j) {
    write_text(ctx, name, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

void write_manifest(RunContext& ctx, const std::string& subcommand, long total_ms) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a(ctx.cfg_json.dump())));
    json m{{"schema", "hsph-run/1"},
           {"subcommand", subcommand},
           {"config_hash", hash},
           {"threads", ctx.threads},
           {"seed", ctx.seed},
           {"grids",
            {{"n", ctx.cfg.n},
             {"n_r", ctx.cfg.radial.n_r},
             {"n_t", ctx.cfg.radial.n_t},
             {"r_max", ctx.cfg.radial.r_max},
             {"t_max", ctx.cfg.radial.t_max},
             {"j_max", ctx.cfg.fan.j_max},
             {"n_lambda", ctx.cfg.fan.n_lambda},
             {"lambda_min", ctx.cfg.fan.lambda_min},
             {"lambda_max", ctx.cfg.fan.lambda_max}}},
           {"timings_ms", ctx.timings},
           {"outputs", ctx.outputs}};
    m["timings_ms"]["total"] = total_ms;
    write_json_file(ctx, "manifest.json", m);
}

RadialFunction build_radial(const RunContext& ctx, const RadialGridPtr& grid) {
    const auto& tf = ctx.cfg.test_function;
    if (tf.kind == "ball")
        return sample_radial(grid, [&](double r, double t) {
            return cplx(ball_bump(tf.radius, r, t), 0.0);
        });
    if (tf.kind == "annulus")
        return sample_radial(grid, [&](double r, double t) {
            return cplx(annulus_bump(tf.r1, tf.r2, r, t), 0.0);
        });
    if (tf.kind == "gaussian")
        return sample_radial(grid, [&](double r, double t) {
            return cplx(gaussian_bump(tf.a, r, t), 0.0);
        });
    if (tf.kind == "tensor_gh")
        return sample_radial(grid, [&](double r, double t) {
            return cplx(growth_demo_g(r) * growth_demo_h(t), 0.0);
        });
    throw config_error("test_function.kind", "'" + tf.kind + "' is not a radial test function");
}

FanFunction build_fan(const RunContext& ctx, const FanGridPtr& grid) {
    const auto& tf = ctx.cfg.test_function;
    if (tf.kind == "fan_gaussian" || tf.kind == "fan_band") {
        FanFunction F(grid);
        for (std::size_t j = 0; j < tf.ray_amplitudes.size(); ++j) {
            if (static_cast<int>(j) > grid->j_max())
                throw config_error("test_function.ray_amplitudes",
                                   "more rays than fan.j_max allows");
            for (int i = 0; i < grid->n_lambda(); ++i) {
                const double la = grid->lambda_nodes()[i];
                const double v = tf.kind == "fan_gaussian"
                                     ? fan_gaussian_profile(tf.lambda0, tf.sigma, la)
                                     : fan_band_profile(tf.band_lo, tf.band_hi, la);
                F.at(0, static_cast<int>(j), i) = tf.ray_amplitudes[j] * v;
            }
        }
        return F;
    }
    if (tf.kind == "fan_point") {
        if (tf.point_j < 0 || tf.point_j > grid->j_max())
            throw config_error("test_function.point_j", "outside fan.j_max");
        FanFunction F(grid);
        int best = 0;
        for (int i = 1; i < grid->n_lambda(); ++i)
            if (std::abs(grid->lambda_nodes()[i] - tf.point_lambda) <
                std::abs(grid->lambda_nodes()[best] - tf.point_lambda))
                best = i;
        F.at(0, tf.point_j, best) = 1.0;
        return F;
    }
    throw config_error("test_function.kind", "'" + tf.kind + "' is not a fan test function");
}

json estimate_record(const RunContext& ctx, const RadiusEstimate& est,
                     const std::string& method) {
    json roots = json::array();
    for (std::size_t j = 1; j < est.sequence.size(); ++j)
        roots.push_back(std::pow(est.sequence[j], 1.0 / static_cast<double>(j)));
    return json{{"schema", "hsph-radius-estimate/1"},
                {"method", method},
                {"limit_method", est.method == LimitMethod::ratio ? "ratio" : "root"},
                {"p", std::isinf(est.p) ? json("inf") : json(est.p)},
                {"beta", est.beta},
                {"j_max", est.sequence.size() - 1},
                {"norms", est.sequence},
                {"ratios", est.ratio_sequence},
                {"roots", roots},
                {"extrapolated_limit", est.extrapolated_limit},
                {"grids",
                 {{"n", ctx.cfg.n},
                  {"radial", ctx.cfg.radial},
                  {"fan", ctx.cfg.fan}}}};
}

void write_estimate_csv(RunContext& ctx, const std::string& name, const RadiusEstimate& est) {
    write_text(ctx, name, [&](std::ostream& os) {
        os << "j,norm,root,ratio\n";
        for (std::size_t j = 0; j < est.sequence.size(); ++j) {
            os << j << ',' << format_double(est.sequence[j]) << ',';
            os << (j == 0 ? "" : format_double(std::pow(est.sequence[j], 1.0 / j))) << ',';
            os << (j + 1 < est.sequence.size() ? format_double(est.ratio_sequence[j]) : "")
               << '\n';
        }
    });
}

LimitMethod limit_method(const RunContext& ctx) {
    return ctx.cfg.limit == "root" ? LimitMethod::root : LimitMethod::ratio;
}

// --- subcommands -----------------------------------------------------------

void run_eval_spherical(RunContext& ctx) {
    StepTimer timer(ctx, "eval");
    if (ctx.cfg.eval_points.empty())
        throw config_error("eval_points", "eval-spherical needs at least one point");
    write_text(ctx, "spherical_values.csv", [&](std::ostream& os) {
        os << "xi_re,xi_im,lambda_re,lambda_im,r,t,re,im\n";
        for (const auto& pt : ctx.cfg.eval_points) {
            const SphericalParams prm{cplx(pt.xi_re, pt.xi_im), cplx(pt.lambda_re, pt.lambda_im)};
            const cplx v = spherical_function(prm, pt.r, cplx(pt.t, 0.0), ctx.cfg.n);
            os << format_double(pt.xi_re) << ',' << format_double(pt.xi_im) << ','
               << format_double(pt.lambda_re) << ',' << format_double(pt.lambda_im) << ','
               << format_double(pt.r) << ',' << format_double(pt.t) << ','
               << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
        }
    });
}

TransformPlanPtr make_plan(const RunContext& ctx) {
    auto radial = RadialGrid::make(ctx.cfg.n, ctx.cfg.radial.r_max, ctx.cfg.radial.t_max,
                                   ctx.cfg.radial.n_r, ctx.cfg.radial.n_t);
    auto fan = FanGrid::make(ctx.cfg.n, ctx.cfg.fan.j_max, ctx.cfg.fan.lambda_min,
                             ctx.cfg.fan.lambda_max, ctx.cfg.fan.n_lambda);
    return TransformPlan::make(radial, fan);
}

void run_transform(RunContext& ctx, const std::string& in_path) {
    auto plan = make_plan(ctx);
    RadialFunction f;
    if (!in_path.empty()) {
        std::ifstream is(in_path);
        if (!is) throw error("cannot open input: " + in_path);
        f = read_radial_csv(is);
        if (!plan->matches(*f.grid)) throw error("input grid does not match config grids");
    } else {
        f = build_radial(ctx, plan->radial_ptr());
    }
    StepTimer timer(ctx, "transform");
    FanFunction G = spherical_transform(f, *plan);
    write_text(ctx, "fan_function.csv", [&](std::ostream& os) { write_csv(os, G); });
}

void run_inverse(RunContext& ctx, const std::string& in_path) {
    auto plan = make_plan(ctx);
    FanFunction F;
    if (!in_path.empty()) {
        std::ifstream is(in_path);
        if (!is) throw error("cannot open input: " + in_path);
        F = read_fan_csv(is);
        if (!plan->matches(*F.grid)) throw error("input grid does not match config grids");
    } else {
        F = build_fan(ctx, plan->fan_ptr());
    }
    StepTimer timer(ctx, "inverse");
    RadialFunction f = inverse_spherical_transform(F, *plan);
    write_text(ctx, "radial_function.csv", [&](std::ostream& os) { write_csv(os, f); });
    const InverseTailReport tail = inverse_tail_report(F);
    write_json_file(ctx, "inverse_tail.json",
                    json{{"schema", "hsph-inverse-tail/1"},
                         {"l1_mass", tail.l1_mass},
                         {"top_ray_fraction", tail.top_ray_fraction},
                         {"lambda_edge_fraction", tail.lambda_edge_fraction}});
}

void run_plancherel(RunContext& ctx) {
    auto plan = make_plan(ctx);
    FanFunction F = build_fan(ctx, plan->fan_ptr());
    StepTimer timer(ctx, "plancherel");
    RadialFunction f = inverse_spherical_transform(F, *plan);
    const double defect = plancherel_defect(f, *plan);
    write_json_file(ctx, "plancherel.json",
                    json{{"schema", "hsph-plancherel/1"}, {"defect", defect}});
    write_text(ctx, "plancherel.csv", [&](std::ostream& os) {
        os << "defect\n" << format_double(defect) << '\n';
    });
}

void run_mplus_check(RunContext& ctx) {
    auto plan = make_plan(ctx);
    RadialFunction f = build_radial(ctx, plan->radial_ptr());
    StepTimer timer(ctx, "mplus_check");
    FanFunction G = spherical_transform(f, *plan);
    FanFunction GA = spherical_transform(multiply_by_a(f, 1, false), *plan);
    FanFunction GAbar = spherical_transform(multiply_by_a(f, 1, true), *plan);
    FanFunction MpG = m_plus_apply(G);
    FanFunction MmG = m_minus_apply(G);

    auto rel = [&](const FanFunction& got, const FanFunction& want, int vj, int lb, int le) {
        double num = 0.0, den = 0.0;
        for (int s = 0; s < 2; ++s)
            for (int j = 0; j <= vj; ++j)
                for (int i = lb; i < le; ++i) {
                    num += std::norm(got.at(s, j, i) - want.at(s, j, i)) *
                           want.grid->mu_weight(j, i);
                    den += std::norm(want.at(s, j, i)) * want.grid->mu_weight(j, i);
                }
        return std::sqrt(num / den);
    };
    const double mplus_rel =
        rel(MpG, GA, MpG.valid_j, MpG.lambda_begin(), MpG.lambda_end());
    for (auto& v : MmG.values) v = -v;
    const double mminus_rel =
        rel(MmG, GAbar, MmG.valid_j, MmG.lambda_begin(), MmG.lambda_end());

    // transpose defect at the configured resolution and at half the lambda step
    FanFunction phi = G;
    FanFunction psi = GA;
    const double defect_coarse = transpose_defect(phi, psi);
    auto fan_fine = FanGrid::make(ctx.cfg.n, ctx.cfg.fan.j_max, ctx.cfg.fan.lambda_min,
                                  ctx.cfg.fan.lambda_max, 2 * ctx.cfg.fan.n_lambda - 1);
    auto plan_fine = TransformPlan::make(plan->radial_ptr(), fan_fine);
    FanFunction phi_f = spherical_transform(f, *plan_fine);
    FanFunction psi_f = spherical_transform(multiply_by_a(f, 1, false), *plan_fine);
    const double defect_fine = transpose_defect(phi_f, psi_f);

    write_json_file(ctx, "mplus_check.json",
                    json{{"schema", "hsph-mplus-check/1"},
                         {"mplus_rel_error", mplus_rel},
                         {"mminus_rel_error", mminus_rel},
                         {"transpose_defect", defect_coarse},
                         {"transpose_defect_refined", defect_fine},
                         {"shrink_factor", defect_fine > 0.0 ? defect_coarse / defect_fine : 0.0}});
}

void run_pw_direct(RunContext& ctx) {
    auto plan = make_plan(ctx);
    RadialFunction f = build_radial(ctx, plan->radial_ptr());
    StepTimer timer(ctx, "pw_direct");
    const double beta = resolve_beta(ctx.cfg.norm, ctx.cfg.n);
    const DirectMethod method = ctx.cfg.method == "discrete_mplus" ? DirectMethod::discrete_mplus
                                                                   : DirectMethod::exact_aj;
    RadiusEstimate est = direct_pw_sequence(f, ctx.cfg.norm.p, beta, ctx.cfg.powers_j_max, method,
                                            *plan, limit_method(ctx));
    const SupportReport support = support_radius(f);
    json rec = estimate_record(ctx, est, ctx.cfg.method);
    rec["support_radius_detected"] = support.koranyi_radius;
    rec["support_radius_squared"] = support.koranyi_radius * support.koranyi_radius;
    write_json_file(ctx, "pw_direct.json", rec);
    write_estimate_csv(ctx, "pw_direct.csv", est);
}

void run_pw_inverse(RunContext& ctx) {
    auto plan = make_plan(ctx);
    FanFunction F = build_fan(ctx, plan->fan_ptr());
    StepTimer timer(ctx, "pw_inverse");
    const double beta = resolve_beta(ctx.cfg.norm, ctx.cfg.n);
    const InverseMethod method =
        ctx.cfg.method == "space_side" ? InverseMethod::space_side : InverseMethod::fan_side;
    RadiusEstimate est = inverse_pw_sequence(F, ctx.cfg.norm.p, beta, ctx.cfg.powers_j_max,
                                             method, *plan, limit_method(ctx));
    // spectral support radius of the input, the target of the sequence
    double rho = 0.0;
    for (int s = 0; s < 2; ++s)
        for (int j = 0; j <= F.grid->j_max(); ++j)
            for (int i = 0; i < F.grid->n_lambda(); ++i)
                if (std::abs(F.at(s, j, i)) > 0.0)
                    rho = std::max(rho, xi_of(j, F.grid->lambda_nodes()[i], F.grid->n()));
    json rec = estimate_record(ctx, est, ctx.cfg.method);
    rec["rho_of_input"] = rho;
    write_json_file(ctx, "pw_inverse.json", rec);
    write_estimate_csv(ctx, "pw_inverse.csv", est);
}

void run_holo_demo(RunContext& ctx) {
    StepTimer timer(ctx, "holo_demo");
    std::vector<double> lambdas(ctx.cfg.holo.count);
    for (int i = 0; i < ctx.cfg.holo.count; ++i)
        lambdas[i] = ctx.cfg.holo.count == 1
                         ? ctx.cfg.holo.lambda_lo
                         : ctx.cfg.holo.lambda_lo + (ctx.cfg.holo.lambda_hi - ctx.cfg.holo.lambda_lo) *
                                                        i / (ctx.cfg.holo.count - 1.0);
    GrowthProbeOptions opt;
    opt.n_r = ctx.cfg.holo.n_r;
    opt.n_t = ctx.cfg.holo.n_t;
    auto rows = holo_growth_probe(growth_demo_g, growth_demo_h,
                                  std::span<const double>(lambdas.data(), lambdas.size()),
                                  ctx.cfg.n, opt);
    write_text(ctx, "holo_table.csv", [&](std::ostream& os) {
        os << "lambda,abs_F,abs_Fh,normalized_ratio,ok,note\n";
        for (const auto& row : rows)
            os << format_double(row.lambda) << ',' << format_double(row.abs_f) << ','
               << format_double(row.abs_fh) << ',' << format_double(row.normalized_ratio) << ','
               << (row.ok ? 1 : 0) << ',' << csv_field(row.note) << '\n';
    });
}

void run_dirac_demo(RunContext& ctx) {
    StepTimer timer(ctx, "dirac_demo");
    const int n = ctx.cfg.n;
    write_text(ctx, "dirac_table.csv", [&](std::ostream& os) {
        os << "r,t,closed_re,closed_im,minus_dxi_re,minus_dxi_im,rel_diff,normalized_growth\n";
        for (int i = 0; i < ctx.cfg.dirac.count; ++i) {
            const double r = ctx.cfg.dirac.r_lo +
                             (ctx.cfg.dirac.r_hi - ctx.cfg.dirac.r_lo) *
                                 (ctx.cfg.dirac.count == 1 ? 0.0 : i / (ctx.cfg.dirac.count - 1.0));
            const double t = 0.3 * i;
            const cplx closed = dirac_derivative_field(n, r, t);
            const SphericalParams prm{cplx(static_cast<double>(n), 0.0), cplx(1.0, 0.0)};
            const cplx dxi = -spherical_function_dxi(prm, r, t, n);
            const double rel = std::abs(closed - dxi) / std::max(std::abs(dxi), 1e-300);
            const double growth =
                std::abs(closed) * 2.0 * std::pow(r * r / 2.0, n) * std::exp(-r * r / 4.0);
            os << format_double(r) << ',' << format_double(t) << ','
               << format_double(closed.real()) << ',' << format_double(closed.imag()) << ','
               << format_double(dxi.real()) << ',' << format_double(dxi.imag()) << ','
               << format_double(rel) << ',' << format_double(growth) << '\n';
        }
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"U(n)-spherical transform experiments on the Heisenberg group"};
    app.require_subcommand(1);

    std::string config_path, out_dir_s, in_path;
    unsigned threads = 0;
    unsigned long long seed = 0;

    auto add_common = [&](CLI::App* sub, bool with_in = false) {
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", out_dir_s, "output directory")->required();
        sub->add_option("--threads", threads, "worker threads (0 = all cores)");
        sub->add_option("--seed", seed, "seed recorded in the manifest (reserved for "
                                        "randomized test corpora)");
        if (with_in) sub->add_option("--in", in_path, "input CSV (optional)");
        return sub;
    };

    auto* sc_eval = add_common(app.add_subcommand("eval-spherical", "table of Phi values"));
    auto* sc_tr = add_common(app.add_subcommand("transform", "forward spherical transform"), true);
    auto* sc_inv = add_common(app.add_subcommand("inverse", "inverse spherical transform"), true);
    auto* sc_pl = add_common(app.add_subcommand("plancherel", "Plancherel defect report"));
    auto* sc_mp = add_common(app.add_subcommand("mplus-check", "intertwining and transpose checks"));
    auto* sc_pwd = add_common(app.add_subcommand("pw-direct", "direct Paley-Wiener sequence"));
    auto* sc_pwi = add_common(app.add_subcommand("pw-inverse", "inverse Paley-Wiener sequence"));
    auto* sc_holo = add_common(app.add_subcommand("holo-demo", "off-fan growth table"));
    auto* sc_dirac = add_common(app.add_subcommand("dirac-demo", "Dirac-derivative field table"));

    CLI11_PARSE(app, argc, argv);

    RunContext ctx;
    ctx.out_dir = out_dir_s;
    std::string subname;
    const auto started = std::chrono::steady_clock::now();
    try {
        std::ifstream is(config_path);
        if (!is) throw error("cannot open config: " + config_path);
        ctx.cfg_json = json::parse(is);
        ctx.cfg = ctx.cfg_json.get<ExperimentConfig>();
        validate(ctx.cfg);
        ctx.threads = threads;
        ctx.seed = seed;
        fs::create_directories(ctx.out_dir);
        set_threads(threads);

        if (sc_eval->parsed()) {
            subname = "eval-spherical";
            run_eval_spherical(ctx);
        } else if (sc_tr->parsed()) {
            subname = "transform";
            run_transform(ctx, in_path);
        } else if (sc_inv->parsed()) {
            subname = "inverse";
            run_inverse(ctx, in_path);
        } else if (sc_pl->parsed()) {
            subname = "plancherel";
            run_plancherel(ctx);
        } else if (sc_mp->parsed()) {
            subname = "mplus-check";
            run_mplus_check(ctx);
        } else if (sc_pwd->parsed()) {
            subname = "pw-direct";
            run_pw_direct(ctx);
        } else if (sc_pwi->parsed()) {
            subname = "pw-inverse";
            run_pw_inverse(ctx);
        } else if (sc_holo->parsed()) {
            subname = "holo-demo";
            run_holo_demo(ctx);
        } else if (sc_dirac->parsed()) {
            subname = "dirac-demo";
            run_dirac_demo(ctx);
        }
        const auto total = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - started)
                               .count();
        write_manifest(ctx, subname, static_cast<long>(total));
        return 0;
    } catch (const config_error& e) {
        json err{{"error", {{"kind", "config"}, {"field", e.field()}, {"message", e.what()}}}};
        std::cerr << err.dump() << '\n';
        if (!ctx.out_dir.empty()) {
            std::error_code ec;
            fs::create_directories(ctx.out_dir, ec);
            if (!ec) {
                std::ofstream os(ctx.out_dir / "error.json");
                os << err.dump(2) << '\n';
            }
        }
        return 2;
    } catch (const std::exception& e) {
        json err{{"error", {{"kind", "runtime"}, {"message", e.what()}}}};
        std::cerr << err.dump() << '\n';
        if (!ctx.out_dir.empty()) {
            std::error_code ec;
            fs::create_directories(ctx.out_dir, ec);
            if (!ec) {
                std::ofstream os(ctx.out_dir / "error.json");
                os << err.dump(2) << '\n';
            }
        }
        return 1;
    }
}
