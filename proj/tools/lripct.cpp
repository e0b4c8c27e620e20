// Command-line front end for the reconstruction toolkit.

#include <CLI11.hpp>

#include <lripct/lripct.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <semaphore>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace lripct;

int thread_cap()
{
    const char* env = std::getenv("LRIPCT_THREADS");
    if (!env)
        return 1;
    int v = std::atoi(env);
    return v < 1 ? 1 : v;
}

ScanGeometry geometry_for(int n, double coverage)
{
    return default_geometry(n, coverage);
}

SolverParams params_for(const ScanGeometry& geom, const std::string& method,
                        const std::string& cfg_path)
{
    Config cfg;
    if (!cfg_path.empty())
        cfg = Config::load(cfg_path);
    double lambda = cfg.get_double("solver.lambda_tv", method == "lrip" ? 0.02 : 0.01);
    int outer = cfg.get_int("solver.outer_iters", 300);
    SolverParams p = default_solver_params(geom, lambda, outer);
    p.mu = cfg.get_double("solver.mu", 0.01);
    p.r = cfg.get_double("solver.r", 1.0);
    if (cfg.has("solver.tau_step"))
        p.tau_step = cfg.get_double("solver.tau_step", p.tau_step);
    if (cfg.has("solver.sigma_step"))
        p.sigma_step = cfg.get_double("solver.sigma_step", p.sigma_step);
    p.inner_tv_iters = cfg.get_int("solver.inner_tv_iters", p.inner_tv_iters);
    return p;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct ReproCell {
    std::string noise;
    double coverage;
    std::string method;
    double psnr_v, rmse_v, ssim_v, joint_v;
    Image recon;
};

ReproCell run_repro_cell(int n, double coverage, const std::string& noise,
                         const std::string& method, std::uint64_t seed)
{
    const Image phantom = shepp_logan(n);
    const ScanGeometry geom = geometry_for(n, coverage);
    Sinogram clean = forward_project(phantom, geom);
    Sinogram sino = noise == "gaussian5" ? add_gaussian(clean, 0.05, seed)
        : noise == "gaussian10"          ? add_gaussian(clean, 0.10, seed)
                                         : add_poisson(clean, 100, seed);

    Image rec;
    if (method == "fbp") {
        rec = fbp(sino, geom, FbpFilter::hann);
    } else if (method == "tv") {
        rec = tv_reconstruct(sino, geom, params_for(geom, "tv", ""));
    } else {
        Image prior = make_prior(sino, geom, 2, PriorMethod::tv);
        rec = lrip_reconstruct(sino, geom, prior, 2, params_for(geom, "lrip", ""));
    }

    ReproCell cell;
    cell.noise = noise;
    cell.coverage = coverage;
    cell.method = method;
    cell.psnr_v = psnr(rec, phantom, 1.0);
    cell.rmse_v = rmse(rec, phantom);
    cell.ssim_v = ssim(rec, phantom);
    cell.joint_v = joint_score(rec, phantom, 1.0);
    cell.recon = rec;
    return cell;
}

int cmd_repro_table3(int n, const std::string& out_dir, std::uint64_t seed)
{
    std::filesystem::create_directories(out_dir);
    const std::vector<double> coverages = {150.0, 120.0, 90.0};
    const std::vector<std::string> noises = {"gaussian5", "gaussian10", "poisson"};
    const std::vector<std::string> methods = {"fbp", "tv", "lrip"};

    struct Job {
        double cov;
        std::string noise, method;
    };
    std::vector<Job> jobs;
    for (const auto& noise : noises)
        for (double cov : coverages)
            for (const auto& method : methods)
                jobs.push_back({cov, noise, method});

    std::counting_semaphore<64> slots(std::min(thread_cap(), 64));
    std::vector<std::future<ReproCell>> futures;
    for (const auto& j : jobs) {
        futures.push_back(std::async(std::launch::async, [&, j] {
            slots.acquire();
            ReproCell c = run_repro_cell(n, j.cov, j.noise, j.method, seed);
            slots.release();
            return c;
        }));
    }

    std::ofstream csv(out_dir + "/table3.csv");
    csv << "noise,coverage_deg,method,psnr,rmse,ssim,joint,seed\n";
    for (auto& f : futures) {
        ReproCell c = f.get();
        csv << c.noise << ',' << c.coverage << ',' << c.method << ',' << fmt(c.psnr_v) << ','
            << fmt(c.rmse_v) << ',' << fmt(c.ssim_v) << ',' << fmt(c.joint_v) << ',' << seed
            << '\n';
        std::string stem = out_dir + "/recon_" + c.noise + "_"
            + std::to_string(static_cast<int>(c.coverage)) + "_" + c.method;
        write_array(stem + ".lrip", ArrayKind::image, c.recon.rows(), c.recon.cols(),
                    c.recon.values());
        export_pgm(c.recon, stem + ".pgm", 0.0, 1.0);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Limited-angle CT reconstruction toolkit"};
    app.require_subcommand(1);

    // phantom
    auto* sc_phantom = app.add_subcommand("phantom", "Generate a phantom image");
    std::string ph_type = "shepp-logan", ph_out;
    int ph_size = 64;
    sc_phantom->add_option("--type", ph_type)->check(CLI::IsMember({"shepp-logan", "disk"}));
    sc_phantom->add_option("--size", ph_size)->required();
    sc_phantom->add_option("--out", ph_out)->required();

    // project
    auto* sc_project = app.add_subcommand("project", "Forward-project a phantom");
    std::string pr_phantom, pr_out;
    double pr_cov = 360.0;
    int pr_size = 0;
    int pr_bins = 0;
    double pr_source_radius = 0.0, pr_detector_radius = 0.0;
    sc_project->add_option("--phantom", pr_phantom)->required();
    sc_project->add_option("--coverage", pr_cov)->required();
    sc_project->add_option("--size", pr_size)->required();
    sc_project->add_option("--out", pr_out)->required();
    sc_project->add_option("--bins", pr_bins);
    sc_project->add_option("--source-radius", pr_source_radius);
    sc_project->add_option("--detector-radius", pr_detector_radius);

    // noise
    auto* sc_noise = app.add_subcommand("noise", "Corrupt a sinogram");
    std::string no_in, no_kind = "gaussian", no_out;
    double no_level = 0.05;
    std::uint64_t no_seed = 0;
    sc_noise->add_option("--in", no_in)->required();
    sc_noise->add_option("--kind", no_kind)->check(CLI::IsMember({"gaussian", "poisson"}));
    sc_noise->add_option("--level", no_level)->required();
    sc_noise->add_option("--seed", no_seed);
    sc_noise->add_option("--out", no_out)->required();

    // recon
    auto* sc_recon = app.add_subcommand("recon", "Reconstruct from a sinogram");
    std::string rc_method, rc_sino, rc_out, rc_prior, rc_params, rc_log;
    double rc_cov = 0.0;
    int rc_size = 0, rc_tau = 2;
    sc_recon->add_option("--method", rc_method)
        ->required()
        ->check(CLI::IsMember({"fbp", "tv", "lrip"}));
    sc_recon->add_option("--sino", rc_sino)->required();
    sc_recon->add_option("--coverage", rc_cov)->required();
    sc_recon->add_option("--size", rc_size)->required();
    sc_recon->add_option("--out", rc_out)->required();
    sc_recon->add_option("--prior", rc_prior);
    sc_recon->add_option("--tau", rc_tau);
    sc_recon->add_option("--params", rc_params);
    sc_recon->add_option("--log", rc_log);

    // prior
    auto* sc_prior = app.add_subcommand("prior", "Reconstruct a low-resolution prior");
    std::string pi_sino, pi_method = "fbp", pi_out;
    int pi_tau = 2, pi_size = 0;
    double pi_cov = 0.0;
    sc_prior->add_option("--sino", pi_sino)->required();
    sc_prior->add_option("--tau", pi_tau)->required();
    sc_prior->add_option("--method", pi_method)->check(CLI::IsMember({"fbp", "tv"}));
    sc_prior->add_option("--size", pi_size)->required();
    sc_prior->add_option("--coverage", pi_cov)->required();
    sc_prior->add_option("--out", pi_out)->required();

    // cond
    auto* sc_cond = app.add_subcommand("cond", "Condition-number sweep");
    int cd_size = 16;
    std::string cd_coverages = "90,120,150", cd_taus = "1,2,4,8", cd_norm = "2", cd_out;
    sc_cond->add_option("--size", cd_size)->required();
    sc_cond->add_option("--coverages", cd_coverages);
    sc_cond->add_option("--taus", cd_taus);
    sc_cond->add_option("--norm", cd_norm)->check(CLI::IsMember({"1", "2", "inf"}));
    sc_cond->add_option("--out", cd_out)->required();

    // metrics
    auto* sc_metrics = app.add_subcommand("metrics", "Compare two images");
    std::string mt_ref, mt_test, mt_csv;
    sc_metrics->add_option("--ref", mt_ref)->required();
    sc_metrics->add_option("--test", mt_test)->required();
    sc_metrics->add_option("--csv", mt_csv);

    // repro
    auto* sc_repro = app.add_subcommand("repro", "Reproduce experiment grids");
    auto* sc_table3 = sc_repro->add_subcommand("table3", "Method/angle/noise grid");
    int rp_size = 64;
    std::string rp_out;
    std::uint64_t rp_seed = 0;
    sc_table3->add_option("--size", rp_size)->required();
    sc_table3->add_option("--out", rp_out)->required();
    sc_table3->add_option("--seed", rp_seed);
    sc_repro->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        using namespace lripct;
        if (*sc_phantom) {
            Image img = ph_type == "disk"
                ? disk_phantom(ph_size, {{0.0, 0.0, 0.5, 1.0}})
                : shepp_logan(ph_size);
            write_array(ph_out, ArrayKind::image, img.rows(), img.cols(), img.values());
        } else if (*sc_project) {
            Image img = read_array(pr_phantom).as_image();
            ScanGeometry geom = geometry_for(pr_size, pr_cov);
            if (pr_bins > 0) {
                geom.n_bins = pr_bins;
                geom.bin_width = geom.bin_width * (1.5 * pr_size) / pr_bins;
            }
            if (pr_source_radius > 0.0)
                geom.source_radius = pr_source_radius;
            if (pr_detector_radius > 0.0)
                geom.detector_radius = pr_detector_radius;
            Sinogram s = forward_project(img, geom);
            write_array(pr_out, ArrayKind::sinogram, s.views(), s.bins(), s.values());
        } else if (*sc_noise) {
            Sinogram s = read_array(no_in).as_sinogram();
            Sinogram out = no_kind == "gaussian"
                ? add_gaussian(s, no_level, no_seed)
                : add_poisson(s, static_cast<long long>(no_level), no_seed);
            write_array(no_out, ArrayKind::sinogram, out.views(), out.bins(), out.values());
        } else if (*sc_recon) {
            Sinogram s = read_array(rc_sino).as_sinogram();
            ScanGeometry geom = geometry_for(rc_size, rc_cov);
            std::ofstream log;
            std::ostream* logp = nullptr;
            if (!rc_log.empty()) {
                log.open(rc_log);
                logp = &log;
            }
            Image rec;
            if (rc_method == "fbp") {
                rec = fbp(s, geom, FbpFilter::hann);
            } else if (rc_method == "tv") {
                rec = tv_reconstruct(s, geom, params_for(geom, "tv", rc_params), logp);
            } else {
                if (rc_prior.empty())
                    throw std::invalid_argument("recon: --method lrip requires --prior");
                Image prior = read_array(rc_prior).as_image();
                rec = lrip_reconstruct(s, geom, prior, rc_tau,
                                       params_for(geom, "lrip", rc_params), logp);
            }
            write_array(rc_out, ArrayKind::image, rec.rows(), rec.cols(), rec.values());
        } else if (*sc_prior) {
            Sinogram s = read_array(pi_sino).as_sinogram();
            ScanGeometry geom = geometry_for(pi_size, pi_cov);
            Image prior = make_prior(s, geom, pi_tau,
                                     pi_method == "tv" ? PriorMethod::tv : PriorMethod::fbp);
            write_array(pi_out, ArrayKind::image, prior.rows(), prior.cols(), prior.values());
        } else if (*sc_cond) {
            auto split = [](const std::string& csv) {
                std::vector<double> out;
                std::stringstream ss(csv);
                std::string item;
                while (std::getline(ss, item, ','))
                    out.push_back(std::stod(item));
                return out;
            };
            std::vector<double> covs = split(cd_coverages);
            std::vector<int> taus;
            for (double t : split(cd_taus))
                taus.push_back(static_cast<int>(t));
            NormKind kind = cd_norm == "1" ? NormKind::one
                : cd_norm == "2"           ? NormKind::two
                                           : NormKind::inf;
            auto rows = condition_sweep(cd_size, covs, taus, kind);
            std::ofstream csv(cd_out);
            csv << "coverage_deg,tau,norm,cond_full,cond_low,holds\n";
            for (const auto& r : rows)
                csv << r.coverage_deg << ',' << r.tau << ',' << norm_name(r.norm) << ','
                    << fmt(r.cond_full) << ',' << fmt(r.cond_low) << ','
                    << (r.holds ? "1" : "0") << '\n';
        } else if (*sc_metrics) {
            Image ref = read_array(mt_ref).as_image();
            Image test = read_array(mt_test).as_image();
            double p = psnr(test, ref, 1.0);
            double r = rmse(test, ref);
            double s = ssim(test, ref);
            double j = joint_score(test, ref, 1.0);
            if (std::isinf(p))
                std::printf("psnr=inf\n");
            else
                std::printf("psnr=%.6f\n", p);
            std::printf("rmse=%.6f\nssim=%.6f\njoint=%.6f\n", r, s, j);
            if (!mt_csv.empty()) {
                std::ofstream csv(mt_csv);
                csv << "name,psnr,rmse,ssim,joint\n";
                csv << mt_test << ',' << fmt(p) << ',' << fmt(r) << ',' << fmt(s) << ','
                    << fmt(j) << '\n';
            }
        } else if (*sc_table3) {
            return cmd_repro_table3(rp_size, rp_out, rp_seed);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
