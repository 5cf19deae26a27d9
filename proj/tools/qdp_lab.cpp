// qdp-lab: experiment front end for the quantum-decoding measurement and
// dual-sampling laboratory. Subcommands:
//   capacity    — per-symbol channel figures (Holevo / classical / entropy sum)
//   pgm-sweep   — mean measurement success over random codes, k = 1..n-1
//   sample-dual — minimum-weight and typicality statistics of the dual sampler
//   rank-lab    — rank-metric tables: Gaussian binomials, spheres, duality
//   verify      — run the library invariant suites, JSON report, exit status
//
// Reproducibility contract: one master seed; per-trial seeds derived by a
// counter split (rng.hpp), results merged in trial order. The same
// config+seed produces byte-identical output at any worker count.

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qdp/analysis.hpp"
#include "qdp/codes.hpp"
#include "qdp/noise.hpp"
#include "qdp/pgm.hpp"
#include "qdp/rng.hpp"
#include "qdp/sampler.hpp"
#include "qdp/spectral.hpp"
#include "qdp/verify.hpp"

namespace {

using namespace qdp;

// ---------------------------------------------------------------------------
// CSV schemas. The same table ships as docs/csv_schema.json; the writer
// refuses rows that do not match the declared column list.

const std::map<std::string, std::vector<std::string>>& csv_schemas() {
    static const std::map<std::string, std::vector<std::string>> schemas = {
        {"pgm-sweep",
         {"q", "n", "k", "noise_kind", "noise_param", "seed", "trials", "P_PGM_mean",
          "P_PGM_std"}},
        {"sample-dual",
         {"seed", "n", "k", "noise", "d_min", "expected_weight", "frac_within_margin",
          "success_floor", "p_zero_branch", "typicality"}},
        {"capacity",
         {"q", "s", "noise_kind", "noise_param", "holevo", "shannon", "hirschman_sum",
          "hirschman_holds"}},
        {"rank-lab",
         {"u", "gaussian_binomial", "sphere_size", "amplitude", "dual_point_prob",
          "dual_shell_mass"}},
    };
    return schemas;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class CsvWriter {
   public:
    CsvWriter(std::string schema_name) : name_(std::move(schema_name)) {
        const auto it = csv_schemas().find(name_);
        if (it == csv_schemas().end())
            throw std::logic_error("unknown CSV schema: " + name_);
        columns_ = it->second;
        std::ostringstream head;
        for (size_t i = 0; i < columns_.size(); ++i)
            head << (i ? "," : "") << columns_[i];
        out_ << head.str() << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_.size())
            throw std::logic_error("CSV row does not match schema " + name_);
        for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

    std::string str() const { return out_.str(); }

   private:
    std::string name_;
    std::vector<std::string> columns_;
    std::ostringstream out_;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << text;
}

// Deterministic fan-out: tasks indexed 0..count-1, merged by index.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(index_t count, unsigned workers, Fn&& fn) {
    std::vector<Result> results(count);
    if (workers <= 1) {
        for (index_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<index_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (;;) {
                const index_t i = next.fetch_add(1);
                if (i >= count) return;
                results[i] = fn(i);
            }
        });
    for (auto& t : pool) t.join();
    return results;
}

// ---------------------------------------------------------------------------
// Minimal standalone SVG plots (no display server involved).

std::string svg_line_plot(const std::vector<double>& xs, const std::vector<double>& ys,
                          double marker_x, const std::string& title) {
    const int W = 640, H = 400, M = 50;
    double xmin = xs.front(), xmax = xs.back(), ymin = 0.0, ymax = 1.0;
    for (double y : ys) ymax = std::max(ymax, y);
    auto px = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto py = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };
    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    s << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
      << "</text>\n";
    s << "<line x1='" << M << "' y1='" << H - M << "' x2='" << W - M << "' y2='" << H - M
      << "' stroke='black'/>\n";
    s << "<line x1='" << M << "' y1='" << M << "' x2='" << M << "' y2='" << H - M
      << "' stroke='black'/>\n";
    if (marker_x > xmin && marker_x < xmax)
        s << "<line x1='" << px(marker_x) << "' y1='" << M << "' x2='" << px(marker_x)
          << "' y2='" << H - M << "' stroke='red' stroke-dasharray='4'/>\n";
    s << "<polyline fill='none' stroke='steelblue' stroke-width='2' points='";
    for (size_t i = 0; i < xs.size(); ++i) s << px(xs[i]) << "," << py(ys[i]) << " ";
    s << "'/>\n";
    for (size_t i = 0; i < xs.size(); ++i)
        s << "<circle cx='" << px(xs[i]) << "' cy='" << py(ys[i])
          << "' r='3' fill='steelblue'/>\n";
    s << "</svg>\n";
    return s.str();
}

std::string svg_histogram(const std::vector<double>& values, int bins,
                          const std::string& title) {
    const int W = 640, H = 400, M = 50;
    double lo = values.front(), hi = values.front();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) hi = lo + 1.0;
    std::vector<int> counts(static_cast<size_t>(bins), 0);
    for (double v : values) {
        int b = static_cast<int>((v - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++counts[static_cast<size_t>(b)];
    }
    const int cmax = *std::max_element(counts.begin(), counts.end());
    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    s << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
      << "</text>\n";
    const double bw = static_cast<double>(W - 2 * M) / bins;
    for (int b = 0; b < bins; ++b) {
        const double h =
            cmax ? static_cast<double>(counts[static_cast<size_t>(b)]) / cmax * (H - 2 * M)
                 : 0.0;
        s << "<rect x='" << M + b * bw << "' y='" << H - M - h << "' width='" << bw * 0.9
          << "' height='" << h << "' fill='steelblue'/>\n";
    }
    s << "<line x1='" << M << "' y1='" << H - M << "' x2='" << W - M << "' y2='" << H - M
      << "' stroke='black'/>\n";
    s << "</svg>\n";
    return s.str();
}

struct Options {
    int p = 2;
    int s = 1;
    int n = 8;
    int k = 0;
    double rate = 0.0;
    std::string noise = "preset:bernoulli:0.1";
    double eps = 0.1;
    index_t trials = 100;
    index_t samples = 1000;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    bool svg = false;
    unsigned workers = 1;
    double margin = 2.0;
    std::string suite;
    std::string inject_fault;
    std::string config;
};

void apply_config_file(Options& o) {
    if (o.config.empty()) return;
    std::ifstream f(o.config);
    if (!f) throw std::runtime_error("cannot read config " + o.config);
    nlohmann::json j;
    f >> j;
    if (j.contains("q")) o.p = j["q"].get<int>();
    if (j.contains("s")) o.s = j["s"].get<int>();
    if (j.contains("n")) o.n = j["n"].get<int>();
    if (j.contains("k")) o.k = j["k"].get<int>();
    if (j.contains("rate")) o.rate = j["rate"].get<double>();
    if (j.contains("noise")) o.noise = j["noise"].is_string()
                                           ? j["noise"].get<std::string>()
                                           : j["noise"].dump();
    if (j.contains("eps")) o.eps = j["eps"].get<double>();
    if (j.contains("trials")) o.trials = j["trials"].get<index_t>();
    if (j.contains("samples")) o.samples = j["samples"].get<index_t>();
    if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("format")) o.format = j["format"].get<std::string>();
    if (j.contains("margin")) o.margin = j["margin"].get<double>();
}

int cmd_capacity(const Options& o) {
    const FieldSpec& f = get_field(o.p, o.s);
    const NoiseModel noise = parse_noise(f, o.n, o.noise);
    nlohmann::json j;
    j["q"] = f.q;
    j["s"] = f.s;
    j["noise"] = noise.label;
    if (noise.is_product()) {
        const double holevo = entropy_q(noise.dual_r, f.q);
        std::vector<double> direct(static_cast<size_t>(f.q));
        for (int a = 0; a < f.q; ++a) direct[static_cast<size_t>(a)] = std::norm(noise.g[a]);
        const double shannon = 1.0 - entropy_q(direct, f.q);
        const HirschmanResult h = hirschman_check(f, noise.g);
        j["holevo_capacity"] = holevo;
        j["classical_capacity"] = shannon;
        j["entropy_sum"] = h.sum;
        j["entropy_sum_direction"] = ">=1";
        j["entropy_sum_holds"] = h.holds;
        if (o.format == "csv") {
            CsvWriter w("capacity");
            w.row({std::to_string(f.q), std::to_string(f.s), noise.label, fmt(noise.param),
                   fmt(holevo), fmt(shannon), fmt(h.sum), h.holds ? "1" : "0"});
            emit(w.str(), o.out);
            return 0;
        }
    } else {
        // Rank noise has no per-symbol channel; report the radial entropy pair.
        const RankEntropy e = rank_entropy_per_symbol(noise.rank);
        j["rank_entropy_closed"] = e.closed;
        j["rank_entropy_exact"] = e.exact;
        if (o.format == "csv") {
            CsvWriter w("capacity");
            w.row({std::to_string(f.q), std::to_string(f.s), noise.label, fmt(noise.param),
                   fmt(e.closed), fmt(e.exact), "", ""});
            emit(w.str(), o.out);
            return 0;
        }
    }
    emit(j.dump(2) + "\n", o.out);
    return 0;
}

int cmd_pgm_sweep(const Options& o) {
    const FieldSpec& f = get_field(o.p, o.s);
    const NoiseModel noise = parse_noise(f, o.n, o.noise);
    const int kmax = o.n - 1;

    // Coupled prefix draws: trial t uses the first k rows of one (n-1)×n
    // matrix, so the per-trial success is non-increasing in k and so is the
    // mean.
    struct TrialResult {
        std::vector<double> p;
    };
    auto run_trial = [&](index_t t) {
        IMat G(kmax, o.n);
        SplitMix64 rng(derive_seed(o.seed, t));
        for (int i = 0; i < kmax; ++i)
            for (int j = 0; j < o.n; ++j)
                G(i, j) = static_cast<int>(rng.below(static_cast<std::uint64_t>(f.q)));
        TrialResult r;
        r.p.resize(static_cast<size_t>(kmax) + 1, 0.0);
        for (int k = 1; k <= kmax; ++k) {
            const LinearCode code = code_from_generator(f, G.topRows(k));
            r.p[static_cast<size_t>(k)] = pgm_success(code, noise).p_pgm;
        }
        return r;
    };
    const auto results = parallel_map<TrialResult>(o.trials, o.workers, run_trial);

    CsvWriter w("pgm-sweep");
    std::vector<double> xs, ys;
    for (int k = 1; k <= kmax; ++k) {
        long double sum = 0.0L, sum_sq = 0.0L;
        for (const TrialResult& r : results) {
            const double v = r.p[static_cast<size_t>(k)];
            sum += v;
            sum_sq += static_cast<long double>(v) * v;
        }
        const double mean = static_cast<double>(sum / static_cast<long double>(o.trials));
        const double var = std::max(
            0.0, static_cast<double>(sum_sq / static_cast<long double>(o.trials)) -
                     mean * mean);
        w.row({std::to_string(f.q), std::to_string(o.n), std::to_string(k), noise.label,
               fmt(noise.param), std::to_string(o.seed), std::to_string(o.trials),
               fmt(mean), fmt(std::sqrt(var))});
        xs.push_back(static_cast<double>(k) / o.n);
        ys.push_back(mean);
    }
    emit(w.str(), o.out);
    if (o.svg) {
        const double cap = noise.is_product()
                               ? entropy_q(noise.dual_r, f.q)
                               : rank_entropy_per_symbol(noise.rank).closed;
        const std::string path = (o.out.empty() ? "pgm_sweep" : o.out) + ".svg";
        emit(svg_line_plot(xs, ys, cap, "mean PGM success vs rate"), path);
    }
    return 0;
}

int cmd_sample_dual(const Options& o) {
    const FieldSpec& f = get_field(o.p, o.s);
    const NoiseModel noise = parse_noise(f, o.n, o.noise);
    require(o.k >= 1, "sample-dual: --k required");

    auto run_seed = [&](index_t si) {
        return min_weight_row(f, o.n, o.k, noise, derive_seed(o.seed, si), o.samples,
                              o.margin, o.eps);
    };
    const auto rows = parallel_map<MinWeightRow>(o.trials, o.workers, run_seed);

    CsvWriter w("sample-dual");
    std::vector<double> weights;
    for (const MinWeightRow& r : rows) {
        if (r.degenerate) {
            w.row({std::to_string(r.seed), std::to_string(r.n), std::to_string(r.k),
                   r.noise + "[degenerate]", "", "", "", "", "", ""});
            continue;
        }
        w.row({std::to_string(r.seed), std::to_string(r.n), std::to_string(r.k), r.noise,
               fmt(r.d_min), fmt(r.expected_weight), fmt(r.frac_within_margin),
               fmt(r.success_floor), fmt(r.p_zero_branch), fmt(r.typicality)});
        weights.push_back(r.expected_weight);
    }
    emit(w.str(), o.out);
    if (o.svg && !weights.empty()) {
        const std::string path = (o.out.empty() ? "sample_dual" : o.out) + ".svg";
        emit(svg_histogram(weights, 16, "expected sampled dual weight"), path);
    }
    return 0;
}

int cmd_rank_lab(const Options& o) {
    const FieldSpec& f = get_field(o.p, o.s);
    const NoiseModel noise = parse_noise(f, o.n, o.noise);
    require(noise.kind == NoiseModel::Kind::kRank, "rank-lab: --noise must be rank");
    const RankNoiseParams& rp = noise.rank;

    nlohmann::json j;
    j["q"] = f.q;
    j["a"] = rp.a;
    j["b"] = rp.b;
    j["t"] = rp.t;
    j["Z"] = rp.Z;
    j["W"] = rp.W.str();
    const auto amps = rank_shell_amplitudes(rp);
    const auto dual_probs = rank_point_probs(noise.rank_dual);
    const auto dual_mass = rank_shell_masses(noise.rank_dual);
    CsvWriter w("rank-lab");
    for (int u = 0; u <= rp.b; ++u) {
        w.row({std::to_string(u), gaussian_binomial(rp.b, u, f.q).str(),
               sphere_size_rank(rp.a, rp.b, u, f.q).str(), fmt(amps[static_cast<size_t>(u)]),
               fmt(dual_probs[static_cast<size_t>(u)]),
               fmt(dual_mass[static_cast<size_t>(u)])});
    }
    j["shell_table_csv"] = w.str();

    const index_t dim = ipow(f.q, static_cast<unsigned>(rp.n()));
    if (dim <= caps().dense) {
        const CVec hat = dft_dense(f, rp.n(), noise.f.dense_amps());
        const AmplitudeFn fdual = rank_noise(noise.rank_dual);
        j["duality_residual"] = (hat - fdual.dense_amps()).cwiseAbs().maxCoeff();
    } else {
        j["duality_residual"] = nullptr;
        j["note"] = "dense duality check skipped (cap exceeded); shell analytics only";
    }
    const RankEntropy e = rank_entropy_per_symbol(rp);
    j["H_closed"] = e.closed;
    j["H_exact"] = e.exact;
    if (o.rate > 0.0) j["rank_gv_distance_dual_rate"] = rank_gv_distance(rp.a, rp.b, o.rate);

    if (o.format == "csv")
        emit(w.str(), o.out);
    else
        emit(j.dump(2) + "\n", o.out);
    return 0;
}

int cmd_verify(const Options& o) {
    VerifyOptions vo;
    vo.fault = o.inject_fault;
    const auto checks = run_suites(o.suite, vo);
    emit(checks_to_json(checks) + "\n", o.out);
    int failures = 0;
    for (const auto& c : checks) failures += c.pass ? 0 : 1;
    std::cerr << "verify: " << checks.size() - static_cast<size_t>(failures) << "/"
              << checks.size() << " checks passed\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum decoding measurement & dual-sampling laboratory"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&o](CLI::App* cmd) {
        cmd->add_option("--q", o.p, "field characteristic (prime)");
        cmd->add_option("--s", o.s, "field extension degree (q = p^s)");
        cmd->add_option("--n", o.n, "code length");
        cmd->add_option("--k", o.k, "code dimension");
        cmd->add_option("--rate", o.rate, "code rate (alternative to --k)");
        cmd->add_option("--noise", o.noise, "noise spec (JSON or preset:...)");
        cmd->add_option("--eps", o.eps, "typicality gap");
        cmd->add_option("--trials", o.trials, "number of random codes / seeds");
        cmd->add_option("--samples", o.samples, "samples per seed");
        cmd->add_option("--seed", o.seed, "master seed");
        cmd->add_option("--out", o.out, "output path (default stdout)");
        cmd->add_option("--format", o.format, "csv|json");
        cmd->add_flag("--svg", o.svg, "emit an SVG plot next to the output");
        cmd->add_option("--workers", o.workers, "worker threads (output-invariant)");
        cmd->add_option("--margin", o.margin, "weight margin for sample-dual");
        cmd->add_option("--config", o.config, "JSON config mirroring these flags");
    };

    auto* cap = app.add_subcommand("capacity", "per-symbol channel figures");
    add_common(cap);
    auto* sweep = app.add_subcommand("pgm-sweep", "success probability vs rate");
    add_common(sweep);
    auto* sd = app.add_subcommand("sample-dual", "dual sampler statistics");
    add_common(sd);
    auto* rl = app.add_subcommand("rank-lab", "rank-metric tables and checks");
    add_common(rl);
    auto* vf = app.add_subcommand("verify", "run invariant suites");
    add_common(vf);
    vf->add_option("--suite", o.suite, "suite prefix filter (field, codes, ...)");
    vf->add_option("--inject-fault", o.inject_fault, "fault hook (char-table)")
        ->group("");  // hidden: regression hook

    CLI11_PARSE(app, argc, argv);

    try {
        apply_config_file(o);
        if (o.rate > 0.0 && o.k == 0)
            o.k = static_cast<int>(std::floor(o.rate * o.n));
        if (cap->parsed()) return cmd_capacity(o);
        if (sweep->parsed()) return cmd_pgm_sweep(o);
        if (sd->parsed()) return cmd_sample_dual(o);
        if (rl->parsed()) return cmd_rank_lab(o);
        if (vf->parsed()) return cmd_verify(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
