// popalign: alignment of item popularity with the leading singular subspaces
// of a bipartite interaction matrix, with certified lower/upper bounds.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 invariant violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "popalign/popalign.hpp"
#include "popalign/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitViolation = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("POPALIGN_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring unparsable POPALIGN_SEED='" << env << "'\n";
        }
    }
    return 1;
}

popalign::ParsedInteractions load_input(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw popalign::ParseError("cannot open input file '" + path + "'");
    std::string fmt = format;
    if (fmt == "auto") {
        if (path.ends_with(".mm") || path.ends_with(".mtx"))
            fmt = "mm";
        else if (path.ends_with(".tsv"))
            fmt = "tsv";
        else
            fmt = "csv";
    }
    if (fmt == "mm") return popalign::parse_matrix_market(in);
    if (fmt == "csv") return popalign::parse_edge_list(in, popalign::EdgeListFormat::csv);
    if (fmt == "tsv") return popalign::parse_edge_list(in, popalign::EdgeListFormat::tsv);
    throw popalign::ParseError("unknown format '" + fmt + "' (expected csv, tsv, or mm)");
}

void write_text(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
}

std::vector<int> parse_k_list(const std::string& csv) {
    std::vector<int> ks;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        ks.push_back(std::stoi(tok));
    }
    if (ks.empty()) throw CLI::ValidationError("--k", "needs at least one value");
    return ks;
}

// "top" | "explicit:id1,id2" | "exhaustive"
void parse_subset_option(const std::string& text, popalign::AnalyzeOptions& opts,
                         const std::vector<std::string>& item_ids) {
    if (text == "top") {
        opts.strategy = popalign::SubsetStrategy::top_k;
        return;
    }
    if (text == "exhaustive") {
        opts.strategy = popalign::SubsetStrategy::exhaustive_small;
        return;
    }
    if (text.starts_with("explicit:")) {
        opts.strategy = popalign::SubsetStrategy::explicit_set;
        std::stringstream ss(text.substr(9));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            const auto it = std::find(item_ids.begin(), item_ids.end(), tok);
            if (it != item_ids.end()) {
                opts.explicit_items.push_back(static_cast<std::size_t>(it - item_ids.begin()));
                continue;
            }
            try {  // fall back to a 0-based index
                const std::size_t idx = std::stoull(tok);
                if (idx >= item_ids.size()) throw std::out_of_range(tok);
                opts.explicit_items.push_back(idx);
            } catch (const std::exception&) {
                throw popalign::ParseError("subset item '" + tok + "' matches no item id or index");
            }
        }
        if (opts.explicit_items.empty())
            throw popalign::ParseError("explicit subset is empty");
        return;
    }
    throw popalign::ParseError("unknown subset strategy '" + text +
                               "' (expected top, explicit:<ids>, or exhaustive)");
}

int cmd_analyze(const std::string& input, const std::string& format, const std::string& k_csv,
                const std::string& subset, std::uint64_t seed, double rank_tol,
                bool drop_zero_items, bool user_side, int spectrum_count,
                const std::string& out_path) {
    const popalign::ParsedInteractions parsed = load_input(input, format);

    popalign::AnalyzeOptions opts;
    opts.k_list = parse_k_list(k_csv);
    parse_subset_option(subset, opts, user_side ? parsed.user_ids : parsed.item_ids);
    opts.seed = seed;
    opts.rank_tol = rank_tol;
    opts.drop_zero_items = drop_zero_items;
    opts.user_side = user_side;
    opts.spectrum_count = spectrum_count;
    opts.dataset_id = std::filesystem::path(input).filename().string();

    const popalign::BoundReport report =
        popalign::analyze(parsed.matrix, opts, &parsed.user_ids, &parsed.item_ids,
                          parsed.duplicates_collapsed, parsed.binarized_entries);
    write_text(out_path, popalign::report_to_json(report) + "\n");
    if (report.any_violation) {
        std::cerr << "error: bound bracket violated; this falsifies the implementation, "
                     "not the mathematics\n";
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_generate(std::size_t n, std::size_t m, const std::string& dist_token,
                 const std::string& user_dist_token, const std::string& model, double density_cap,
                 double x_min, std::uint64_t seed, const std::string& out_format,
                 const std::string& out_path) {
    popalign::DistributionSpec dist = popalign::parse_distribution_token(dist_token);
    dist.m = m;
    dist.x_min = x_min;
    dist.seed = seed;

    popalign::RealizationSpec realize;
    realize.n_users = n;
    realize.model = model == "config" ? popalign::RealizationModel::configuration_dedup
                                      : popalign::RealizationModel::chung_lu;
    realize.target_density_cap = density_cap;
    realize.seed = popalign::substream_seed(seed, 11, 0);
    if (!user_dist_token.empty()) {
        popalign::DistributionSpec user = popalign::parse_distribution_token(user_dist_token);
        user.x_min = x_min;
        user.seed = popalign::substream_seed(seed, 12, 0);
        realize.user_weight_law = user;
    }

    const std::vector<double> weights = popalign::sample_item_weights(dist);
    const popalign::InteractionMatrix Y = popalign::realize_bipartite(weights, realize);

    std::ostringstream buffer;
    if (out_format == "mm")
        popalign::write_matrix_market(buffer, Y);
    else
        popalign::write_edge_list(buffer, Y, out_format == "tsv" ? '\t' : ',');
    write_text(out_path, buffer.str());
    std::cerr << "generated " << Y.users() << " x " << Y.items() << " with " << Y.edge_count()
              << " edges\n";
    return kExitOk;
}

int cmd_sweep(const std::string& dists, const std::string& sizes, const std::string& k_csv,
              const std::string& model, double density_cap, std::uint64_t seed, int threads,
              const std::string& out_dir) {
    std::vector<popalign::SweepCell> grid;
    std::stringstream dist_ss(dists);
    std::string dist_tok;
    std::vector<popalign::DistributionSpec> dist_specs;
    while (std::getline(dist_ss, dist_tok, ';'))
        if (!dist_tok.empty()) dist_specs.push_back(popalign::parse_distribution_token(dist_tok));

    std::vector<std::pair<std::size_t, std::size_t>> dims;
    std::stringstream size_ss(sizes);
    std::string size_tok;
    while (std::getline(size_ss, size_tok, ';')) {
        if (size_tok.empty()) continue;
        const std::size_t x = size_tok.find('x');
        if (x == std::string::npos)
            throw popalign::ParseError("size '" + size_tok + "' is not of the form NxM");
        dims.emplace_back(std::stoull(size_tok.substr(0, x)), std::stoull(size_tok.substr(x + 1)));
    }

    const popalign::RealizationModel rmodel =
        model == "config" ? popalign::RealizationModel::configuration_dedup
                          : popalign::RealizationModel::chung_lu;
    for (const auto& spec : dist_specs)
        for (const auto& [n, m] : dims) {
            popalign::SweepCell cell;
            cell.distribution = spec;
            cell.n_users = n;
            cell.m_items = m;
            cell.model = rmodel;
            cell.density_cap = density_cap;
            cell.label = std::string(popalign::to_string(spec.kind)) + "_" + std::to_string(n) +
                         "x" + std::to_string(m);
            grid.push_back(cell);
        }

    popalign::SweepOptions opts;
    opts.k_list = parse_k_list(k_csv);
    opts.base_seed = seed;
    opts.threads = threads;
    const std::vector<popalign::SweepCellResult> results = popalign::sweep(grid, opts);

    std::filesystem::create_directories(out_dir);
    bool violation = false;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const popalign::SweepCellResult& cell = results[i];
        if (!cell.report) {
            std::cerr << "cell " << cell.cell.label << " failed: " << cell.error << "\n";
            continue;
        }
        violation = violation || cell.report->any_violation;
        write_text(out_dir + "/report_" + std::to_string(i) + "_" + cell.cell.label + ".json",
                   popalign::report_to_json(*cell.report) + "\n");
    }
    std::ostringstream aggregate;
    popalign::write_sweep_aggregate_csv(aggregate, results);
    write_text(out_dir + "/aggregate.csv", aggregate.str());
    return violation ? kExitViolation : kExitOk;
}

int cmd_plot_data(const std::string& input, const std::string& format, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    if (input.ends_with(".json")) {
        std::ifstream in(input);
        if (!in) throw popalign::ParseError("cannot open report '" + input + "'");
        nlohmann::json report = nlohmann::json::parse(in, nullptr, true);

        std::ostringstream rf_csv;
        rf_csv << "rank,frequency\n";
        for (const auto& pair : report.at("degree_stats").at("rank_frequency"))
            rf_csv << pair.at(0).get<std::uint64_t>() << "," << pair.at(1).get<std::uint64_t>()
                   << "\n";
        write_text(out_dir + "/rank_frequency.csv", rf_csv.str());

        std::ostringstream bounds_csv;
        bounds_csv << "k,cos_theta,best_lower,best_upper,lp_lower,lp_upper\n";
        for (const auto& rec : report.at("per_k"))
            bounds_csv << rec.at("k").get<int>() << "," << rec.at("cos_theta_exact").dump() << ","
                       << rec.at("best_lower").dump() << "," << rec.at("best_upper").dump() << ","
                       << rec.at("lp_lower").dump() << "," << rec.at("lp_upper").dump() << "\n";
        write_text(out_dir + "/bounds_by_k.csv", bounds_csv.str());
        return kExitOk;
    }

    // raw matrix input: emit the rank-frequency series only
    const popalign::ParsedInteractions parsed = load_input(input, format);
    std::ostringstream rf_csv;
    popalign::write_rank_frequency_csv(rf_csv,
                                       popalign::rank_frequency(parsed.matrix.item_degrees()));
    write_text(out_dir + "/rank_frequency.csv", rf_csv.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"popularity / singular-subspace alignment bounds for bipartite graphs"};
    app.require_subcommand(1);

    std::string input, format = "auto", out = "-", k_csv = "1,2,3", subset = "top";
    std::string gen_format = "mm";
    std::string dist_token = "power_law:1.5", user_dist_token, model = "chung_lu";
    std::string sizes = "100x200", dists = "power_law:1.5;log_normal:2.0:1.0";
    std::string out_dir = "plots";
    std::uint64_t seed = default_seed();
    double rank_tol = -1.0, density_cap = 1.0, x_min = 1.0;
    std::size_t n_users = 100, m_items = 200;
    int spectrum_count = 50, threads = 1;
    bool drop_zero_items = false, user_side = false;

    CLI::App* analyze = app.add_subcommand("analyze", "compute the full bound report for a dataset");
    analyze->add_option("--input", input, "edge list or MatrixMarket file")->required();
    analyze->add_option("--format", format, "csv, tsv, mm, or auto (by extension)");
    analyze->add_option("--k", k_csv, "comma-separated subspace dimensions");
    analyze->add_option("--subset", subset, "top, explicit:<ids>, or exhaustive");
    analyze->add_option("--seed", seed, "seed recorded in provenance");
    analyze->add_option("--rank-tol", rank_tol, "singular value cutoff (default: auto)");
    analyze->add_flag("--drop-zero-items", drop_zero_items, "remove zero-degree items first");
    analyze->add_flag("--user-side", user_side,
                      "analyze user degrees against the left singular subspaces (transposes Y)");
    analyze->add_option("--spectrum-count", spectrum_count, "sigma^2 entries kept in the report");
    analyze->add_option("--out", out, "output path or - for stdout");

    CLI::App* generate = app.add_subcommand("generate", "synthesize a matrix from a popularity law");
    generate->add_option("--n", n_users, "user count")->required();
    generate->add_option("--m", m_items, "item count")->required();
    generate->add_option("--dist", dist_token, "power_law:a | log_normal:mu:sigma | exponential:r | power_law_cutoff:a:r");
    generate->add_option("--user-dist", user_dist_token, "optional user weight law (default uniform)");
    generate->add_option("--model", model, "chung_lu or config");
    generate->add_option("--density-cap", density_cap, "edge probability cap in (0, 1]");
    generate->add_option("--x-min", x_min, "lower support bound of the law");
    generate->add_option("--seed", seed, "generator seed");
    generate->add_option("--format", gen_format, "mm, csv, or tsv (default mm)");
    generate->add_option("--out", out, "output path or - for stdout");

    CLI::App* sweep = app.add_subcommand("sweep", "bound reports over a distribution/size grid");
    sweep->add_option("--dists", dists, "semicolon-separated distribution tokens");
    sweep->add_option("--sizes", sizes, "semicolon-separated NxM pairs");
    sweep->add_option("--k", k_csv, "comma-separated subspace dimensions");
    sweep->add_option("--model", model, "chung_lu or config");
    sweep->add_option("--density-cap", density_cap, "edge probability cap");
    sweep->add_option("--seed", seed, "base seed (cells derive their own)");
    sweep->add_option("--threads", threads, "cells evaluated concurrently");
    sweep->add_option("--out", out_dir, "output directory")->required();

    CLI::App* plot = app.add_subcommand("plot-data", "emit CSV series for plotting");
    plot->add_option("--input", input, "report JSON or a raw dataset")->required();
    plot->add_option("--format", format, "format of a raw dataset input");
    plot->add_option("--out", out_dir, "output directory")->required();

    CLI::App* selftest = app.add_subcommand("selftest", "run built-in oracle checks");
    (void)selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(analyze))
            return cmd_analyze(input, format, k_csv, subset, seed, rank_tol, drop_zero_items,
                               user_side, spectrum_count, out);
        if (app.got_subcommand(generate))
            return cmd_generate(n_users, m_items, dist_token, user_dist_token, model, density_cap,
                                x_min, seed, gen_format, out);
        if (app.got_subcommand(sweep))
            return cmd_sweep(dists, sizes, k_csv, model, density_cap, seed, threads, out_dir);
        if (app.got_subcommand(plot)) return cmd_plot_data(input, format, out_dir);
        if (app.got_subcommand(selftest))
            return popalign::run_selftest(std::cout) == 0 ? kExitOk : kExitViolation;
    } catch (const popalign::ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
