// Command-line front end: evaluates system functions, runs the spectral
// transform, computes Dirichlet kernels and Lebesgue constants, verifies the
// kernel growth bounds, and measures the greedy divergence gaps. Results go
// to stdout or a file as CSV or JSON.
//
// Exit codes: 0 on success, 1 when a verified inequality fails, 2 on usage
// or validation errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <chrestenson/chrestenson.hpp>

namespace {

using namespace chrestenson;

struct CommonOpts {
    int order = 2;
    std::string format = "csv";
    std::string output = "-";
    std::uint64_t cell_cap = default_cell_cap;
};

void add_io_options(CLI::App& cmd, CommonOpts& opts, bool with_order = true) {
    if (with_order)
        cmd.add_option("--order", opts.order, "system order a (2..16)")->required();
    cmd.add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd.add_option("--output", opts.output, "output path ('-' for stdout)")->capture_default_str();
    cmd.add_option("--cell-cap", opts.cell_cap, "max cells per grid")->capture_default_str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw argument_error("cannot open output file: " + path);
    out << text;
}

std::string render_json(const ordered_json& j) { return j.dump(2) + "\n"; }

template <typename T>
void emit(const T& object, const CommonOpts& opts) {
    write_output(opts.output, opts.format == "json" ? render_json(to_json(object)) : to_csv(object));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw argument_error("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

StepFunction load_step_function(const std::string& path, const std::string& format) {
    const std::string text = read_file(path);
    if (format == "json") return step_function_from_json(ordered_json::parse(text));
    std::istringstream in(text);
    return step_function_from_csv(in);
}

Spectrum load_spectrum(const std::string& path, const std::string& format) {
    const std::string text = read_file(path);
    if (format == "json") return spectrum_from_json(ordered_json::parse(text));
    std::istringstream in(text);
    return spectrum_from_csv(in);
}

void check_cap(const Order& order, int resolution, std::uint64_t cap) {
    if (checked_pow(order, resolution) > cap) throw guard_error("grid exceeds the cell cap");
}

// `lebesgue` output: one row per requested n
std::string lebesgue_csv(const Order& order, const std::vector<DirichletScan>& rows) {
    std::ostringstream out;
    out << "order\n" << order.value() << '\n';
    out << "n,resolution,lebesgue,sum_err\n";
    for (const auto& r : rows)
        out << r.n << ',' << r.resolution << ',' << format_double(r.l1) << ','
            << format_double(r.sum_err) << '\n';
    return out.str();
}

ordered_json lebesgue_json(const Order& order, const std::vector<DirichletScan>& rows) {
    ordered_json values = ordered_json::array();
    for (const auto& r : rows)
        values.push_back({{"n", r.n},
                          {"resolution", r.resolution},
                          {"lebesgue", r.l1},
                          {"sum_err", r.sum_err}});
    return {{"order", order.value()}, {"values", std::move(values)}};
}

// `coeffs` output: the counterexample coefficient table
std::string coeffs_csv(const Order& order, std::uint64_t max_index) {
    std::ostringstream out;
    out << "order,max_index\n" << order.value() << ',' << max_index << '\n';
    out << "index,block,value,tail_log2\n";
    for (std::uint64_t i = 1; i <= max_index; ++i) {
        const auto key = coefficient(i, order);
        out << i << ',' << key.block << ',' << format_double(key.value()) << ",-" << i << '\n';
    }
    return out.str();
}

ordered_json coeffs_json(const Order& order, std::uint64_t max_index) {
    ordered_json rows = ordered_json::array();
    for (std::uint64_t i = 1; i <= max_index; ++i) {
        const auto key = coefficient(i, order);
        rows.push_back({{"index", i},
                        {"block", key.block},
                        {"value", key.value()},
                        {"tail_log2", -static_cast<std::int64_t>(i)}});
    }
    return {{"order", order.value()}, {"max_index", max_index}, {"coefficients", std::move(rows)}};
}

// `greedy` output: selection, approximant and its norm
struct GreedyRun {
    Spectrum spectrum;
    GreedySelection selection;
    StepFunction approximant;
    double l1 = 0.0;
};

std::string greedy_csv(const GreedyRun& run) {
    std::ostringstream out;
    out << "order,resolution,m,l1_norm\n"
        << run.spectrum.order.value() << ',' << run.approximant.resolution << ','
        << run.selection.size() << ',' << format_double(run.l1) << '\n';
    out << "rank,index,magnitude\n";
    for (std::size_t r = 0; r < run.selection.indices.size(); ++r) {
        const auto i = run.selection.indices[r];
        out << r << ',' << i << ',' << format_double(std::abs(run.spectrum.coefficients[i])) << '\n';
    }
    out << "index,re,im\n";
    for (std::uint64_t m = 0; m < run.approximant.values.size(); ++m)
        out << m << ',' << format_double(run.approximant.values[m].real()) << ','
            << format_double(run.approximant.values[m].imag()) << '\n';
    return out.str();
}

ordered_json greedy_json(const GreedyRun& run) {
    ordered_json selected = ordered_json::array();
    for (std::size_t r = 0; r < run.selection.indices.size(); ++r) {
        const auto i = run.selection.indices[r];
        selected.push_back(
            {{"rank", r}, {"index", i}, {"magnitude", std::abs(run.spectrum.coefficients[i])}});
    }
    ordered_json values = ordered_json::array();
    for (std::uint64_t m = 0; m < run.approximant.values.size(); ++m)
        values.push_back({{"index", m},
                          {"re", run.approximant.values[m].real()},
                          {"im", run.approximant.values[m].imag()}});
    return {{"order", run.spectrum.order.value()},
            {"resolution", run.approximant.resolution},
            {"m", run.selection.size()},
            {"l1_norm", run.l1},
            {"selected", std::move(selected)},
            {"values", std::move(values)}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Walsh (Chrestenson) system toolkit"};
    app.require_subcommand(1);
    int exit_code = 0;

    // eval ------------------------------------------------------------------
    auto eval_opts = std::make_shared<CommonOpts>();
    auto eval_index = std::make_shared<std::uint64_t>(0);
    auto eval_res = std::make_shared<int>(0);
    {
        auto* cmd = app.add_subcommand("eval", "sample one system function psi_n on a grid");
        add_io_options(*cmd, *eval_opts);
        cmd->add_option("--index", *eval_index, "function index n")->required();
        cmd->add_option("--resolution", *eval_res, "grid resolution N")->required();
        cmd->callback([=]() {
            const Order order(eval_opts->order);
            check_cap(order, *eval_res, eval_opts->cell_cap);
            emit(sample_walsh(*eval_index, *eval_res, order), *eval_opts);
        });
    }

    // kernel ----------------------------------------------------------------
    auto kernel_opts = std::make_shared<CommonOpts>();
    auto kernel_n = std::make_shared<std::uint64_t>(0);
    auto kernel_res = std::make_shared<int>(-1);
    {
        auto* cmd = app.add_subcommand("kernel", "Dirichlet kernel D_n: values and exponent tallies");
        add_io_options(*cmd, *kernel_opts);
        cmd->add_option("--n", *kernel_n, "kernel index n >= 1")->required();
        cmd->add_option("--resolution", *kernel_res, "grid resolution (default: natural)");
        cmd->callback([=]() {
            const Order order(kernel_opts->order);
            if (*kernel_n == 0) throw argument_error("kernel index must be >= 1");
            const int res = *kernel_res >= 0 ? *kernel_res : ceil_log(order, *kernel_n);
            check_cap(order, res, kernel_opts->cell_cap);
            emit(dirichlet(*kernel_n, res, order), *kernel_opts);
        });
    }

    // lebesgue ---------------------------------------------------------------
    auto leb_opts = std::make_shared<CommonOpts>();
    auto leb_n = std::make_shared<std::uint64_t>(0);
    auto leb_list = std::make_shared<std::string>();
    {
        auto* cmd = app.add_subcommand("lebesgue", "Lebesgue constants L_n");
        add_io_options(*cmd, *leb_opts);
        auto* n_opt = cmd->add_option("--n", *leb_n, "single kernel index");
        auto* list_opt = cmd->add_option("--n-list", *leb_list, "file with one n per line");
        n_opt->excludes(list_opt);
        cmd->callback([=]() {
            const Order order(leb_opts->order);
            std::vector<std::uint64_t> ns;
            if (!leb_list->empty()) {
                std::istringstream in(read_file(*leb_list));
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty() || line == "\r") continue;
                    ns.push_back(std::stoull(line));
                }
            } else if (*leb_n > 0) {
                ns.push_back(*leb_n);
            } else {
                throw argument_error("lebesgue needs --n or --n-list");
            }
            std::vector<DirichletScan> rows;
            rows.reserve(ns.size());
            for (const auto n : ns) rows.push_back(scan_dirichlet_l1(n, order, leb_opts->cell_cap));
            write_output(leb_opts->output, leb_opts->format == "json"
                                               ? render_json(lebesgue_json(order, rows))
                                               : lebesgue_csv(order, rows));
        });
    }

    // lemma -------------------------------------------------------------------
    auto lemma_opts = std::make_shared<CommonOpts>();
    auto lemma_kmax = std::make_shared<int>(0);
    auto lemma_scale = std::make_shared<double>(1.0);
    {
        auto* cmd = app.add_subcommand("lemma", "verify the Lebesgue-constant growth bounds");
        add_io_options(*cmd, *lemma_opts);
        cmd->add_option("--k-max", *lemma_kmax, "largest sequence index to check")->required();
        cmd->add_option("--bound-scale", *lemma_scale,
                        "multiply required bounds (fault injection for exit-code tests)")
            ->capture_default_str();
        cmd->callback([=, &exit_code]() {
            const Order order(lemma_opts->order);
            const auto report = verify_lemma(*lemma_kmax, order, lemma_opts->cell_cap, *lemma_scale);
            emit(report, *lemma_opts);
            if (!report.all_pass) exit_code = 1;
        });
    }

    // transform ----------------------------------------------------------------
    auto tr_opts = std::make_shared<CommonOpts>();
    auto tr_input = std::make_shared<std::string>();
    auto tr_inverse = std::make_shared<bool>(false);
    auto tr_res = std::make_shared<int>(-1);
    {
        auto* cmd = app.add_subcommand("transform", "forward or inverse spectral transform");
        add_io_options(*cmd, *tr_opts);
        cmd->add_option("--input", *tr_input, "input file (step function, or spectrum with --inverse)")
            ->required();
        cmd->add_flag("--inverse", *tr_inverse, "synthesize a spectrum back onto a grid");
        cmd->add_option("--resolution", *tr_res, "synthesis resolution (default: natural)");
        cmd->callback([=]() {
            const Order order(tr_opts->order);
            if (*tr_inverse) {
                const auto spec = load_spectrum(*tr_input, tr_opts->format);
                if (spec.order != order) throw argument_error("input order does not match --order");
                const int res = *tr_res >= 0
                                    ? *tr_res
                                    : ceil_log(order, std::max<std::uint64_t>(1, spec.coefficients.size()));
                check_cap(order, res, tr_opts->cell_cap);
                emit(inverse(spec, res), *tr_opts);
            } else {
                const auto f = load_step_function(*tr_input, tr_opts->format);
                if (f.order != order) throw argument_error("input order does not match --order");
                emit(forward(f), *tr_opts);
            }
        });
    }

    // greedy ---------------------------------------------------------------------
    auto gr_opts = std::make_shared<CommonOpts>();
    auto gr_coeffs = std::make_shared<std::string>();
    auto gr_m = std::make_shared<std::uint64_t>(0);
    auto gr_res = std::make_shared<int>(0);
    {
        auto* cmd = app.add_subcommand("greedy", "greedy m-term approximant and its L1 norm");
        add_io_options(*cmd, *gr_opts, /*with_order=*/false);
        cmd->add_option("--coeffs", *gr_coeffs, "spectrum file with the coefficients")->required();
        cmd->add_option("--m", *gr_m, "number of terms")->required();
        cmd->add_option("--resolution", *gr_res, "synthesis resolution")->required();
        cmd->callback([=]() {
            GreedyRun run{load_spectrum(*gr_coeffs, gr_opts->format), {}, {Order(2), 0, {}}, 0.0};
            check_cap(run.spectrum.order, *gr_res, gr_opts->cell_cap);
            run.selection = greedy_select(run.spectrum, *gr_m);
            run.approximant = thresholding_sum(run.spectrum, run.selection, *gr_res);
            run.l1 = l1_norm(run.approximant);
            write_output(gr_opts->output, gr_opts->format == "json" ? render_json(greedy_json(run))
                                                                    : greedy_csv(run));
        });
    }

    // gap ----------------------------------------------------------------------
    auto gap_opts = std::make_shared<CommonOpts>();
    auto gap_k = std::make_shared<int>(0);
    auto gap_scale = std::make_shared<double>(1.0);
    {
        auto* cmd = app.add_subcommand("gap", "greedy divergence gap for one coefficient block");
        add_io_options(*cmd, *gap_opts);
        cmd->add_option("--k", *gap_k, "block index k >= 2")->required();
        cmd->add_option("--bound-scale", *gap_scale,
                        "multiply required bounds (fault injection for exit-code tests)")
            ->capture_default_str();
        cmd->callback([=, &exit_code]() {
            const Order order(gap_opts->order);
            const auto report = block_gap(*gap_k, order, gap_opts->cell_cap, *gap_scale);
            emit(report, *gap_opts);
            if (!report.pass) exit_code = 1;
        });
    }

    // coeffs --------------------------------------------------------------------
    auto co_opts = std::make_shared<CommonOpts>();
    auto co_max = std::make_shared<std::uint64_t>(0);
    {
        auto* cmd = app.add_subcommand("coeffs", "counterexample coefficient table");
        add_io_options(*cmd, *co_opts);
        cmd->add_option("--max-index", *co_max, "largest index to tabulate")->required();
        cmd->callback([=]() {
            const Order order(co_opts->order);
            if (*co_max == 0) throw argument_error("--max-index must be >= 1");
            write_output(co_opts->output, co_opts->format == "json"
                                              ? render_json(coeffs_json(order, *co_max))
                                              : coeffs_csv(order, *co_max));
        });
    }

    // norms --------------------------------------------------------------------
    auto no_opts = std::make_shared<CommonOpts>();
    auto no_blocks = std::make_shared<int>(0);
    {
        auto* cmd = app.add_subcommand("norms", "L1 norms of the counterexample decomposition");
        add_io_options(*cmd, *no_opts);
        cmd->add_option("--blocks", *no_blocks, "number of blocks K")->required();
        cmd->callback([=, &exit_code]() {
            const Order order(no_opts->order);
            const auto report = decomposition_norms(*no_blocks, order, no_opts->cell_cap);
            emit(report, *no_opts);
            if (!report.pass) exit_code = 1;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const chrestenson::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}
