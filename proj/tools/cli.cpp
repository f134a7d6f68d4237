#include "cli.hpp"

#include "config.hpp"

#include "bitlet/analysis.hpp"
#include "bitlet/error.hpp"
#include "bitlet/magic_sim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace bitlet::cli {

using nlohmann::json;

namespace {

constexpr std::array<std::uint64_t, 6> kFigureMats{1, 16, 256, 1024, 4096, 16384};
constexpr std::array<double, 2> kFigureDio{24, 48};
constexpr std::array<double, 3> kFigureTbps{1, 4, 16};
constexpr std::array<unsigned, 5> kFigureWidths{4, 8, 16, 32, 64};
constexpr double kFigurePowerWatts = 20.0;
// 32 points per octave over OC = 1 .. 32768.
const Grid kFigureOcGrid{1, 32768, 15 * 32 + 1, true};

std::string g6(double v)
{
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.6g", v);
    return buf.data();
}

class Csv {
public:
    void meta(const std::string& line) { os_ << "# " << line << '\n'; }

    void row(std::initializer_list<std::string> cells) { row(std::vector<std::string>(cells)); }

    void row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os_ << (i ? "," : "") << cells[i];
        }
        os_ << '\n';
    }

    [[nodiscard]] std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

Config config_for(const CommonOptions& opts)
{
    return opts.config_path ? load_config(*opts.config_path) : Config{};
}

std::string machine_meta(const Config& cfg)
{
    std::ostringstream os;
    os << "pim rows=" << cfg.pim.rows() << " cols=" << cfg.pim.cols() << " mats=" << cfg.pim.mats()
       << " cycle_time_ns=" << g6(cfg.pim.cycle_time_ns()) << " energy_per_cycle_pj="
       << g6(cfg.pim.energy_per_cycle_pj()) << "; cpu bandwidth_gbps=" << g6(cfg.cpu.bandwidth_gbps())
       << " energy_per_bit_pj=" << g6(cfg.cpu.energy_per_bit_pj());
    if (cfg.power) {
        os << "; tdp_watts=" << g6(cfg.power->tdp_watts());
    }
    return os.str();
}

int emit(const CommonOptions& opts, const std::string& payload, std::ostream& out, std::ostream& err)
{
    if (!opts.out_path) {
        out << payload;
        return kExitOk;
    }
    std::ofstream f(*opts.out_path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << payload) || !f.flush()) {
        err << "error: cannot write " << *opts.out_path << '\n';
        return kExitIoError;
    }
    return kExitOk;
}

// Runs `body`, mapping library and config errors to exit code 2.
int guarded(std::ostream& err, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
}

json verdict_json(const Workload& w, const Verdict& v)
{
    json j{{"name", w.name},
           {"op", to_string(w.op.kind())},
           {"width_bits", w.op.width_bits()},
           {"oc_cycles", v.oc_cycles},
           {"pac_cycles", v.pac_cycles},
           {"dio_bits", v.dio_bits},
           {"pim_gops", v.pim_gops},
           {"cpu_gops", v.cpu_gops},
           {"winner", to_string(v.winner)},
           {"speedup", v.speedup},
           {"crossover_oc", v.crossover_oc},
           {"pim_energy_pj", v.pim_energy_pj},
           {"cpu_energy_pj", v.cpu_energy_pj},
           {"energy_ratio", v.energy_ratio}};
    if (v.pl_pim_gops) {
        j["pl_pim_gops"] = *v.pl_pim_gops;
        j["pl_cpu_gops"] = *v.pl_cpu_gops;
    }
    return j;
}

} // namespace

// --- eval -----------------------------------------------------------------------

int cmd_eval(const CommonOptions& opts, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Config cfg = config_for(opts);
        std::vector<Verdict> verdicts;
        for (const auto& w : cfg.workloads) {
            verdicts.push_back(litmus(cfg.pim, cfg.cpu, w, cfg.power));
        }
        std::optional<MixVerdict> mix;
        if (cfg.workloads.size() >= 2) {
            mix = litmus_mix(cfg.pim, cfg.cpu, cfg.workloads, cfg.power);
        }

        json doc;
        doc["verdicts"] = json::array();
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            doc["verdicts"].push_back(verdict_json(cfg.workloads[i], verdicts[i]));
        }
        if (mix) {
            json m{{"pim_gops", mix->pim_gops},
                   {"cpu_gops", mix->cpu_gops},
                   {"winner", to_string(mix->winner)},
                   {"speedup", mix->speedup}};
            if (mix->pl_pim_gops) {
                m["pl_pim_gops"] = *mix->pl_pim_gops;
                m["pl_cpu_gops"] = *mix->pl_cpu_gops;
            }
            doc["aggregate"] = m;
        }

        const bool pl = cfg.power.has_value();
        Csv csv;
        csv.meta("bitlet eval");
        csv.meta(machine_meta(cfg));
        std::vector<std::string> header{"name", "op", "width_bits", "oc_cycles", "pac_cycles", "dio_bits",
                                        "pim_gops", "cpu_gops"};
        if (pl) {
            header.insert(header.end(), {"pl_pim_gops", "pl_cpu_gops"});
        }
        header.insert(header.end(), {"winner", "speedup", "crossover_oc", "energy_ratio"});
        csv.row(header);
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            const auto& w = cfg.workloads[i];
            const auto& v = verdicts[i];
            std::vector<std::string> r{w.name,
                                       std::string(to_string(w.op.kind())),
                                       std::to_string(w.op.width_bits()),
                                       std::to_string(v.oc_cycles),
                                       std::to_string(v.pac_cycles),
                                       g6(v.dio_bits),
                                       g6(v.pim_gops),
                                       g6(v.cpu_gops)};
            if (pl) {
                r.insert(r.end(), {g6(*v.pl_pim_gops), g6(*v.pl_cpu_gops)});
            }
            r.insert(r.end(), {std::string(to_string(v.winner)), g6(v.speedup), g6(v.crossover_oc),
                               g6(v.energy_ratio)});
            csv.row(r);
        }

        std::ostringstream text;
        text << machine_meta(cfg) << "\n\n";
        if (verdicts.empty()) {
            text << "no workloads\n";
        }
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            const auto& w = cfg.workloads[i];
            const auto& v = verdicts[i];
            text << w.name << " (" << to_string(w.op.kind()) << ", n=" << w.op.width_bits() << "): OC="
                 << v.oc_cycles << " PAC=" << v.pac_cycles << " DIO=" << g6(v.dio_bits) << '\n'
                 << "  PIM " << g6(v.pim_gops) << " GOPS, CPU " << g6(v.cpu_gops) << " GOPS";
            if (pl) {
                text << "; power-limited PIM " << g6(*v.pl_pim_gops) << " GOPS, CPU " << g6(*v.pl_cpu_gops)
                     << " GOPS";
            }
            text << "\n  winner " << to_string(v.winner) << " (speedup " << g6(v.speedup) << "x), crossover OC "
                 << g6(v.crossover_oc) << ", CPU/PIM energy per op " << g6(v.energy_ratio) << "x\n";
        }
        if (mix) {
            text << "mix: PIM " << g6(mix->pim_gops) << " GOPS, CPU " << g6(mix->cpu_gops) << " GOPS, winner "
                 << to_string(mix->winner) << '\n';
        }

        const Format fmt = opts.format.value_or(opts.out_path ? Format::Json : Format::Text);
        if (opts.out_path && !opts.format) {
            // Human summary on stdout, machine-readable verdicts in the file.
            out << text.str();
        }
        switch (fmt) {
        case Format::Json: return emit(opts, doc.dump(2) + "\n", out, err);
        case Format::Csv: return emit(opts, csv.str(), out, err);
        case Format::Text: return emit(opts, text.str(), out, err);
        }
        return kExitOk;
    });
}

// --- crossover ------------------------------------------------------------------

int cmd_crossover(const CommonOptions& opts, std::optional<double> dio, std::optional<std::uint64_t> pac,
                  std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Config cfg = config_for(opts);
        struct Row {
            std::string name;
            double dio;
            std::uint64_t pac;
        };
        std::vector<Row> rows;
        if (dio) {
            if (!(*dio >= 1.0)) {
                throw Error(ErrorCode::InvalidParameter, "--dio must be >= 1");
            }
            rows.push_back({"cli", *dio, pac.value_or(0)});
        } else {
            for (const auto& w : cfg.workloads) {
                const auto point = resolve(w, cfg.pim);
                rows.push_back({w.name, point.dio_bits(), pac.value_or(point.pac_cycles())});
            }
        }

        Csv csv;
        csv.meta("bitlet crossover");
        csv.meta(machine_meta(cfg));
        csv.row({"name", "dio_bits", "pac_cycles", "crossover_oc", "energy_breakeven_oc"});
        json doc = json::array();
        for (const auto& r : rows) {
            const double x = crossover_oc(cfg.pim, cfg.cpu, r.dio, r.pac);
            const double e = energy_breakeven_oc(cfg.pim, cfg.cpu, r.dio, r.pac);
            csv.row({r.name, g6(r.dio), std::to_string(r.pac), g6(x), g6(e)});
            doc.push_back({{"name", r.name},
                           {"dio_bits", r.dio},
                           {"pac_cycles", r.pac},
                           {"crossover_oc", x},
                           {"energy_breakeven_oc", e}});
        }
        return emit(opts, opts.format == Format::Json ? doc.dump(2) + "\n" : csv.str(), out, err);
    });
}

// --- sweep ----------------------------------------------------------------------

int cmd_sweep(const CommonOptions& opts, const std::string& param, const std::string& grid, std::ostream& out,
              std::ostream& err)
{
    return guarded(err, [&] {
        const Config cfg = config_for(opts);
        SweepSpec spec;
        spec.parameter = parse_sweep_parameter(param);
        spec.grid = parse_grid(grid);
        spec.pim = cfg.pim;
        spec.cpu = cfg.cpu;
        spec.power = cfg.power;
        if (!cfg.workloads.empty()) {
            spec.base = resolve(cfg.workloads.front(), cfg.pim);
        }
        const auto rows = sweep(spec);

        Csv csv;
        csv.meta("bitlet sweep param=" + std::string(to_string(spec.parameter)) + " grid=" + grid);
        csv.meta(machine_meta(cfg));
        csv.meta("base oc_cycles=" + std::to_string(spec.base.oc_cycles()) +
                 " pac_cycles=" + std::to_string(spec.base.pac_cycles()) + " dio_bits=" + g6(spec.base.dio_bits()));
        csv.row({"x", "pim_gops", "cpu_gops", "pl_pim_gops", "pl_cpu_gops"});
        json doc = json::array();
        for (const auto& r : rows) {
            csv.row({g6(r.x), g6(r.pim_gops), g6(r.cpu_gops), g6(r.pl_pim_gops), g6(r.pl_cpu_gops)});
            doc.push_back({{"x", r.x},
                           {"pim_gops", r.pim_gops},
                           {"cpu_gops", r.cpu_gops},
                           {"pl_pim_gops", r.pl_pim_gops},
                           {"pl_cpu_gops", r.pl_cpu_gops}});
        }
        return emit(opts, opts.format == Format::Json ? doc.dump(2) + "\n" : csv.str(), out, err);
    });
}

// --- power ----------------------------------------------------------------------

int cmd_power(const CommonOptions& opts, std::optional<double> tdp, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        Config cfg = config_for(opts);
        const PowerBudget budget = tdp ? PowerBudget(*tdp) : cfg.power.value_or(PowerBudget(kFigurePowerWatts));
        cfg.power = budget;
        const auto cap = mat_power_cap(cfg.pim, budget);

        Csv csv;
        csv.meta("bitlet power");
        csv.meta(machine_meta(cfg));
        csv.meta("mat_power_cap=" + std::to_string(cap));
        csv.row({"name", "oc_cycles", "pac_cycles", "dio_bits", "pim_gops", "pl_pim_gops", "pim_limited_by",
                 "cpu_gops", "pl_cpu_gops", "cpu_limited_by"});
        json doc{{"tdp_watts", budget.tdp_watts()}, {"mat_power_cap", cap}, {"workloads", json::array()}};
        for (const auto& w : cfg.workloads) {
            const auto p = resolve(w, cfg.pim);
            const double pim = perf_pim(cfg.pim, p).gops();
            const double pl_pim = pl_perf_pim(cfg.pim, p, budget).gops();
            const double cpu = perf_cpu(cfg.cpu, p).gops();
            const double pl_cpu = pl_perf_cpu(cfg.cpu, p, budget).gops();
            const char* pim_limit = pl_pim < pim ? "power" : "compute";
            const char* cpu_limit = pl_cpu < cpu ? "power" : "bandwidth";
            csv.row({w.name, std::to_string(p.oc_cycles()), std::to_string(p.pac_cycles()), g6(p.dio_bits()),
                     g6(pim), g6(pl_pim), pim_limit, g6(cpu), g6(pl_cpu), cpu_limit});
            doc["workloads"].push_back({{"name", w.name},
                                        {"pim_gops", pim},
                                        {"pl_pim_gops", pl_pim},
                                        {"pim_limited_by", pim_limit},
                                        {"cpu_gops", cpu},
                                        {"pl_cpu_gops", pl_cpu},
                                        {"cpu_limited_by", cpu_limit}});
        }
        return emit(opts, opts.format == Format::Json ? doc.dump(2) + "\n" : csv.str(), out, err);
    });
}

// --- reproduce ------------------------------------------------------------------

namespace {

std::string figure1(const CommonOptions& opts)
{
    const std::vector<OpKind> kinds{OpKind::Not, OpKind::Or,        OpKind::And, OpKind::Xor,
                                    OpKind::Add, OpKind::AddFanin4, OpKind::Mpy};
    const json table = catalog_table(kinds, {kFigureWidths.begin(), kFigureWidths.end()});
    if (opts.format == Format::Json) {
        return table.dump(2) + "\n";
    }
    Csv csv;
    csv.meta("bitlet reproduce fig1: operation complexity in cycles");
    csv.row({"n", "op", "oc"});
    for (const auto& r : table) {
        csv.row({std::to_string(r.at("n").get<unsigned>()), r.at("kind").get<std::string>(),
                 std::to_string(r.at("oc").get<std::uint64_t>())});
    }
    return csv.str();
}

std::string figure2or3(const Config& cfg, bool power_limited)
{
    SweepSpec base;
    base.parameter = SweepParameter::Oc;
    base.grid = kFigureOcGrid;
    base.pim = cfg.pim;
    base.cpu = cfg.cpu;
    base.base = WorkloadPoint(1, 0, 48);
    if (power_limited) {
        base.power = PowerBudget(kFigurePowerWatts);
    }
    const auto xs = sweep_points(base);

    std::vector<std::string> header{"oc"};
    std::vector<std::vector<double>> columns;
    const auto add_pim = [&](bool pl) {
        for (auto m : kFigureMats) {
            SweepSpec s = base;
            s.pim = cfg.pim.with_mats(m);
            std::vector<double> col;
            for (const auto& r : sweep(s)) {
                col.push_back(pl ? r.pl_pim_gops : r.pim_gops);
            }
            header.push_back(std::string(pl ? "pl_" : "") + "pim_mat" + std::to_string(m));
            columns.push_back(std::move(col));
        }
    };
    const auto add_cpu = [&](bool pl) {
        for (auto dio : kFigureDio) {
            for (auto tbps : kFigureTbps) {
                SweepSpec s = base;
                s.cpu = CpuMachine::from_tbps(tbps, cfg.cpu.energy_per_bit_pj());
                s.base = WorkloadPoint(1, 0, dio);
                std::vector<double> col;
                for (const auto& r : sweep(s)) {
                    col.push_back(pl ? r.pl_cpu_gops : r.cpu_gops);
                }
                header.push_back(std::string(pl ? "pl_" : "") + "cpu_dio" + g6(dio) + "_bw" + g6(tbps) + "t");
                columns.push_back(std::move(col));
            }
        }
    };
    add_pim(false);
    add_cpu(false);
    if (power_limited) {
        add_pim(true);
        add_cpu(true);
    }

    Csv csv;
    if (power_limited) {
        csv.meta("bitlet reproduce fig3: PIM vs CPU throughput (GOPS) under a " + g6(kFigurePowerWatts) +
                 " W power limit, PAC=0");
        csv.meta("mat_power_cap=" + std::to_string(mat_power_cap(cfg.pim, PowerBudget(kFigurePowerWatts))));
    } else {
        csv.meta("bitlet reproduce fig2: PIM vs CPU throughput (GOPS) over OC, PAC=0");
    }
    csv.meta("pim rows=" + std::to_string(cfg.pim.rows()) + " cycle_time_ns=" + g6(cfg.pim.cycle_time_ns()) +
             " energy_per_cycle_pj=" + g6(cfg.pim.energy_per_cycle_pj()) +
             "; cpu energy_per_bit_pj=" + g6(cfg.cpu.energy_per_bit_pj()) + "; 1 Tbps = 1024 Gbps");
    csv.row(header);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<std::string> r{g6(xs[i])};
        for (const auto& c : columns) {
            r.push_back(g6(c[i]));
        }
        csv.row(r);
    }
    return csv.str();
}

} // namespace

int cmd_reproduce(const CommonOptions& opts, const std::string& figure, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (figure != "fig1" && figure != "fig2" && figure != "fig3") {
            err << "error: unknown figure '" << figure << "' (expected fig1, fig2 or fig3)\n";
            return kExitBadInput;
        }
        const Config cfg = config_for(opts);
        const std::string payload = figure == "fig1" ? figure1(opts) : figure2or3(cfg, figure == "fig3");
        return emit(opts, payload, out, err);
    });
}

// --- validate -------------------------------------------------------------------

int cmd_validate(const std::string& scope, const CatalogFn& catalog, const ValidationOptions& vopts,
                 std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (scope != "catalog" && scope != "pac" && scope != "all") {
            err << "error: unknown scope '" << scope << "' (expected catalog, pac or all)\n";
            return kExitBadInput;
        }
        std::vector<CheckResult> results;
        if (scope != "pac") {
            results = validate_catalog(catalog, vopts);
        }
        if (scope != "catalog") {
            const auto pac = validate_pac(vopts);
            results.insert(results.end(), pac.begin(), pac.end());
        }
        std::size_t failed = 0;
        for (const auto& r : results) {
            failed += r.passed ? 0 : 1;
            out << (r.passed ? "PASS  " : "FAIL  ") << r.name;
            if (!r.detail.empty()) {
                out << "  [" << r.detail << "]";
            }
            out << '\n';
        }
        out << results.size() - failed << "/" << results.size() << " checks passed\n";
        return failed == 0 ? kExitOk : kExitValidationFailed;
    });
}

int cmd_validate_program(const CommonOptions& opts, const std::string& program_path, unsigned max_fanin,
                         std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Config cfg = config_for(opts);
        std::ifstream in(program_path, std::ios::binary);
        if (!in) {
            err << "error: cannot read " << program_path << '\n';
            return kExitBadInput;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        const NorProgram program = parse_program(buf.str());
        const ArrayState zeros(cfg.pim.rows(), static_cast<std::uint32_t>(cfg.pim.cols()));
        const RunResult r = run(program, zeros, SimConfig{max_fanin});
        out << program_path << ": valid for " << cfg.pim.rows() << "x" << cfg.pim.cols() << " array, fan-in <= "
            << max_fanin << '\n'
            << "cycles " << r.cycles << " (NOR " << program.nor_count() << ", HMOVE " << program.hmove_count()
            << ", VMOVE " << program.vmove_count() << ")\n";
        return kExitOk;
    });
}

// --- dispatch -------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"bitlet: PIM vs CPU throughput model, litmus test and NOR-array simulator"};
    app.require_subcommand(1);

    CommonOptions common;
    std::string format;
    const auto add_common = [&](CLI::App* sub, bool with_format) {
        sub->add_option("--config", common.config_path, "Machine/workload JSON config")
            ->envname("BITLET_CONFIG");
        sub->add_option("--out", common.out_path, "Write the result to PATH instead of stdout");
        if (with_format) {
            sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
        }
    };

    auto* eval = app.add_subcommand(
        "eval", "Litmus verdict per workload. Columns: name,op,width_bits,oc_cycles,pac_cycles,dio_bits,"
                "pim_gops,cpu_gops[,pl_pim_gops,pl_cpu_gops],winner,speedup,crossover_oc,energy_ratio");
    eval->alias("litmus");
    add_common(eval, true);

    std::optional<double> dio;
    std::optional<std::uint64_t> pac;
    auto* cross = app.add_subcommand(
        "crossover", "Crossover and energy break-even OC. Columns: name,dio_bits,pac_cycles,crossover_oc,"
                     "energy_breakeven_oc");
    add_common(cross, true);
    cross->add_option("--dio", dio, "Evaluate a single DIO instead of the config workloads");
    cross->add_option("--pac", pac, "PAC cycles to assume");

    std::string param;
    std::string grid;
    auto* sw = app.add_subcommand(
        "sweep", "Sweep one parameter. Columns: x,pim_gops,cpu_gops,pl_pim_gops,pl_cpu_gops. "
                 "BW is in Gbps (1 Tbps = 1024 Gbps), TDP in W");
    add_common(sw, true);
    sw->add_option("--param", param, "OC, PAC, MAT, BW, DIO or TDP")->required();
    sw->add_option("--grid", grid, "lo:hi:steps[:log]")->required();

    std::optional<double> tdp;
    auto* pw = app.add_subcommand(
        "power", "Power-limited throughput and MAT cap. Columns: name,oc_cycles,pac_cycles,dio_bits,pim_gops,"
                 "pl_pim_gops,pim_limited_by,cpu_gops,pl_cpu_gops,cpu_limited_by");
    add_common(pw, true);
    pw->add_option("--tdp", tdp, "Power budget in W (default: config, else 20)");

    std::string figure;
    auto* rep = app.add_subcommand(
        "reproduce", "Emit figure data. fig1: n,op,oc. fig2: oc, pim_mat{1,16,256,1024,4096,16384}, "
                     "cpu_dio{24,48}_bw{1,4,16}t. fig3: fig2 columns plus pl_ variants at 20 W");
    add_common(rep, true);
    rep->add_option("figure", figure, "fig1, fig2 or fig3")->required();

    std::string scope = "all";
    std::string program_path;
    unsigned fanin = 2;
    auto* val = app.add_subcommand("validate", "Check catalog and PAC formulas against simulated NOR programs");
    add_common(val, false);
    val->add_option("scope", scope, "catalog, pac or all");
    val->add_option("--program", program_path, "Validate and run a NOR program text file instead");
    val->add_option("--fanin", fanin, "Maximum NOR fan-in for --program")->check(CLI::Range(1, 4));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    if (format == "csv") {
        common.format = Format::Csv;
    } else if (format == "json") {
        common.format = Format::Json;
    } else if (format == "text") {
        common.format = Format::Text;
    }

    if (eval->parsed()) {
        return cmd_eval(common, out, err);
    }
    if (cross->parsed()) {
        return cmd_crossover(common, dio, pac, out, err);
    }
    if (sw->parsed()) {
        return cmd_sweep(common, param, grid, out, err);
    }
    if (pw->parsed()) {
        return cmd_power(common, tdp, out, err);
    }
    if (rep->parsed()) {
        return cmd_reproduce(common, figure, out, err);
    }
    if (!program_path.empty()) {
        return cmd_validate_program(common, program_path, fanin, out, err);
    }
    return cmd_validate(scope, CatalogFn(static_cast<std::uint64_t (*)(const OpSpec&)>(&oc_of)), {}, out, err);
}

} // namespace bitlet::cli
