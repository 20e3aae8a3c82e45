// ---------------------------------------------------------------------------
// fibsum -- command-line surface.
//
//   fibsum fib <j>               decimal F(j)
//   fibsum lucas <j>             decimal L(j)
//   fibsum eval <file> --bind n=2,s=0 [--side lhs|rhs|both]
//   fibsum verify (--id X | --group G | --all) [--grid SPEC] [--jobs K]
//                 [--json PATH]
//   fibsum list [--group G]
//   fibsum bench fib   [--sizes 1000,10000,100000] [--reps R] [--out PATH]
//   fibsum bench entry --id X --n N [--reps R] [--out PATH]
//
// Exit codes: 0 success / all pass; 1 verification or value failure;
// 2 usage or parse error; 3 I/O error.  Results go to standard output,
// diagnostics to standard error.
//
// Catalog resolution: --catalog flag, then the FIBSUM_CATALOG environment
// variable, then ./catalog, then the location compiled into the binary.
// ---------------------------------------------------------------------------
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fibsum/bench.hpp"
#include "fibsum/catalog.hpp"
#include "fibsum/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string resolve_catalog(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("FIBSUM_CATALOG"); env != nullptr && *env != '\0')
        return env;
    std::error_code ec;
    if (std::filesystem::is_directory("catalog", ec)) return "catalog";
    return FIBSUM_DEFAULT_CATALOG;
}

std::vector<fibsum::CatalogEntry> load_or_complain(const std::string& flag) {
    const std::string root = resolve_catalog(flag);
    std::vector<fibsum::CatalogEntry> catalog = fibsum::load_catalog(root);
    if (catalog.empty())
        std::cerr << "warning: no catalog entries under '" << root << "'\n";
    return catalog;
}

fibsum::Binding parse_binding(const std::string& text) {
    fibsum::Binding b;
    std::string item;
    std::vector<std::string> parts;
    for (const char c : text) {
        if (c == ',' || c == ';') {
            parts.push_back(item);
            item.clear();
        } else {
            item += c;
        }
    }
    parts.push_back(item);
    for (const std::string& part : parts) {
        if (part.empty()) continue;
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--bind: expected name=value in '" + part + "'");
        std::size_t used = 0;
        long value = 0;
        const std::string digits = part.substr(eq + 1);
        try {
            value = std::stol(digits, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("--bind: bad integer in '" + part + "'");
        }
        if (used != digits.size())
            throw std::invalid_argument("--bind: bad integer in '" + part + "'");
        b.set(part.substr(0, eq), value);
    }
    return b;
}

std::vector<long> parse_sizes(const std::string& text) {
    std::vector<long> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        sizes.push_back(std::stol(item, &used));
        if (used != item.size())
            throw std::invalid_argument("--sizes: bad integer '" + item + "'");
    }
    if (sizes.empty()) throw std::invalid_argument("--sizes: empty list");
    return sizes;
}

int emit_csv(const std::string& csv, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << csv;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    out << csv;
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitIo;
    }
    return kExitOk;
}

int run(int argc, char** argv) {
    using namespace fibsum;

    CLI::App app{"exact verification of binomial Fibonacci/Lucas summation identities"};
    app.require_subcommand(1);

    CLI::App* cmd_fib = app.add_subcommand("fib", "print F(j)");
    long index_arg = 0;
    cmd_fib->add_option("j", index_arg, "sequence index (negative allowed)")->required();

    CLI::App* cmd_lucas = app.add_subcommand("lucas", "print L(j)");
    cmd_lucas->add_option("j", index_arg, "sequence index (negative allowed)")->required();

    CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate one identity file at a binding");
    std::string eval_file, bind_spec, side = "both";
    cmd_eval->add_option("file", eval_file, "DSL file with one identity block")->required();
    cmd_eval->add_option("--bind", bind_spec, "parameter binding, e.g. n=2,s=0")->required();
    cmd_eval->add_option("--side", side, "lhs, rhs, or both (default)")
        ->check(CLI::IsMember({"lhs", "rhs", "both"}));

    CLI::App* cmd_verify = app.add_subcommand("verify", "check entries over a parameter grid");
    std::string verify_id, verify_group, grid_spec, json_path, catalog_flag;
    bool verify_all_flag = false;
    int jobs = 1;
    cmd_verify->add_option("--id", verify_id, "verify a single entry");
    cmd_verify->add_option("--group", verify_group, "verify one group");
    cmd_verify->add_flag("--all", verify_all_flag, "verify the whole catalog");
    cmd_verify->add_option("--grid", grid_spec, "overrides, e.g. n=0..30;s=-6..6;max=100000");
    cmd_verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd_verify->add_option("--json", json_path, "also write a JSON-lines report");
    cmd_verify->add_option("--catalog", catalog_flag, "catalog directory");

    CLI::App* cmd_list = app.add_subcommand("list", "list catalog entries");
    std::string list_group;
    cmd_list->add_option("--group", list_group, "restrict to one group");
    cmd_list->add_option("--catalog", catalog_flag, "catalog directory");

    CLI::App* cmd_bench = app.add_subcommand("bench", "timing experiments");
    cmd_bench->require_subcommand(1);
    CLI::App* bench_fib_cmd = cmd_bench->add_subcommand("fib", "doubling vs linear recurrence");
    std::string sizes_spec = "1000,10000,100000", out_path;
    int reps = 3;
    bench_fib_cmd->add_option("--sizes", sizes_spec, "comma-separated sizes");
    bench_fib_cmd->add_option("--reps", reps, "repetitions (>= 3)");
    bench_fib_cmd->add_option("--out", out_path, "CSV path (default stdout)");
    CLI::App* bench_entry_cmd = cmd_bench->add_subcommand("entry", "LHS sum vs RHS closed form");
    std::string bench_id;
    long bench_n = 100000;
    bench_entry_cmd->add_option("--id", bench_id, "entry id")->required();
    bench_entry_cmd->add_option("--n", bench_n, "sum length");
    bench_entry_cmd->add_option("--reps", reps, "repetitions (>= 3)");
    bench_entry_cmd->add_option("--out", out_path, "CSV path (default stdout)");
    bench_entry_cmd->add_option("--catalog", catalog_flag, "catalog directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(cmd_fib)) {
            std::cout << fib(index_arg).get_str() << "\n";
            return kExitOk;
        }
        if (app.got_subcommand(cmd_lucas)) {
            std::cout << lucas(index_arg).get_str() << "\n";
            return kExitOk;
        }

        if (app.got_subcommand(cmd_eval)) {
            std::ifstream in(eval_file, std::ios::binary);
            if (!in) {
                std::cerr << "error: cannot open '" << eval_file << "'\n";
                return kExitIo;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            const IdentitySpec spec = parse_identity(buf.str());
            const Binding env = parse_binding(bind_spec);
            if (side == "lhs") {
                std::cout << render(eval_lhs(spec, env)) << "\n";
                return kExitOk;
            }
            if (side == "rhs") {
                std::cout << render(eval_rhs(spec, env)) << "\n";
                return kExitOk;
            }
            const GoldenNum l = eval_lhs(spec, env);
            const GoldenNum r = eval_rhs(spec, env);
            std::cout << "lhs = " << render(l) << "\n";
            std::cout << "rhs = " << render(r) << "\n";
            return l == r ? kExitOk : kExitMathFailure;
        }

        if (app.got_subcommand(cmd_list)) {
            const std::vector<CatalogEntry> catalog = load_or_complain(catalog_flag);
            for (const CatalogEntry& e : catalog) {
                if (!list_group.empty() && e.group != list_group) continue;
                std::cout << e.spec.id << "\t" << e.group << "\t"
                          << (e.status == EntryStatus::Suspect ? "suspect" : "normal") << "\t"
                          << e.source << "\n";
            }
            return kExitOk;
        }

        if (app.got_subcommand(cmd_verify)) {
            const int selectors = (verify_id.empty() ? 0 : 1) + (verify_group.empty() ? 0 : 1) +
                                  (verify_all_flag ? 1 : 0);
            if (selectors != 1) {
                std::cerr << "verify needs exactly one of --id, --group, --all\n";
                return kExitUsage;
            }
            const std::vector<CatalogEntry> catalog = load_or_complain(catalog_flag);
            std::vector<CatalogEntry> chosen;
            if (verify_all_flag) {
                chosen = catalog;
            } else if (!verify_group.empty()) {
                for (const CatalogEntry& e : catalog)
                    if (e.group == verify_group) chosen.push_back(e);
                if (chosen.empty()) {
                    std::cerr << "error: no entries in group '" << verify_group << "'\n";
                    return kExitUsage;
                }
            } else {
                chosen.push_back(entry(catalog, verify_id));
            }
            const ParamGrid overrides =
                grid_spec.empty() ? ParamGrid{} : parse_grid_spec(grid_spec);
            const std::vector<VerificationReport> reports = verify_all(chosen, overrides, jobs);

            std::ofstream json_out;
            if (!json_path.empty()) {
                json_out.open(json_path, std::ios::binary);
                if (!json_out) {
                    std::cerr << "error: cannot write '" << json_path << "'\n";
                    return kExitIo;
                }
                json_out << "{\"grid\":\"" << render_grid_spec(overrides)
                         << "\",\"jobs\":" << jobs << ",\"entries\":" << reports.size() << "}\n";
            }
            bool normal_failed = false;
            std::uint64_t cases = 0, skipped = 0, passed = 0;
            for (std::size_t i = 0; i < reports.size(); ++i) {
                const VerificationReport& r = reports[i];
                std::cout << render_report(r);
                if (!json_path.empty()) json_out << render_report_json(r) << "\n";
                cases += r.cases_checked;
                skipped += r.cases_skipped;
                if (r.pass) ++passed;
                else {
                    const CatalogEntry& e = entry(chosen, r.id);
                    if (e.status == EntryStatus::Normal) normal_failed = true;
                }
            }
            std::cout << passed << "/" << reports.size() << " entries passed; cases=" << cases
                      << " skipped=" << skipped << "\n";
            if (!json_path.empty() && !json_out) {
                std::cerr << "error: cannot write '" << json_path << "'\n";
                return kExitIo;
            }
            return normal_failed ? kExitMathFailure : kExitOk;
        }

        if (app.got_subcommand(cmd_bench)) {
            if (cmd_bench->got_subcommand(bench_fib_cmd)) {
                const std::vector<BenchRecord> records = bench_fib(parse_sizes(sizes_spec), reps);
                return emit_csv(render_csv(records), out_path);
            }
            const std::vector<CatalogEntry> catalog = load_or_complain(catalog_flag);
            const auto [lhs, rhs] = bench_entry(catalog, bench_id, bench_n, reps);
            return emit_csv(render_csv({lhs, rhs}), out_path);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CatalogIoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const CatalogError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const EvalError& e) {
        std::cerr << "evaluation error: " << e.what() << "\n";
        return kExitMathFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMathFailure;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
