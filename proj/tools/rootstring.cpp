// rootstring: root-string bounds and reflections for Cartan data.
//
//   rootstring bkj      --input A.yaml --k 1 --j 2
//   rootstring dseq     --input A.yaml --k 1 --j 2 --max-m 5
//   rootstring table    --input A.yaml
//   rootstring reflect  --input A.yaml --k 1
//   rootstring selfcheck --primes 2,3,5,7 --degrees 1,2
//
// Exit status: 0 success, 1 validation error, 2 closed/recursive mismatch,
// 3 reflection undefined (infinite B in characteristic 0).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rootstring/commands.hpp"

namespace {

using namespace rootstring;

int emit(const command_result& result, const std::string& output) {
    if (output.empty()) {
        std::cout << result.text();
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            std::cerr << "rootstring: cannot write " << output << "\n";
            return exit_code::validation;
        }
        out << result.text();
    }
    if (result.status == exit_code::internal_consistency)
        std::cerr << "rootstring: internal consistency check failed\n";
    return result.status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Root-string bounds B_kj and simple-root reflections for Cartan matrices over F_p, F_{p^k} and Q"};
    app.require_subcommand(1);

    std::string input;
    std::string output;
    std::int64_t k = 0;
    std::int64_t j = 0;
    std::int64_t max_m = -1;
    bool strict = false;
    std::vector<std::uint64_t> primes;
    std::vector<std::size_t> degrees{1};

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "Cartan file (YAML or JSON)")->required()->check(CLI::ExistingFile);
        cmd->add_flag("--strict", strict, "Reject entries that are not already reduced");
        cmd->add_option("--output", output, "Write the report here instead of stdout");
    };

    auto* bkj = app.add_subcommand("bkj", "B_kj by the closed form and by the d-recursion");
    add_common(bkj);
    bkj->add_option("--k", k, "Reflecting index (1-based)")->required();
    bkj->add_option("--j", j, "Target index (1-based)")->required();
    bkj->add_option("--max-m", max_m, "Scan cap for the characteristic-0 recursion (default 1000)");

    auto* dseq = app.add_subcommand("dseq", "The d-sequence d_{-1}, ..., d_M");
    add_common(dseq);
    dseq->add_option("--k", k, "Reflecting index (1-based)")->required();
    dseq->add_option("--j", j, "Target index (1-based)")->required();
    dseq->add_option("--max-m", max_m, "Last index M")->required()->check(CLI::Range(std::int64_t{-1}, std::int64_t{1} << 24));

    auto* table = app.add_subcommand("table", "B_kj for every ordered pair k != j");
    add_common(table);

    auto* reflect_cmd = app.add_subcommand("reflect", "New simple roots after reflecting in alpha_k");
    add_common(reflect_cmd);
    reflect_cmd->add_option("--k", k, "Reflecting index (1-based)")->required();

    auto* selfcheck = app.add_subcommand("selfcheck", "Exhaustive closed-form vs recursion check over finite fields");
    selfcheck->add_option("--primes", primes, "Comma-separated primes")->required()->delimiter(',');
    selfcheck->add_option("--degrees", degrees, "Comma-separated extension degrees (default 1)")->delimiter(',');
    selfcheck->add_option("--output", output, "Write the report here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selfcheck->parsed()) return emit(cmd_selfcheck(primes, degrees), output);

        const cartan_datum datum = load_cartan(input, parse_options{strict});
        if (bkj->parsed())
            return emit(cmd_bkj(datum, k, j, max_m >= 0 ? max_m : default_rational_scan_cap), output);
        if (dseq->parsed()) return emit(cmd_dseq(datum, k, j, max_m), output);
        if (table->parsed()) return emit(cmd_table(datum), output);
        if (reflect_cmd->parsed()) return emit(cmd_reflect(datum, k), output);
    } catch (const error& e) {
        std::cerr << "rootstring: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_status_for(e.code());
    }
    return exit_code::validation;
}
