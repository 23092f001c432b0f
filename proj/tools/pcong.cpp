#include "pcong/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int emit(const pcong::cli::CommandResult& r, const std::string& out) {
    if (!r.output.empty()) {
        if (out.empty()) {
            std::cout << r.output;
        } else {
            std::ofstream f(out, std::ios::binary);
            if (!f) {
                std::cerr << "cannot write " << out << "\n";
                return pcong::cli::kInputError;
            }
            f << r.output;
        }
    }
    if (!r.diagnostic.empty()) std::cerr << r.diagnostic << "\n";
    return r.status;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace pcong::cli;
    CLI::App app{"pcong: modular symbols, special values and congruences"};
    app.require_subcommand(1);
    std::string out;

    ModsymOptions ms;
    auto* modsym = app.add_subcommand("modsym", "build a space, its eigen-symbols and q-expansions");
    modsym->add_option("--level", ms.level, "level N > 3")->required();
    modsym->add_option("--weight", ms.weight, "weight k >= 2")->capture_default_str();
    modsym->add_option("--prime", ms.prime, "prime p")->required();
    modsym->add_option("--p-precision", ms.p_precision, "p-adic digits")->capture_default_str();
    modsym->add_option("--out", out, "output file (default stdout)");

    CongruenceOptions co;
    auto* congruence = app.add_subcommand("congruence", "compare two eigen-symbols (FILE[:index] from modsym)");
    congruence->add_option("first", co.first)->required();
    congruence->add_option("second", co.second)->required();
    congruence->add_option("--p-precision", co.p_precision, "override the documents' precision");
    congruence->add_option("--char-bound", co.char_bound, "upper bound B for conductors in X");
    congruence->add_option("--out", out, "output file (default stdout)");

    BranchOptions bo;
    auto* branch = app.add_subcommand("branch", "verdicts for a branch pair or ramified model against an L-family");
    branch->add_option("geometry", bo.geometry)->required();
    branch->add_option("family", bo.family)->required();
    branch->add_option("--p-precision", bo.p_precision, "override the documents' precision");
    branch->add_option("--t-precision", bo.t_precision, "truncate every series in T");
    branch->add_option("--out", out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }
    if (*modsym) return emit(cmd_modsym(ms), out);
    if (*congruence) return emit(cmd_congruence(co), out);
    return emit(cmd_branch(bo), out);
}
