#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ufm/io.hpp"
#include "ufm/oracle.hpp"
#include "ufm/solver_unweighted.hpp"
#include "ufm/solver_weighted.hpp"

namespace {

// 0 ok, 1 verification failure, 2 input error, 3 budget or contract error

void write_to(const std::string &path, const ufm::Instance &inst,
              const ufm::Solution &s) {
    if (path == "-") {
        ufm::write_solution(std::cout, inst, s);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ufm::ParseError(path + ": cannot open for writing");
    ufm::write_solution(out, inst, s);
}

int run_solve(const std::string &instance_path, bool weighted,
              const std::string &out_path) {
    ufm::Instance inst = ufm::load_instance(instance_path);
    ufm::Solution s;
    if (weighted) {
        ufm::WeightedResult res = ufm::solve_max_weight(inst.graph, *inst.family);
        s.edges = res.matching;
        s.value = res.weight;
        s.has_dual = true;
        s.dual = res.dual;
    } else {
        ufm::UnweightedResult res = ufm::solve_max(inst.graph, *inst.family);
        s.edges = res.matching;
        s.value = ufm::Rat(static_cast<long long>(res.matching.size()));
        s.has_certificate = true;
        s.certificate = res.certificate;
    }
    write_to(out_path, inst, s);
    return 0;
}

int run_verify(const std::string &instance_path, const std::string &solution_path) {
    ufm::Instance inst = ufm::load_instance(instance_path);
    ufm::Solution s = ufm::load_solution(solution_path, inst);
    std::string err = ufm::verify_solution_file(inst, s);
    if (!err.empty()) {
        std::cerr << "verification failed: " << err << "\n";
        return 1;
    }
    std::cout << "ok\n";
    return 0;
}

int run_oracle(const std::string &instance_path, bool weighted) {
    ufm::Instance inst = ufm::load_instance(instance_path);
    if (weighted)
        std::cout << "value " << ufm::brute_force_max_weight(inst.graph, *inst.family).str()
                  << "\n";
    else
        std::cout << "value " << ufm::brute_force_max(inst.graph, *inst.family) << "\n";
    return 0;
}

int run_reduce(const std::string &instance_path, const std::string &out_path) {
    ufm::Instance inst = ufm::load_instance(instance_path);
    if (out_path == "-") {
        ufm::write_instance(std::cout, inst);
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) throw ufm::ParseError(out_path + ": cannot open for writing");
    ufm::write_instance(out, inst);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"maximum feasible t-matching solver"};
    app.require_subcommand(1);

    std::string instance_path, out_path = "-", solution_path;
    bool weighted = false;

    CLI::App *solve = app.add_subcommand("solve", "solve an instance");
    solve->add_option("--instance", instance_path, "instance file, - for stdin")->required();
    solve->add_flag("--weighted", weighted, "maximize weight and emit a dual certificate");
    solve->add_option("--out", out_path, "solution file, - for stdout");

    CLI::App *verify = app.add_subcommand("verify", "check a solution file");
    verify->add_option("--instance", instance_path, "instance file")->required();
    verify->add_option("--solution", solution_path, "solution file")->required();

    CLI::App *oracle = app.add_subcommand("oracle", "brute-force ground truth");
    oracle->add_option("--instance", instance_path, "instance file")->required();
    oracle->add_flag("--weighted", weighted, "maximize weight");

    CLI::App *reduce = app.add_subcommand("reduce", "materialize the encoding");
    reduce->add_option("--instance", instance_path, "instance file")->required();
    reduce->add_option("--out", out_path, "output instance file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return run_solve(instance_path, weighted, out_path);
        if (verify->parsed()) return run_verify(instance_path, solution_path);
        if (oracle->parsed()) return run_oracle(instance_path, weighted);
        if (reduce->parsed()) return run_reduce(instance_path, out_path);
    } catch (const ufm::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
