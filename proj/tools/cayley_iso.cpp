#include "cayleyiso/jobs.hpp"
#include "cayleyiso/zoo.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Isoperimetric, spectral and Littlewood-norm invariants of Cayley graphs"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = 0;
    uint64_t seed = 0;
    bool have_seed = false, have_threads = false;

    auto* run = app.add_subcommand("run", "execute a job config and write report + CSVs");
    run->add_option("config", config_path, "job config JSON")->required();
    run->add_option("--out", out_dir, "output directory (default: config's 'output')");
    run->add_option("--threads", threads, "worker thread cap")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "seed override");
    auto* self = app.add_subcommand("selfcheck", "run the invariant battery on the built-in zoo");
    auto* list = app.add_subcommand("list-groups", "list supported group kinds and the zoo");

    CLI11_PARSE(app, argc, argv);
    have_threads = run->count("--threads") > 0;
    have_seed = run->count("--seed") > 0;

    if (app.got_subcommand(run)) {
        return cayleyiso::run_job(
            config_path, out_dir,
            have_threads ? std::optional<int>(threads) : std::nullopt,
            have_seed ? std::optional<uint64_t>(seed) : std::nullopt, std::cout);
    }
    if (app.got_subcommand(self)) return cayleyiso::selfcheck(std::cout);
    if (app.got_subcommand(list)) {
        std::cout << "group kinds:\n"
                  << "  free {rank}\n"
                  << "  free_abelian {rank}\n"
                  << "  cyclic {n}\n"
                  << "  finite_table {table | csv}\n"
                  << "  permutation {degree, generators}\n"
                  << "  free_product_cyclic {orders}\n"
                  << "  lamplighter\n"
                  << "  builtin_s3, builtin_klein4\n\n"
                  << "instance zoo:\n";
        for (const auto& inst : cayleyiso::instance_zoo())
            std::cout << "  " << inst.name << " — " << inst.group.describe()
                      << ", |S| = " << inst.set.size() << "\n";
        return 0;
    }
    return 0;
}
