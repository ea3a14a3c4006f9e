#include "entwine/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Entwining structures over exact fields"};
    app.require_subcommand(1);
    std::string format = "json", file, functor = "F", block;
    std::uint64_t seed = 0;
    std::size_t trials = 64;
    bool no_timings = false;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--no-timings", no_timings, "Omit timings for byte-stable reports");

    auto* verify = app.add_subcommand("verify", "Verify every block of a file");
    auto* sep = app.add_subcommand("sep", "Separability of the forgetful or induction functor");
    auto* frob = app.add_subcommand("frobenius", "Frobenius property of the entwining");
    auto* galois = app.add_subcommand("galois", "Galois conditions for a coactions block");
    for (auto* sub : {verify, sep, frob, galois}) {
        sub->add_option("file", file, "Input .ent file")->required();
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_flag("--no-timings", no_timings, "Omit timings for byte-stable reports");
    }
    for (auto* sub : {sep, frob}) sub->add_option("--entwining", block, "Entwining block name");
    galois->add_option("--coactions", block, "Coactions block name");
    sep->add_option("--functor", functor, "F or G")->required()->check(CLI::IsMember({"F", "G"}));
    auto* seed_opt = frob->add_option("--seed", seed, "Seed for the randomized search");
    frob->add_option("--trials", trials, "Random trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ent::report::Options opt;
    opt.block = block;
    opt.trials = trials;
    opt.timings = !no_timings;
    opt.seed = seed;
    if (seed_opt->count() == 0)
        if (const char* env = std::getenv("ENTWINE_SEED")) {
            try {
                opt.seed = std::stoull(env);
            } catch (const std::exception&) {
                std::cerr << "ENTWINE_SEED is not an unsigned integer: " << env << "\n";
                return 2;
            }
        }

    const std::string command = verify->parsed() ? "verify" : sep->parsed() ? "sep" : frob->parsed() ? "frobenius" : "galois";
    const ent::report::Outcome out = ent::report::run(command, file, opt, functor[0]);
    if (format == "json")
        std::cout << out.report.dump(2) << "\n";
    else
        std::cout << ent::report::to_text(out.report);
    return out.exit_code;
}
