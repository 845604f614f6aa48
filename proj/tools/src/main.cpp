#include <iostream>

#include "CLI11.hpp"
#include "qortho/error.hpp"
#include "qortho_cli/cli.hpp"

using namespace qortho::cli;

int main(int argc, char** argv)
{
    CLI::App app{"qortho: exact checks for shifted-parameter orthogonal polynomial families"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string n_text = "5", width_text = "1e-12";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", cfg.family, "family name, e.g. big-q-jacobi");
        sub->add_option("--spec", cfg.spec_path, "key=value parameter file");
        sub->add_option("--n", n_text, "degree or range A..B")->capture_default_str();
        sub->add_option("--shift", cfg.shift, "shift such as alpha/q^2 or a-1,c-1, or a catalog id");
        sub->add_option("--depth", cfg.depth, "combination depth J")->capture_default_str();
        sub->add_option("--width", width_text, "root box width, power of 1/2 or 1/10")->capture_default_str();
        sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
        sub->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
    };

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"verify", "check catalog identities exactly"},
        {"discover", "find constant-coefficient combinations by basis expansion"},
        {"order", "quasi-orthogonality order of a shifted family"},
        {"zeros", "isolate zeros and write zeros.csv (and sweep data)"},
        {"suite", "run every applicable claim for a family"},
        {"moments", "moments of the shifted polynomial against the base weight"},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(sub);
        if (std::string(s.name) == "verify")
            sub->add_flag("--all", cfg.all, "every catalog entry at its reference instance");
        if (std::string(s.name) == "discover")
            sub->add_flag("--expect-none", cfg.expect_none, "exit 0 only when no combination exists");
        if (std::string(s.name) == "zeros")
            sub->add_option("--sweep", cfg.sweep, "param=lo..hi:steps, writes sweep-<param>.dat");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        cfg.command = parse_command(app.get_subcommands().front()->get_name());
        std::tie(cfg.n_lo, cfg.n_hi) = parse_range(n_text);
        cfg.width = parse_width(width_text);
    } catch (const qortho::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return run(cfg);
}
