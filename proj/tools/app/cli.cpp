#include "commands.hpp"

#include "moller/errors.hpp"

#include "CLI11.hpp"

#include <functional>
#include <ostream>

namespace moller::app {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact checks for Moller maps of perturbative field theories", "moller"};
    app.require_subcommand(1);
    app.set_version_flag("--version", toolchain_version());

    Options opts;
    std::string model_path;
    std::string emit = "text";
    std::function<Report(const LoadedModel&, const Options&)> command;

    auto common = [&](CLI::App* sub) {
        sub->add_option("model", model_path, "Model file (JSON)")->required();
        sub->add_option("--weight,-W", opts.weight, "Window on source weights W (default 4 or the model file)");
        sub->add_option("--order,-L", opts.order, "Maximal lambda order L (default 3 or the model file)");
        sub->add_option("--emit", emit, "Output format")->check(CLI::IsMember({"text", "machine"}));
    };

    CLI::App* check = app.add_subcommand("check", "Run both existence routes and cross-check them");
    common(check);
    check->add_option("--mode", opts.mode, "Moller candidate form")->check(CLI::IsMember({"general", "algebra"}));
    check->add_option("--route", opts.route, "Routes to run")->check(CLI::IsMember({"tower", "hpt", "both"}));
    check->callback([&] { command = cmd_check; });

    CLI::App* coh = app.add_subcommand("cohomology", "Free vs perturbed CE cohomology per weight");
    common(coh);
    coh->add_option("--degree", opts.degree, "CE degree (default 0)");
    coh->add_option("--weight-max", opts.weight_max, "Largest weight in the table (default 6)")
        ->check(CLI::NonNegativeNumber);
    coh->callback([&] { command = cmd_cohomology; });

    CLI::App* jac = app.add_subcommand("jacobi", "Homotopy Jacobi identities per arity");
    common(jac);
    jac->callback([&] { command = cmd_jacobi; });

    CLI::App* mc = app.add_subcommand("mc", "Maurer-Cartan equation per lambda order");
    common(mc);
    mc->callback([&] { command = cmd_mc; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForVersion&) {
        out << toolchain_version() << "\n";
        return ExitOk;
    } catch (const CLI::Success&) {
        out << app.help();
        return ExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return ExitParse;
    }
    if (opts.weight && *opts.weight < 1) {
        err << "error: --weight must be at least 1\n";
        return ExitParse;
    }
    if (opts.order && *opts.order < 1) {
        err << "error: --order must be at least 1\n";
        return ExitParse;
    }

    try {
        LoadedModel model = load_model_file(model_path);
        Report r = command(model, opts);
        out << (emit == "machine" ? render_machine(r) : render_text(r));
        return r.exit_code;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return ExitParse;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << "\n";
        return ExitParse;
    } catch (const ModelInvariantError& e) {
        err << "model invariant violated: " << e.what() << "\n";
        return ExitInvariant;
    } catch (const moller::Error& e) {
        err << "model invariant violated: " << e.what() << "\n";
        return ExitInvariant;
    }
}

} // namespace moller::app
