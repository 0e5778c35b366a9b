#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "skolem/skolem.hpp"

namespace {

constexpr int kDecided = 0;
constexpr int kInternal = 1;
constexpr int kUnknown = 2;
constexpr int kInvalid = 3;

int decide(const std::string& path, const skolem::DecideOptions& overrides, const skolem::EmitOptions& emit,
           const std::optional<skolem::Backend>& backend, const std::optional<std::uint64_t>& bound,
           const std::optional<std::uint64_t>& certify_bound) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "skolem: cannot open " << path << "\n";
        return kInvalid;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        auto problem = skolem::parse_problem(buf.str());
        auto opts = skolem::options_for(problem, overrides);
        if (backend) opts.backend = *backend;
        if (bound) opts.exponent_bound = *bound;
        if (certify_bound) opts.certify_bound = *certify_bound;
        auto report = skolem::decide_skolem(problem, opts);
        std::cout << skolem::emit_report(report, emit);
        return report.verdict == skolem::Outcome::UnknownBounded ? kUnknown : kDecided;
    } catch (const skolem::ParseError& e) {
        std::cerr << path << ":" << e.what() << "\n";
        return kInvalid;
    } catch (const skolem::InvalidInput& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "skolem: internal error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decides whether a linear recurrence over a finite-characteristic ring has a zero term"};
    app.require_subcommand(1);

    auto* cmd = app.add_subcommand("decide", "Compute the zero set and a verdict for a problem file");
    std::string file;
    std::optional<std::uint64_t> bound, certify_bound;
    std::string backend_text = "", format = "text";
    bool emit_zero_set = false;
    cmd->add_option("file", file, "Problem file")->required();
    cmd->add_option("--bound", bound, "Exponent bound for cross-prime power equations (default 128)");
    cmd->add_option("--certify-bound", certify_bound, "Enumeration bound of the certify backend (default 4096)");
    cmd->add_option("--backend", backend_text, "Simple-sum backend")->check(CLI::IsMember({"auto", "finite", "certify"}));
    cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--emit-zero-set", emit_zero_set, "Include full zero-set descriptions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInvalid;
    }

    skolem::EmitOptions emit;
    emit.format = format == "json" ? skolem::ReportFormat::Json : skolem::ReportFormat::Text;
    emit.zero_set = emit_zero_set;
    std::optional<skolem::Backend> backend;
    if (!backend_text.empty()) backend = skolem::parse_backend(backend_text);
    return decide(file, {}, emit, backend, bound, certify_bound);
}
