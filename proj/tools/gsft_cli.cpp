#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "gsft/io.hpp"

namespace {

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

int exit_code(gsft::ExitCode c) { return static_cast<int>(c); }

}  // namespace

int main(int argc, char** argv) {
    using namespace gsft;
    CLI::App app{"Shifts of finite type with finite group actions"};
    app.set_version_flag("--version", std::string(io::version));
    app.require_subcommand(1);

    std::string input = "-", format = "text";
    std::optional<std::uint64_t> cap, limit, max_n, m;
    const std::map<std::string, std::string> about{
        {"reduce", "right and left reduced matrices over the orbits"},
        {"invariants", "characteristic polynomial and Bowen-Franks group"},
        {"classify", "constant-to-one or nonexpansive quotient map"},
        {"witness", "pair of points showing the quotient map is not expansive"},
        {"burnside", "orbit counts of periodic points via Burnside's lemma"},
        {"quotient-counts", "periodic points of the quotient system"},
        {"verify-sse", "check a chain of elementary strong shift equivalences"},
        {"transport", "move an SSE certificate to the reduced matrices"},
        {"split", "equivariant state splitting"},
        {"repshift", "representation shift of an HNN extension into a finite group"},
        {"tqft", "reduced matrix over conjugacy orbits of representations"},
        {"bundle-counts", "flat bundle counts over mapping tori"}};
    for (const auto& name : io::commands()) {
        auto* sub = app.add_subcommand(name, about.at(name));
        sub->add_option("-i,--input", input, "job file (JSON), - for stdin")->capture_default_str();
        sub->add_option("-f,--format", format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
        sub->add_option("--cap", cap, "enumeration cap")->check(CLI::PositiveNumber);
        sub->add_option("--limit", limit, "group order limit")->check(CLI::PositiveNumber);
        sub->add_option("--max-n", max_n, "number of terms")->check(CLI::PositiveNumber);
        sub->add_option("-m", m, "block radius for witnesses")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code(ExitCode::input);
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        std::string text;
        if (input == "-") {
            text = read_all(std::cin);
        } else {
            std::ifstream f(input);
            if (!f) throw InputError("cannot open " + input);
            text = read_all(f);
        }
        auto doc = io::json::parse(text, nullptr, false);
        if (doc.is_discarded()) {
            io::parse_job(text);  // reports the parse error with a path
        }
        if (doc.is_object() && !doc.contains("command")) doc["command"] = command;
        if (doc.is_object() && doc["command"] != command)
            throw InputError("job command " + doc["command"].dump() + " does not match subcommand \"" + command + "\"");
        auto job = io::parse_job_json(doc);
        if (cap) job.params["cap"] = *cap;
        if (limit) job.params["limit"] = *limit;
        if (max_n) job.params["max_n"] = *max_n;
        if (m) job.params["m"] = *m;
        std::cout << io::emit_report(io::run_job(job), format);
        return exit_code(ExitCode::ok);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_code(ExitCode::input);
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return exit_code(ExitCode::precondition);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return exit_code(ExitCode::cap);
    }
}
