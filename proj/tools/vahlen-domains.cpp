#include "vahlen/json_io.hpp"
#include "vahlen/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace vahlen;

namespace {

GroupSpec parse_group(const std::vector<std::string>& words, long level) {
    if (words.empty()) throw CLI::ValidationError("--group", "missing group spec");
    if (words[0] == "gamma4z") {
        if (words.size() != 1) throw CLI::ValidationError("--group", "gamma4z takes no arguments");
        return GroupSpec::gamma4z();
    }
    if (words[0] == "quat") {
        if (words.size() != 3)
            throw CLI::ValidationError("--group", "quat needs two negative integers X Y");
        return GroupSpec::quat_order(std::stol(words[1]), std::stol(words[2]));
    }
    if (words[0] == "congruence") {
        long m = level;
        if (words.size() == 2) m = std::stol(words[1]);
        else if (words.size() != 1)
            throw CLI::ValidationError("--group", "congruence takes at most one argument");
        if (m < 2) throw CLI::ValidationError("--group", "congruence needs --level m >= 2");
        return GroupSpec::congruence(m);
    }
    throw CLI::ValidationError("--group", "unknown group: " + words[0]);
}

int cmd_run(const GroupSpec& spec, long norm_cap, int depth_cap, const std::string& out_path,
            bool verbose) {
    ShellEnumerator en(spec);
    if (verbose) std::cerr << "group: " << spec.name() << "\n";
    StabilizerData st = compute_stabilizer(en);
    if (verbose)
        std::cerr << "stabilizer: order " << st.group.size() << ", " << st.generators.size()
                  << " generators, " << st.walls.size() << " walls\n";
    Algorithm1Result a1 = algorithm1(en, norm_cap);
    if (verbose)
        std::cerr << "hyperplane sweep: stopped at norm " << a1.stop_norm << " with "
                  << a1.walls.size() << " walls\n";
    DomainRun run = algorithm2(en, st, a1, norm_cap, depth_cap);
    if (verbose)
        std::cerr << "hemisphere sweep: "
                  << (run.status == DomainRun::Status::Complete ? "complete" : "inconclusive")
                  << ", " << run.sphere_generators.size() << " sphere generators\n";
    std::vector<OutputGenerator> output = assemble_output(en, run);
    Json doc = result_to_json(en, run, output);
    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 1;
    }
    os << doc.dump(1) << "\n";
    if (verbose) std::cerr << "wrote " << out_path << "\n";
    return run.status == DomainRun::Status::Complete ? 0 : 2;
}

int cmd_verify(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        std::cerr << "error: cannot read " << path << "\n";
        return 1;
    }
    Json doc = Json::parse(is);
    std::size_t n = verify_result(doc);
    std::cout << "verified " << n << " generators and all certificates\n";
    return 0;
}

int cmd_slice(const std::string& path, const std::string& fix, const std::string& out_path) {
    std::ifstream is(path);
    if (!is) {
        std::cerr << "error: cannot read " << path << "\n";
        return 1;
    }
    Json doc = Json::parse(is);
    std::map<int, Rat> fixed;
    std::stringstream ss(fix);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos || part.size() < 4 || part[0] != 'z')
            throw std::invalid_argument("fix syntax: z<i>=<rational>[,...]");
        int idx = std::stoi(part.substr(1, eq - 1));
        if (idx < 0 || idx > 3) throw std::invalid_argument("coordinate index out of range");
        fixed[idx] = rat_from_string(part.substr(eq + 1));
    }
    if (fixed.empty()) throw std::invalid_argument("nothing to fix");
    Json out = slice_result(doc, fixed);
    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 1;
    }
    os << out.dump(1) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generators, up to finite index, of discrete Vahlen matrix groups "
                 "acting on hyperbolic 5-space"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "compute a generating set and its certificates");
    std::vector<std::string> group_words;
    long level = 0, norm_cap = 40;
    int depth_cap = 24;
    std::string out_path = "result.json";
    bool verbose = false;
    run->add_option("--group", group_words, "gamma4z | quat X Y | congruence M")
        ->required()
        ->expected(1, 3);
    run->add_option("--level", level, "congruence level");
    run->add_option("--norm-cap", norm_cap, "largest matrix norm swept (default 40)");
    run->add_option("--depth-cap", depth_cap, "subdivision depth cap (default 24)");
    run->add_option("--out", out_path, "output path (default result.json)")->required();
    run->add_flag("-v,--verbose", verbose, "progress on stderr");

    auto* verify = app.add_subcommand("verify", "replay all certificates of a result file");
    std::string verify_path;
    verify->add_option("file", verify_path, "result.json to verify")->required();

    auto* slice = app.add_subcommand("slice", "slice the domain walls at fixed coordinates");
    std::string slice_path, fix, slice_out;
    slice->add_option("file", slice_path, "result.json to slice")->required();
    slice->add_option("--fix", fix, "e.g. z2=0,z3=0")->required();
    slice->add_option("--out", slice_out, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            GroupSpec spec = parse_group(group_words, level);
            return cmd_run(spec, norm_cap, depth_cap, out_path, verbose);
        }
        if (verify->parsed()) return cmd_verify(verify_path);
        if (slice->parsed()) return cmd_slice(slice_path, fix, slice_out);
    } catch (const VerifyError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
