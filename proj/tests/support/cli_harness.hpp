#pragma once

// Helpers for driving the command-line binary and comparing its output
// against committed golden files. Shared by the CLI test suite and the
// acceptance runner.

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace cli_harness {

struct Paths {
    std::string cli;    // built binary
    std::string golden; // committed expected outputs
    std::string data;   // committed input files
    std::string tmp;    // scratch directory
};

inline int run(const std::string& cli, const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::string("<<unreadable: ") + path + ">>";
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Runs one subcommand with --output into tmp and byte-compares the result
// with the golden file of the same name. Returns an empty string on match,
// a diagnostic otherwise.
inline std::string check_golden(const Paths& paths, const std::string& name,
                                const std::string& args) {
    const std::string out_path = paths.tmp + "/" + name;
    const int code = run(paths.cli, args + " --output " + out_path);
    if (code != 0) return name + ": exit code " + std::to_string(code);
    const std::string got = read_file(out_path);
    const std::string want = read_file(paths.golden + "/" + name);
    if (got != want) return name + ": output differs from golden file";
    return {};
}

} // namespace cli_harness
