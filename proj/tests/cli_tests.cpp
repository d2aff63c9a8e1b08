// End-to-end tests of the command-line binary: spawns the real executable
// and checks stdout, CSV/JSON shape, and exit codes.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int run(const std::string& args, std::string& out) {
    std::string cmd = std::string(RICCATI_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::array<char, 4096> buf{};
    out.clear();
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    return WEXITSTATUS(status);
}

int checks_run = 0, checks_failed = 0;

void expect(bool ok, const std::string& what) {
    ++checks_run;
    if (!ok) {
        ++checks_failed;
        std::cerr << "FAIL: " << what << "\n";
    }
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

int main() {
    std::string out;

    expect(run("print chain 3 1", out) == 0 &&
               out == "u3 + 4*u*u2 + 3*u1^2 + 6*u^2*u1 + u^4\n",
           "print chain 3 1");
    expect(run("print chain 0 1", out) == 0 && out == "u\n", "print chain 0 1");
    expect(run("print lenard-j 2", out) == 0 && out == "u2 + 3*u^2\n", "print lenard-j 2");
    expect(run("print nonsense", out) == 2, "unknown print kind exits 2");

    // Hill integration writes a full CSV with header.
    expect(run("integrate hill --v \"trig:1;0.3,0\" --ics 1,0 --domain 0,6.2831853 "
               "--grid 512 --out /tmp/riccati_cli_hill.csv",
               out) == 0,
           "integrate hill exit code");
    {
        std::string csv = slurp("/tmp/riccati_cli_hill.csv");
        std::istringstream ss(csv);
        std::string line;
        std::getline(ss, line);
        expect(line == "x,y0,y1", "CSV header");
        int rows = 0;
        while (std::getline(ss, line))
            if (!line.empty() && line[0] != '#') ++rows;
        expect(rows == 512, "CSV row count");
    }

    // A pole truncates the CSV and leaves a trailer comment, exit 0.
    expect(run("integrate pii --alpha 0 --ics 0,1 --domain 0,10 --out "
               "/tmp/riccati_cli_pii.csv",
               out) == 0,
           "truncated integration exits 0");
    {
        std::string csv = slurp("/tmp/riccati_cli_pii.csv");
        expect(csv.find("# truncated at x=1.737") != std::string::npos,
               "truncation trailer present");
    }

    expect(run("integrate hill --v bogus:1 --ics 1,0", out) == 2, "malformed spec exits 2");
    expect(run("integrate hill --ics 1", out) == 2, "wrong IC arity exits 2");

    // verify: exact symbolic checks, JSON shape, exit codes.
    expect(run("verify chain-identities", out) == 0, "verify chain-identities exits 0");
    expect(out.find("\"pass\": true") != std::string::npos &&
               out.find("\"max_abs_residual\": 0.0") != std::string::npos,
           "verify JSON fields");
    {
        int count = 0;
        std::size_t pos = 0;
        while ((pos = out.find("\"check\": \"chain-identities\"", pos)) !=
               std::string::npos) {
            ++count;
            ++pos;
        }
        expect(count == 5, "five identity entries");
    }
    expect(run("verify nope", out) == 2, "unknown check exits 2");

    // Determinism: identical seeded invocations give identical bytes.
    expect(run("verify cross-ratio --seed 5 --out /tmp/riccati_cli_a.json", out) == 0,
           "seeded verify run A");
    expect(run("verify cross-ratio --seed 5 --out /tmp/riccati_cli_b.json", out) == 0,
           "seeded verify run B");
    expect(slurp("/tmp/riccati_cli_a.json") == slurp("/tmp/riccati_cli_b.json"),
           "byte-identical seeded reports");

    // Config file replicates flags; explicit flags win.
    {
        std::ofstream cfg("/tmp/riccati_cli.cfg");
        cfg << "seed=5\n";
    }
    expect(run("verify cross-ratio --config /tmp/riccati_cli.cfg --out "
               "/tmp/riccati_cli_c.json",
               out) == 0,
           "config file accepted");
    expect(slurp("/tmp/riccati_cli_a.json") == slurp("/tmp/riccati_cli_c.json"),
           "config seed matches flag seed");

    std::cout << checks_run - checks_failed << "/" << checks_run << " cli checks passed\n";
    return checks_failed == 0 ? 0 : 1;
}
