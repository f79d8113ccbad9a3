// CLI behavior checks: exit codes, config diagnostics, serialization
// round-trips. argv[1] is the path to the CLI binary.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok) ++failures;
}

int run(const std::string& cmd) {
    int status = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

void write(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::printf("usage: test_cli <snapbm binary>\n");
        return 1;
    }
    std::string cli = argv[1];
    namespace fs = std::filesystem;
    fs::path work = fs::temp_directory_path() / "snapbm_cli_test";
    fs::remove_all(work);
    fs::create_directories(work);
    std::string w = work.string();

    expect(run(cli + " geometry --config " + w + "/missing.json") == 1,
           "missing config file exits 1");

    write(w + "/broken.json", "{\"boundary\": {\"type\": \"circle\",");
    expect(run(cli + " geometry --config " + w + "/broken.json") == 1,
           "malformed JSON exits 1");

    write(w + "/nolambda.json",
          R"({"boundary": {"type":"circle","center":[0,0],"radius":1},
              "barriers": [{"curve": {"type":"circle","center":[0,0],"radius":0.5}}]})");
    expect(run(cli + " geometry --config " + w + "/nolambda.json") == 1,
           "barrier without rates exits 1");

    write(w + "/outside.json",
          R"({"boundary": {"type":"circle","center":[0,0],"radius":1},
              "barriers": [{"curve": {"type":"circle","center":[5,0],"radius":0.5},
                            "lambda_plus": 1, "lambda_minus": 1}]})");
    expect(run(cli + " geometry --config " + w + "/outside.json") == 1,
           "barrier outside the boundary exits 1");

    expect(run(cli + " scenario no_such_scenario --emit " + w + "/x.json") == 1,
           "unknown scenario exits 1");

    // inline-curve barrier form parses too
    write(w + "/inline.json",
          R"({"boundary": {"type":"circle","center":[0,0],"radius":1},
              "barriers": [{"type":"circle","center":[0,0],"radius":0.5,
                            "lambda_plus": 1, "lambda_minus": 1}]})");
    expect(run(cli + " geometry --config " + w + "/inline.json --out " + w + "/inline_out") == 0,
           "inline barrier curve fields accepted");

    // scenario -> config -> geometry round trips for each curve kind
    for (std::string name : {"disk_one_barrier", "nonconvex_spline", "cluttered_rectangleish"}) {
        std::string cfg = w + "/" + name + ".json";
        bool ok = run(cli + " scenario " + name + " --emit " + cfg) == 0 &&
                  run(cli + " geometry --config " + cfg + " --out " + w + "/" + name) == 0;
        expect(ok, "scenario " + name + " round trips through geometry");
    }

    // ellipse config parse + report
    write(w + "/ellipse.json",
          R"({"boundary": {"type":"ellipse","center":[0,0],"semi_axes":[2,1],"rotation":0.0},
              "barriers": []})");
    expect(run(cli + " geometry --config " + w + "/ellipse.json --out " + w + "/eout") == 0,
           "ellipse boundary config accepted");

    std::printf("%s\n", failures == 0 ? "CLI CHECKS: ALL PASS" : "CLI CHECKS: FAILURES");
    return failures == 0 ? 0 : 1;
}
