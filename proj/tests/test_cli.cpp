#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
RunResult run(const std::string& args) {
  const std::string cmd = std::string(PHYLO_BIN) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kData = TESTS_DATA_DIR;
const std::string kD1 = kData + "/net_d1.tsv";
const std::string kN1 = kData + "/net_n1.tsv";

}  // namespace

TEST_CASE("validate reports counts and exits zero") {
  RunResult r = run("validate " + kD1);
  CHECK(r.code == 0);
  CHECK(r.out.find("7 nodes") != std::string::npos);
  CHECK(r.out.find("1 reticulations") != std::string::npos);
}

TEST_CASE("validate rejects malformed input with exit code 2") {
  RunResult r = run("validate " + kData + "/no_such_file.enwk");
  CHECK(r.code == 2);
  CHECK(r.out.find("error:") != std::string::npos);
}

TEST_CASE("classify prints one flag per line and supports json") {
  RunResult r = run("classify " + kN1);
  CHECK(r.code == 0);
  CHECK(r.out.find("tree-child: no") != std::string::npos);
  CHECK(r.out.find("quasi-reticulation-visible: yes") != std::string::npos);

  RunResult j = run("classify " + kN1 + " --json");
  CHECK(j.code == 0);
  CHECK(j.out.find("\"tree_child\":false") != std::string::npos);
  CHECK(j.out.find("\"quasi_reticulation_visible\":true") != std::string::npos);
}

TEST_CASE("decompose lists per-node component assignments") {
  RunResult r = run("decompose " + kD1);
  CHECK(r.code == 0);
  CHECK(r.out.find("rho\ttree\t0") != std::string::npos);
  CHECK(r.out.find("r\treticulate\t1") != std::string::npos);
  CHECK(r.out.find("l1\tleaf\t-") != std::string::npos);
}

TEST_CASE("compress emits canonical text and an optional node map") {
  RunResult r = run("compress " + kN1);
  CHECK(r.code == 0);
  CHECK(r.out == "(l1,l2,(l3));\n");

  const std::string map_file = kData + "/tmp_map.tsv";
  RunResult m = run("compress " + kN1 + " --map " + map_file);
  CHECK(m.code == 0);
  std::ifstream in(map_file);
  std::string map_text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  CHECK(map_text.find("r1\tsigma0") != std::string::npos);
  CHECK(map_text.find("rho\ttau0") != std::string::npos);
  std::remove(map_file.c_str());
}

TEST_CASE("scc exit codes distinguish yes and no") {
  CHECK(run("scc " + kN1 + " --node c --cluster l2,l3").code == 0);
  CHECK(run("scc " + kN1 + " --node a --cluster l2,l3").code == 1);
  RunResult bad = run("scc " + kN1 + " --node r1 --cluster l2");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("error:") != std::string::npos);
}

TEST_CASE("cc names the displaying node") {
  RunResult r = run("cc " + kN1 + " --cluster l2,l3");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"node\":\"c\"") != std::string::npos);
  CHECK(run("cc " + kN1 + " --cluster l1,l3").code == 1);
}

TEST_CASE("oracle subcommands answer on small inputs") {
  CHECK(run("oracle scc " + kD1 + " --node v1 --cluster l1,l3").code == 0);
  CHECK(run("oracle scc " + kD1 + " --node v1 --cluster l3").code == 1);
  RunResult t = run("oracle tree-based " + kD1);
  CHECK(t.code == 0);
}

TEST_CASE("gen output validates and honors the class flag") {
  RunResult g = run("gen --leaves 8 --reticulations 3 --class tree-child "
                    "--seed 11");
  CHECK(g.code == 0);
  CHECK(g.out.find(';') != std::string::npos);

  RunResult again = run("gen --leaves 8 --reticulations 3 --class tree-child "
                        "--seed 11");
  CHECK(again.out == g.out);
}

TEST_CASE("dot export from the decompose subcommand") {
  RunResult r = run("decompose " + kD1 + " --dot");
  CHECK(r.code == 0);
  CHECK(r.out.find("digraph") != std::string::npos);
  CHECK(r.out.find("subgraph cluster") != std::string::npos);
}

TEST_CASE("stdin input via dash") {
  RunResult r = run("validate - --format enwk < " + kData +
                    "/tree_sibling_nonclosure.enwk");
  CHECK(r.code == 0);
  CHECK(r.out.find("19 nodes") != std::string::npos);
}
