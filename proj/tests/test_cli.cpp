#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "slopelab/construct.hpp"
#include "slopelab/serialize.hpp"

#ifndef SLOPELAB_CLI_PATH
#error "SLOPELAB_CLI_PATH must point at the built binary"
#endif

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("slopelab_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult run_cli(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string("\"") + SLOPELAB_CLI_PATH + "\" " + args +
                          " >" + out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool contains(const std::string& hay, const char* needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("help and usage errors") {
  auto help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(contains(help.out, "slope laboratory"));
  CHECK(contains(help.out, "construct"));

  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--no-such-flag validate").exit_code == 2);
  CHECK(run_cli("construct").exit_code == 2);   // --stages is required
  CHECK(run_cli("verify").exit_code == 2);      // --certificate is required
}

TEST_CASE("validate reports geometry") {
  auto ok = run_cli("validate --u 1,2 --v 2 --w 1");
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.out, "ok: 1 stage(s)"));
  CHECK(contains(ok.out, "hyperbolic"));

  auto bad = run_cli("validate --u 2,1 --v 2 --w 1");
  CHECK(bad.exit_code == 3);
  CHECK(contains(bad.err, "NonMonotoneU"));

  auto mangled = run_cli("validate --u 1,x --v 2 --w 1");
  CHECK(mangled.exit_code == 3);
  CHECK(contains(mangled.err, "malformed number"));

  auto missing = run_cli("validate --params /no/such/file.json");
  CHECK(missing.exit_code == 2);
  CHECK(contains(missing.err, "IoError"));
}

TEST_CASE("trajectory, slope and plot write their outputs") {
  const std::string domain = "--u 1,2 --v 2 --w 1 --tail 8";
  const fs::path csv = scratch_dir() / "traj.csv";
  auto traj = run_cli("--resolution 400 trajectory " + domain +
                      " --z0 0,0 --t-max 1 --out " + csv.string());
  CHECK(traj.exit_code == 0);
  CHECK(contains(traj.out, "wrote "));
  const std::string csv_text = slurp(csv);
  CHECK(csv_text.rfind("t, re_w, im_w, theta\n", 0) == 0);

  auto slope = run_cli("--resolution 400 slope " + domain + " --t-max 2");
  CHECK(slope.exit_code == 0);
  CHECK(slope.out.rfind("{\"lo\": ", 0) == 0);
  CHECK(contains(slope.out, "\"tail_start\": "));

  const fs::path svg = scratch_dir() / "plot.svg";
  auto plot = run_cli("--resolution 400 plot " + domain +
                      " --z0 0,0 --t-max 1 --out " + svg.string());
  CHECK(plot.exit_code == 0);
  CHECK(contains(slurp(svg), "<svg"));
}

TEST_CASE("orbit flags are checked") {
  const std::string domain = "--u 1,2 --v 2 --w 1 --tail 8";
  // trusted window for z0=0 ends at u_last + tail/2 = 6
  auto beyond = run_cli("--resolution 400 slope " + domain + " --t-max 50");
  CHECK(beyond.exit_code == 4);
  CHECK(contains(beyond.err, "LeavesTrustedRegion"));

  auto badz = run_cli("--resolution 400 slope " + domain + " --z0 nope");
  CHECK(badz.exit_code == 3);
  CHECK(contains(badz.err, "InvalidArgument"));
}

TEST_CASE("construct then verify round trip") {
  const fs::path cert_path = scratch_dir() / "cert.json";
  auto built = run_cli("construct --stages 2 --out " + cert_path.string());
  CHECK(built.exit_code == 0);
  CHECK(contains(built.out, "stage 1 Up"));
  CHECK(contains(built.out, "stage 2 Down"));
  CHECK(contains(built.out, "wrote "));

  auto verified = run_cli("verify --certificate " + cert_path.string() +
                          " --strictness 1");
  CHECK(verified.exit_code == 0);
  CHECK(contains(verified.out, "structural: ok"));
  CHECK(contains(verified.out, "verdict: pass"));

  // A witness moved outside its extension must fail the structural audit.
  auto cert = slopelab::serialize::certificate_from_json(slurp(cert_path));
  REQUIRE(cert.stages.size() == 2);
  cert.stages[0].xi_n = cert.stages[0].u_n + cert.stages[0].M_n + 1.0;
  const fs::path tampered = scratch_dir() / "tampered.json";
  std::ofstream(tampered)
      << slopelab::serialize::certificate_to_json(cert);
  auto rejected = run_cli("verify --certificate " + tampered.string() +
                          " --strictness 1");
  CHECK(rejected.exit_code == 5);
  CHECK(contains(rejected.out, "structural: FAIL"));
  CHECK(contains(rejected.out, "interlacing"));

  // Reruns are reproducible down to the byte.
  const fs::path cert_again = scratch_dir() / "cert_again.json";
  auto rebuilt = run_cli("construct --stages 2 --out " + cert_again.string());
  CHECK(rebuilt.exit_code == 0);
  CHECK(slurp(cert_path) == slurp(cert_again));
  CHECK(!slurp(cert_path).empty());
}

TEST_CASE("map-test oracle table passes") {
  auto r = run_cli("map-test");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "pass"));
  CHECK_FALSE(contains(r.out, "FAIL"));
}
