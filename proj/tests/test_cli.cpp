#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ptreal/cli.hpp"
#include "ptreal/serialize.hpp"

using namespace ptreal;
namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;

  Workspace() {
    dir = fs::temp_directory_path() / ("ptreal_cli_" + std::to_string(::getpid()) + "_" +
                                       std::to_string(counter()++));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  static int& counter() {
    static int c = 0;
    return c;
  }

  std::string file(const std::string& name, const std::string& content) const {
    write_text_file(dir / name, content);
    return (dir / name).string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const VerifyHooks& hooks = {}) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err, hooks);
  return {code, out.str(), err.str()};
}

const char* kCubic = R"({"terms":[{"power":3,"re":0,"im":1}]})";
const char* kHarmonic = R"({"terms":[{"power":2,"re":1,"im":0}]})";

std::string broken_2x2() {
  return R"({"n":2,"basis":"raw","entries_re":[[0,0.5],[0.5,0]],"entries_im":[[1,0],[0,-1]]})";
}

std::string sigma_x() { return R"({"n":2,"w_re":[[0,1],[1,0]],"w_im":[[0,0],[0,0]]})"; }

}  // namespace

TEST_CASE("build writes the matrix and reports A-symmetry") {
  Workspace ws;
  const auto pot = ws.file("ix3.json", kCubic);
  const auto res = run({"build", "--potential", pot, "--n", "16", "--out", ws.path("h.json")});
  CHECK(res.code == cli::kOk);
  CHECK(res.out.find("A-symmetry violation: 0") != std::string::npos);
  const auto h = operator_matrix_from_json(read_text_file(ws.path("h.json")));
  CHECK(h.n_basis == 16);
  CHECK(h.basis == BasisTag::ho);
}

TEST_CASE("build error exits") {
  Workspace ws;
  const auto dup = ws.file("dup.json", R"({"terms":[{"power":2,"re":1,"im":0},{"power":2,"re":1,"im":0}]})");
  auto res = run({"build", "--potential", dup, "--n", "8"});
  CHECK(res.code == cli::kUsage);
  CHECK(res.err.find("duplicate power 2") != std::string::npos);

  const auto pt = ws.file("pt.json", R"({"terms":[{"power":1,"re":0.5,"im":0}]})");
  res = run({"build", "--potential", pt, "--n", "8"});
  CHECK(res.code == cli::kUsage);
  CHECK(res.err.find("PT violation at power 1") != std::string::npos);

  res = run({"build", "--potential", ws.path("missing.json"), "--n", "8"});
  CHECK(res.code == cli::kIo);

  res = run({"build", "--potential", ws.file("ok.json", kCubic), "--n", "8", "--out",
             ws.path("no/such/dir/h.json")});
  CHECK(res.code == cli::kIo);

  CHECK(run({"build", "--n", "8"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
}

TEST_CASE("realify recipes") {
  Workspace ws;
  const auto pot = ws.file("ix3.json", kCubic);
  REQUIRE(run({"build", "--potential", pot, "--n", "8", "--out", ws.path("h.json")}).code == 0);

  auto res = run({"realify", "--matrix", ws.path("h.json"), "--recipe", "bender", "--n", "8"});
  CHECK(res.code == cli::kIncompleteBasis);
  CHECK(res.out.find("rank 4 of 8, 4 columns dropped") != std::string::npos);

  res = run({"realify", "--matrix", ws.path("h.json"), "--recipe", "phase_unitary", "--out",
             ws.path("r.json")});
  CHECK(res.code == cli::kOk);
  CHECK(res.out.find("imag_residual: 0") != std::string::npos);
  const auto r = real_matrix_from_json(read_text_file(ws.path("r.json")));
  CHECK(r.n() == 8);
  CHECK(r.imag_residual <= 1e-12);

  for (const char* recipe : {"projector_phase", "phase_power", "porter"}) {
    CHECK(run({"realify", "--matrix", ws.path("h.json"), "--recipe", recipe}).code == cli::kOk);
  }
  CHECK(run({"realify", "--potential", pot, "--n", "8"}).code == cli::kOk);
  CHECK(run({"realify", "--matrix", ws.path("h.json"), "--recipe", "magic"}).code == cli::kUsage);
  CHECK(run({"realify", "--matrix", ws.path("h.json"), "--n", "9"}).code == cli::kUsage);
  CHECK(run({"realify", "--matrix", ws.path("h.json"), "--potential", pot, "--n", "8"}).code ==
        cli::kUsage);
}

TEST_CASE("realify rejects a matrix without the symmetry") {
  Workspace ws;
  const auto m = ws.file(
      "bad.json", R"({"n":2,"basis":"ho","entries_re":[[1,1],[1,1]],"entries_im":[[0,0],[0,0]]})");
  for (const char* recipe : {"phase_unitary", "projector_phase", "phase_power", "porter", "bender"}) {
    CHECK(run({"realify", "--matrix", m, "--recipe", recipe}).code == cli::kRealityViolation);
  }
}

TEST_CASE("realify with a custom antiunitary") {
  Workspace ws;
  const auto m = ws.file("broken.json", broken_2x2());
  const auto a = ws.file("sx.json", sigma_x());
  auto res = run({"realify", "--matrix", m, "--antiunitary", a, "--out", ws.path("r.json")});
  CHECK(res.code == cli::kOk);
  const auto r = real_matrix_from_json(read_text_file(ws.path("r.json")));
  CHECK(std::abs(r.entries(0, 0) - 0.5) <= 1e-15);
  CHECK(std::abs(r.entries(0, 1) + 1.0) <= 1e-15);
  CHECK(std::abs(r.entries(1, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(r.entries(1, 1) + 0.5) <= 1e-15);

  CHECK(run({"realify", "--matrix", m}).code == cli::kUsage);  // raw basis needs --antiunitary
  CHECK(run({"realify", "--matrix", m, "--antiunitary", a, "--recipe", "phase_unitary"}).code ==
        cli::kUsage);
  const auto bad = ws.file("bad.json", R"({"n":2,"w_re":[[0,1],[-1,0]],"w_im":[[0,0],[0,0]]})");
  CHECK(run({"realify", "--matrix", m, "--antiunitary", bad}).code == cli::kUsage);
}

TEST_CASE("spectrum command") {
  Workspace ws;
  auto res = run({"spectrum", "--potential", ws.file("ix3.json", kCubic), "--n", "64", "--out",
                  ws.path("s.json")});
  CHECK(res.code == cli::kOk);
  auto doc = nlohmann::json::parse(read_text_file(ws.path("s.json")));
  CHECK(std::abs(doc["real_set"][0].get<double>() - 1.156267) <= 1e-5);

  res = run({"spectrum", "--matrix", ws.file("b.json", broken_2x2()), "--antiunitary",
             ws.file("sx.json", sigma_x()), "--out", ws.path("b_s.json")});
  CHECK(res.code == cli::kOk);
  CHECK(res.out.find("real eigenvalues: 0, conjugate pairs: 1") != std::string::npos);
  doc = nlohmann::json::parse(read_text_file(ws.path("b_s.json")));
  CHECK(std::abs(doc["pairs"][0][0]["im"].get<double>() - std::sqrt(0.75)) <= 1e-12);
  CHECK(std::abs(doc["pairs"][0][1]["im"].get<double>() + std::sqrt(0.75)) <= 1e-12);

  res = run({"spectrum", "--potential", ws.file("x2.json", kHarmonic), "--n", "16", "--out",
             ws.path("h_s.json")});
  CHECK(res.code == cli::kOk);
  doc = nlohmann::json::parse(read_text_file(ws.path("h_s.json")));
  REQUIRE(doc["real_set"].size() == 16);
  for (int k = 0; k < 16; ++k) CHECK(std::abs(doc["real_set"][k].get<double>() - (2 * k + 1)) <= 1e-10);
}

TEST_CASE("outputs are deterministic") {
  Workspace ws;
  const auto pot = ws.file("p.json", R"({"terms":[{"power":2,"re":1,"im":0},{"power":3,"re":0,"im":0.5}]})");
  REQUIRE(run({"spectrum", "--potential", pot, "--n", "24", "--out", ws.path("a.json")}).code == 0);
  REQUIRE(run({"spectrum", "--potential", pot, "--n", "24", "--out", ws.path("b.json")}).code == 0);
  CHECK(read_text_file(ws.path("a.json")) == read_text_file(ws.path("b.json")));
  REQUIRE(run({"sweep", "--potential", pot, "--n-list", "8,16", "--m-track", "2", "--out", ws.path("a.csv")}).code == 0);
  REQUIRE(run({"sweep", "--potential", pot, "--n-list", "8,16", "--m-track", "2", "--out", ws.path("b.csv")}).code == 0);
  CHECK(read_text_file(ws.path("a.csv")) == read_text_file(ws.path("b.csv")));
}

TEST_CASE("sweep command") {
  Workspace ws;
  auto res = run({"sweep", "--potential", ws.file("ix3.json", kCubic), "--n-list", "16,48,64",
                  "--m-track", "1", "--out", ws.path("s.csv")});
  CHECK(res.code == cli::kOk);
  std::istringstream csv(read_text_file(ws.path("s.csv")));
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(csv, line)) lines.push_back(line);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "N,level,re,im,cauchy_diff");
  CHECK(std::stod(lines[3].substr(lines[3].rfind(',') + 1)) <= 1e-8);

  res = run({"sweep", "--potential", ws.file("x2.json", kHarmonic), "--n-list", "4,9,20", "--m-track", "3"});
  CHECK(res.code == cli::kOk);
  std::istringstream rows(res.out);
  std::getline(rows, line);
  int count = 0;
  while (std::getline(rows, line)) {
    CHECK(line.substr(line.rfind(',') + 1) == "0");
    ++count;
  }
  CHECK(count == 9);

  CHECK(run({"sweep", "--potential", ws.path("x2.json"), "--n-list", "32,16"}).code == cli::kUsage);
  CHECK(run({"sweep", "--potential", ws.path("x2.json"), "--n-list", "8,x"}).code == cli::kUsage);
}

TEST_CASE("verify command") {
  auto res = run({"verify", "--group", "projectors"});
  CHECK(res.code == cli::kOk);
  CHECK(res.out.find("[PASS] projectors: Q+ + Q- = 1") != std::string::npos);
  CHECK(res.out.find("involution") == std::string::npos);

  CHECK(run({"verify", "--group", "nonsense"}).code == cli::kUsage);

  res = run({"verify"});
  CHECK(res.code == cli::kOk);
  CHECK(res.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("verify catches a broken phase unitary") {
  VerifyHooks broken;
  broken.phase_unitary = [](int n) {
    auto u = phase_unitary(n);
    // Odd phases squared by mistake: i*i = -1 instead of i.
    for (std::size_t k = 1; k < u.diagonal.size(); k += 2) u.diagonal[k] *= cplx(0.0, 1.0);
    return u;
  };
  const auto res = run({"verify"}, broken);
  CHECK(res.code == cli::kVerifyFailed);
  CHECK(res.err.find("verify failed: U²=P") != std::string::npos);
}
