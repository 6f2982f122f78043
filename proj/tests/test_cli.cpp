#include "catch_amalgamated.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "clifford_mellin/config.hpp"
#include "clifford_mellin/imaging.hpp"
#include "clifford_mellin/verify.hpp"
#include "support/corpus.hpp"

namespace cm = clifford_mellin;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

/// Runs the CLI with stdout captured to a file and stderr discarded.
Run run(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "cm_cli_stdout.txt";
  const std::string cmd =
      std::string("\"") + CLIFFORD_MELLIN_CLI + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cm_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("usage errors exit 1", "[cli]") {
  CHECK(run("").code == 1);
  CHECK(run("no-such-command").code == 1);
  CHECK(run("manifold --algebra 'Cl(3,0)'").code == 1);
  CHECK(run("split --x 1,2,3").code == 1);
  CHECK(run("manifold --resolution 1").code != 0);
  CHECK(run("--help").code == 0);
}

TEST_CASE("missing and malformed inputs exit 2", "[cli]") {
  CHECK(run("transform /nonexistent/input.clms").code == 2);
  const auto bad = scratch("bad.clms");
  std::ofstream(bad) << "CLMS v1\nalgebra=Cl(9,9)\n";
  CHECK(run("transform " + q(bad)).code == 2);
  const auto cfg = scratch("bad.json");
  std::ofstream(cfg) << "{ not json";
  CHECK(run("verify --config " + q(cfg)).code == 2);
}

TEST_CASE("library contract errors exit 3", "[cli]") {
  cm::Rng rng(71);
  const auto sig = cm::Signature::cl20();
  const auto h = cm::random_signal({16, 16, -1.0, 1.0}, sig, rng);
  const auto a = scratch("c1.clms");
  cm::write_signal(a, h);
  // A random Cl(2,0) root pair is not blade-like, so correlation is refused.
  const auto roots = cm::random_roots(sig, 2, 3);
  const auto f = roots[0].value();
  const auto g = roots[1].value();
  auto text = [](const cm::Multivector& m) {
    std::ostringstream s;
    s.precision(17);
    s << m[0] << "," << m[1] << "," << m[2] << "," << m[3];
    return s.str();
  };
  CHECK(run("register " + q(a) + " " + q(a) + " --algebra 'Cl(2,0)' --f " + text(f) + " --g " + text(g))
            .code == 3);
}

TEST_CASE("echo-config prints the resolved configuration", "[cli]") {
  const auto r = run("manifold --algebra 'Cl(1,1)' --resolution 3 --seed 9 --echo-config");
  REQUIRE(r.code == 0);
  const auto c = cm::parse_config(r.out);
  CHECK(c.command == "manifold");
  CHECK(c.algebra == "Cl(1,1)");
  CHECK(c.seed == 9);
  CHECK(c.options.at("resolution") == 3);
  // The echoed config reproduces itself.
  const auto path = scratch("echo.json");
  std::ofstream(path) << r.out;
  CHECK(run("manifold --config " + q(path) + " --echo-config").out == r.out);
}

TEST_CASE("manifold export", "[cli]") {
  const auto r = run("manifold --algebra 'Cl(2,0)' --resolution 2");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) ++n;
  CHECK(n == 5);  // header and four points
}

TEST_CASE("transform and invert round trip", "[cli]") {
  cm::Rng rng(72);
  const auto h = cm::random_signal({32, 16, -2.0, 1.0}, cm::Signature::cl02(), rng);
  const auto in = scratch("rt.clms");
  const auto spec = scratch("rt.clmf");
  const auto back = scratch("rt_back.clms");
  cm::write_signal(in, h);
  const auto t = run("transform " + q(in) + " --out " + q(spec));
  REQUIRE(t.code == 0);
  const auto s = cm::read_spectrum(spec);
  CHECK(cm::max_abs_diff(s, cm::cfmt_fast(h, cm::RootPair::quaternion_default())) == 0.0);
  const auto i = run("invert " + q(spec) + " --out " + q(back) + " --reference " + q(in));
  REQUIRE(i.code == 0);
  CHECK(cm::max_abs_diff(cm::read_signal(back), h) <= 1e-10);
  CHECK(run("invert " + q(spec)).code == 1);
}

TEST_CASE("split prints both parts", "[cli]") {
  const auto r = run("split --x 1,0,0,0");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("blade_like") == true);
  CHECK(j.at("eigen_residual").get<double>() <= 1e-15);
}

TEST_CASE("image registration through the CLI", "[cli]") {
  const auto a = scratch("shape.pgm");
  const auto b = scratch("shape_rot.pgm");
  const auto c = scratch("other.pgm");
  const auto raster = corpus::make_shape(11);
  cm::write_pnm(a, raster);
  const double angle = std::numbers::pi / 8;
  cm::write_pnm(b, cm::rotate_scale_image(raster, {63.5, 63.5}, angle, 1.0));
  cm::write_pnm(c, corpus::make_shape(12));

  const auto self = run("register " + q(a) + " " + q(a));
  REQUIRE(self.code == 0);
  const auto js = nlohmann::json::parse(self.out);
  CHECK(js.at("scale").get<double>() == 1.0);
  CHECK(js.at("angle_rad").get<double>() == 0.0);
  CHECK(js.at("matched") == true);

  const auto rot = run("register " + q(a) + " " + q(b));
  REQUIRE(rot.code == 0);
  const auto jr = nlohmann::json::parse(rot.out);
  const double dtheta = 2 * std::numbers::pi / 64;
  CHECK(std::abs(jr.at("angle_rad").get<double>() - angle) <= dtheta);

  CHECK(run("register " + q(a) + " " + q(c)).code == 4);
}

TEST_CASE("verify exits 0 and honours --pair-degenerate", "[cli]") {
  const auto r = run("verify --ns 16 --ntheta 16 --seed 3");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.is_object());
  const auto d = run("verify --ns 16 --ntheta 16 --pair-degenerate");
  CHECK(d.code == 0);
  CHECK(d.out.find("skipped (g=") != std::string::npos);
  CHECK(run("verify --ns 16 --ntheta 16 --seed 3").out == r.out);
}

TEST_CASE("invert against a wrong reference exits 5", "[cli]") {
  cm::Rng rng(73);
  const cm::GridGeometry geo{16, 16, -1.0, 1.0};
  const auto sig = cm::Signature::cl02();
  const auto h = cm::random_signal(geo, sig, rng);
  const auto spec = scratch("ref.clmf");
  const auto other = scratch("ref_other.clms");
  const auto back = scratch("ref_back.clms");
  cm::write_spectrum(spec, cm::cfmt_fast(h, cm::RootPair::quaternion_default()));
  cm::write_signal(other, cm::random_signal(geo, sig, rng));
  CHECK(run("invert " + q(spec) + " --out " + q(back) + " --reference " + q(other)).code == 5);
}
