#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "nlslab/config.hpp"
#include "nlslab/error.hpp"
#include "nlslab/experiment.hpp"
#include "nlslab/initial_data.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/rng.hpp"

using namespace nlslab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("nlslab_unit_" + name);
  fs::remove_all(dir);
  return dir;
}

constexpr const char* kSmokeConfig = R"(# small conservation run
experiment = conservation
name = smoke
grid.L = 40
grid.n = 256
solver.k = 3
solver.dt = 1e-3
solver.T = 0.1
solver.diag_stride = 0.02
data.family = gaussian
data.width = 1
)";

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("Philox known answers") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32(Philox4x32::Key{0, 0})(C{0, 0, 0, 0}) ==
        C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32(Philox4x32::Key{0xffffffff, 0xffffffff})(
            C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32(Philox4x32::Key{0xa4093822, 0x299f31d0})(
            C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("random streams") {
  CHECK(complex_normal(7, 0, 3) == complex_normal(7, 0, 3));
  CHECK(complex_normal(7, 0, 3) != complex_normal(8, 0, 3));
  CHECK(complex_normal(7, 0, 3) != complex_normal(7, 1, 3));
  CHECK(complex_normal(7, 0, -3) != complex_normal(7, 0, 3));

  PhiloxEngine eng(42);
  double sum = 0.0, sum2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = eng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(sum2 / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12.0).epsilon(0.03));
}

TEST_CASE("initial data families") {
  const Grid1D g(40.0, 1024);
  InitialDataSpec spec;
  spec.width = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_difference(generate_initial_data(spec, g), test::gaussian(g)) < 1e-15);

  spec.family = DataFamily::boosted_gaussian;
  spec.velocity = 2.0;
  CHECK(max_abs_difference(generate_initial_data(spec, g), test::gaussian(g, 1.0, 0.0, 2.0)) < 1e-14);

  spec.family = DataFamily::boosted_pair;
  spec.separation = 6.0;
  const auto pair = generate_initial_data(spec, g);
  CHECK(max_abs_difference(pair, test::boosted_pair(g, 2.0, 6.0)) < 1e-14);

  CHECK(parse_family("random_band") == DataFamily::random_band);
  CHECK(to_string(DataFamily::boosted_pair) == "boosted_pair");
  CHECK_THROWS_AS((void)parse_family("soliton"), ConfigError);
}

TEST_CASE("random band data") {
  const Grid1D g(40.0, 1024);
  InitialDataSpec spec;
  spec.family = DataFamily::random_band;
  spec.k_hi = 6.0;
  spec.norm = 2.0;
  spec.s = 0.5;
  spec.envelope = 1.5;
  spec.seed = 11;
  const auto a = generate_initial_data(spec, g);
  const auto b = generate_initial_data(spec, g);
  CHECK(max_abs_difference(a, b) == 0.0);
  CHECK(sobolev_norm(a, 0.5, Homogeneity::inhomogeneous) == doctest::Approx(2.0).epsilon(1e-10));
  spec.seed = 12;
  CHECK(max_abs_difference(a, generate_initial_data(spec, g)) > 1e-3);

  spec.k_hi = 1000.0;
  CHECK_THROWS_AS((void)generate_initial_data(spec, g), ConfigError);
}

TEST_CASE("boundary violation") {
  InitialDataSpec spec;
  spec.width = 6.0;
  try {
    (void)generate_initial_data(spec, Grid1D(40.0, 512));
    FAIL("expected a boundary error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("grid.L") != std::string::npos);
  }
  spec.width = 0.0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("config parsing") {
  const auto c = Config::parse("# header\nb.x = 2.5  # trailing\n\na = hello\nlist = 1, 2, inf\nflag = true\n");
  CHECK(c.get_string("a") == "hello");
  CHECK(c.get_double("b.x") == 2.5);
  CHECK(c.get_bool("flag", false));
  const auto v = c.get_doubles("list", {});
  REQUIRE(v.size() == 3);
  CHECK(std::isinf(v[2]));
  CHECK(c.get_int("missing", 7) == 7);
  CHECK(c.canonical() == "a = hello\nb.x = 2.5\nflag = true\nlist = 1, 2, inf\n");
  CHECK(Config::parse(c.canonical()).canonical() == c.canonical());
  CHECK(Config::parse(c.canonical()).hash() == c.hash());
  CHECK(c.hash().size() == 16);
  CHECK(Config::parse("a = hello2").hash() != Config::parse("a = hello").hash());

  CHECK_THROWS_AS((void)Config::parse("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS((void)Config::parse("a =\n"), ConfigError);
  CHECK_THROWS_AS((void)Config::parse("no equals sign\n"), ConfigError);
  CHECK_THROWS_AS((void)Config::parse("bad..key = 1\n"), ConfigError);
  CHECK_THROWS_AS((void)c.get_double("a"), ConfigError);
  CHECK_THROWS_AS((void)c.get_string("absent"), ConfigError);
  try {
    (void)Config::parse("a = 1\n\nb c = 2\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("experiment validation") {
  const auto good = parse_experiment(Config::parse(kSmokeConfig), std::nullopt, "fallback");
  CHECK(good.name == "smoke");
  CHECK(good.kind == ExperimentKind::conservation);

  auto extra = Config::parse(kSmokeConfig);
  extra.set("solver.typo", "1");
  CHECK_THROWS_AS((void)parse_experiment(extra, std::nullopt, "x"), ConfigError);

  auto foreign = Config::parse(kSmokeConfig);
  foreign.set("morawetz.n_sub", "32");
  CHECK_THROWS_AS((void)parse_experiment(foreign, std::nullopt, "x"), ConfigError);

  auto big = Config::parse(kSmokeConfig);
  big.set("experiment", "morawetz");
  big.set("morawetz.n_sub", "1024");
  CHECK_THROWS_AS((void)parse_experiment(big, std::nullopt, "x"), ConfigError);

  // The seed override is part of the identity of a run.
  const auto s1 = parse_experiment(Config::parse(kSmokeConfig), 1u, "x");
  const auto s2 = parse_experiment(Config::parse(kSmokeConfig), 2u, "x");
  CHECK(s1.hash != s2.hash);
  CHECK_THROWS_AS((void)parse_experiment_kind("nonsense"), ConfigError);
}

TEST_CASE("experiment run is reproducible") {
  const auto cfg = parse_experiment(Config::parse(kSmokeConfig), std::nullopt, "x");
  const auto d1 = scratch("a"), d2 = scratch("b");
  const auto r1 = run_experiment(cfg, d1);
  const auto r2 = run_experiment(cfg, d2);
  CHECK(r1.passed());
  CHECK(r1.hash == cfg.hash);
  const auto csv = slurp(d1 / "trajectory.csv");
  CHECK(csv.substr(0, csv.find('\n')) == kDiagnosticsCsvHeader);
  CHECK(fs::exists(d1 / "summary.json"));
  CHECK(fs::exists(d1 / "manifest.json"));
  CHECK(slurp(d1 / "manifest.json").find(cfg.hash) != std::string::npos);
  for (const auto& e : fs::directory_iterator(d1)) {
    const auto name = e.path().filename();
    if (name == "manifest.json") continue;
    CHECK_MESSAGE(slurp(e.path()) == slurp(d2 / name), name.string());
  }
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("matrix files") {
  const auto dir = scratch("matrix");
  fs::create_directories(dir / "sub");
  {
    std::ofstream(dir / "m.txt") << "# list\nsub/a.cfg\n\nb.cfg  \n";
  }
  const auto paths = read_matrix(dir / "m.txt");
  REQUIRE(paths.size() == 2);
  CHECK(paths[0] == dir / "sub/a.cfg");
  CHECK(paths[1] == dir / "b.cfg");
  fs::remove_all(dir);
}

}  // TEST_SUITE
