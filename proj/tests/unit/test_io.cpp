#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "common.hpp"
#include "pointfw/io.hpp"

using namespace pointfw;
using testing::error_of;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "pointfw_test_io";
  fs::create_directories(dir);
  return dir / name;
}

io::ModelFile sample_model() {
  io::ModelFile f;
  f.dim = 3;
  f.preprocessing.caps = {1.5, 2.0, 0.25};
  f.preprocessing.scales = {1.5, 2.0, 0.25};
  f.preprocessing.degenerate = {false, false, false};
  AdditiveModel m(-0.123456789012345678, 8.0, WeightScheme::EmpiricalL2);
  m.add(atoms::Intercept{}, 0.1, 1.0);
  m.add(atoms::Linear{2}, -1.0 / 3.0, 0.7);
  m.add(atoms::Monomial{1, 3}, 0.2, 0.4);
  m.add(atoms::Trig{0, atoms::TrigKind::Cos, 2}, 0.05, 1.0);
  m.add(atoms::Sigmoid{0, 1, 1.0, -1.0, 0.3, -0.7}, 0.01, 1.0);
  m.add(atoms::Bernstein{2, {0.0, 0.25, 1.0}}, 0.02, 1.0);
  m.add(atoms::HawkesFeature{1.7, 5.0}, 0.03, 1.0);
  f.fitted = {m, HawkesParams{2.1, 1.25}};
  return f;
}

}  // namespace

TEST_CASE("CSV round trip is exact") {
  Rng rng(1);
  const auto tl = testing::random_timeline(rng, 3, 10, 15, 5.0);
  io::write_events_csv(scratch("events.csv"), tl.jump_times());
  io::write_covariates_csv(scratch("cov.csv"), tl);
  const auto back = io::load_timeline(scratch("events.csv"), scratch("cov.csv"), tl.horizon());
  REQUIRE(back.num_jumps() == tl.num_jumps());
  for (std::size_t i = 0; i < tl.num_jumps(); ++i) CHECK(back.jump_times()[i] == tl.jump_times()[i]);
  for (std::size_t i = 0; i < tl.num_updates(); ++i) {
    CHECK(back.update_times()[i] == tl.update_times()[i]);
    for (std::size_t k = 0; k < 3; ++k) CHECK(back.update_values(i)[k] == tl.update_values(i)[k]);
  }
}

TEST_CASE("default horizon is the later of the last jump and last update") {
  io::write_file(scratch("e.csv"), "time\n0.5\n1.5\n");
  io::write_file(scratch("c.csv"), "time,x1\n0,1\n2.5,3\n");
  CHECK(io::load_timeline(scratch("e.csv"), scratch("c.csv")).horizon() == 2.5);
}

TEST_CASE("malformed CSV") {
  io::write_file(scratch("bad.csv"), "when\n1\n");
  CHECK(error_of([] { (void)io::read_events_csv(scratch("bad.csv")); }) == ErrorCode::ParseError);
  io::write_file(scratch("bad2.csv"), "time\n1x\n");
  CHECK(error_of([] { (void)io::read_events_csv(scratch("bad2.csv")); }) == ErrorCode::ParseError);
  io::write_file(scratch("bad3.csv"), "time,x1,x2\n0,1\n");
  CHECK(error_of([] { (void)io::read_covariates_csv(scratch("bad3.csv")); }) == ErrorCode::DimensionMismatch);
  CHECK(error_of([] { (void)io::read_file(scratch("missing.csv")); }) == ErrorCode::IoError);
}

TEST_CASE("model JSON round trip") {
  const auto f = sample_model();
  const auto text = io::model_to_json(f);
  const auto back = io::model_from_json(text);
  CHECK(back.dim == 3);
  CHECK(back.preprocessing.caps == f.preprocessing.caps);
  CHECK(back.fitted.model.offset() == f.fitted.model.offset());
  CHECK(back.fitted.model.budget() == 8.0);
  CHECK(back.fitted.model.weight_scheme() == WeightScheme::EmpiricalL2);
  REQUIRE(back.fitted.model.terms().size() == f.fitted.model.terms().size());
  for (std::size_t i = 0; i < back.fitted.model.terms().size(); ++i) {
    CHECK(back.fitted.model.terms()[i].atom == f.fitted.model.terms()[i].atom);
    CHECK(back.fitted.model.terms()[i].coef == f.fitted.model.terms()[i].coef);
    CHECK(back.fitted.model.terms()[i].weight == f.fitted.model.terms()[i].weight);
  }
  REQUIRE(back.fitted.hawkes.has_value());
  CHECK(back.fitted.hawkes->c == 2.1);
  CHECK(io::model_to_json(back) == text);
}

TEST_CASE("model JSON validation") {
  CHECK(error_of([] { (void)io::model_from_json("{not json"); }) == ErrorCode::ParseError);
  CHECK(error_of([] { (void)io::model_from_json("[]"); }) == ErrorCode::ParseError);
  auto text = io::model_to_json(sample_model());
  const auto pos = text.find("\"version\": 1");
  REQUIRE(pos != std::string::npos);
  auto v2 = text;
  v2.replace(pos, 12, "\"version\": 2");
  CHECK(error_of([&] { (void)io::model_from_json(v2); }) == ErrorCode::ParseError);
  CHECK(error_of([] { (void)io::atom_from_json("spline", "{}"); }) == ErrorCode::ParseError);
}

TEST_CASE("atom params round trip") {
  const Atom a = atoms::Sigmoid{1, 0, -1.0, 1.0, 0.25, 0.5};
  CHECK(io::atom_from_json(family_name(a), io::atom_params_json(a)) == a);
}

TEST_CASE("trace lines") {
  std::vector<TraceRecord> trace{{1, -10.0, 2.0, "x1", 0.5}, {2, -9.0, 1.0, "x2", 0.25}};
  std::istringstream in(io::trace_to_jsonl(trace));
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    CHECK(line.find("\"iter\"") != std::string::npos);
    CHECK(line.find("\"rho\"") != std::string::npos);
    ++n;
  }
  CHECK(n == 2);
}

TEST_CASE("manifest round trip") {
  io::Manifest m;
  m.design.K = 50;
  m.design.truth = Truth::Convex;
  m.design.profile = Profile::ManySmall;
  m.design.dynamics = Dynamics::Var1;
  m.design.hawkes = HawkesTruth{2.0, 1.3, true};
  m.design.gamma = -0.987654321;
  m.design.seed = 42;
  m.centering = {-0.987654321, 0.001, 200000, 7};
  const auto back = io::manifest_from_json(io::manifest_to_json(m));
  CHECK(back.design.K == 50);
  CHECK(back.design.truth == Truth::Convex);
  CHECK(back.design.dynamics == Dynamics::Var1);
  REQUIRE(back.design.hawkes.has_value());
  CHECK(back.design.hawkes->a0 == 1.3);
  CHECK(back.design.gamma == m.design.gamma);
  CHECK(back.centering.draws == 200000);
  CHECK(io::manifest_to_json(back) == io::manifest_to_json(m));
}
