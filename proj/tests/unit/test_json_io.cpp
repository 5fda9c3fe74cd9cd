#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "lempertkit/ball.hpp"
#include "lempertkit/json_io.hpp"

using namespace lempert;
using io::json;

TEST_CASE("domain descriptors round trip") {
  for (const json& j : {json::parse(R"({"kind":"ball","n":3})"),
                        json::parse(R"({"kind":"perturbed-ball","n":2,"params":{"eps":0.1}})"),
                        json::parse(R"({"kind":"linear_ball","n":2,"params":{"A":[[2,0],[0,[0,1]]],"b":[0,[0.1,0]]}})")}) {
    const Domain d = io::domain_from_json(j);
    const Domain back = io::domain_from_json(io::to_json(d));
    CHECK(back.kind() == d.kind());
    CHECK(back.dim() == d.dim());
    CHECK(back.eps() == d.eps());
    CHECK((back.matrix_a() - d.matrix_a()).norm() == 0.0);
  }
  CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"kind":"torus","n":2})")), Error);
  CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"kind":"ball","n":1})")), Error);
  CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"kind":"ball"})")), Error);
}

TEST_CASE("geodesic pairs round trip exactly") {
  GeodesicPair g = ball_geodesic(unit_vector(2, 0), CVector(CVector::Ones(2).normalized()), 8, 32);
  g.residuals["boundary"] = 1.25e-16;
  g.t = 0.1;
  const GeodesicPair back = io::pair_from_json(json::parse(io::dump(io::to_json(g))));
  CHECK((back.phi.coeffs() - g.phi.coeffs()).norm() == 0.0);
  CHECK((back.dual.coeffs() - g.dual.coeffs()).norm() == 0.0);
  CHECK(back.mu == g.mu);
  CHECK(back.residuals == g.residuals);
  CHECK(back.t == g.t);
}

TEST_CASE("solver config validation") {
  const SolverConfig c = io::config_from_json(json::parse(R"({"degree":16,"grid":64})"));
  CHECK(c.degree == 16);
  CHECK(c.grid == 64);
  CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"degre":16})")), Error);
  CHECK_THROWS_AS(io::config_from_json(json::parse(R"({"degree":16,"grid":32})")), Error);
}

TEST_CASE("problem specs") {
  const auto b = io::problem_from_json(json::parse(R"({"type":"boundary","p":[1,0],"v":[1,0]})"));
  CHECK(b.type == "boundary");
  CHECK(std::holds_alternative<BoundaryProblem>(b.stationary));
  const auto t = io::problem_from_json(json::parse(R"({"type":"through","p":[1,0],"z":[0.2,0]})"));
  CHECK(t.type == "through");
  CHECK_THROWS_AS(io::problem_from_json(json::parse(R"({"type":"boundary","p":[1,0]})")), Error);
}

TEST_CASE("atomic writes replace the target") {
  const auto dir = std::filesystem::temp_directory_path() / "lempertkit_json_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "out.json").string();
  io::write_atomic(path, "first\n");
  io::write_atomic(path, "second\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "second");
  int leftovers = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) leftovers += e.path().filename() != "out.json";
  CHECK(leftovers == 0);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(io::read_file((dir / "missing.json").string()), Error);
}
