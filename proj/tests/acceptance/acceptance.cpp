// Acceptance gate: one PASS/FAIL line per criterion; nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "lempertkit/verify.hpp"

using namespace lempert;
using verify::CheckResult;

namespace {

struct Line {
  int id;
  bool pass;
  double seconds;
  std::string detail;
};

std::vector<Line> lines;

double now() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void report(int id, bool pass, double seconds, const std::string& detail) {
  lines.push_back({id, pass, seconds, detail});
  std::printf("criterion %2d: %s (%.1fs) %s\n", id, pass ? "PASS" : "FAIL", seconds, detail.c_str());
  std::fflush(stdout);
}

std::string summarize(const CheckResult& c) {
  std::string s = c.name + (c.pass ? " ok" : " FAILED") + " " + c.details.dump();
  if (!c.pass) s += " failures=" + c.failures.dump();
  return s;
}

bool all_pass(const std::vector<CheckResult>& cs) {
  for (const auto& c : cs) {
    if (!c.pass) return false;
  }
  return true;
}

std::string join(const std::vector<CheckResult>& cs) {
  std::string s;
  for (const auto& c : cs) s += (s.empty() ? "" : " | ") + summarize(c);
  return s;
}

}  // namespace

int main() {
  const std::uint64_t seed = 1;
  const Domain ball = Domain::ball(2);
  const CVector e1 = unit_vector(2, 0);
  const Domain pb = Domain::perturbed_ball(2, 0.1);
  const CVector ppb = verify::default_base_point(pb);

  double t0 = now();
  {
    const std::vector<CheckResult> cs{verify::ball_identity(2, 100, seed), verify::ball_identity(3, 100, seed)};
    const double dt = now() - t0;
    report(1, all_pass(cs) && dt < 5.0, dt, join(cs));
  }

  verify::PairList pairs;
  t0 = now();
  const CheckResult c2 = verify::ball_boundary_solver(50, seed, &pairs);
  double dt = now() - t0;
  report(2, c2.pass && dt < 60.0, dt, summarize(c2));

  t0 = now();
  const CheckResult c3 = verify::linear_ball_oracle(20, seed + 1, &pairs);
  dt = now() - t0;
  report(3, c3.pass && dt < 60.0, dt, summarize(c3));

  t0 = now();
  const CheckResult c4 = verify::left_inverse_certificates(pairs, seed + 2);
  report(4, c4.pass, now() - t0, summarize(c4));

  t0 = now();
  {
    const std::vector<CheckResult> cs{verify::ma_degeneracy(ball, e1, 100, seed, {1e-8, 1e-10, 1e-2}),
                                      verify::ma_degeneracy(pb, ppb, 50, seed, {1e-6, 1e-4, 1e-2})};
    dt = now() - t0;
    report(5, all_pass(cs) && dt < 120.0, dt, join(cs));
  }

  t0 = now();
  {
    const std::vector<CheckResult> cs{verify::slice_identity(ball, e1, 20, seed, 1e-12, 16, 64),
                                      verify::slice_identity(pb, ppb, 20, seed, 1e-6, 8, 32)};
    report(6, all_pass(cs), now() - t0, join(cs));
  }

  t0 = now();
  {
    const std::vector<CheckResult> cs{verify::boundary_asymptotic_lines(ball, e1, 10, seed),
                                      verify::boundary_asymptotic_lines(pb, ppb, 10, seed)};
    report(7, all_pass(cs), now() - t0, join(cs));
  }

  t0 = now();
  {
    const std::vector<CheckResult> cs{verify::horosphere_probes(ball, e1, 10, 10, 10, seed),
                                      verify::horosphere_probes(pb, ppb, 10, 10, 10, seed)};
    report(8, all_pass(cs), now() - t0, join(cs));
  }

  t0 = now();
  const CheckResult c9 = verify::burns_krantz(100, seed);
  dt = now() - t0;
  report(9, c9.pass && dt < 30.0, dt, summarize(c9));

  t0 = now();
  {
    const std::vector<CheckResult> cs{verify::green_relation(ball, e1, 10, seed),
                                      verify::green_relation(pb, ppb, 10, seed)};
    report(10, all_pass(cs), now() - t0, join(cs));
  }

  t0 = now();
  {
    bool same = true;
    std::string detail;
    verify::SuiteOptions ball_opts;
    ball_opts.seed = 7;
    ball_opts.domain = ball;
    for (const std::string& suite : {"rigidity", "geodesics", "rep", "ma"}) {
      const std::string a = verify::run_suite(suite, ball_opts).dump();
      const std::string b = verify::run_suite(suite, ball_opts).dump();
      same = same && a == b;
      detail += suite + (a == b ? " identical; " : " DIFFERS; ");
    }
    // worker count must not change the report
    verify::SuiteOptions two = ball_opts;
    two.jobs = 2;
    const bool jobs_same = verify::run_suite("rigidity", ball_opts).dump() == verify::run_suite("rigidity", two).dump();
    detail += jobs_same ? "rigidity jobs=1 vs 2 identical" : "rigidity jobs=1 vs 2 DIFFERS";
    report(11, same && jobs_same, now() - t0, detail);
  }

  int failed = 0;
  for (const auto& l : lines) failed += !l.pass;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(lines.size()) - failed, lines.size());
  return failed == 0 ? 0 : 1;
}
