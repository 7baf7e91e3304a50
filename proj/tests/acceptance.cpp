// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "idealkit/cli.hpp"
#include "idealkit/idealkit.hpp"
#include "oracles.hpp"

using namespace idealkit;
using oracle::seq;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failed check; later checks still run so the detail is accurate.
struct Checker {
  Outcome out;
  void require(bool ok, const std::string& what) {
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = "failed: " + what;
    }
  }
};

IdealExpr principal(const std::string& d) { return IdealExpr::principal(seq(d)); }

Rational power_bracket(std::uint64_t p, std::uint64_t q, std::uint64_t n) {
  return oracle::power_seq(q, n) * oracle::power_seq(p, n + 1) - oracle::power_seq(p, n) * oracle::power_seq(q, n + 1);
}

Outcome softness_dichotomy() {
  Checker c;
  double worst = 0;
  for (auto [ideal, status] : {std::pair<const char*, const char*>{"exp:1/2", "Holds"}, {"pow:1", "Fails"}}) {
    auto t0 = std::chrono::steady_clock::now();
    CliResult r = run({"ideal", "soft", ideal, "--json"});
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, secs);
    c.require(r.code == 0, std::string("exit code for ") + ideal);
    Json j = Json::parse(r.out);
    c.require(j["verdict"]["status"] == status, std::string("status for ") + ideal);
    c.require(j["verdict"]["method"] == "SymbolicProven", std::string("method for ") + ideal);
    c.require(secs < 1.0, std::string("runtime for ") + ideal);
  }
  if (c.out.pass) c.out.detail = "exp:1/2 SOFT, pow:1 NOT SOFT, both symbolic; slowest " + std::to_string(worst) + " s";
  return c.out;
}

Outcome ampliation_ratio() {
  Checker c;
  std::ostringstream os;
  for (std::uint64_t m : {2, 3, 5}) {
    Verdict v = numeric_probe(seq("pow:1"), ampliate(m, seq("pow:1")), Mode::BigO, {std::uint64_t{1} << 20, 1e-3});
    double r = v.numeric ? v.numeric->final_ratio : -1;
    double target = 1.0 / static_cast<double>(m);
    c.require(std::fabs(r - target) <= 0.01 * target, "ratio for m = " + std::to_string(m));
    os << "m=" << m << ": " << std::setprecision(6) << r << " ";
  }
  if (c.out.pass) c.out.detail = os.str() + "(targets 1/m, n_max 2^20)";
  return c.out;
}

Outcome delta2() {
  Checker c;
  for (std::uint64_t p : {1, 2, 3}) {
    Verdict v = delta2_check(seq("pow:" + std::to_string(p)));
    c.require(v.holds() && v.proven(), "Delta2 for pow:" + std::to_string(p));
    c.require(v.limit && v.limit->str() == oracle::pow_int(2, p).get_str(), "limit 2^p for p = " + std::to_string(p));
  }
  for (const char* r : {"exp:1/2", "exp:9/10"}) c.require(delta2_check(seq(r)).fails(), std::string("Delta2 fails for ") + r);
  if (c.out.pass) c.out.detail = "pow:p holds with limits 2, 4, 8 exactly; exp:1/2, exp:9/10 fail";
  return c.out;
}

Outcome implication_audit() {
  Checker c;
  auto battery = oracle::battery();
  c.require(battery.size() >= 20, "battery size");
  std::size_t violations = 0;
  for (const auto& d : battery) {
    try {
      ImplicationReport r = implication_report(seq(d));
      if (!(r.delta2_excludes_soft && r.idempotent_implies_soft && r.soft_implies_necessary)) ++violations;
    } catch (const InternalInconsistency& e) {
      c.require(false, "internal inconsistency on " + d + ": " + e.what());
    }
  }
  c.require(violations == 0, std::to_string(violations) + " violations");
  if (c.out.pass) c.out.detail = std::to_string(battery.size()) + " sequences, 0 violations";
  return c.out;
}

Outcome idempotency() {
  Checker c;
  Verdict a = is_idempotent(principal("exp:1/2"));
  c.require(a.holds() && a.index, "exp:1/2 idempotent");
  if (a.index) {
    Verdict n = numeric_probe(seq("exp:1/2"), ampliate(*a.index, seq("exp:1/4")), Mode::BigO);
    c.require(n.holds() && n.numeric->sup_ratio < 10, "bounded ratio for exp:1/2");
  }
  Verdict b = is_idempotent(principal("pow:1"));
  c.require(b.fails(), "pow:1 not idempotent");
  double min_growth = 1e300;
  for (std::uint64_t m = 1; m <= 8; ++m) {
    SequenceExpr dm = ampliate(m, seq("pow:2"));
    Verdict n = numeric_probe(seq("pow:1"), dm, Mode::BigO);
    double first = eval(seq("pow:1"), 1).approx() / eval(dm, 1).approx();
    double growth = n.numeric->final_ratio / first;
    min_growth = std::min(min_growth, growth);
    c.require(n.fails() && growth >= 100, "unbounded ratio for pow:1 at m = " + std::to_string(m));
  }
  if (c.out.pass) {
    std::ostringstream os;
    os << "exp:1/2 holds (m=" << *a.index << ", bounded); pow:1 fails, smallest growth over m<=8 is " << std::setprecision(4)
       << min_growth;
    c.out.detail = os.str();
  }
  return c.out;
}

Outcome symplectic() {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  const std::size_t dims[] = {3, 10, 21};
  for (std::size_t n = 1; n <= 3; ++n) {
    auto L = sp_standard(n);
    c.require(L.dim() == dims[n - 1], "dim of sp(" + std::to_string(2 * n) + ")");
    SimplicityResult r = is_simple(L);
    c.require(r.verdict == Simplicity::Simple, "sp(" + std::to_string(2 * n) + ") simple");
    c.require(r.killing_rank && *r.killing_rank == L.dim(), "Killing nondegenerate");
    c.require(r.commutant_dim && *r.commutant_dim == 1, "commutant dim 1");
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs < 30, "runtime");
  if (c.out.pass) c.out.detail = "dims 3, 10, 21 simple, Killing nondegenerate, commutant 1; " + std::to_string(secs) + " s";
  return c.out;
}

Outcome literal_audit() {
  Checker c;
  auto L = sp_paper_literal(2);
  ClosureResult r = closure_check(L);
  c.require(!r.closed, "literal constraints reported closed");
  if (!r.closed) {
    RationalMatrix br = bracket(L.basis()[r.i], L.basis()[r.j]);
    c.require(!r.residual.is_zero(), "residual is zero");
    c.require(!L.coordinates(br).has_value(), "bracket lies in the span");
    // Independent check against the block constraints B = B^T, C = -C^T, D = -A^T.
    bool violates = false;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        if (br(i, 2 + j) != br(j, 2 + i)) violates = true;
        if (br(2 + i, j) != -br(2 + j, i)) violates = true;
        if (br(2 + i, 2 + j) != -br(j, i)) violates = true;
      }
    c.require(violates, "bracket satisfies the literal constraints");
  }
  c.require(closure_check(sp_standard(2)).closed, "standard sp(4) closed");
  if (c.out.pass)
    c.out.detail = "[b" + std::to_string(r.i) + ", b" + std::to_string(r.j) + "] leaves the span; sp(4) closed";
  return c.out;
}

Outcome triangular() {
  Checker c;
  auto L = upper_triangular_sl(4);
  SimplicityResult r = is_simple(L);
  c.require(r.verdict == Simplicity::NotSimple, "verdict");
  c.require(r.witness.has_value(), "witness present");
  if (r.witness) {
    auto strict = strictly_upper(4);
    Subspace expected = subspace_from_matrices(L, strict.basis());
    c.require(*r.witness == expected, "witness equals strictly upper triangular");
    c.require(r.witness->dim() == 6, "witness dim 6");
    c.require(is_lie_ideal(L, *r.witness).ideal, "witness is a Lie ideal");
  }
  if (c.out.pass) c.out.detail = "witness = strictly upper triangular 4x4, dim 6, ideal verified";
  return c.out;
}

Outcome sanity() {
  Checker c;
  c.require(is_simple(sl(2)).verdict == Simplicity::Simple, "sl(2)");
  c.require(is_simple(sl(3)).verdict == Simplicity::Simple, "sl(3)");
  auto L = direct_sum(sl(2), sl(2));
  SimplicityResult r = is_simple(L);
  c.require(r.verdict == Simplicity::NotSimple, "sl2+sl2 verdict");
  c.require(r.witness && r.witness->dim() > 0 && r.witness->dim() < L.dim() && is_lie_ideal(L, *r.witness).ideal,
            "sl2+sl2 witness");
  if (c.out.pass) c.out.detail = "sl(2), sl(3) simple; sl2+sl2 split with a dim " + std::to_string(r.witness->dim()) + " ideal";
  return c.out;
}

Outcome certificate() {
  Checker c;
  Certificate cert = build_certificate({seq("pow:1"), 64}, {{seq("pow:2"), 64}});
  c.require(cert.commutator_exact && cert.commutator_value == "1/4", "first weight 1/4");
  Verdict v = verify_certificate(cert);
  c.require(v.holds(), "verify: " + v.reason);
  c.require(cert.evidence_present && cert.a_band.size() == 62, "truncation band size");
  for (std::size_t i = 0; i < cert.a_band.size(); ++i)
    c.require(cert.a_band[i] == power_bracket(1, 2, i + 1).get_str(), "band entry " + std::to_string(i + 1));
  Certificate back = certificate_from_json(Json::parse(to_json(cert).dump()));
  c.require(verify_certificate(back).holds(), "verify after JSON round trip");
  bool refused = false;
  try {
    build_certificate({seq("exp:1/2"), 64}, {{seq("pow:1"), 64}});
  } catch (const DomainError&) {
    refused = true;
  }
  c.require(refused, "exp:1/2 refused");
  if (c.out.pass) c.out.detail = "a_1 = 1/4 exact, verified, 62 band entries match at N = 64, exp:1/2 refused";
  return c.out;
}

Outcome characteristic_sets() {
  Checker c;
  auto battery = oracle::battery();
  std::size_t cases = 0, failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    ++cases;
    if (!ok) {
      ++failures;
      c.require(false, what);
    }
  };
  for (const auto& d : battery) {
    for (std::uint64_t m = 1; m <= 8; ++m)
      check(member(ampliate(m, seq(d)), principal(d)).holds(), "ampliation " + std::to_string(m) + " of " + d);
    for (const char* s : {"1/3", "2", "7"}) {
      SequenceExpr scaled = SequenceExpr::scaled(parse_rational(s), seq(d));
      check(member(scaled, principal(d)).holds(), "scale " + std::string(s) + " of " + d);
      check(member(seq(d), IdealExpr::principal(scaled)).holds(), d + " in scaled ideal");
    }
  }
  for (const auto& z : battery)
    for (const auto& x : battery) {
      bool dominated = compare(seq(z), seq(x), Mode::BigO).holds();
      Verdict mem = member(seq(z), principal(x));
      check(!dominated || mem.holds(), "hereditary " + z + " in (" + x + ")");
      // A membership witness m certifies z = O(D_m x) independently.
      if (mem.holds() && mem.index)
        check(compare(seq(z), ampliate(*mem.index, seq(x)), Mode::BigO).holds(), "witness for " + z + " in (" + x + ")");
    }
  c.require(cases >= 500, "fewer than 500 cases");
  if (c.out.pass) c.out.detail = std::to_string(cases) + " cases, " + std::to_string(failures) + " failures";
  return c.out;
}

Outcome determinism() {
  Checker c;
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "idealkit-acceptance";
  fs::create_directories(dir);
  std::string batch = (dir / "suite.txt").string();
  std::ofstream(batch) << "seq signature prod(powlog:1,1,pow:1)\n"
                          "seq compare pow:1 amp:3;pow:1 --numeric\n"
                          "seq delta2 pow:2\n"
                          "ideal soft exp:1/2\n"
                          "ideal soft pow:1\n"
                          "ideal member exp:9/10 exp:1/2\n"
                          "ideal idempotent pow:1 --numeric\n"
                          "ideal report exp:9/10\n"
                          "lie check-closure sp-literal --n 2\n"
                          "lie derived upper-sl --n 4\n"
                          "lie ideal-gen sl --n 2 --basis-element 0\n"
                          "lie killing sp --n 2\n"
                          "lie simple sp --n 3\n"
                          "lie simple upper-sl --n 4\n"
                          "witness build --weights pow:1 --pool pow:2 --trunc 64\n";
  CliResult a = run({"batch", "--file", batch, "--json", "--seed", "7", "--jobs", "1"});
  CliResult b = run({"batch", "--file", batch, "--json", "--seed", "7", "--jobs", "4"});
  CliResult d = run({"batch", "--file", batch, "--json", "--seed", "7"});
  c.require(a.code == 0, "batch exit code " + std::to_string(a.code) + ": " + a.err);
  c.require(a.out == b.out && a.out == d.out, "JSON differs between runs");
  c.require(Json::accept(a.out), "output is not JSON");
  if (c.out.pass) c.out.detail = "3 runs of a 15-command suite, " + std::to_string(a.out.size()) + " bytes each, identical";
  return c.out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"softness dichotomy", softness_dichotomy},
      {"ampliation ratio", ampliation_ratio},
      {"Delta2", delta2},
      {"implication audit", implication_audit},
      {"idempotency", idempotency},
      {"symplectic simplicity", symplectic},
      {"literal constraint audit", literal_audit},
      {"triangular counterexample", triangular},
      {"sl sanity oracle", sanity},
      {"shift certificate", certificate},
      {"characteristic-set properties", characteristic_sets},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << std::setw(2) << i + 1 << "] " << criteria[i].first << " ("
              << std::fixed << std::setprecision(3) << secs << " s): " << o.detail << "\n";
    std::cout.unsetf(std::ios::fixed);
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
