#pragma once

// Command-line front end. run() is the whole program minus process I/O, so tests
// drive it directly. Exit codes: 0 analysis completed (whatever the verdict),
// 2 input error, 3 --strict with an Unknown or NumericIndicated verdict,
// 4 internal inconsistency.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "idealkit/idealcalc.hpp"
#include "idealkit/json_io.hpp"
#include "idealkit/matlie.hpp"
#include "idealkit/seq_dsl.hpp"
#include "idealkit/witness.hpp"

namespace idealkit {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitStrict = 3;
inline constexpr int kExitInternal = 4;
inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr std::size_t kCrossCheckTrials = 200;

struct Flags {
  std::string mode = "O";
  bool numeric = false;
  std::uint64_t nmax = std::uint64_t{1} << 20;
  double eps = 1e-3;
  std::uint64_t seed = kDefaultSeed;
  bool strict = false;
  bool json = false;
  std::string output;
};

struct Report {
  Json json;
  std::string text;
  bool uncertain = false;  // some verdict is Unknown or NumericIndicated
  bool raw = false;        // json is a file format (algebra, certificate), not a report
};

inline std::uint64_t default_nmax() {
  std::uint64_t n = std::uint64_t{1} << 20;
  if (const char* env = std::getenv("IDEALKIT_NMAX")) {
    try {
      std::size_t used = 0;
      n = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw InputError(std::string("IDEALKIT_NMAX is not an integer: '") + env + "'");
    }
  }
  return n;
}

inline Mode parse_mode(const std::string& m) {
  if (m == "O" || m == "BigO" || m == "big") return Mode::BigO;
  if (m == "o" || m == "LittleO" || m == "little") return Mode::LittleO;
  throw InputError("unknown --mode '" + m + "' (use O or o)");
}

inline const char* method_word(Method m) { return m == Method::SymbolicProven ? "symbolic" : "numeric"; }

inline std::string verdict_line(const std::string& yes, const std::string& no, const Verdict& v) {
  std::string word = v.holds() ? yes : v.fails() ? no : "UNKNOWN";
  return word + " (" + method_word(v.method) + "; " + v.reason + ")";
}

inline void note_verdict(Report& r, const Verdict& v) {
  if (v.status == Status::Unknown || v.method == Method::NumericIndicated) r.uncertain = true;
}

inline std::string numeric_line(const Verdict& v) {
  std::ostringstream os;
  os << "numeric probe: " << to_string(v.status) << " (" << v.reason;
  if (v.numeric) {
    os << "; n_max=" << v.numeric->n_max << ", eps=" << v.numeric->eps << ", final ratio=" << v.numeric->final_ratio
       << ", sup ratio=" << v.numeric->sup_ratio << ", " << v.numeric->trend;
    if (!v.numeric->note.empty()) os << "; " << v.numeric->note;
  }
  os << ")";
  return os.str();
}

inline ProbeOptions probe_options(const Flags& f) { return {f.nmax, f.eps}; }

inline Report base_report(const std::string& command, const std::vector<std::string>& argv) {
  Report r;
  r.json["schema_version"] = kReportSchemaVersion;
  r.json["command"] = command;
  r.json["argv"] = argv;
  return r;
}

inline void attach_numeric(Report& r, const Flags& f, const SequenceExpr& x, const SequenceExpr& y, Mode mode) {
  if (!f.numeric) return;
  Verdict n = numeric_probe(x, y, mode, probe_options(f));
  note_verdict(r, n);
  r.json["numeric"] = to_json(n);
  r.text += numeric_line(n) + "\n";
}

// ---------------------------------------------------------------------------
// seq

inline Report seq_signature(const std::vector<std::string>& argv, const std::string& text) {
  SequenceExpr x = parse_seq_dsl(text);
  Report r = base_report("seq signature", argv);
  AsymSig s = signature_of(x);
  r.json["input"] = {{"sequence", to_dsl(x)}};
  r.json["signature"] = s.str();
  r.text = "signature(" + to_dsl(x) + ") = " + s.str() + "\n";
  return r;
}

inline Report seq_compare(const std::vector<std::string>& argv, const Flags& f, const std::string& a,
                          const std::string& b) {
  SequenceExpr x = parse_seq_dsl(a), y = parse_seq_dsl(b);
  Mode mode = parse_mode(f.mode);
  Report r = base_report("seq compare", argv);
  Verdict v = compare(x, y, mode);
  note_verdict(r, v);
  r.json["input"] = {{"left", to_dsl(x)}, {"right", to_dsl(y)}, {"mode", to_string(mode)}};
  r.json["verdict"] = to_json(v);
  std::string rel = to_dsl(x) + (mode == Mode::BigO ? " = O(" : " = o(") + to_dsl(y) + ")";
  r.text = rel + ": " + verdict_line("HOLDS", "FAILS", v) + "\n";
  attach_numeric(r, f, x, y, mode);
  return r;
}

inline Report seq_delta2(const std::vector<std::string>& argv, const Flags& f, const std::string& text) {
  SequenceExpr x = parse_seq_dsl(text);
  Report r = base_report("seq delta2", argv);
  Verdict v = delta2_check(x);
  note_verdict(r, v);
  r.json["input"] = {{"sequence", to_dsl(x)}};
  r.json["verdict"] = to_json(v);
  r.text = "Delta2(" + to_dsl(x) + "): " + verdict_line("HOLDS", "FAILS", v) + "\n";
  attach_numeric(r, f, x, subsample(2, x), Mode::BigO);
  return r;
}

// ---------------------------------------------------------------------------
// ideal

inline std::string soft_text(const IdealExpr& I, const Verdict& v) {
  if (v.status == Status::Unknown) return verdict_line("SOFT", "NOT SOFT", v);
  if (I.kind() == IdealExpr::Kind::Principal && v.fails() && v.signatures.size() == 2 &&
      v.signatures[1].rate.is_one()) {
    const Rational& p = v.signatures[1].pow;
    std::string ratio = p == 1 ? "1/k" : sgn(p) == 0 ? "1" : "k^(-" + to_string(p) + ")";
    return std::string("NOT SOFT (") + method_word(v.method) + "; subsample ratio constant " + ratio + ")";
  }
  return verdict_line("SOFT", "NOT SOFT", v);
}

inline Report ideal_soft(const std::vector<std::string>& argv, const Flags& f, const std::string& text) {
  IdealExpr I = make_ideal(parse_ideal_dsl(text));
  Report r = base_report("ideal soft", argv);
  Verdict v = is_soft(I);
  note_verdict(r, v);
  r.json["input"] = {{"ideal", I.str()}};
  r.json["verdict"] = to_json(v);
  r.text = soft_text(I, v) + "\n";
  if (I.kind() == IdealExpr::Kind::Principal)
    attach_numeric(r, f, subsample(2, I.generator()), I.generator(), Mode::LittleO);
  return r;
}

inline Report ideal_member(const std::vector<std::string>& argv, const Flags& f, const std::string& seq,
                           const std::string& ideal) {
  SequenceExpr x = parse_seq_dsl(seq);
  IdealExpr I = make_ideal(parse_ideal_dsl(ideal));
  Report r = base_report("ideal member", argv);
  Verdict v = member(x, I);
  note_verdict(r, v);
  r.json["input"] = {{"sequence", to_dsl(x)}, {"ideal", I.str()}};
  r.json["verdict"] = to_json(v);
  r.text = to_dsl(x) + " in (" + I.str() + "): " + verdict_line("MEMBER", "NOT MEMBER", v) + "\n";
  if (I.kind() == IdealExpr::Kind::Principal)
    attach_numeric(r, f, x, ampliate(v.index.value_or(1), I.generator()), Mode::BigO);
  return r;
}

inline Report ideal_idempotent(const std::vector<std::string>& argv, const Flags& f, const std::string& text) {
  IdealExpr I = make_ideal(parse_ideal_dsl(text));
  Report r = base_report("ideal idempotent", argv);
  Verdict v = is_idempotent(I);
  note_verdict(r, v);
  r.json["input"] = {{"ideal", I.str()}};
  r.json["verdict"] = to_json(v);
  r.text = verdict_line("IDEMPOTENT", "NOT IDEMPOTENT", v) + "\n";
  if (I.kind() == IdealExpr::Kind::Principal) {
    const SequenceExpr& g = I.generator();
    attach_numeric(r, f, g, ampliate(v.index.value_or(1), SequenceExpr::product(g, g)), Mode::BigO);
  }
  return r;
}

inline Report ideal_report(const std::vector<std::string>& argv, const std::string& text) {
  SequenceExpr x = parse_seq_dsl(text);
  Report r = base_report("ideal report", argv);
  ImplicationReport rep = implication_report(x);
  for (const Verdict* v : {&rep.delta2, &rep.soft, &rep.idempotent, &rep.necessary}) note_verdict(r, *v);
  r.json["input"] = {{"sequence", to_dsl(x)}};
  r.json["delta2"] = to_json(rep.delta2);
  r.json["soft"] = to_json(rep.soft);
  r.json["idempotent"] = to_json(rep.idempotent);
  r.json["necessary"] = to_json(rep.necessary);
  r.json["implications"] = {{"delta2_excludes_soft", rep.delta2_excludes_soft},
                            {"idempotent_implies_soft", rep.idempotent_implies_soft},
                            {"soft_implies_necessary", rep.soft_implies_necessary}};
  std::ostringstream os;
  os << "implication report for (" << to_dsl(x) << ")\n"
     << "  Delta2:     " << verdict_line("HOLDS", "FAILS", rep.delta2) << "\n"
     << "  soft:       " << verdict_line("HOLDS", "FAILS", rep.soft) << "\n"
     << "  idempotent: " << verdict_line("HOLDS", "FAILS", rep.idempotent) << "\n"
     << "  necessary:  " << verdict_line("HOLDS", "FAILS", rep.necessary) << "\n"
     << "  implications: consistent\n";
  r.text = os.str();
  return r;
}

// ---------------------------------------------------------------------------
// lie

struct AlgebraSource {
  std::string file;
  std::string kind;
  std::size_t n = 0;
  std::string weights;
};

inline LieAlgebraPresentation build_kind(const std::string& kind, std::size_t n, const std::string& weights) {
  using K = AlgebraKind::Kind;
  static const std::vector<std::pair<std::string, K>> kinds{
      {"sp", K::SpStandard},       {"sp-literal", K::SpPaperLiteral}, {"upper-sl", K::UpperTriangularSl},
      {"strict-upper", K::StrictlyUpper}, {"sl", K::SlN},             {"shift", K::ShiftTruncation},
      {"diag", K::Diagonal}};
  auto it = std::find_if(kinds.begin(), kinds.end(), [&](const auto& p) { return p.first == kind; });
  if (it == kinds.end())
    throw InputError("unknown algebra kind '" + kind + "' (sp, sp-literal, upper-sl, strict-upper, sl, shift, diag)");
  if (n == 0) throw InputError("--n must be >= 1");
  AlgebraKind k{it->second, n, std::nullopt};
  if (it->second == K::ShiftTruncation) {
    if (weights.empty()) throw InputError("shift needs --weights SEQ");
    k.weights = parse_seq_dsl(weights);
  }
  return make_algebra(k);
}

inline LieAlgebraPresentation load_source(const AlgebraSource& s) {
  if (!s.file.empty()) {
    if (!s.kind.empty()) throw InputError("give either --file or an algebra kind, not both");
    return load_algebra(s.file);
  }
  if (s.kind.empty()) throw InputError("missing algebra: give --file FILE or KIND --n N");
  return build_kind(s.kind, s.n, s.weights);
}

inline Json algebra_summary(const LieAlgebraPresentation& L) {
  return {{"name", L.name()}, {"ambient_dim", L.ambient_dim()}, {"dim", L.dim()}};
}

inline Json subspace_json(const LieAlgebraPresentation& L, const Subspace& J) {
  Json coords = Json::array();
  for (const auto& v : J.basis()) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(to_string(x));
    coords.push_back(row);
  }
  Json mats = Json::array();
  for (const auto& m : to_matrices(L, J)) mats.push_back(to_json(m));
  return {{"dim", J.dim()}, {"coordinates", coords}, {"matrices", mats}};
}

inline Report lie_build(const AlgebraSource& src) {
  LieAlgebraPresentation L = load_source(src);
  Report r;
  r.raw = true;
  r.json = to_json(L);
  r.text = r.json.dump(2) + "\n";
  return r;
}

inline Report lie_closure(const std::vector<std::string>& argv, const AlgebraSource& src) {
  LieAlgebraPresentation L = load_source(src);
  Report r = base_report("lie check-closure", argv);
  const ClosureResult& c = L.closure();
  r.json["algebra"] = algebra_summary(L);
  r.json["closed"] = c.closed;
  std::size_t pairs = L.dim() * (L.dim() - (L.dim() > 0 ? 1 : 0)) / 2;
  if (c.closed) {
    r.text = "CLOSED (" + L.name() + ", dim " + std::to_string(L.dim()) + ", " + std::to_string(pairs) +
             " basis pairs checked)\n";
  } else {
    r.json["counterexample"] = {{"i", c.i}, {"j", c.j}, {"residual", to_json(c.residual)}};
    std::ostringstream os;
    os << "NOT CLOSED (" << L.name() << "): [b" << c.i << ", b" << c.j << "] leaves the span; residual entries:";
    for (std::size_t a = 0; a < c.residual.rows(); ++a)
      for (std::size_t b = 0; b < c.residual.cols(); ++b)
        if (sgn(c.residual(a, b)) != 0) os << " (" << a << "," << b << ")=" << to_string(c.residual(a, b));
    r.text = os.str() + "\n";
  }
  return r;
}

inline Report lie_derived(const std::vector<std::string>& argv, const AlgebraSource& src) {
  LieAlgebraPresentation L = load_source(src);
  Report r = base_report("lie derived", argv);
  Subspace d = derived_algebra(L);
  r.json["algebra"] = algebra_summary(L);
  r.json["derived"] = subspace_json(L, d);
  std::string kind = d.dim() == 0 ? "zero" : d.dim() == L.dim() ? "all of L (perfect)" : "proper nonzero ideal";
  r.text = "[L, L] of " + L.name() + ": dim " + std::to_string(d.dim()) + " of " + std::to_string(L.dim()) + ", " +
           kind + "\n";
  return r;
}

inline Vec parse_coords(const std::string& text, std::size_t dim) {
  Vec v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(parse_rational(tok));
  if (v.size() != dim)
    throw InputError("element '" + text + "' has " + std::to_string(v.size()) + " coordinates, expected " +
                     std::to_string(dim));
  return v;
}

inline Report lie_ideal_gen(const std::vector<std::string>& argv, const AlgebraSource& src,
                            const std::vector<std::string>& elements, const std::vector<std::size_t>& basis_elements) {
  LieAlgebraPresentation L = load_source(src);
  if (elements.empty() && basis_elements.empty()) throw InputError("give --element COORDS or --basis-element I");
  std::vector<Vec> seeds;
  for (const auto& e : elements) seeds.push_back(parse_coords(e, L.dim()));
  for (auto i : basis_elements) {
    if (i >= L.dim()) throw InputError("basis element index " + std::to_string(i) + " out of range");
    seeds.push_back(unit_vec(L.dim(), i));
  }
  Subspace J = lie_ideal_generated(L, seeds);
  Report r = base_report("lie ideal-gen", argv);
  r.json["algebra"] = algebra_summary(L);
  r.json["ideal"] = subspace_json(L, J);
  std::string kind = J.dim() == 0 ? "zero" : J.dim() == L.dim() ? "all of L" : "proper nonzero";
  r.text = "generated Lie ideal: dim " + std::to_string(J.dim()) + " of " + std::to_string(L.dim()) + " (" + kind +
           ")\n";
  return r;
}

inline Report lie_killing(const std::vector<std::string>& argv, const AlgebraSource& src) {
  LieAlgebraPresentation L = load_source(src);
  KillingForm k = killing_form(L);
  Report r = base_report("lie killing", argv);
  r.json["algebra"] = algebra_summary(L);
  r.json["rank"] = k.rank;
  r.json["nondegenerate"] = k.rank == L.dim();
  r.json["form"] = to_json(k.form);
  r.text = "Killing form of " + L.name() + ": rank " + std::to_string(k.rank) + " of " + std::to_string(L.dim()) +
           (k.rank == L.dim() ? " (nondegenerate)" : " (degenerate)") + "\n";
  return r;
}

inline Report lie_simple(const std::vector<std::string>& argv, const Flags& f, const AlgebraSource& src) {
  LieAlgebraPresentation L = load_source(src);
  SimplicityResult s = is_simple(L);
  Report r = base_report("lie simple", argv);
  r.json["algebra"] = algebra_summary(L);
  r.json["verdict"] = to_string(s.verdict);
  r.json["step"] = s.step;
  r.json["reason"] = s.reason;
  r.json["derived_dim"] = s.derived_dim;
  r.json["center_dim"] = s.center_dim ? Json(*s.center_dim) : Json(nullptr);
  r.json["killing_rank"] = s.killing_rank ? Json(*s.killing_rank) : Json(nullptr);
  r.json["commutant_dim"] = s.commutant_dim ? Json(*s.commutant_dim) : Json(nullptr);
  r.json["witness"] = s.witness ? subspace_json(L, *s.witness) : Json(nullptr);
  r.json["witness_incomplete"] = s.witness_incomplete;
  std::string head;
  switch (s.verdict) {
    case Simplicity::Simple: head = "SIMPLE (" + s.reason + ")"; break;
    case Simplicity::Abelian: head = "ABELIAN (" + s.reason + ")"; break;
    case Simplicity::NotSimple: head = "NOT SIMPLE (" + s.reason + ")"; break;
  }
  r.text = head + "\n";
  if (s.witness) r.text += "witness: Lie ideal of dim " + std::to_string(s.witness->dim()) + ", verified\n";
  if (s.verdict == Simplicity::Simple) {
    if (random_ideal_search(L, kCrossCheckTrials, f.seed))
      throw InternalInconsistency("randomized search found a proper ideal in an algebra decided Simple");
    r.json["cross_check"] = {{"trials", kCrossCheckTrials}, {"seed", f.seed}, {"proper_ideal_found", false}};
    r.text += "randomized cross-check: " + std::to_string(kCrossCheckTrials) + " elements (seed " +
              std::to_string(f.seed) + "), no proper ideal found\n";
  }
  return r;
}

// ---------------------------------------------------------------------------
// witness

inline Report witness_build(const std::string& weights, const std::vector<std::string>& pool, std::size_t n) {
  ShiftModel t{parse_seq_dsl(weights), n};
  std::vector<ShiftModel> models;
  for (const auto& p : pool) models.push_back({parse_seq_dsl(p), n});
  Certificate c = build_certificate(t, models);
  Report r;
  r.raw = true;
  r.json = to_json(c);
  r.text = r.json.dump(2) + "\n";
  return r;
}

inline Report witness_verify(const std::vector<std::string>& argv, const std::string& file) {
  Certificate c = load_certificate(file);
  Verdict v = verify_certificate(c);
  Report r = base_report("witness verify", argv);
  note_verdict(r, v);
  r.json["input"] = {{"file", file}, {"generator", to_dsl(c.generator)}, {"branch", to_string(c.branch)}};
  r.json["verdict"] = to_json(v);
  r.text = (v.holds() ? "VERIFIED (" : "REJECTED (") + v.reason + ")\n";
  if (v.holds()) r.text += "conclusion: " + c.conclusion + "\n";
  return r;
}

}  // namespace cli

CliResult run(const std::vector<std::string>& args);

namespace cli {

inline CliResult run_batch(const std::string& file, std::size_t jobs, bool json) {
  std::vector<std::vector<std::string>> commands;
  std::istringstream in(read_file(file));
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty() || toks.front().front() == '#') continue;
    if (toks.front() == "batch") throw InputError("nested batch commands are not allowed");
    commands.push_back(std::move(toks));
  }
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<CliResult> results(commands.size());
  for (std::size_t start = 0; start < commands.size(); start += jobs) {
    std::vector<std::future<CliResult>> wave;
    for (std::size_t i = start; i < std::min(commands.size(), start + jobs); ++i)
      wave.push_back(std::async(std::launch::async, [&commands, i] { return idealkit::run(commands[i]); }));
    for (std::size_t k = 0; k < wave.size(); ++k) results[start + k] = wave[k].get();
  }
  CliResult out;
  Json arr = Json::array();
  for (std::size_t i = 0; i < commands.size(); ++i) {
    out.code = std::max(out.code, results[i].code);
    out.err += results[i].err;
    if (json) {
      Json entry;
      entry["argv"] = commands[i];
      entry["exit_code"] = results[i].code;
      try {
        entry["output"] = results[i].out.empty() ? Json(nullptr) : Json::parse(results[i].out);
      } catch (const Json::parse_error&) {
        entry["output"] = results[i].out;
      }
      arr.push_back(entry);
    } else {
      std::string joined;
      for (const auto& t : commands[i]) joined += (joined.empty() ? "" : " ") + t;
      out.out += "## " + joined + " [exit " + std::to_string(results[i].code) + "]\n" + results[i].out;
    }
  }
  if (json) out.out = arr.dump(2) + "\n";
  return out;
}

}  // namespace cli

inline CliResult run(const std::vector<std::string>& args) {
  using namespace cli;
  CliResult res;
  Flags f;
  try {
    f.nmax = default_nmax();
  } catch (const InputError& e) {
    return {kExitInput, "", std::string("error: ") + e.what() + "\n"};
  }

  CLI::App app{"idealkit: operator-ideal and Lie-algebra calculator", "idealkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--mode", f.mode, "O (big-O) or o (little-o)");
  app.add_flag("--numeric", f.numeric, "also run the numeric probe");
  app.add_option("--nmax", f.nmax, "numeric probe grid end (default 2^20, or IDEALKIT_NMAX)");
  app.add_option("--eps", f.eps, "numeric probe tolerance");
  app.add_option("--seed", f.seed, "seed for randomized cross-checks");
  app.add_flag("--strict", f.strict, "exit 3 if any verdict is Unknown or numeric");
  app.add_flag("--json", f.json, "machine-readable report");
  app.add_option("-o,--output", f.output, "write the output to a file");

  std::string a1, a2;
  AlgebraSource src;
  std::vector<std::string> elements, pool;
  std::vector<std::size_t> basis_elements;
  std::string weights, file;
  std::size_t trunc = 64, jobs = 0;

  auto* seq = app.add_subcommand("seq", "sequence calculus")->require_subcommand(1);
  auto* seq_sig = seq->add_subcommand("signature", "asymptotic signature");
  seq_sig->add_option("SEQ", a1)->required();
  auto* seq_cmp = seq->add_subcommand("compare", "X = O(Y) or X = o(Y)");
  seq_cmp->add_option("X", a1)->required();
  seq_cmp->add_option("Y", a2)->required();
  auto* seq_d2 = seq->add_subcommand("delta2", "Delta2 condition");
  seq_d2->add_option("SEQ", a1)->required();

  auto* ideal = app.add_subcommand("ideal", "ideal calculus")->require_subcommand(1);
  auto* id_soft = ideal->add_subcommand("soft", "is the ideal soft-edged");
  id_soft->add_option("IDEAL", a1)->required();
  auto* id_mem = ideal->add_subcommand("member", "sequence membership in an ideal");
  id_mem->add_option("SEQ", a1)->required();
  id_mem->add_option("IDEAL", a2)->required();
  auto* id_idem = ideal->add_subcommand("idempotent", "is I^2 = I");
  id_idem->add_option("IDEAL", a1)->required();
  auto* id_rep = ideal->add_subcommand("report", "implication report for a principal ideal");
  id_rep->add_option("SEQ", a1)->required();

  auto* lie = app.add_subcommand("lie", "matrix Lie algebras")->require_subcommand(1);
  auto add_source = [&](CLI::App* c) {
    c->add_option("KIND", src.kind, "sp, sp-literal, upper-sl, strict-upper, sl, shift, diag");
    c->add_option("--n", src.n, "size parameter N");
    c->add_option("--weights", src.weights, "shift weights (kind shift)");
    c->add_option("--file", src.file, "algebra JSON file");
  };
  auto* lie_b = lie->add_subcommand("build", "write an algebra file");
  auto* lie_c = lie->add_subcommand("check-closure", "bracket closure audit");
  auto* lie_d = lie->add_subcommand("derived", "derived algebra [L, L]");
  auto* lie_g = lie->add_subcommand("ideal-gen", "Lie ideal generated by elements");
  auto* lie_k = lie->add_subcommand("killing", "Killing form");
  auto* lie_s = lie->add_subcommand("simple", "simplicity decision");
  for (auto* c : {lie_b, lie_c, lie_d, lie_g, lie_k, lie_s}) add_source(c);
  lie_g->add_option("--element", elements, "coordinates in the basis, comma separated");
  lie_g->add_option("--basis-element", basis_elements, "basis element index (0-based)");

  auto* wit = app.add_subcommand("witness", "non-simplicity certificates")->require_subcommand(1);
  auto* wit_b = wit->add_subcommand("build", "build a certificate");
  wit_b->add_option("--weights", weights, "generator shift weights")->required();
  wit_b->add_option("--pool", pool, "partner shift weights (repeatable)");
  wit_b->add_option("--trunc", trunc, "truncation size for finite evidence (default 64)");
  auto* wit_v = wit->add_subcommand("verify", "verify a certificate");
  wit_v->add_option("--file", file, "certificate JSON")->required();

  auto* batch = app.add_subcommand("batch", "run a file of commands, possibly concurrently");
  batch->add_option("--file", file, "one command per line")->required();
  batch->add_option("--jobs", jobs, "concurrent commands (default: hardware threads)");

  std::vector<std::string> storage{"idealkit"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());

  std::ostringstream out, err;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return {code == 0 ? kExitOk : kExitInput, out.str(), err.str()};
  }

  // The argv that reproduces this run, minus the output destination.
  std::vector<std::string> canon;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "-o" || args[i] == "--output") {
      ++i;
      continue;
    }
    if (args[i].rfind("--output=", 0) == 0) continue;
    canon.push_back(args[i]);
  }

  try {
    if (f.nmax < 1024 && f.numeric) throw InputError("--nmax must be >= 1024");
    if (!(f.eps > 0)) throw InputError("--eps must be positive");
    parse_mode(f.mode);
    if (batch->parsed()) return run_batch(file, jobs, f.json);

    Report r;
    if (seq_sig->parsed()) r = seq_signature(canon, a1);
    else if (seq_cmp->parsed()) r = seq_compare(canon, f, a1, a2);
    else if (seq_d2->parsed()) r = seq_delta2(canon, f, a1);
    else if (id_soft->parsed()) r = ideal_soft(canon, f, a1);
    else if (id_mem->parsed()) r = ideal_member(canon, f, a1, a2);
    else if (id_idem->parsed()) r = ideal_idempotent(canon, f, a1);
    else if (id_rep->parsed()) r = ideal_report(canon, a1);
    else if (lie_b->parsed()) r = lie_build(src);
    else if (lie_c->parsed()) r = lie_closure(canon, src);
    else if (lie_d->parsed()) r = lie_derived(canon, src);
    else if (lie_g->parsed()) r = lie_ideal_gen(canon, src, elements, basis_elements);
    else if (lie_k->parsed()) r = lie_killing(canon, src);
    else if (lie_s->parsed()) r = lie_simple(canon, f, src);
    else if (wit_b->parsed()) r = witness_build(weights, pool, trunc);
    else if (wit_v->parsed()) r = witness_verify(canon, file);
    else throw InputError("no command given");

    std::string body = (f.json || r.raw) ? r.json.dump(2) + "\n" : r.text;
    if (!f.output.empty()) {
      std::ofstream o(f.output, std::ios::binary);
      if (!o) throw InputError("cannot write '" + f.output + "'");
      o << body;
    } else {
      res.out = body;
    }
    res.code = (f.strict && r.uncertain) ? kExitStrict : kExitOk;
  } catch (const InternalInconsistency& e) {
    return {kExitInternal, "", std::string("internal inconsistency (bug): ") + e.what() + "\n"};
  } catch (const InputError& e) {
    return {kExitInput, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kExitInternal, "", std::string("internal error: ") + e.what() + "\n"};
  }
  return res;
}

}  // namespace idealkit
