// Acceptance suite: end-to-end checks of the shipped behavior, one line of
// output per criterion. Returns the number of failed criteria.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "picheck/ast.hpp"
#include "picheck/kernel.hpp"
#include "picheck/parser.hpp"
#include "picheck/reduction.hpp"
#include "picheck/vernacular.hpp"
#include "support/oracles.hpp"
#include "support/termgen.hpp"

using namespace picheck;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = PICHECK_CORPUS_DIR;
const std::string kBin = PICHECK_BIN;

int failures = 0;

void report(int number, const std::string& label, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << label;
  if (!ok && !detail.empty()) std::cout << "  (" << detail << ")";
  std::cout << "\n";
  if (!ok) failures++;
}

int run_cli(const std::string& args) {
  std::string cmd = kBin + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- 1. the two-file merge phenomenon ---------------------------------------

void criterion_merge() {
  std::string inc = "-I " + (kCorpus / "merge").string() + " ";
  int a = run_cli(inc + (kCorpus / "merge/fileA.pv").string());
  int b = run_cli(inc + (kCorpus / "merge/fileB.pv").string());
  int ab = run_cli(inc + (kCorpus / "merge/fileAB.pv").string());

  CheckOptions opts;
  opts.include_paths = {(kCorpus / "merge").string()};
  CheckReport r = check_files({(kCorpus / "merge/fileAB.pv").string()}, opts);
  const CommandOutcome* err =
      r.files.empty() ? nullptr : r.files[0].first_error();
  bool core_ok = err && err->error == ErrKind::UniverseInconsistency &&
                 err->core.size() == 2;

  std::ostringstream detail;
  detail << "exit codes " << a << "/" << b << "/" << ab;
  report(1, "merge demo: halves check alone, union fails with a 2-edge core",
         a == 0 && b == 0 && ab == 1 && core_ok, detail.str());
}

// --- 2. no self-membership for sort aliases ---------------------------------

void criterion_type_in_type() {
  int code = run_cli((kCorpus / "negative/typetype.pv").string());
  CheckReport r =
      check_files({(kCorpus / "negative/typetype.pv").string()}, {});
  const CommandOutcome* err =
      r.files.empty() ? nullptr : r.files[0].first_error();
  bool rejected = code == 1 && err &&
                  err->error == ErrKind::UniverseInconsistency;

  // No assignment can satisfy a reflexive strict constraint; the solver and
  // the exhaustive search must agree on every such set.
  bool reflexive_unsat = true;
  for (std::uint32_t extra = 0; extra < 4; extra++) {
    ConstraintSet s;
    Level u{0, {}};
    s.add({u, Constraint::Strict, u, {}});
    for (std::uint32_t i = 1; i <= extra; i++)
      s.add({Level{i, {}}, Constraint::Lax, Level{i + 1, {}}, {}});
    if (is_sat(satisfiable(s))) reflexive_unsat = false;
    if (testsupport::brute_force_sat(s, s.levels().size()).has_value())
      reflexive_unsat = false;
  }
  report(2, "sort self-membership is rejected; u < u has no model",
         rejected && reflexive_unsat);
}

// --- 3. solver vs brute force ------------------------------------------------

bool solver_matches_brute(const ConstraintSet& s) {
  SatResult r = satisfiable(s);
  auto brute = testsupport::brute_force_sat(s, s.levels().size());
  if (is_sat(r) != brute.has_value()) return false;
  if (const auto* a = std::get_if<Assignment>(&r)) {
    for (const Constraint& c : s.constraints())
      if (!a->satisfies(c)) return false;
  } else {
    ConstraintSet core_set;
    for (const Constraint& c : std::get<Unsat>(r).core) core_set.add(c);
    if (testsupport::brute_force_sat(core_set, core_set.levels().size()))
      return false;
  }
  return true;
}

void criterion_solver_oracle() {
  long total = 0, agreed = 0;
  auto lvl = [](std::uint32_t id) { return Level{id, {}}; };

  // Fixed exhaustive family: every set of up to 3 constraints over 3 levels.
  std::vector<Constraint> alphabet;
  for (std::uint32_t lo = 0; lo < 3; lo++)
    for (std::uint32_t hi = 0; hi < 3; hi++) {
      alphabet.push_back({lvl(lo), Constraint::Lax, lvl(hi), {}});
      alphabet.push_back({lvl(lo), Constraint::Strict, lvl(hi), {}});
    }
  for (std::size_t i = 0; i < alphabet.size(); i++)
    for (std::size_t j = i; j < alphabet.size(); j++)
      for (std::size_t k = j; k < alphabet.size(); k++) {
        ConstraintSet s;
        s.add(alphabet[i]);
        s.add(alphabet[j]);
        s.add(alphabet[k]);
        total++;
        if (solver_matches_brute(s)) agreed++;
      }

  // Fixed seeded family: 20,000 sets with <= 4 levels and <= 8 constraints.
  {
    std::mt19937 rng(271828);
    std::uniform_int_distribution<std::uint32_t> level(0, 3);
    std::uniform_int_distribution<int> rel(0, 1);
    std::uniform_int_distribution<int> count(1, 8);
    for (int i = 0; i < 20000; i++) {
      ConstraintSet s;
      int n = count(rng);
      for (int c = 0; c < n; c++)
        s.add({lvl(level(rng)),
               rel(rng) ? Constraint::Strict : Constraint::Lax,
               lvl(level(rng)),
               {}});
      total++;
      if (solver_matches_brute(s)) agreed++;
    }
  }

  // 10,000 random sets with <= 6 levels.
  {
    std::mt19937 rng(314159);
    std::uniform_int_distribution<std::uint32_t> level(0, 5);
    std::uniform_int_distribution<int> rel(0, 1);
    std::uniform_int_distribution<int> count(1, 10);
    for (int i = 0; i < 10000; i++) {
      ConstraintSet s;
      int n = count(rng);
      for (int c = 0; c < n; c++)
        s.add({lvl(level(rng)),
               rel(rng) ? Constraint::Strict : Constraint::Lax,
               lvl(level(rng)),
               {}});
      total++;
      if (solver_matches_brute(s)) agreed++;
    }
  }

  std::ostringstream detail;
  detail << agreed << "/" << total << " agreed";
  report(3, "solver agrees with brute-force search on " +
                std::to_string(total) + " constraint sets",
         agreed == total, detail.str());
}

// --- 4 and 5. subject reduction and confluence -------------------------------

void criteria_reduction() {
  Session session = testsupport::make_arith_session();
  const GlobalEnv& env = session.env();
  ReductionFlags flags;  // fuel 10^6

  LevelAlloc& alloc = session.level_alloc();
  std::mt19937 rng(987654321);
  int population = 1000;
  int sr_ok = 0, sr_applicable = 0, confluent = 0;
  int fuel_exhausted = 0;
  for (int i = 0; i < population; i++) {
    auto [term, type] = testsupport::random_well_typed(env, rng, 8);
    try {
      TypingResult r = infer_type(env, alloc, {}, term, {}, flags);
      if (std::optional<Term> stepped = testsupport::reduce_step(env, term)) {
        sr_applicable++;
        std::vector<Constraint> delta =
            check_type(env, alloc, {}, *stepped, r.type, {}, flags);
        ConstraintSet cs = env.constraints;
        cs.add_all(r.delta);
        cs.add_all(delta);
        if (is_sat(satisfiable(cs))) sr_ok++;
      }
      Term outer = normalize(env, term, flags);
      Term inner = testsupport::innermost_normalize(env, term, flags);
      if (struct_eq(outer, inner)) confluent++;
    } catch (const CheckError& e) {
      if (e.kind == ErrKind::FuelExhausted) fuel_exhausted++;
    }
  }
  std::ostringstream d4;
  d4 << sr_ok << "/" << sr_applicable << " preserved";
  report(4, "subject reduction holds on every reducible generated term",
         sr_applicable > 0 && sr_ok == sr_applicable, d4.str());
  std::ostringstream d5;
  d5 << confluent << "/" << population << " agreed, " << fuel_exhausted
     << " fuel exhaustions";
  report(5, "outermost and innermost normalization agree; no fuel exhausted",
         confluent == population && fuel_exhausted == 0, d5.str());
}

// --- 6. corpus regression -----------------------------------------------------

void criterion_corpus() {
  std::ifstream in(kCorpus / "manifest.json");
  nlohmann::json manifest = nlohmann::json::parse(in);
  bool all = true;
  std::string detail;
  bool id_unique_ok = false;
  for (const auto& entry : manifest) {
    CheckOptions opts;
    if (entry.contains("include"))
      for (const auto& inc : entry["include"])
        opts.include_paths.push_back(
            (kCorpus / inc.get<std::string>()).string());
    std::string path = (kCorpus / entry["path"].get<std::string>()).string();
    CheckReport r = check_files({path}, opts);
    bool entry_ok;
    if (entry["expected_status"] == "AllOk") {
      entry_ok = r.exit_code == 0 && r.files.size() == 1 && r.files[0].all_ok();
    } else {
      const CommandOutcome* err =
          r.files.empty() ? nullptr : r.files[0].first_error();
      entry_ok = r.exit_code == 1 && err &&
                 err->name == entry["fails_at"]["name"].get<std::string>() &&
                 std::string(to_string(*err->error)) ==
                     entry["fails_at"]["kind"].get<std::string>();
    }
    if (!entry_ok) {
      all = false;
      detail += entry["path"].get<std::string>() + " ";
    }
    if (entry["path"] == "structures.pv" && entry_ok) {
      for (const CommandOutcome& c : r.files[0].commands)
        if (c.name == "id_unique" && c.status == "ok") id_unique_ok = true;
    }
  }
  report(6, "every corpus entry matches its expected status",
         all && id_unique_ok,
         all ? "id_unique row missing" : "mismatch: " + detail);
}

// --- 7. substitution oracle ----------------------------------------------------

void criterion_subst_oracle() {
  std::mt19937 rng(1000003);
  int total = 10000, agreed = 0;
  std::uniform_int_distribution<std::size_t> cut(0, 3);
  std::uniform_int_distribution<std::size_t> amount(0, 4);
  for (int i = 0; i < total; i++) {
    Term t = testsupport::random_raw_term(rng, 6);
    std::size_t k = cut(rng);
    std::size_t a = amount(rng);
    Term r = testsupport::random_raw_term(rng, 3);
    bool lift_same = struct_eq(lift(t, a, k), testsupport::named_lift(t, a, k));
    bool subst_same =
        struct_eq(subst(t, r, k), testsupport::named_subst(t, r, k));
    if (lift_same && subst_same) agreed++;
  }
  std::ostringstream detail;
  detail << agreed << "/" << total;
  report(7, "lift and subst agree with the named-variable oracle",
         agreed == total, detail.str());
}

// --- 8. parser round-trip -------------------------------------------------------

void criterion_roundtrip() {
  bool ok = true;
  std::string detail;
  for (const auto& entry : fs::recursive_directory_iterator(kCorpus)) {
    if (entry.path().extension() != ".pv") continue;
    std::string text = slurp(entry.path());
    std::vector<std::vector<ast::Command>> runs;
    for (int i = 0; i < 3; i++) runs.push_back(parse(text, "<run>"));
    for (int i = 1; i < 3; i++) {
      if (runs[i].size() != runs[0].size()) ok = false;
      for (std::size_t c = 0; ok && c < runs[0].size(); c++)
        if (!ast::command_eq(runs[0][c], runs[i][c])) ok = false;
    }
    std::string printed;
    for (const auto& c : runs[0]) printed += ast::print_command(c) + "\n";
    std::vector<ast::Command> reparsed = parse(printed, "<reparse>");
    if (reparsed.size() != runs[0].size()) ok = false;
    for (std::size_t c = 0; ok && c < runs[0].size(); c++)
      if (!ast::command_eq(runs[0][c], reparsed[c])) ok = false;
    if (!ok && detail.empty()) detail = entry.path().string();
  }
  report(8, "parse -> print -> parse is stable on the corpus; 3 runs agree",
         ok, detail);
}

// --- 9. onboarding -----------------------------------------------------------------

void criterion_onboarding() {
  int code = run_cli((kCorpus / "structures.pv").string());
  report(9, "the monoid lemma file verifies with one documented command",
         code == 0, "exit " + std::to_string(code));
}

}  // namespace

int main() {
  criterion_merge();
  criterion_type_in_type();
  criterion_solver_oracle();
  criteria_reduction();
  criterion_corpus();
  criterion_subst_oracle();
  criterion_roundtrip();
  criterion_onboarding();
  if (failures == 0)
    std::cout << "all acceptance criteria passed\n";
  else
    std::cout << failures << " acceptance criteria failed\n";
  return failures;
}
