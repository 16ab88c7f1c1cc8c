// Batch front end: every subcommand prints one machine-readable report to
// stdout (JSON by default, CSV with --format csv) and reserves stderr for
// diagnostics. Exit codes: 0 success, 1 invariant/assertion failure, 2 guard
// violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

#include "unitary/fields.hpp"
#include "unitary/group.hpp"
#include "unitary/matrices.hpp"
#include "unitary/measure.hpp"
#include "unitary/parallel.hpp"
#include "unitary/partitions.hpp"
#include "unitary/polynomials.hpp"
#include "unitary/verify.hpp"

using json = nlohmann::ordered_json;
using namespace unitary;

namespace {

json jrat(const Rat& r) {
  return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

std::string jint(const Int& x) { return x.get_str(); }

std::string flog(long double x) {
  char buf[64];
  snprintf(buf, sizeof buf, "%.15Lg", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct Output {
  json j;
  std::string csv_header;
  std::vector<std::string> csv_rows;
};

struct Config {
  std::string format = "json";
  uint64_t seed = 0;
  bool override_guards = false;
};

void emit(const Output& out, const Config& cfg) {
  if (cfg.format == "csv") {
    std::cout << out.csv_header << "\n";
    for (const std::string& row : out.csv_rows) std::cout << row << "\n";
  } else {
    std::cout << out.j.dump(2) << "\n";
  }
}

std::string rat_csv(const Rat& r) {
  return r.get_num().get_str() + "," + r.get_den().get_str();
}

// ---- subcommand bodies ----

Output cmd_group_order(unsigned n, uint64_t q, const Config& cfg) {
  Output out;
  Int formula = order_U(n, q);
  out.j = {{"schema", 1}, {"command", "group-order"}, {"n", n}, {"q", q},
           {"formula", jint(formula)}};
  std::string enumerated = "", match = "";
  try {
    size_t count = enumerate_group(n, q, cfg.override_guards).size();
    out.j["enumerated"] = jint(Int((unsigned long)count));
    out.j["match"] = (Int((unsigned long)count) == formula);
    enumerated = std::to_string(count);
    match = out.j["match"].get<bool>() ? "true" : "false";
  } catch (const GuardError&) {
    out.j["enumerated"] = nullptr;  // beyond the enumeration allowlist
    out.j["match"] = nullptr;
  }
  out.csv_header = "n,q,formula,enumerated,match";
  out.csv_rows = {std::to_string(n) + "," + std::to_string(q) + "," +
                  jint(formula) + "," + enumerated + "," + match};
  return out;
}

Output cmd_census(unsigned n, uint64_t q, const Config& cfg) {
  GroupCensus c = census(n, q, Exec::parallel, cfg.override_guards);
  const Field& F = Field::make_q2(q);
  Output out;
  out.j = {{"schema", 1},
           {"command", "census"},
           {"n", n},
           {"q", q},
           {"order", {{"formula", jint(c.order_formula)},
                      {"enumerated", jint(c.order_enumerated)}}},
           {"mu", jrat(c.mu)},
           {"max_order", jint(c.max_order)},
           {"max_multiplicity", c.max_M},
           {"max_T", jint(c.max_T)}};
  json hist = json::array();
  for (const auto& [ord, count] : c.order_hist)
    hist.push_back({{"order", jint(ord)}, {"count", jint(count)}});
  out.j["order_histogram"] = hist;
  json polys = json::array();
  out.csv_header = "charpoly_code,charpoly,count";
  for (const auto& [code, count] : c.charpoly_counts) {
    Poly f = poly_from_code(F, n, code);
    polys.push_back(
        {{"code", code}, {"poly", poly_str(f)}, {"count", jint(count)}});
    out.csv_rows.push_back(std::to_string(code) + "," +
                           csv_quote(poly_str(f)) + "," + jint(count));
  }
  out.j["charpoly_counts"] = polys;
  return out;
}

Output cmd_mu(unsigned n, uint64_t q, const Config& cfg) {
  Rat mu = census(n, q, Exec::parallel, cfg.override_guards).mu;
  Output out;
  out.j = {{"schema", 1}, {"command", "mu"}, {"n", n}, {"q", q}, {"mu", jrat(mu)}};
  out.csv_header = "n,q,num,den";
  out.csv_rows = {std::to_string(n) + "," + std::to_string(q) + "," + rat_csv(mu)};
  return out;
}

const OmegaTable& table_for(unsigned n, uint64_t q, const Config& cfg) {
  if (cfg.override_guards) {
    static std::unique_ptr<OmegaTable> forced;
    forced = std::make_unique<OmegaTable>(n, q, true);
    return *forced;
  }
  return OmegaTable::get(n, q);
}

Output cmd_omega_table(unsigned n, uint64_t q, const Config& cfg) {
  const OmegaTable& t = table_for(n, q, cfg);
  Output out;
  out.j = {{"schema", 1},
           {"command", "omega-table"},
           {"n", n},
           {"q", q},
           {"group_order", jint(t.group_order())},
           {"class_count", t.classes().size()},
           {"entry_count", t.entries().size()}};
  json classes = json::array();
  for (const ClassInfo& c : t.classes())
    classes.push_back({{"poly", poly_str(c.rep)},
                       {"code", c.code},
                       {"deg", c.deg},
                       {"span", c.span},
                       {"kind", c.isJ ? "J" : "K"},
                       {"x_factor", jint(c.xfac)}});
  out.j["classes"] = classes;
  json entries = json::array();
  out.csv_header = "code,poly,count,weight_num,weight_den,M,X,X1,X2,T";
  for (const auto& e : t.entries()) {
    Poly f = t.poly_of(e);
    Rat w = t.weight(e);
    json parts = json::array();
    for (auto [idx, mult] : e.parts) parts.push_back({idx, mult});
    entries.push_back({{"code", poly_code(f)},
                       {"poly", poly_str(f)},
                       {"count", jint(e.count)},
                       {"weight", jrat(w)},
                       {"M", e.M},
                       {"X", jint(t.X_of(e))},
                       {"X1", jint(t.X1_of(e))},
                       {"X2", jint(t.X2_of(e))},
                       {"T", jint(t.T_of(e))},
                       {"parts", parts}});
    out.csv_rows.push_back(std::to_string(poly_code(f)) + "," +
                           csv_quote(poly_str(f)) + "," + jint(e.count) + "," +
                           rat_csv(w) + "," + std::to_string(e.M) + "," +
                           jint(t.X_of(e)) + "," + jint(t.X1_of(e)) + "," +
                           jint(t.X2_of(e)) + "," + jint(t.T_of(e)));
  }
  out.j["entries"] = entries;
  return out;
}

Output cmd_expect(const std::string& stat, unsigned n, uint64_t q, const Config&) {
  Stat s = stat_from_name(stat);
  Rat v = expect_stat(s, n, q, Exec::parallel);
  Output out;
  out.j = {{"schema", 1}, {"command", "expect"}, {"stat", stat_name(s)},
           {"n", n},      {"q", q},              {"value", jrat(v)},
           {"log2", flog(log2_of(v))}};
  out.csv_header = "stat,n,q,num,den,log2";
  out.csv_rows = {std::string(stat_name(s)) + "," + std::to_string(n) + "," +
                  std::to_string(q) + "," + rat_csv(v) + "," + flog(log2_of(v))};
  return out;
}

Output cmd_tail_m(unsigned n, uint64_t q, unsigned xi, const Config&) {
  Rat p = tail_M(n, q, xi);
  Rat cap(Int(40) * Int(q), int_pow(Int(q), xi));
  cap.canonicalize();
  Output out;
  out.j = {{"schema", 1}, {"command", "tail-m"},  {"n", n},
           {"q", q},      {"xi", xi},             {"probability", jrat(p)},
           {"cap", jrat(cap)}, {"holds", p <= cap}};
  out.csv_header = "n,q,xi,prob_num,prob_den,cap_num,cap_den,holds";
  out.csv_rows = {std::to_string(n) + "," + std::to_string(q) + "," +
                  std::to_string(xi) + "," + rat_csv(p) + "," + rat_csv(cap) +
                  "," + (p <= cap ? "true" : "false")};
  return out;
}

Output cmd_pi_sweep(unsigned n, uint64_t q, const Config& cfg) {
  const OmegaTable& t = table_for(n, q, cfg);
  Output out;
  json rows = json::array();
  out.csv_header = "f,g,h,X,proper";
  uint64_t proper = 0;
  for (const auto& e : t.entries()) {
    Poly f = t.poly_of(e);
    PiSplit ps = pi_factor(f);
    bool is_proper = ps.g.deg() < f.deg();
    proper += is_proper;
    json steps = json::array();
    for (const PiStep& s : ps.steps)
      steps.push_back({{"deg", s.deg},
                       {"code", s.code},
                       {"kind", s.isJ ? "J" : "K"},
                       {"kept", s.kept}});
    rows.push_back({{"f", poly_str(ps.f)},
                    {"g", poly_str(ps.g)},
                    {"h", poly_str(ps.h)},
                    {"X", jint(ps.X_f)},
                    {"proper", is_proper},
                    {"steps", steps}});
    out.csv_rows.push_back(csv_quote(poly_str(ps.f)) + "," +
                           csv_quote(poly_str(ps.g)) + "," +
                           csv_quote(poly_str(ps.h)) + "," + jint(ps.X_f) +
                           "," + (is_proper ? "true" : "false"));
  }
  out.j = {{"schema", 1},
           {"command", "pi-sweep"},
           {"n", n},
           {"q", q},
           {"entry_count", t.entries().size()},
           {"proper_reductions", proper},
           {"rows", rows}};
  return out;
}

Output cmd_sub_lemma(unsigned n, uint64_t q, const Config&) {
  SubLemmaReport r = check_sub_lemma(n, q);
  Output out;
  out.j = {{"schema", 1},
           {"command", "sub-lemma"},
           {"n", r.n},
           {"q", r.q},
           {"checked", r.checked},
           {"ratio_gt_one", r.ratio_gt_one},
           {"max_ratio", jrat(r.max_ratio)},
           {"argmax", r.argmax},
           {"k_only_checked", r.k_only_checked},
           {"k_only_gt_one", r.k_only_gt_one},
           {"max_ratio_k_only", jrat(r.max_ratio_k_only)},
           {"unit_square_ratio", jrat(r.unit_square_ratio)},
           {"within_ten", r.within_ten}};
  out.csv_header =
      "n,q,checked,ratio_gt_one,max_ratio_num,max_ratio_den,argmax,"
      "k_only_checked,k_only_gt_one,within_ten";
  out.csv_rows = {std::to_string(r.n) + "," + std::to_string(r.q) + "," +
                  std::to_string(r.checked) + "," +
                  std::to_string(r.ratio_gt_one) + "," + rat_csv(r.max_ratio) +
                  "," + csv_quote(r.argmax) + "," +
                  std::to_string(r.k_only_checked) + "," +
                  std::to_string(r.k_only_gt_one) + "," +
                  (r.within_ten ? "true" : "false")};
  return out;
}

Output cmd_sigma(int which, unsigned size, uint64_t q, const Config&) {
  Rat v = which == 1 ? sigma1(size, q) : sigma2(size, q);
  Output out;
  const char* name = which == 1 ? "sigma1" : "sigma2";
  out.j = {{"schema", 1},
           {"command", name},
           {which == 1 ? "b" : "s", size},
           {"q", q},
           {"value", jrat(v)}};
  out.csv_header = std::string(which == 1 ? "b" : "s") + ",q,num,den";
  out.csv_rows = {std::to_string(size) + "," + std::to_string(q) + "," +
                  rat_csv(v)};
  return out;
}

Output cmd_a0(unsigned xi, uint64_t q, bool direct, const Config&) {
  PrimeWindow w = prime_window(xi, q);
  A0Mode mode = direct ? A0Mode::direct : A0Mode::product;
  Rat v = fourier_a0(w.primes, Int(q), mode);
  Output out;
  out.j = {{"schema", 1},
           {"command", "a0"},
           {"xi", xi},
           {"q", q},
           {"mode", direct ? "direct" : "product"},
           {"primes", w.primes},
           {"log_kappa", flog(w.log_kappa)},
           {"density", flog(w.density)},
           {"value", jrat(v)}};
  if (w.density_exact) out.j["density_exact"] = jrat(*w.density_exact);
  out.csv_header = "xi,q,mode,num,den";
  out.csv_rows = {std::to_string(xi) + "," + std::to_string(q) + "," +
                  (direct ? "direct" : "product") + "," + rat_csv(v)};
  return out;
}

Output cmd_bound_report(unsigned b, unsigned xi, uint64_t q, const Config&) {
  BoundReport r = sigma1_bound_report(b, xi, q);
  Output out;
  out.j = {{"schema", 1}, {"command", "bound-report"},
           {"b", r.b},    {"xi", r.xi},
           {"q", r.q},    {"lhs_log", flog(r.lhs_log)},
           {"rhs_log", flog(r.rhs_log)}, {"holds", r.holds}};
  out.csv_header = "b,xi,q,lhs_log,rhs_log,holds";
  out.csv_rows = {std::to_string(r.b) + "," + std::to_string(r.xi) + "," +
                  std::to_string(r.q) + "," + flog(r.lhs_log) + "," +
                  flog(r.rhs_log) + "," + (r.holds ? "true" : "false")};
  return out;
}

Output cmd_verify(const Config& cfg, bool& hard_fail) {
  VerifyReport r = run_verify(cfg.seed, Exec::parallel);
  hard_fail = !r.all_hard_pass;
  Output out;
  json crits = json::array();
  int hard_total = 0, hard_pass = 0, soft_total = 0, soft_pass = 0;
  out.csv_header = "id,name,pass,hard,detail";
  for (const CriterionResult& c : r.results) {
    (c.hard ? hard_total : soft_total) += 1;
    if (c.pass) (c.hard ? hard_pass : soft_pass) += 1;
    crits.push_back({{"id", c.id},
                     {"name", c.name},
                     {"pass", c.pass},
                     {"hard", c.hard},
                     {"detail", c.detail}});
    out.csv_rows.push_back(std::to_string(c.id) + "," + c.name + "," +
                           (c.pass ? "true" : "false") + "," +
                           (c.hard ? "true" : "false") + "," +
                           csv_quote(c.detail));
  }
  out.j = {{"schema", 1},
           {"command", "verify"},
           {"seed", r.seed},
           {"criteria", crits},
           {"hard_passed", hard_pass},
           {"hard_total", hard_total},
           {"soft_passed", soft_pass},
           {"soft_total", soft_total},
           {"overall", r.all_hard_pass ? "PASS" : "FAIL"}};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();

  CLI::App app{
      "Exact-arithmetic toolkit for the finite unitary group U(n,q): orders, "
      "element-order statistics, the characteristic-polynomial measure, and "
      "partition asymptotics. CSV columns per subcommand are listed in each "
      "subcommand's help text."};
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Base seed for sampled subcommands")
      ->capture_default_str();
  app.add_flag("--override-guards", cfg.override_guards,
               "Loosen enumeration/table-size guards (use with care)");

  unsigned n = 0, xi = 0, b = 0, s = 0;
  uint64_t q = 0;
  std::string stat;
  bool direct = false;
  std::string verify_scope;

  std::function<Output()> run;
  bool hard_fail = false;

  auto* c_go = app.add_subcommand(
      "group-order", "|U(n,q)| by formula and, where guarded, enumeration. CSV: n,q,formula,enumerated,match");
  c_go->add_option("n", n)->required();
  c_go->add_option("q", q)->required();
  c_go->callback([&] { run = [&] { return cmd_group_order(n, q, cfg); }; });

  auto* c_census = app.add_subcommand(
      "census", "Exhaustive element census. CSV: charpoly_code,charpoly,count");
  c_census->add_option("n", n)->required();
  c_census->add_option("q", q)->required();
  c_census->callback([&] { run = [&] { return cmd_census(n, q, cfg); }; });

  auto* c_mu = app.add_subcommand(
      "mu", "Mean element order, exact. CSV: n,q,num,den");
  c_mu->add_option("n", n)->required();
  c_mu->add_option("q", q)->required();
  c_mu->callback([&] { run = [&] { return cmd_mu(n, q, cfg); }; });

  auto* c_ot = app.add_subcommand(
      "omega-table",
      "Characteristic-polynomial distribution table. CSV: code,poly,count,weight_num,weight_den,M,X,X1,X2,T");
  c_ot->add_option("n", n)->required();
  c_ot->add_option("q", q)->required();
  c_ot->callback([&] { run = [&] { return cmd_omega_table(n, q, cfg); }; });

  auto* c_ex = app.add_subcommand(
      "expect", "Exact expectation of a table statistic. CSV: stat,n,q,num,den,log2");
  c_ex->add_option("stat", stat, "one of X, X1, X2, T, M")->required();
  c_ex->add_option("n", n)->required();
  c_ex->add_option("q", q)->required();
  c_ex->callback([&] { run = [&] { return cmd_expect(stat, n, q, cfg); }; });

  auto* c_tm = app.add_subcommand(
      "tail-m", "P(M > xi) against the 40 q^(1-xi) cap. CSV: n,q,xi,prob_num,prob_den,cap_num,cap_den,holds");
  c_tm->add_option("n", n)->required();
  c_tm->add_option("q", q)->required();
  c_tm->add_option("xi", xi)->required();
  c_tm->callback([&] { run = [&] { return cmd_tail_m(n, q, xi, cfg); }; });

  auto* c_pi = app.add_subcommand(
      "pi-sweep", "Reduced divisor of every degree-n table entry. CSV: f,g,h,X,proper");
  c_pi->add_option("n", n)->required();
  c_pi->add_option("q", q)->required();
  c_pi->callback([&] { run = [&] { return cmd_pi_sweep(n, q, cfg); }; });

  auto* c_sl = app.add_subcommand(
      "sub-lemma",
      "Product-measure ratio probe. CSV: n,q,checked,ratio_gt_one,max_ratio_num,max_ratio_den,argmax,k_only_checked,k_only_gt_one,within_ten");
  c_sl->add_option("n", n)->required();
  c_sl->add_option("q", q)->required();
  c_sl->callback([&] { run = [&] { return cmd_sub_lemma(n, q, cfg); }; });

  auto* c_s1 = app.add_subcommand(
      "sigma1", "Distinct-odd-part partition sum, exact. CSV: b,q,num,den");
  c_s1->add_option("b", b)->required();
  c_s1->add_option("q", q)->required();
  c_s1->callback([&] { run = [&] { return cmd_sigma(1, b, q, cfg); }; });

  auto* c_s2 = app.add_subcommand(
      "sigma2", "Distinct-part partition sum, exact. CSV: s,q,num,den");
  c_s2->add_option("s", s)->required();
  c_s2->add_option("q", q)->required();
  c_s2->callback([&] { run = [&] { return cmd_sigma(2, s, q, cfg); }; });

  auto* c_a0 = app.add_subcommand(
      "a0", "Mean of the prime-window Fourier factor. CSV: xi,q,mode,num,den");
  c_a0->add_option("xi", xi)->required();
  c_a0->add_option("q", q)->required();
  c_a0->add_flag("--direct", direct,
                 "Tally residues over one full period instead of the Euler product");
  c_a0->callback([&] { run = [&] { return cmd_a0(xi, q, direct, cfg); }; });

  auto* c_br = app.add_subcommand(
      "bound-report", "Partition-sum upper bound in log space. CSV: b,xi,q,lhs_log,rhs_log,holds");
  c_br->add_option("b", b)->required();
  c_br->add_option("xi", xi)->required();
  c_br->add_option("q", q)->required();
  c_br->callback([&] { run = [&] { return cmd_bound_report(b, xi, q, cfg); }; });

  auto* c_v = app.add_subcommand(
      "verify", "Full acceptance battery; nonzero exit on hard failure. CSV: id,name,pass,hard,detail");
  c_v->add_option("scope", verify_scope)->check(CLI::IsMember({"all"}))->required();
  c_v->callback([&] { run = [&] { return cmd_verify(cfg, hard_fail); }; });

  // let the global --format/--seed/--override-guards appear after the
  // subcommand name as well as before it
  for (CLI::App* sc : app.get_subcommands([](CLI::App*) { return true; }))
    sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    emit(run(), cfg);
  } catch (const GuardError& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return hard_fail ? 1 : 0;
}
