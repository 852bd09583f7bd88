// Command-line front end. JSON on stdout (CSV for enumerate-twists); exit
// status 0 only when every verdict passes, 1 on a failed verdict, 2 on error.
#include <CLI11.hpp>
#include <iostream>

#include "heeg/errors.hpp"
#include "heeg/harness/pipeline.hpp"
#include "heeg/harness/report.hpp"

using namespace heeg;

namespace {

struct Common {
  std::string data;
  long maxBits = kMaxComplexBits;
  std::size_t coeffCap = HeegnerConfig{}.coeffCap;

  HeegnerConfig config() const {
    HeegnerConfig cfg;
    cfg.maxBits = maxBits;
    cfg.coeffCap = coeffCap;
    return cfg;
  }
  std::vector<CurveRecord> records() const { return load_dataset(data.empty() ? default_dataset_path() : data); }
};

void add_heegner_opts(CLI::App* sub, Common& c) {
  sub->add_option("--max-bits", c.maxBits, "largest complex precision tried");
  sub->add_option("--coeff-cap", c.coeffCap, "largest q-expansion length");
}

int emit(const Json& j, bool ok) {
  std::cout << j.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-adic Heegner logarithms, the star assumption and twist congruences"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--data", c.data, "curve dataset (default: bundled data/curves.dat)");

  std::string curve;
  long dK = -7, d = 0, prec = 20, m = 1, xmax = 0, maxFactors = 0, maxConductor = 0;
  int grid = 20, which = 1;
  bool csv = false;

  auto* star = app.add_subcommand("check-star", "Heegner point and the star assumption");
  star->add_option("--curve", curve, "label or a-invariants")->required();
  star->add_option("--dk", dK, "fundamental discriminant of K")->required();
  star->add_option("--prec", prec, "2-adic digits");
  add_heegner_opts(star, c);

  auto* cong = app.add_subcommand("verify-congruence", "congruence of Heegner logs for E and its twist by d");
  cong->add_option("--curve", curve)->required();
  cong->add_option("--twist", d, "fundamental discriminant d")->required();
  cong->add_option("--dk", dK)->required();
  cong->add_option("-m", m, "power of 2 in the congruence");
  cong->add_option("--prec", prec);
  add_heegner_opts(cong, c);

  auto* twists = app.add_subcommand("enumerate-twists", "the twist family N as CSV");
  twists->add_option("--curve", curve)->required();
  twists->add_option("--dk", dK)->required();
  twists->add_option("--xmax", xmax, "bound on |d|")->required();
  twists->add_option("--max-factors", maxFactors, "largest number of prime factors (0 = any)");

  auto* gold = app.add_subcommand("goldfeld-count", "growth of #{d in N : |d| < X}");
  gold->add_option("--curve", curve)->required();
  gold->add_option("--dk", dK)->required();
  gold->add_option("--xmax", xmax)->required();
  gold->add_option("--grid", grid, "grid points");
  bool withStar = false;
  gold->add_flag("--check-star", withStar, "verify star first to label the counts");
  add_heegner_opts(gold, c);

  auto* heeg = app.add_subcommand("heegner-compute", "certified Heegner point over K");
  heeg->add_option("--curve", curve)->required();
  heeg->add_option("--dk", dK)->required();
  heeg->add_option("--twist", d, "compute on the twist by d instead");
  add_heegner_opts(heeg, c);

  auto* bsd = app.add_subcommand("bsd-preconditions", "hypotheses for the BSD(2) transfer to a twist");
  bsd->add_option("--curve", curve)->required();
  bsd->add_option("--dk", dK)->required();
  bsd->add_option("--twist", d)->required();
  bsd->add_option("--prec", prec);
  add_heegner_opts(bsd, c);

  auto* table = app.add_subcommand("table", "reproduce a printed table of star verdicts");
  table->add_option("--which", which)->required()->check(CLI::IsMember({1, 2}));
  table->add_option("--max-conductor", maxConductor, "restrict to conductors up to this bound");
  table->add_flag("--csv", csv, "CSV rows instead of JSON");
  add_heegner_opts(table, c);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cache = ResultCache::from_env();
    if (*star) {
      auto run = run_star(resolve_curve(curve, c.records()), dK, prec, c.config(), cache);
      Json j = to_json(run.star);
      j["heegner"] = to_json(run.point);
      return emit(j, run.star.starHolds);
    }
    if (*cong) {
      auto run = run_congruence(resolve_curve(curve, c.records()), d, dK, m, prec, c.config(), cache);
      Json j = to_json(run.report);
      j["heegner_E"] = to_json(run.P);
      j["heegner_twist"] = to_json(run.Pd);
      j["bsd2"] = to_json(run.bsd);
      const bool ok = run.report.verdict && run.report.normalizedE.is_unit() && run.report.normalizedEp.is_unit();
      return emit(j, ok);
    }
    if (*twists) {
      auto rec = resolve_curve(curve, c.records());
      std::cout << twists_csv(enumerate_twists(rec.curve, dK, xmax, maxFactors));
      return 0;
    }
    if (*gold) {
      auto rec = resolve_curve(curve, c.records());
      std::optional<bool> s;
      if (withStar) s = run_star(rec, dK, prec, c.config(), cache).star.starHolds;
      auto g = goldfeld_count(rec.curve, dK, xmax, grid, s);
      return emit(to_json(g), g.maxRelDeviation <= 0.10);
    }
    if (*heeg) {
      auto rec = resolve_curve(curve, c.records());
      HeegnerPointResult r;
      if (d != 0) {
        auto base = std::make_shared<CachedCoeffSource>(rec.curve, cache);
        TwistCoeffSource tw(base, d);
        r = cached_heegner_point(twist_curve(rec.curve, d), dK, tw, c.config(), std::nullopt, cache);
      } else {
        CachedCoeffSource coeffs(rec.curve, cache);
        r = cached_heegner_point(rec.curve, dK, coeffs, c.config(), rec.known_point(dK), cache);
      }
      Json j = to_json(r);
      j["curve"] = d != 0 ? twist_curve(rec.curve, d).label() : rec.label;
      j["dK"] = dK;
      return emit(j, r.certified);
    }
    if (*bsd) {
      auto rec = resolve_curve(curve, c.records());
      auto run = run_star(rec, dK, prec, c.config(), cache);
      auto b = bsd_preconditions(rec.curve, dK, d, rec.maninOdd, run.star.starHolds);
      return emit(to_json(b), b.overKApplies);
    }
    if (*table) {
      TableOptions opt;
      opt.maxConductor = maxConductor;
      opt.cfg = c.config();
      opt.cache = cache;
      auto rep = reproduce_table(which, c.records(), opt);
      const bool ok = rep.agrees() && rep.checks == rep.printedChecks;
      if (csv) {
        std::cout << table_csv(rep);
        return ok ? 0 : 1;
      }
      return emit(to_json(rep), ok);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
