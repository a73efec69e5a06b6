#include "obsel/catalog.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "obsel/companion.hpp"
#include "obsel/doomsday.hpp"
#include "obsel/errors.hpp"
#include "obsel/fermi.hpp"
#include "obsel/gaussian.hpp"
#include "obsel/recruitment.hpp"

namespace obsel {
namespace {

using Mapping = ScenarioBuilder::Mapping;

ExactProb integer(std::int64_t n) { return ExactProb(n); }

Magnitude half() { return Magnitude::from_double(0.5); }

// Per-observer match probability small enough for the eps|C| -> 0 form.
ExactProb small_epsilon(std::int64_t largest_count) {
  return ExactProb(BigInt(1), BigInt(1000000) * BigInt(std::max<std::int64_t>(1, largest_count)));
}

Posterior under(Rule rule, const Scenario& s, std::string_view cls) {
  return posterior_under(rule, s, cls, FncLikelihood::kSmallProbabilityLimit);
}

// ---- Sleeping Beauty family ----

constexpr std::int64_t kBeauty[2] = {1, 2};
constexpr std::int64_t kPrince[2] = {2, 2};

Scenario beauty_prince_scenario(BeautyPrinceObserver observer, std::optional<std::int64_t> others) {
  std::int64_t d[2];
  switch (observer) {
    case BeautyPrinceObserver::kBeauty: d[0] = 1; d[1] = 2; break;
    case BeautyPrinceObserver::kPrinceBefore: d[0] = 2; d[1] = 2; break;
    case BeautyPrinceObserver::kPrinceSeesBeauty: d[0] = 1; d[1] = 2; break;
  }
  const ExactProb eps = small_epsilon(4 + others.value_or(0));
  ScenarioBuilder b;
  b.hypothesis("Heads", ExactProb(1, 2)).hypothesis("Tails", ExactProb(1, 2));
  b.reference_class("beauty", {{"Heads", kBeauty[0]}, {"Tails", kBeauty[1]}});
  b.reference_class("prince", {{"Heads", kPrince[0]}, {"Tails", kPrince[1]}});
  b.reference_class("both", {{"Heads", kBeauty[0] + kPrince[0]}, {"Tails", kBeauty[1] + kPrince[1]}});
  if (others) {
    b.reference_class("all-humans", {{"Heads", *others + 3}, {"Tails", *others + 4}});
  }
  b.reference_class("matching", {{"Heads", d[0]}, {"Tails", d[1]}});
  b.evidence_counts({{"Heads", d[0]}, {"Tails", d[1]}});
  b.match_probabilities({{"Heads", eps}, {"Tails", eps}});
  return b.build();
}

Posterior beauty_prince_posterior(Rule rule, BeautyPrinceClass cls, BeautyPrinceObserver observer,
                                  std::optional<std::int64_t> others) {
  if (others && *others < 0) throw DomainError("number of other wakenings must be nonnegative");
  if (observer == BeautyPrinceObserver::kPrinceSeesBeauty) {
    // The Prince updates his earlier belief on seeing Beauty awake, which
    // has probability 1/2 under Heads and 1 under Tails.
    const Posterior before = beauty_prince_posterior(rule, cls, BeautyPrinceObserver::kPrinceBefore, others);
    return update(before, "Prince sees Beauty awake", {ExactProb(1, 2), ExactProb(1)});
  }
  const Scenario s = beauty_prince_scenario(observer, others);
  if (rule == Rule::kFnc) return under(rule, s, "matching");
  std::string cls_name;
  switch (cls) {
    case BeautyPrinceClass::kOwn: cls_name = observer == BeautyPrinceObserver::kBeauty ? "beauty" : "prince"; break;
    case BeautyPrinceClass::kBoth: cls_name = "both"; break;
    case BeautyPrinceClass::kAllHumans: cls_name = "all-humans"; break;
  }
  if (cls == BeautyPrinceClass::kAllHumans && !others) {
    // N -> infinity: the class counts N+3 and N+4 become equal and cancel.
    const auto& d = *s.evidence().counts;
    std::vector<LedgerStage> ledger;
    if (rule == Rule::kSsaPlusSia || rule == Rule::kSiaOnly) {
      ledger.push_back({"SIA: |C|", {ExactProb(1), ExactProb(1)}, "all humans, equal counts as N -> infinity"});
    }
    if (rule != Rule::kSiaOnly) ledger.push_back({"SSA: |D|/|C|", d, "all humans, equal counts as N -> infinity"});
    return Posterior(s.names(), s.priors(), std::move(ledger));
  }
  return under(rule, s, cls_name);
}

// ---- Marochnik ----

struct MarochnikCounts {
  Magnitude planet_m, planet_e, star;
};

MarochnikCounts marochnik_counts(MarochnikRegime regime, double f) {
  const Magnitude p = Magnitude::power_of_ten(30);
  const Magnitude fm = Magnitude::from_double(f);
  const Magnitude star = regime == MarochnikRegime::kFew ? fm * p / Magnitude::power_of_ten(12)
                                                         : p * Magnitude::power_of_ten(12);
  return {fm * p, p, star};
}

std::array<MarochnikCell, 5> marochnik_cells(MarochnikRegime regime, Rule rule, MarochnikClass cls, double f,
                                             bool planet_being) {
  const auto c = marochnik_counts(regime, f);
  const Magnitude fm = Magnitude::from_double(f);
  Mapping planets{{"M", c.planet_m}, {"E", c.planet_e}};
  Mapping stars{{"M", c.star}, {"E", c.star}};
  Mapping all{{"M", mag_add(c.planet_m, c.star)}, {"E", mag_add(c.planet_e, c.star)}};
  ScenarioBuilder b;
  b.hypothesis("M", half()).hypothesis("E", half());
  b.reference_class("planet-beings", planets).reference_class("star-beings", stars).reference_class("all", all);
  b.evidence_counts(planet_being ? planets : stars);
  const Scenario s = b.build();
  const std::string cls_name = cls == MarochnikClass::kCombined ? "all" : (planet_being ? "planet-beings" : "star-beings");

  Posterior post = rule == Rule::kSsaPlusSia ? ssa_sia_posterior(s, cls_name) : ssa_posterior(s, cls_name);
  // Companions: every star has star-beings; a star has planet-beings with
  // chance q, and under M only inside the fraction f of the galaxy.
  const Magnitude q = Magnitude::power_of_ten(-6);
  if (planet_being) {
    post = update(post, "companions known", {Magnitude::one(), Magnitude::one()});
  } else {
    post = update(post, "companions known", {fm * q, q});
  }
  post = update(post, "sun location known", {Magnitude::one(), fm});

  const auto odds = post.cumulative_odds("M", "E");
  std::vector<std::optional<Magnitude>> values;
  values.push_back(odds[0].as_magnitude());
  std::size_t next = 1;
  if (rule == Rule::kSsaPlusSia) {
    values.push_back(odds[next++].as_magnitude());
  } else {
    values.push_back(std::nullopt);
  }
  for (; next < odds.size(); ++next) values.push_back(odds[next].as_magnitude());

  std::array<MarochnikCell, 5> out;
  const double lf = std::log10(f);
  for (std::size_t i = 0; i < 5; ++i) {
    if (!values[i]) {
      out[i] = {std::nullopt, std::nan("")};
      continue;
    }
    const double lv = values[i]->log10();
    const std::pair<const char*, double> candidates[] = {{"1", 0.0}, {"f", lf}, {"1/f", -lf}};
    const auto* best = &candidates[0];
    for (const auto& cand : candidates) {
      if (std::abs(lv - cand.second) < std::abs(lv - best->second)) best = &cand;
    }
    std::string symbol = best->first;
    if (std::abs(lv - best->second) > 1e-6) symbol = fmt::format("{:.6g}", std::pow(10.0, lv));
    out[i] = {symbol, std::pow(10.0, lv)};
  }
  return out;
}

// ---- Parameters ----

class ParamReader {
 public:
  explicit ParamReader(const Params& p) : p_(p) {}

  const std::string& raw(std::string_view name) const {
    auto it = p_.find(name);
    if (it == p_.end()) throw ConfigurationError("missing parameter '" + std::string(name) + "'");
    return it->second;
  }

  Quantity number(std::string_view name) const {
    try {
      return Quantity::parse(raw(name));
    } catch (const DomainError& e) {
      throw ConfigurationError("parameter '" + std::string(name) + "': " + e.what());
    }
  }

  std::int64_t integer(std::string_view name) const {
    const Quantity q = number(name);
    if (!q.is_exact() || !q.exact().is_integer() || q.exact().numerator() > BigInt(INT64_MAX)) {
      throw ConfigurationError("parameter '" + std::string(name) + "' must be a nonnegative integer");
    }
    return static_cast<std::int64_t>(q.exact().numerator());
  }

  std::uint64_t count(std::string_view name) const {
    const Quantity q = number(name);
    if (!q.is_exact() || !q.exact().is_integer() || q.exact().numerator() > BigInt(UINT64_MAX)) {
      throw ConfigurationError("parameter '" + std::string(name) + "' must be a nonnegative integer");
    }
    return static_cast<std::uint64_t>(q.exact().numerator());
  }

  Magnitude magnitude(std::string_view name) const { return number(name).as_magnitude(); }
  double real(std::string_view name) const {
    const std::string& v = raw(name);
    if (!v.empty() && v.front() == '-') return -Quantity::parse(v.substr(1)).to_double();
    return number(name).to_double();
  }
  Rule rule(std::string_view name) const { return parse_rule(raw(name)); }

  bool flag(std::string_view name) const {
    const auto& v = raw(name);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigurationError("parameter '" + std::string(name) + "' must be true or false");
  }

  std::string choice(std::string_view name, std::initializer_list<std::string_view> options) const {
    const auto& v = raw(name);
    for (auto o : options) {
      if (v == o) return v;
    }
    std::string known;
    for (auto o : options) known += (known.empty() ? "" : ", ") + std::string(o);
    throw ConfigurationError("parameter '" + std::string(name) + "' must be one of " + known);
  }

 private:
  const Params& p_;
};

Output value_output(std::string name, const Quantity& q) { return {std::move(name), q, to_display(q)}; }
Output text_output(std::string name, std::string text) { return {std::move(name), std::nullopt, std::move(text)}; }

RunResult heads_result(const Posterior& p) {
  RunResult r;
  r.outputs.push_back(value_output("P(Heads)", p.exact_prob("Heads")));
  r.posterior = p;
  return r;
}

ExpectedResult exp(Params params, std::string output, std::string expected, std::string location,
                   Compare compare = Compare::kExact, double tolerance = 0.0) {
  return {std::move(params), std::move(output), std::move(expected), compare, tolerance, std::move(location)};
}

// ---- Entries ----

CatalogEntry sleeping_beauty_entry() {
  CatalogEntry e;
  e.name = "sleeping_beauty";
  e.summary = "Beauty wakes once on Heads and twice on Tails; P(Heads) on wakening";
  e.params = {{"heads_wakenings", "1", "wakenings if Heads"},
              {"tails_wakenings", "2", "wakenings if Tails"},
              {"rule", "fnc", "ssa-sia, ssa+sia, fnc or sia"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    const Scenario s = sleeping_beauty_scenario(r.integer("heads_wakenings"), r.integer("tails_wakenings"));
    return heads_result(under(r.rule("rule"), s, "wakenings"));
  };
  e.expected = {
      exp({{"rule", "fnc"}}, "P(Heads)", "1/3", "Sleeping Beauty, FNC"),
      exp({{"rule", "ssa+sia"}}, "P(Heads)", "1/3", "Sleeping Beauty, SSA+SIA"),
      exp({{"rule", "ssa-sia"}}, "P(Heads)", "1/2", "Sleeping Beauty, SSA-SIA with Beauty's wakenings as class"),
      exp({{"tails_wakenings", "1"}, {"rule", "ssa+sia"}}, "P(Heads)", "1/2", "symmetric wakenings"),
  };
  return e;
}

BeautyPrinceClass bp_class(const std::string& s) {
  if (s == "own") return BeautyPrinceClass::kOwn;
  if (s == "both") return BeautyPrinceClass::kBoth;
  return BeautyPrinceClass::kAllHumans;
}

BeautyPrinceObserver bp_observer(const std::string& s) {
  if (s == "beauty") return BeautyPrinceObserver::kBeauty;
  if (s == "prince") return BeautyPrinceObserver::kPrinceBefore;
  return BeautyPrinceObserver::kPrinceSeesBeauty;
}

CatalogEntry beauty_and_prince_entry() {
  CatalogEntry e;
  e.name = "beauty_and_prince";
  e.summary = "Beauty with a Prince who wakes both days; P(Heads) for each observer";
  e.params = {{"rule", "ssa-sia", "ssa-sia, ssa+sia, fnc or sia"},
              {"class", "both", "own, both or all-humans"},
              {"observer", "beauty", "beauty, prince or prince-sees-beauty"},
              {"others", "inf", "other wakenings N in the all-humans class, or inf for the limit"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    std::optional<std::int64_t> others;
    if (r.raw("others") != "inf") others = r.integer("others");
    return heads_result(beauty_prince_posterior(r.rule("rule"), bp_class(r.choice("class", {"own", "both", "all-humans"})),
                                                bp_observer(r.choice("observer", {"beauty", "prince", "prince-sees-beauty"})),
                                                others));
  };
  e.expected = {
      exp({}, "P(Heads)", "2/5", "Beauty and Prince, Beauty, class of both"),
      exp({{"observer", "prince"}}, "P(Heads)", "4/7", "Beauty and Prince, Prince before seeing Beauty"),
      exp({{"observer", "prince-sees-beauty"}}, "P(Heads)", "2/5", "Beauty and Prince, Prince after seeing Beauty"),
      exp({{"class", "all-humans"}}, "P(Heads)", "1/3", "Beauty and Prince, broad class limit"),
      exp({{"class", "all-humans"}, {"observer", "prince"}}, "P(Heads)", "1/2", "broad class limit, Prince"),
      exp({{"class", "all-humans"}, {"observer", "prince-sees-beauty"}}, "P(Heads)", "1/3",
          "broad class limit, Prince after seeing Beauty"),
      exp({{"class", "all-humans"}, {"others", "0"}}, "P(Heads)", "2/5", "broad class with N = 0"),
      exp({{"class", "all-humans"}, {"others", "996"}}, "P(Heads)", "500/1499", "broad class, finite N"),
  };
  return e;
}

CatalogEntry told_monday_entry() {
  CatalogEntry e;
  e.name = "told_monday";
  e.summary = "Beauty is told it is Monday; P(Heads) for each stance";
  e.params = {{"stance", "halfer", "halfer or thirder"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    const Stance st = r.choice("stance", {"halfer", "thirder"}) == "halfer" ? Stance::kHalfer : Stance::kThirder;
    RunResult out;
    out.outputs.push_back(value_output("P(Heads)", told_monday(st)));
    return out;
  };
  e.expected = {
      exp({{"stance", "halfer"}}, "P(Heads)", "2/3", "told it is Monday, halfer"),
      exp({{"stance", "thirder"}}, "P(Heads)", "1/2", "told it is Monday, thirder"),
  };
  return e;
}

CatalogEntry sailors_child_entry() {
  CatalogEntry e;
  e.name = "sailors_child";
  e.summary = "One child on Heads, two on Tails; P(you are the only child)";
  e.params = {{"guidebook", "false", "whether you know your city is listed first"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    const bool g = r.flag("guidebook");
    return heads_result(under(Rule::kFnc, sailors_child_scenario(g), "children"));
  };
  e.expected = {
      exp({{"guidebook", "false"}}, "P(Heads)", "1/3", "Sailor's Child without the guidebook"),
      exp({{"guidebook", "true"}}, "P(Heads)", "1/2", "Sailor's Child with the guidebook"),
  };
  return e;
}

CatalogEntry recruitment_entry() {
  CatalogEntry e;
  e.name = "recruitment";
  e.summary = "1..pool_max subjects flip seq_len coins; P(N=n) after seeing your sequence";
  e.params = {{"pool_max", "20", "largest possible number of subjects"},
              {"seq_len", "3", "coin flips per subject"},
              {"update", "fnc", "invalid, indexical or fnc"},
              {"epsilon", "1/1000000", "per-subject match probability for fnc"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    const auto pool = r.count("pool_max");
    const auto kind = r.choice("update", {"invalid", "indexical", "fnc"});
    Posterior post = kind == "invalid"     ? recruitment_invalid_update(pool, r.count("seq_len"))
                     : kind == "indexical" ? recruitment_indexical_update(pool)
                                           : [&] {
                                               const Quantity eps = r.number("epsilon");
                                               if (!eps.is_exact()) throw ConfigurationError("epsilon must be exact");
                                               return fnc_posterior(recruitment_scenario(pool, eps.exact()), "subjects",
                                                                    FncLikelihood::kSmallProbabilityLimit);
                                             }();
    RunResult out;
    for (std::uint64_t n = 1; n <= pool; ++n) {
      if (pool > 50 && n != 1 && n != pool) continue;
      const std::string name = "N=" + std::to_string(n);
      if (post.exact_probs()) {
        out.outputs.push_back(value_output("P(" + name + ")", post.exact_prob(name)));
      } else {
        out.outputs.push_back(value_output("P(" + name + ")", Magnitude::from_double(post.prob(name))));
      }
    }
    if (kind == "invalid") out.notes.push_back(kKnownInvalidNote);
    out.posterior = std::move(post);
    return out;
  };
  e.expected = {
      exp({{"update", "invalid"}}, "P(N=1)", "0.0093", "recruitment, invalid update", Compare::kSignificant, 2),
      exp({{"update", "invalid"}}, "P(N=20)", "0.069", "recruitment, invalid update", Compare::kSignificant, 2),
      exp({{"update", "indexical"}}, "P(N=1)", "1/210", "recruitment, indexical update"),
      exp({{"update", "indexical"}}, "P(N=20)", "20/210", "recruitment, indexical update"),
      exp({{"update", "indexical"}}, "P(N=1)", "0.0048", "recruitment, indexical update", Compare::kSignificant, 2),
      exp({{"update", "indexical"}}, "P(N=20)", "0.0952", "recruitment, indexical update", Compare::kSignificant, 3),
      exp({{"update", "fnc"}}, "P(N=1)", "1/210", "recruitment, non-indexical update"),
      exp({{"update", "fnc"}}, "P(N=20)", "20/210", "recruitment, non-indexical update"),
  };
  return e;
}

CatalogEntry doomsday_entry() {
  CatalogEntry e;
  e.name = "doomsday";
  e.summary = "Two hypotheses for the total number of humans, given your birth rank";
  e.params = {{"small", "1e11", "total humans under the early-doom hypothesis"},
              {"large", "1e14", "total humans under the late-doom hypothesis"},
              {"prior_large", "1/2", "prior probability of the large total"},
              {"rank", "6e10", "your birth rank"},
              {"mode", "doom", "doom, nodoom or sia-then-doom"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    const auto small = r.count("small");
    const auto large = r.count("large");
    const Quantity pl = r.number("prior_large");
    if (!pl.is_exact() || ExactProb(1) < pl.exact()) throw ConfigurationError("prior_large must be an exact probability");
    const CountPrior prior{{small, ExactProb(1) - pl.exact()}, {large, pl}};
    const auto rank = r.count("rank");
    const auto mode = r.choice("mode", {"doom", "nodoom", "sia-then-doom"});
    Posterior post = mode == "doom"     ? doomsday_posterior(prior, rank)
                     : mode == "nodoom" ? nodoom_posterior(prior, rank)
                                        : doomsday_posterior(sia_reweight(prior), rank);
    const std::string ls = "N=" + std::to_string(large);
    const std::string ss = "N=" + std::to_string(small);
    RunResult out;
    out.outputs.push_back(value_output("P(large)", post.exact_prob(ls)));
    if (!post.weights()[post.index_of(ss)].is_zero()) {
      out.outputs.push_back(value_output("prior odds(large:small)", post.cumulative_odds(ls, ss).front()));
      out.outputs.push_back(value_output("odds(large:small)", post.odds(ls, ss)));
    }
    out.posterior = std::move(post);
    return out;
  };
  e.expected = {
      exp({}, "P(large)", "1/1001", "Doomsday, two hypotheses"),
      exp({}, "P(large)", "0.000999001", "Doomsday, two hypotheses", Compare::kSignificant, 6),
      exp({}, "odds(large:small)", "1/1000", "Doomsday, odds change from 1"),
      exp({{"mode", "nodoom"}}, "P(large)", "1/2", "no-doom probabilities equal the prior"),
      exp({{"mode", "sia-then-doom"}}, "P(large)", "1/2", "SIA then Doomsday gives the no-doom probabilities"),
      exp({{"small", "2e11"}, {"rank", "1.6e11"}}, "odds(large:small)", "1/500",
          "Doomsday after the China revision of birth rank"),
  };
  return e;
}

CatalogEntry jupiter_entry() {
  CatalogEntry e;
  e.name = "jupiter";
  e.summary = "Being human when Jupiter may hold many more observers";
  e.params = {{"humans", "1e12", "humans that will ever live"},
              {"total", "1e16", "all observers if Jupiter is inhabited"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    const auto humans = r.count("humans");
    const auto total = r.count("total");
    const CountPrior prior{{humans, ExactProb(1, 2)}, {total, ExactProb(1, 2)}};
    Posterior post = generalized_doomsday(prior, humans);
    RunResult out;
    out.outputs.push_back(
        value_output("odds(inhabited:uninhabited)", post.odds("N=" + std::to_string(total), "N=" + std::to_string(humans))));
    out.posterior = std::move(post);
    return out;
  };
  e.expected = {exp({}, "odds(inhabited:uninhabited)", "1/10000", "Jupiter inhabited, generalized Doomsday")};
  return e;
}

CatalogEntry companion_entry() {
  CatalogEntry e;
  e.name = "companion";
  e.summary = "Odds for theory A over B for an observer who sees a companion of the other type";
  e.params = {{"type", "X", "X or Y"},       {"xa", "1", "|X| under A"}, {"ya", "2", "|Y| under A"},
              {"xb", "3", "|X| under B"},    {"yb", "1", "|Y| under B"}, {"class", "own", "own or combined"},
              {"rule", "ssa-sia", "ssa-sia, ssa+sia or fnc"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    const ObserverType t = r.choice("type", {"X", "Y"}) == "X" ? ObserverType::kX : ObserverType::kY;
    const bool own = r.choice("class", {"own", "combined"}) == "own";
    RunResult out;
    out.outputs.push_back(value_output(
        "odds(A:B)", companion_odds(t, {r.number("xa"), r.number("ya"), r.number("xb"), r.number("yb")}, own, r.rule("rule"))));
    return out;
  };
  e.expected = {
      exp({}, "odds(A:B)", "3", "companion odds, own class"),
      exp({{"xa", "2"}, {"ya", "2"}, {"xb", "5"}, {"yb", "5"}, {"type", "Y"}}, "odds(A:B)", "1", "symmetric counts"),
      exp({{"class", "combined"}}, "odds(A:B)", "4/3", "combined class, X-type"),
      exp({{"class", "combined"}, {"type", "Y"}}, "odds(A:B)", "4/3", "combined class, Y-type agrees"),
      exp({{"rule", "ssa+sia"}}, "odds(A:B)", "1", "own class with SIA, X-type"),
      exp({{"rule", "ssa+sia"}, {"type", "Y"}}, "odds(A:B)", "1", "own class with SIA, Y-type"),
  };
  return e;
}

// Rows of both tables: regime, rule, class, planet column, star column.
struct TableColumn {
  const char* regime;
  const char* rule;
  const char* cls;
  std::array<const char*, 5> planet;
  std::array<const char*, 5> star;
};

constexpr TableColumn kMarochnikTables[] = {
    {"few", "ssa-sia", "own", {"1", "-", "1", "1", "1/f"}, {"1", "-", "1", "f", "1"}},
    {"few", "ssa+sia", "own", {"1", "f", "f", "f", "1"}, {"1", "1", "1", "f", "1"}},
    {"few", "ssa-sia", "combined", {"1", "-", "1", "1", "1/f"}, {"1", "-", "1/f", "1", "1/f"}},
    {"few", "ssa+sia", "combined", {"1", "f", "f", "f", "1"}, {"1", "f", "1", "f", "1"}},
    {"many", "ssa-sia", "own", {"1", "-", "1", "1", "1/f"}, {"1", "-", "1", "f", "1"}},
    {"many", "ssa+sia", "own", {"1", "f", "f", "f", "1"}, {"1", "1", "1", "f", "1"}},
    {"many", "ssa-sia", "combined", {"1", "-", "f", "f", "1"}, {"1", "-", "1", "f", "1"}},
    {"many", "ssa+sia", "combined", {"1", "1", "f", "f", "1"}, {"1", "1", "1", "f", "1"}},
};

constexpr const char* kStageKeys[5] = {"prior", "sia", "ssa", "companions", "location"};

CatalogEntry marochnik_entry() {
  CatalogEntry e;
  e.name = "marochnik";
  e.summary = "Odds for Marochnik's theory by planet-beings and star-beings, stage by stage";
  e.params = {{"regime", "few", "few or many star-beings"},
              {"rule", "ssa-sia", "ssa-sia or ssa+sia"},
              {"class", "own", "own or combined"},
              {"f", "1/10", "fraction of the galaxy where Marochnik allows planets"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    const auto regime = r.choice("regime", {"few", "many"}) == "few" ? MarochnikRegime::kFew : MarochnikRegime::kMany;
    const auto cls = r.choice("class", {"own", "combined"}) == "own" ? MarochnikClass::kOwnType : MarochnikClass::kCombined;
    const auto col = marochnik_table(regime, r.rule("rule"), cls, r.real("f"));
    RunResult out;
    for (int being = 0; being < 2; ++being) {
      const auto& cells = being == 0 ? col.planet : col.star;
      for (std::size_t i = 0; i < 5; ++i) {
        out.outputs.push_back(text_output(std::string(being == 0 ? "planet:" : "star:") + kStageKeys[i],
                                          cells[i].symbol.value_or("-")));
      }
    }
    return out;
  };
  for (const auto& t : kMarochnikTables) {
    for (int being = 0; being < 2; ++being) {
      const auto& cells = being == 0 ? t.planet : t.star;
      for (std::size_t i = 0; i < 5; ++i) {
        e.expected.push_back(exp({{"regime", t.regime}, {"rule", t.rule}, {"class", t.cls}},
                                 std::string(being == 0 ? "planet:" : "star:") + kStageKeys[i], cells[i],
                                 fmt::format("Marochnik table, star-beings {}, {} class, {}",
                                             std::string(t.regime) == "few" ? "less numerous" : "more numerous",
                                             t.cls, t.rule),
                                 Compare::kText));
      }
    }
  }
  return e;
}

CatalogEntry bacteria_entry() {
  CatalogEntry e;
  e.name = "bacteria";
  e.summary = "Odds multiplier for the theory that bacteria are intelligent observers";
  e.params = {{"rule", "sia", "sia, fnc, ssa-sia or ssa+sia"}, {"ratio", "10^21", "bacteria per human"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    RunResult out;
    out.outputs.push_back(value_output("odds multiplier", bacteria_odds(r.rule("rule"), r.magnitude("ratio"))));
    return out;
  };
  const char* where = "intelligent bacteria";
  e.expected = {
      exp({{"rule", "sia"}}, "odds multiplier", "10^21", where, Compare::kLog10Absolute, 1e-9),
      exp({{"rule", "fnc"}}, "odds multiplier", "10^0", where, Compare::kLog10Absolute, 1e-9),
      exp({{"rule", "ssa-sia"}}, "odds multiplier", "10^-21", where, Compare::kLog10Absolute, 1e-9),
      exp({{"rule", "ssa+sia"}}, "odds multiplier", "10^0", where, Compare::kLog10Absolute, 1e-9),
  };
  return e;
}

CatalogEntry duplicate_threshold_entry() {
  CatalogEntry e;
  e.name = "duplicate_threshold";
  e.summary = "How much larger than the observable universe must the universe be to likely hold your duplicate";
  e.params = {{"genome_variable_sites", "3e5", "effectively variable base pairs"},
              {"memory_bits", "1e11", "bits of memory"},
              {"planets", "10^22", "life-bearing planets in the observable universe"},
              {"per_planet_observers", "10^10", "observers per planet per generation"},
              {"generations", "10^10", "generations"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    DuplicateThresholdParams d;
    d.genome_variable_sites = r.real("genome_variable_sites");
    d.memory_bits = r.real("memory_bits");
    d.planets = r.magnitude("planets");
    d.per_planet_observers = r.magnitude("per_planet_observers");
    d.generations = r.magnitude("generations");
    const auto t = duplicate_threshold(d);
    RunResult out;
    out.outputs.push_back(value_output("factor", t.factor));
    out.outputs.push_back(value_output("factor (memory exponent to 1 significant figure)", t.factor_rounded));
    out.outputs.push_back(value_output("memory combinations", t.memory_combinations));
    out.outputs.push_back(value_output("genomes", t.genomes));
    out.outputs.push_back(value_output("observers", t.observers));
    out.outputs.push_back(text_output("regime", t.factor_at_most_one ? "factor <= 1" : "factor > 1"));
    return out;
  };
  const char* where = "size of universe needed for a duplicate of you";
  e.expected = {
      exp({}, "factor (memory exponent to 1 significant figure)", "10^29999999958", where, Compare::kLog10Absolute, 1e-3),
      exp({}, "memory combinations", "10^30000000000", where, Compare::kLog10Significant, 1),
      exp({}, "genomes", "10^180000", where, Compare::kLog10Significant, 2),
      exp({}, "observers", "10^42", where, Compare::kLog10Absolute, 1e-9),
      exp({}, "regime", "factor > 1", where, Compare::kText),
      exp({{"memory_bits", "0"}}, "regime", "factor <= 1", "no memory diversity", Compare::kText),
  };
  return e;
}

LandscapeComparison landscape_comparison(const std::string& s) {
  if (s == "L-vs-S1") return LandscapeComparison::kLvsS1;
  if (s == "L-vs-SD") return LandscapeComparison::kLvsSD;
  return LandscapeComparison::kLvsSstarSplit;
}

CatalogEntry landscape_entry() {
  CatalogEntry e;
  e.name = "landscape";
  e.summary = "Odds for a landscape theory L against single-law rivals";
  e.params = {{"comparison", "L-vs-S1", "L-vs-S1, L-vs-SD or L-vs-Sstar-split"},
              {"rule", "fnc", "fnc, ssa-sia or ssa+sia"},
              {"valleys", "10^500", "valleys in the landscape"},
              {"life_valleys", "10^10", "valleys allowing intelligent life"},
              {"memory_valleys", "10^6", "valleys compatible with your memories"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    LandscapeParams lp{r.magnitude("valleys"), r.magnitude("life_valleys"), r.magnitude("memory_valleys")};
    auto res = landscape(landscape_comparison(r.choice("comparison", {"L-vs-S1", "L-vs-SD", "L-vs-Sstar-split"})),
                         r.rule("rule"), lp);
    RunResult out;
    out.outputs.push_back(value_output("odds(L)", res.odds_for_l));
    out.outputs.push_back(value_output("P(rival)", res.rival_probability));
    out.posterior = std::move(res.posterior);
    return out;
  };
  const double tol = 1e-9;
  e.expected = {
      exp({{"rule", "fnc"}}, "odds(L)", "10^-494", "landscape versus one valley, FNC", Compare::kLog10Absolute, tol),
      exp({{"rule", "ssa-sia"}}, "odds(L)", "10^-4", "landscape versus one valley, SSA-SIA", Compare::kLog10Absolute, tol),
      exp({{"comparison", "L-vs-SD"}, {"rule", "fnc"}}, "odds(L)", "10^-490", "landscape versus a designer, FNC",
          Compare::kLog10Absolute, tol),
      exp({{"comparison", "L-vs-SD"}, {"rule", "ssa-sia"}}, "odds(L)", "10^0", "landscape versus a designer, SSA-SIA",
          Compare::kLog10Absolute, tol),
      exp({{"comparison", "L-vs-Sstar-split"}, {"rule", "ssa-sia"}}, "odds(L)", "10^490",
          "landscape versus one unknown consistent law, SSA-SIA", Compare::kLog10Absolute, tol),
      exp({{"comparison", "L-vs-Sstar-split"}, {"rule", "ssa-sia"}}, "P(rival)", "10^-490",
          "sub-theories of the unknown law, SSA-SIA", Compare::kLog10Absolute, 1e-6),
      exp({{"comparison", "L-vs-Sstar-split"}, {"rule", "fnc"}}, "odds(L)", "10^0",
          "landscape versus one unknown consistent law, FNC", Compare::kLog10Absolute, tol),
      exp({{"memory_valleys", "10^500"}, {"life_valleys", "10^500"}}, "odds(L)", "10^0", "indistinguishable theories",
          Compare::kLog10Absolute, tol),
  };
  return e;
}

CatalogEntry fermi_prior_entry() {
  CatalogEntry e;
  e.name = "fermi_prior";
  e.summary = "Prior intervals for p, f and a sub-factor of p";
  e.params = {{"sd10_p", "1.25", "sd of log10 p"},
              {"sd10_f", "0.75", "sd of log10 f"},
              {"factor_mean10", "-1", "mean of log10 of the sub-factor"},
              {"factor_sd10", "0.2", "sd of log10 of the sub-factor"},
              {"coverage", "0.95", "central interval coverage"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    const double cov = r.real("coverage");
    const Gaussian10 factor{r.real("factor_mean10"), r.real("factor_sd10")};
    const auto [lo, hi] = central_interval(factor, cov);
    const auto [plo, phi] = central_interval({0.0, r.real("sd10_p")}, cov);
    const auto [flo, fhi] = central_interval({0.0, r.real("sd10_f")}, cov);
    RunResult out;
    out.outputs.push_back(value_output("p1 interval low", Magnitude::from_double(lo)));
    out.outputs.push_back(value_output("p1 interval high", Magnitude::from_double(hi)));
    out.outputs.push_back(value_output("p1 prior mean", Magnitude::from_double(lognormal_mean(factor))));
    out.outputs.push_back(value_output("p interval span", Magnitude::from_double(phi / plo)));
    out.outputs.push_back(value_output("f interval span", Magnitude::from_double(fhi / flo)));
    return out;
  };
  const char* where = "Fermi model prior";
  e.expected = {
      exp({}, "p1 interval low", "0.041", where, Compare::kSignificant, 2),
      exp({}, "p1 interval high", "0.247", where, Compare::kSignificant, 3),
      exp({}, "p1 prior mean", "0.111", where, Compare::kSignificant, 3),
      exp({}, "p interval span", "10^5", where, Compare::kLog10Significant, 1),
      exp({}, "f interval span", "10^3", where, Compare::kLog10Significant, 1),
  };
  return e;
}

CatalogEntry fermi_factor_v0_entry() {
  CatalogEntry e;
  e.name = "fermi_factor_v0";
  e.summary = "Posterior of sub-factors p1 of p and f1 of f with no interference (V = 0), in closed form";
  e.params = {{"factor_mean10", "-1", "mean of log10 of each sub-factor"},
              {"factor_sd10", "0.2", "sd of log10 of each sub-factor"}};
  e.run = [](const Params& p) {
    ParamReader r(p);
    const FermiPrior prior;
    RunResult out;
    for (const auto parent : {FactorParent::kP, FactorParent::kF}) {
      const auto s = factor_posterior_analytic(prior, {r.real("factor_mean10"), r.real("factor_sd10"), parent, {}});
      const std::string n = parent == FactorParent::kP ? "p1" : "f1";
      out.outputs.push_back(value_output(n + " median", Magnitude::from_log10(s.mean10)));
      out.outputs.push_back(text_output(n + " mean10", fmt::format("{:.6f}", s.mean10)));
      out.outputs.push_back(text_output(n + " sd10", fmt::format("{:.6f}", s.sd10)));
      out.outputs.push_back(value_output(n + " mean", Magnitude::from_double(s.mean_value)));
    }
    return out;
  };
  const char* where = "Fermi model, sub-factor posterior with V = 0";
  e.expected = {
      exp({}, "p1 median", "0.1236", where, Compare::kSignificant, 4),
      exp({}, "p1 mean", "0.137", where, Compare::kSignificant, 3),
      exp({}, "f1 mean", "0.111", where, Compare::kSignificant, 3),
  };
  return e;
}

double round_significant(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
  return std::round(x * scale) / scale;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

// ---- Typed builders ----

Scenario sleeping_beauty_scenario(std::int64_t heads_wakenings, std::int64_t tails_wakenings) {
  if (heads_wakenings < 1 || tails_wakenings < 1) throw DomainError("wakening counts must be at least 1");
  const ExactProb eps = small_epsilon(std::max(heads_wakenings, tails_wakenings));
  Mapping w{{"Heads", integer(heads_wakenings)}, {"Tails", integer(tails_wakenings)}};
  ScenarioBuilder b;
  b.hypothesis("Heads", ExactProb(1, 2)).hypothesis("Tails", ExactProb(1, 2));
  b.reference_class("wakenings", w).evidence_counts(w).match_probabilities({{"Heads", eps}, {"Tails", eps}});
  return b.build();
}

ExactProb sleeping_beauty(std::int64_t heads_wakenings, std::int64_t tails_wakenings, Rule rule) {
  return under(rule, sleeping_beauty_scenario(heads_wakenings, tails_wakenings), "wakenings").exact_prob("Heads");
}

ExactProb beauty_and_prince(Rule rule, BeautyPrinceClass cls, BeautyPrinceObserver observer,
                            std::optional<std::int64_t> others) {
  return beauty_prince_posterior(rule, cls, observer, others).exact_prob("Heads");
}

ExactProb told_monday(Stance stance) {
  ScenarioBuilder b;
  b.hypothesis("Heads", ExactProb(1, 2)).hypothesis("Tails", ExactProb(1, 2));
  b.reference_class("wakenings", {{"Heads", 1}, {"Tails", 2}});
  b.evidence_counts({{"Heads", 1}, {"Tails", 1}});  // Monday wakenings
  const Scenario s = b.build();
  const Posterior p = stance == Stance::kHalfer ? ssa_posterior(s, "wakenings") : ssa_sia_posterior(s, "wakenings");
  return p.exact_prob("Heads");
}

Scenario sailors_child_scenario(bool knows_guidebook) {
  // Class: the Sailor's children. Each child has your memories with
  // probability eps times the chance that their mother is yours, which is
  // 1/2 for the only child under Heads unless the guidebook settles it.
  const ExactProb eps = small_epsilon(2);
  const ExactProb half_eps = eps * ExactProb(1, 2);
  ScenarioBuilder b;
  b.hypothesis("Heads", ExactProb(1, 2)).hypothesis("Tails", ExactProb(1, 2));
  b.reference_class("children", {{"Heads", 1}, {"Tails", 2}});
  b.match_probabilities({{"Heads", knows_guidebook ? eps : half_eps}, {"Tails", half_eps}});
  return b.build();
}

ExactProb sailors_child(bool knows_guidebook) {
  return under(Rule::kFnc, sailors_child_scenario(knows_guidebook), "children").exact_prob("Heads");
}

MarochnikColumn marochnik_table(MarochnikRegime regime, Rule rule, MarochnikClass cls, double f) {
  if (!(f > 0.0 && f <= 1.0)) throw DomainError("f must lie in (0, 1]");
  if (rule != Rule::kSsaMinusSia && rule != Rule::kSsaPlusSia) {
    throw ConfigurationError("the Marochnik tables cover ssa-sia and ssa+sia only");
  }
  return {marochnik_cells(regime, rule, cls, f, true), marochnik_cells(regime, rule, cls, f, false)};
}

Quantity bacteria_odds(Rule rule, Magnitude ratio) {
  if (ratio.is_zero()) throw DomainError("ratio must be positive");
  // Humans normalized to one observer; eps is each observer's chance of
  // sharing your memories, diluted by the bacteria under that theory.
  const Magnitude eps = Magnitude::power_of_ten(-30);
  ScenarioBuilder b;
  b.hypothesis("bacteria intelligent", half()).hypothesis("bacteria not intelligent", half());
  b.reference_class("observers", {{"bacteria intelligent", ratio}, {"bacteria not intelligent", Magnitude::one()}});
  b.evidence_counts({{"bacteria intelligent", Magnitude::one()}, {"bacteria not intelligent", Magnitude::one()}});
  b.match_probabilities({{"bacteria intelligent", eps / ratio}, {"bacteria not intelligent", eps}});
  return under(rule, b.build(), "observers").odds("bacteria intelligent", "bacteria not intelligent");
}

DuplicateThreshold duplicate_threshold(const DuplicateThresholdParams& p) {
  if (!(p.genome_variable_sites >= 0.0) || !(p.memory_bits >= 0.0)) throw DomainError("counts must be nonnegative");
  if (p.planets.is_zero() || p.per_planet_observers.is_zero() || p.generations.is_zero()) {
    throw DomainError("planets, observers and generations must be positive");
  }
  DuplicateThreshold t;
  const double memory10 = p.memory_bits * std::log10(2.0);
  t.memory_combinations = Magnitude::from_log10(memory10);
  t.genomes = Magnitude::from_log10(p.genome_variable_sites * std::log10(4.0));
  t.observers = p.planets * p.per_planet_observers * p.generations;
  t.factor = t.memory_combinations / t.observers;
  t.factor_rounded = Magnitude::from_log10(round_significant(memory10, 1)) / t.observers;
  t.factor_at_most_one = t.factor.log10() <= 0.0;
  return t;
}

Scenario landscape_scenario(LandscapeComparison comparison, const LandscapeParams& p) {
  if (p.memory_valleys > p.life_valleys || p.life_valleys > p.valleys || p.valleys.is_zero()) {
    throw DomainError("need memory_valleys <= life_valleys <= valleys, with valleys > 0");
  }
  // One population of observers per universe with life; delta is each
  // observer's chance of having your memories given compatible laws.
  const Magnitude delta = Magnitude::power_of_ten(-20);
  const Magnitude one = Magnitude::one();
  const Magnitude zero = Magnitude::zero();
  const Magnitude v = p.valleys;
  const Magnitude lv = p.life_valleys;
  const Magnitude mv = p.memory_valleys;
  const Magnitude fit_given_life = lv.is_zero() ? zero : mv / lv;

  ScenarioBuilder b;
  Mapping c, d, eps;
  auto add = [&](const std::string& name, Magnitude prior, Magnitude cls, Magnitude ev, Magnitude e) {
    b.hypothesis(name, prior);
    c.emplace_back(name, cls);
    d.emplace_back(name, ev);
    eps.emplace_back(name, e);
  };
  add("L", half(), lv / v, mv / v, delta * fit_given_life);
  switch (comparison) {
    case LandscapeComparison::kLvsS1:
      add("S1", half(), one, one, delta);
      break;
    case LandscapeComparison::kLvsSD:
      add("SD", half(), one, fit_given_life, delta * fit_given_life);
      break;
    case LandscapeComparison::kLvsSstarSplit:
      add("S*: laws fit your memories", half() * mv / v, one, one, delta);
      add("S*: laws allow life only", half() * mag_sub(lv, mv) / v, one, zero, zero);
      add("S*: laws forbid life", half() * mag_sub(v, lv) / v, zero, zero, zero);
      break;
  }
  b.reference_class("observers", c).evidence_counts(d).match_probabilities(eps);
  return b.build();
}

LandscapeResult landscape(LandscapeComparison comparison, Rule rule, const LandscapeParams& params) {
  Posterior post = under(rule, landscape_scenario(comparison, params), "observers");
  const auto w = post.weights();
  std::vector<Magnitude> rival;
  for (std::size_t i = 1; i < w.size(); ++i) rival.push_back(w[i].as_magnitude());
  const Magnitude wl = w[0].as_magnitude();
  const Magnitude wr = mag_sum(rival);
  if (wr.is_zero()) throw DegenerateEvidenceError("rival theory has zero posterior weight");
  return {std::move(post), wl / wr, wr / mag_add(wl, wr)};
}

Magnitude landscape_odds(LandscapeComparison comparison, Rule rule, const LandscapeParams& params) {
  return landscape(comparison, rule, params).odds_for_l;
}

// ---- Registry ----

const Output& RunResult::output(std::string_view name) const {
  for (const auto& o : outputs) {
    if (o.name == name) return o;
  }
  throw ConfigurationError("no output named '" + std::string(name) + "'");
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      sleeping_beauty_entry(), beauty_and_prince_entry(), told_monday_entry(),   sailors_child_entry(),
      recruitment_entry(),     doomsday_entry(),          jupiter_entry(),       companion_entry(),
      marochnik_entry(),       bacteria_entry(),          duplicate_threshold_entry(), landscape_entry(),
      fermi_prior_entry(),     fermi_factor_v0_entry(),
  };
  return entries;
}

const CatalogEntry& find_entry(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  std::string known;
  for (const auto& e : catalog()) known += (known.empty() ? "" : ", ") + e.name;
  throw ConfigurationError("unknown catalog entry '" + std::string(name) + "' (known: " + known + ")");
}

RunResult run_entry(const CatalogEntry& entry, const Params& params) {
  Params full;
  for (const auto& spec : entry.params) full[spec.name] = spec.default_value;
  for (const auto& [k, v] : params) {
    if (!full.contains(k)) {
      std::string known;
      for (const auto& spec : entry.params) known += (known.empty() ? "" : ", ") + spec.name;
      throw ConfigurationError("unknown parameter '" + k + "' for " + entry.name + " (known: " + known + ")");
    }
    full[k] = v;
  }
  return entry.run(full);
}

CheckOutcome check_expected(const CatalogEntry& entry, const ExpectedResult& expected) {
  CheckOutcome out{entry.name, &expected, false, {}, {}};
  try {
    const RunResult r = run_entry(entry, expected.params);
    const Output& o = r.output(expected.output);
    out.actual = o.text;
    if (expected.compare == Compare::kText) {
      out.passed = o.text == expected.expected;
      return out;
    }
    if (!o.value) throw ConfigurationError("output '" + o.name + "' has no numeric value");
    const Quantity want = Quantity::parse(expected.expected);
    const Quantity& got = *o.value;
    const double tol = expected.tolerance;
    switch (expected.compare) {
      case Compare::kExact:
        out.passed = got.is_exact() && want.is_exact() ? got.exact() == want.exact()
                                                       : got.as_magnitude().log10() == want.as_magnitude().log10();
        break;
      case Compare::kSignificant:
        out.passed = close(round_significant(got.to_double(), static_cast<int>(tol)), want.to_double());
        break;
      case Compare::kRelative:
        out.passed = std::abs(got.to_double() - want.to_double()) <= tol * std::abs(want.to_double());
        break;
      case Compare::kLog10Absolute:
        out.passed = std::abs(got.as_magnitude().log10() - want.as_magnitude().log10()) <= tol;
        break;
      case Compare::kLog10Significant:
        out.passed = close(round_significant(got.as_magnitude().log10(), static_cast<int>(tol)),
                           want.as_magnitude().log10());
        break;
      case Compare::kText:
        break;
    }
  } catch (const std::exception& e) {
    out.passed = false;
    out.message = e.what();
  }
  return out;
}

std::vector<CheckOutcome> check_catalog() {
  std::vector<CheckOutcome> out;
  for (const auto& entry : catalog()) {
    for (const auto& expected : entry.expected) out.push_back(check_expected(entry, expected));
  }
  return out;
}

}  // namespace obsel
