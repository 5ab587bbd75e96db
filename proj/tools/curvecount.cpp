// curvecount: exact additive-energy, sumset and incidence counting on
// lifted curves, with an experiment harness for growth-exponent checks.
//
// All numeric output is serialized as strings: rationals as "p/q", big
// integers as decimal strings. Reports are byte-identical across runs and
// thread counts.

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "curvecount/harness.hpp"
#include "curvecount/incidence.hpp"
#include "curvecount/io.hpp"
#include "curvecount/oracle.hpp"
#include "curvecount/profile.hpp"
#include "curvecount/sumsets.hpp"
#include "curvecount/weighted.hpp"

using namespace curvecount;
using io::json;

namespace {

struct GlobalOpts {
  std::size_t cap = 50'000'000;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::string format = "json";
  std::string out;  // empty = stdout
  double quantum = Quantized::kDefaultRelativeQuantum;
  std::uint64_t seed = 1;

  EngineConfig engine() const {
    EngineConfig cfg;
    cfg.capacity_cap = cap;
    cfg.threads = threads ? threads : std::thread::hardware_concurrency();
    if (cfg.threads == 0) cfg.threads = 1;
    return cfg;
  }
};

std::size_t default_cap() {
  if (const char* env = std::getenv("CURVECOUNT_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 50'000'000;
}

void add_global_opts(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("--cap", g.cap, "sparse key capacity cap");
  cmd->add_option("--threads", g.threads,
                  "worker threads (default: machine parallelism)");
  cmd->add_option("--format", g.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", g.out, "write output to this file instead of stdout");
  cmd->add_option("--quantum", g.quantum,
                  "relative quantization step for analytic curves");
  cmd->add_option("--seed", g.seed, "seed echoed into reports");
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    std::ofstream f(g.out);
    if (!f) throw InputError("cannot open output file: " + g.out);
    f << text;
  }
}

// The config block echoed into every report. Thread count is an execution
// detail that never changes values, so it is deliberately not echoed;
// outputs are identical for any --threads.
json config_json(const GlobalOpts& g, const std::string& command) {
  json c;
  c["command"] = command;
  c["cap"] = std::to_string(g.cap);
  c["format"] = g.format;
  c["seed"] = std::to_string(g.seed);
  return c;
}

std::string kv_csv(const json& j, const std::string& prefix = "") {
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      out += kv_csv(*it, key);
    } else if (it->is_array()) {
      int i = 0;
      for (const auto& e : *it) {
        if (e.is_object() || e.is_array())
          out += kv_csv(e, key + "[" + std::to_string(i) + "]");
        else
          out += key + "[" + std::to_string(i) + "]," +
                 (e.is_string() ? e.get<std::string>() : e.dump()) + "\n";
        ++i;
      }
    } else {
      out += key + "," +
             (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
    }
  }
  return out;
}

void emit_report(const GlobalOpts& g, const json& j) {
  if (g.format == "csv")
    emit(g, "key,value\n" + kv_csv(j));
  else
    emit(g, j.dump(2) + "\n");
}

// ----- energy ---------------------------------------------------------------

template <class S>
json energy_report(const SumProfile<S>& prof, int max_moment) {
  json r;
  r["ground_size"] = std::to_string(prof.ground_size());
  r["s"] = std::to_string(prof.fold());
  r["support_size"] = std::to_string(prof.support_size());
  json moments;
  for (int k = 1; k <= max_moment; ++k)
    moments["m" + std::to_string(k)] = moment(prof, k).get_str();
  r["moments"] = moments;
  auto [key, mult] = sup_multiplicity(prof);
  json sup;
  sup["n1"] = key.x.str();
  sup["n2"] = key.y.str();
  sup["r"] = mult.get_str();
  r["sup"] = sup;
  json hist = json::array();
  for (const auto& [j, count] : level_histogram(prof)) {
    json h;
    h["j"] = std::to_string(j);
    h["count"] = std::to_string(count);
    hist.push_back(h);
  }
  r["histogram"] = hist;
  return r;
}

template <class S>
void dump_profile_file(const std::string& path, const SumProfile<S>& prof) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open dump file: " + path);
  for (const auto* e : prof.sorted_entries()) {
    json j;
    j["n1"] = e->first.x.str();
    j["n2"] = e->first.y.str();
    j["r"] = e->second.get_str();
    f << j.dump() << '\n';
  }
}

int run_energy(const GlobalOpts& g, const std::string& set_path,
               const std::string& curve_path, unsigned s, int max_moment,
               const std::string& dump_path) {
  const GroundSet a = io::read_set(set_path);
  const Curve curve = io::read_curve(curve_path);
  json rep;
  rep["config"] = config_json(g, "energy");
  rep["config"]["set"] = set_path;
  rep["config"]["curve"] = curve_path;
  rep["config"]["s"] = std::to_string(s);
  if (a.size() >= 2) {
    const auto d = classify(a);
    json desc;
    desc["diameter"] = d.diameter.str();
    desc["density_m"] = io::format_double(d.density_m);
    desc["well_spaced"] = d.well_spaced;
    rep["set_descriptor"] = desc;
  }
  if (curve.exact()) {
    auto prof = build_profile(lift(a, curve), s, g.engine());
    rep.update(energy_report(prof, max_moment));
    rep["mode"] = "exact";
    if (!dump_path.empty()) dump_profile_file(dump_path, prof);
  } else {
    auto prof =
        build_profile(lift_quantized(a, curve, g.quantum), s, g.engine());
    rep.update(energy_report(prof, max_moment));
    rep["mode"] = "quantized-float";
    rep["quantum_relative"] = io::format_double(g.quantum);
    if (!dump_path.empty()) dump_profile_file(dump_path, prof);
  }
  emit_report(g, rep);
  return 0;
}

// ----- sumset ---------------------------------------------------------------

int run_sumset(const GlobalOpts& g, const std::string& set_path,
               const std::string& curve_path, unsigned s, unsigned t,
               const std::string& write_path) {
  const GroundSet a = io::read_set(set_path);
  const Curve curve = io::read_curve(curve_path);
  if (!curve.exact())
    throw UnsupportedCurve("sumset needs an exact (polynomial) curve");
  auto pts = lift(a, curve);
  const PlaneSet set =
      t == 0 ? sumset(pts, s, g.engine()) : mixed_sumset(pts, s, t, g.engine());
  json rep;
  rep["config"] = config_json(g, "sumset");
  rep["config"]["set"] = set_path;
  rep["config"]["curve"] = curve_path;
  rep["config"]["s"] = std::to_string(s);
  rep["config"]["t"] = std::to_string(t);
  rep["ground_size"] = std::to_string(a.size());
  rep["size"] = std::to_string(set.size());
  if (!write_path.empty()) {
    std::ofstream f(write_path);
    if (!f) throw InputError("cannot open output file: " + write_path);
    io::write_plane_set_lines(f, set);
    rep["written"] = write_path;
  }
  emit_report(g, rep);
  return 0;
}

// ----- shifted-energy ---------------------------------------------------------

int run_shifted_energy(const GlobalOpts& g, const std::string& set_path,
                       const std::string& curve_path,
                       const std::string& shifts_path, unsigned s, int k) {
  const GroundSet a = io::read_set(set_path);
  const Curve curve = io::read_curve(curve_path);
  if (!curve.exact())
    throw UnsupportedCurve("shifted-energy needs an exact curve");
  const PlaneSet shifts = io::read_plane_set(shifts_path);
  auto pts = lift(a, curve);
  auto sp = shifted_profile(pts, s, shifts, g.engine());
  json rep;
  rep["config"] = config_json(g, "shifted-energy");
  rep["config"]["set"] = set_path;
  rep["config"]["curve"] = curve_path;
  rep["config"]["shifts"] = shifts_path;
  rep["config"]["s"] = std::to_string(s);
  rep["config"]["k"] = std::to_string(k);
  rep["shift_count"] = std::to_string(sp.shift_count);
  rep["support_size"] = std::to_string(sp.profile.support_size());
  rep["mass"] = sp.profile.mass().get_str();
  rep["value"] = moment(sp.profile, k).get_str();
  emit_report(g, rep);
  return 0;
}

// ----- incidence ----------------------------------------------------------------

int run_incidence(const GlobalOpts& g, const std::string& instance_path,
                  const std::string& rich, const std::string& points_path,
                  bool validity, bool dyadic) {
  auto inst = io::read_instance(instance_path);
  json rep;
  rep["config"] = config_json(g, "incidence");
  rep["config"]["instance"] = instance_path;
  auto r = count_incidences(inst.points, inst.family, g.engine());
  rep["exact_count"] = r.exact_count.get_str();
  json terms;
  terms["geometric"] = io::format_long_double(r.term_geometric);
  terms["linf_p1"] = io::format_long_double(r.term_linf_p1);
  terms["pinf_l1"] = io::format_long_double(r.term_pinf_l1);
  rep["bound_terms"] = terms;
  rep["ratio"] = io::format_long_double(r.ratio);
  if (!rich.empty()) {
    rep["config"]["rich"] = rich;
    const mpz_class threshold(rich);
    // rich points are taken over an external plane set when given,
    // otherwise over the instance's own point locations
    PlaneSet probe = [&] {
      if (!points_path.empty()) return io::read_plane_set(points_path);
      std::vector<ExactKey> locs;
      for (const auto& [k, w] : inst.points.points) locs.push_back(k);
      return PlaneSet::of(std::move(locs));
    }();
    if (!points_path.empty()) rep["config"]["points"] = points_path;
    auto rp = rich_points(probe, inst.family, threshold);
    json arr = json::array();
    for (const auto& k : rp.keys) {
      json p;
      p["n1"] = k.x.str();
      p["n2"] = k.y.str();
      arr.push_back(p);
    }
    rep["rich_points"] = arr;
  }
  if (validity) {
    auto stats = validity_check(inst.family);
    json v;
    v["max_pairwise_intersections"] =
        std::to_string(stats.max_pairwise_intersections);
    v["max_curves_through_pair"] =
        std::to_string(stats.max_curves_through_pair);
    if (!stats.note.empty()) v["note"] = stats.note;
    rep["validity"] = v;
  }
  if (dyadic) {
    json cells = json::array();
    for (const auto& c :
         dyadic_decompose_incidences(inst.points, inst.family)) {
      json e;
      e["j"] = std::to_string(c.point_class);
      e["k"] = std::to_string(c.curve_class);
      e["pairs"] = std::to_string(c.incident_pairs);
      e["weighted"] = c.weighted_count.get_str();
      cells.push_back(e);
    }
    rep["dyadic"] = cells;
  }
  emit_report(g, rep);
  return 0;
}

// ----- decompose -----------------------------------------------------------------

json real_root_json(const RealRoot& r) {
  json j;
  if (r.is_exact()) {
    j["value"] = r.value().str();
  } else {
    j["lo"] = r.lo().str();
    j["hi"] = r.hi().str();
  }
  return j;
}

int run_decompose(const GlobalOpts& g, const std::string& curve_path,
                  const std::string& set_path) {
  const Curve curve = io::read_curve(curve_path);
  json rep;
  rep["config"] = config_json(g, "decompose");
  rep["config"]["curve"] = curve_path;
  if (set_path.empty()) {
    RootSet roots = curve.critical_roots();
    roots.ensure_gaps();
    json crit = json::array();
    for (const auto& r : roots.roots()) crit.push_back(real_root_json(r));
    rep["critical"] = crit;
    rep["interval_pieces"] = std::to_string(roots.size() + 1);
  } else {
    rep["config"]["set"] = set_path;
    const GroundSet a = io::read_set(set_path);
    auto d = curve.decompose(a);
    json crit = json::array();
    for (const auto& r : d.critical) crit.push_back(real_root_json(r));
    rep["critical"] = crit;
    json pieces = json::array();
    for (const auto& piece : d.pieces) {
      json p;
      p["label"] = piece.label;
      p["size"] = std::to_string(piece.elements.size());
      json elems = json::array();
      for (const auto& e : piece.elements) elems.push_back(e.str());
      p["elements"] = elems;
      if (piece.interval) {
        p["interval"] = io::interval_to_json(*piece.interval);
        auto cert = curve.check_validity(*piece.interval);
        json v;
        v["pass"] = cert.pass;
        v["method"] = cert.method;
        if (cert.pass) v["solution_cap"] = std::to_string(cert.solution_cap);
        p["validity"] = v;
      }
      pieces.push_back(p);
    }
    rep["pieces"] = pieces;
  }
  emit_report(g, rep);
  return 0;
}

// ----- restriction ------------------------------------------------------------------

int run_restriction(const GlobalOpts& g, const std::string& coeffs_path,
                    const std::string& curve_path, unsigned s) {
  const Curve curve = io::read_curve(curve_path);
  auto coeffs = io::parse_coefficients(io::read_json_file(coeffs_path));
  const double value = weighted_energy(coeffs, curve, s, g.engine());
  bool integer_lift = true;
  for (const auto& [x, w] : coeffs) {
    auto [px, py] = curve.lift_exact(x);
    integer_lift = integer_lift && px.is_integer() && py.is_integer();
  }
  json rep;
  rep["config"] = config_json(g, "restriction");
  rep["config"]["coeffs"] = coeffs_path;
  rep["config"]["curve"] = curve_path;
  rep["config"]["s"] = std::to_string(s);
  rep["value"] = io::format_double(value);
  // The counting identity equals the torus moment only for integer lifts;
  // otherwise this is the counting-measure reading.
  rep["interpretation"] =
      integer_lift ? "torus-moment-identity" : "counting-measure";
  emit_report(g, rep);
  return 0;
}

// ----- generate ---------------------------------------------------------------------

int run_generate(const GlobalOpts& g, const std::string& family,
                 unsigned long long n, const std::string& a0,
                 const std::string& step, unsigned long long base,
                 unsigned long long range) {
  GroundSet set = [&] {
    if (family == "interval") return generate_interval(n);
    if (family == "ap")
      return generate_ap(Rational::parse(a0), Rational::parse(step), n);
    if (family == "geometric") return generate_geometric(base, n);
    if (family == "squares") return generate_squares(n);
    if (family == "random") return generate_random(range, n, g.seed);
    throw InputError("unknown family: " + family);
  }();
  emit(g, io::set_to_json(set).dump(2) + "\n");
  return 0;
}

// ----- validate-bounds ---------------------------------------------------------------

std::vector<unsigned long long> parse_n_range(const std::string& text) {
  // "a:b:xK" multiplies by K, "a:b:+K" adds K, "a,b,c" lists.
  std::vector<unsigned long long> out;
  try {
    if (text.find(':') == std::string::npos) {
      std::size_t pos = 0;
      while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stoull(text.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      return out;
    }
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw InputError("bad N range (want a:b:xK or a:b:+K): " + text);
    const unsigned long long lo = std::stoull(text.substr(0, c1));
    const unsigned long long hi = std::stoull(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string step = text.substr(c2 + 1);
    if (step.size() < 2 || (step[0] != 'x' && step[0] != '+'))
      throw InputError("bad N range step (want xK or +K): " + text);
    const unsigned long long k = std::stoull(step.substr(1));
    if (lo == 0 || hi < lo || k < (step[0] == 'x' ? 2u : 1u))
      throw InputError("bad N range: " + text);
    for (unsigned long long v = lo; v <= hi;
         v = step[0] == 'x' ? v * k : v + k)
      out.push_back(v);
    return out;
  } catch (const std::logic_error&) {
    throw InputError("bad N range: " + text);
  }
}

int run_validate_bounds(const GlobalOpts& g, const std::string& bound_id,
                        const std::string& family, const std::string& n_range,
                        int index, const std::string& curve_path,
                        unsigned long long base, unsigned long long range,
                        const std::string& a0, const std::string& step) {
  const BoundSpec& bound = find_bound(bound_id);
  const Curve curve =
      curve_path.empty()
          ? (bound.quantity == BoundQuantity::EnergyFG
                 ? Curve::pair(Polynomial::from_ints({0, 0, 1}),
                               Polynomial::from_ints({0, 0, 0, 1}))
                 : Curve::poly(Polynomial::from_ints({0, 0, 1})))
          : io::read_curve(curve_path);
  if (!curve.exact())
    throw UnsupportedCurve("validate-bounds needs an exact curve");

  auto make_set = [&](unsigned long long n) {
    if (family == "interval") return generate_interval(n);
    if (family == "ap")
      return generate_ap(Rational::parse(a0), Rational::parse(step), n);
    if (family == "geometric") return generate_geometric(base, n);
    if (family == "squares") return generate_squares(n);
    if (family == "random") return generate_random(range, n, g.seed);
    throw InputError("unknown family: " + family);
  };

  const auto ns = parse_n_range(n_range);
  std::vector<SeriesPoint> series(ns.size());
  // Series points are independent engine invocations; compute them in
  // parallel, one worker per N, each single-threaded. Values are exact
  // integers, so the report does not depend on the schedule.
  {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(ns.size());
    unsigned workers = g.engine().threads;
    workers = std::min<unsigned>(workers, ns.size());
    EngineConfig inner;
    inner.capacity_cap = g.cap;
    inner.threads = 1;
    auto work = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= ns.size()) return;
        try {
          const auto set = make_set(ns[i]);
          auto pts = lift(set, curve);
          mpz_class value;
          switch (bound.quantity) {
            case BoundQuantity::Energy2:
            case BoundQuantity::EnergyFG:
              value = moment(build_profile(pts, index, inner), 2);
              break;
            case BoundQuantity::Energy3:
              value = moment(build_profile(pts, index, inner), 3);
              break;
            case BoundQuantity::SumsetSS:
              value = static_cast<unsigned long>(
                  mixed_sumset(pts, index, index, inner).size());
              break;
            case BoundQuantity::SupR:
              value =
                  sup_multiplicity(build_profile(pts, index, inner)).second;
              break;
          }
          series[i] = SeriesPoint{ns[i], value, family};
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    if (workers <= 1) {
      work();
    } else {
      for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  auto rep = compare(series, bound, index);
  json j = io::comparison_to_json(rep);
  j["config"] = config_json(g, "validate-bounds");
  j["config"]["bound"] = bound_id;
  j["config"]["family"] = family;
  j["config"]["n"] = n_range;
  j["config"]["s"] = std::to_string(index);
  j["statement"] = bound.statement;
  if (g.format == "csv")
    emit(g, io::comparison_to_csv(rep));
  else
    emit(g, j.dump(2) + "\n");
  return 0;
}

// ----- oracle (hidden) ----------------------------------------------------------------

int run_oracle_energy(const GlobalOpts& g, const std::string& set_path,
                      const std::string& curve_path, unsigned s, int k,
                      unsigned long long budget) {
  const GroundSet a = io::read_set(set_path);
  const Curve curve = io::read_curve(curve_path);
  json rep;
  rep["config"] = config_json(g, "oracle energy");
  rep["config"]["set"] = set_path;
  rep["config"]["curve"] = curve_path;
  rep["config"]["s"] = std::to_string(s);
  rep["config"]["k"] = std::to_string(k);
  rep["value"] =
      oracle::brute_energy(a.elements(), curve, s, k, OracleBudget{budget})
          .get_str();
  emit_report(g, rep);
  return 0;
}

int run_oracle_sumset(const GlobalOpts& g, const std::string& set_path,
                      const std::string& curve_path, unsigned s, unsigned t,
                      unsigned long long budget) {
  const GroundSet a = io::read_set(set_path);
  const Curve curve = io::read_curve(curve_path);
  json rep;
  rep["config"] = config_json(g, "oracle sumset");
  rep["config"]["set"] = set_path;
  rep["config"]["curve"] = curve_path;
  rep["config"]["s"] = std::to_string(s);
  rep["config"]["t"] = std::to_string(t);
  rep["value"] = std::to_string(
      oracle::brute_sumset(a.elements(), curve, s, t, OracleBudget{budget}));
  emit_report(g, rep);
  return 0;
}

int run_oracle_incidence(const GlobalOpts& g,
                         const std::string& instance_path) {
  auto inst = io::read_instance(instance_path);
  std::vector<std::pair<oracle::detail::Pt, mpz_class>> pts, shifts;
  for (const auto& [k, w] : inst.points.points)
    pts.emplace_back(std::make_pair(k.x, k.y), w);
  for (const auto& [k, w] : inst.family.translates)
    shifts.emplace_back(std::make_pair(k.x, k.y), w);
  json rep;
  rep["config"] = config_json(g, "oracle incidence");
  rep["config"]["instance"] = instance_path;
  rep["value"] =
      oracle::brute_incidences(pts, inst.family.base, shifts).get_str();
  emit_report(g, rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "curvecount: exact counting of additive energies, representation "
      "multiplicities, sumsets and weighted curve incidences for finite "
      "rational sets lifted to plane curves"};
  app.require_subcommand(1);

  GlobalOpts g;
  g.cap = default_cap();

  // generate
  auto* cmd_gen = app.add_subcommand("generate", "emit a set file");
  std::string gen_family = "interval";
  unsigned long long gen_n = 16, gen_base = 2, gen_range = 1000;
  std::string gen_a = "1", gen_d = "1";
  cmd_gen->add_option("--family", gen_family,
                      "interval|ap|geometric|squares|random");
  cmd_gen->add_option("--n", gen_n, "set size");
  cmd_gen->add_option("--a", gen_a, "ap start (rational)");
  cmd_gen->add_option("--d", gen_d, "ap step (rational)");
  cmd_gen->add_option("--base", gen_base, "geometric base");
  cmd_gen->add_option("--range", gen_range, "random range [1..range]");
  add_global_opts(cmd_gen, g);

  // energy
  auto* cmd_energy = app.add_subcommand(
      "energy", "s-fold sum profile: moments, sup multiplicity, histogram");
  std::string en_set, en_curve, en_dump;
  unsigned en_s = 2;
  int en_moments = 3;
  cmd_energy->add_option("--set", en_set, "set file")->required();
  cmd_energy->add_option("--curve", en_curve, "curve file")->required();
  cmd_energy->add_option("--s", en_s, "fold count");
  cmd_energy->add_option("--moments", en_moments, "moments to report (1..3)")
      ->check(CLI::Range(1, 3));
  cmd_energy->add_option("--dump-profile", en_dump,
                         "write the profile as JSON lines to this file");
  add_global_opts(cmd_energy, g);

  // sumset
  auto* cmd_sumset =
      app.add_subcommand("sumset", "support of sA - tA and its cardinality");
  std::string su_set, su_curve, su_write;
  unsigned su_s = 2, su_t = 0;
  cmd_sumset->add_option("--set", su_set, "set file")->required();
  cmd_sumset->add_option("--curve", su_curve, "curve file")->required();
  cmd_sumset->add_option("--s", su_s, "plus folds");
  cmd_sumset->add_option("--t", su_t, "minus folds");
  cmd_sumset->add_option("--write", su_write,
                         "write the plane set as JSON lines to this file");
  add_global_opts(cmd_sumset, g);

  // shifted-energy
  auto* cmd_shift = app.add_subcommand(
      "shifted-energy", "moments of the shifted profile r_{s,X}");
  std::string sh_set, sh_curve, sh_shifts;
  unsigned sh_s = 1;
  int sh_k = 2;
  cmd_shift->add_option("--set", sh_set, "set file")->required();
  cmd_shift->add_option("--curve", sh_curve, "curve file")->required();
  cmd_shift->add_option("--shifts", sh_shifts, "plane-set file X")->required();
  cmd_shift->add_option("--s", sh_s, "fold count");
  cmd_shift->add_option("--k", sh_k, "moment order (2 or 3)")
      ->check(CLI::Range(2, 3));
  add_global_opts(cmd_shift, g);

  // incidence
  auto* cmd_inc = app.add_subcommand(
      "incidence", "exact weighted incidences for a translate family");
  std::string in_instance, in_rich, in_points;
  bool in_validity = false, in_dyadic = false;
  cmd_inc->add_option("--instance", in_instance, "instance file")->required();
  cmd_inc->add_option("--rich", in_rich, "report points with curve mass >= t");
  cmd_inc->add_option("--points", in_points,
                      "plane-set file to probe for rich points");
  cmd_inc->add_flag("--validity", in_validity,
                    "report pairwise intersection statistics");
  cmd_inc->add_flag("--dyadic", in_dyadic,
                    "report the dyadic weight-class decomposition");
  add_global_opts(cmd_inc, g);

  // decompose
  auto* cmd_dec = app.add_subcommand(
      "decompose", "critical set and interval decomposition of a set");
  std::string de_curve, de_set;
  cmd_dec->add_option("--curve", de_curve, "curve file")->required();
  cmd_dec->add_option("--set", de_set, "set file (optional)");
  add_global_opts(cmd_dec, g);

  // restriction
  auto* cmd_res = app.add_subcommand(
      "restriction",
      "moment of a coefficient-weighted exponential sum via the counting "
      "identity");
  std::string re_coeffs, re_curve;
  unsigned re_s = 3;
  cmd_res->add_option("--coeffs", re_coeffs, "coefficient file")->required();
  cmd_res->add_option("--curve", re_curve, "curve file")->required();
  cmd_res->add_option("--s", re_s, "fold count");
  add_global_opts(cmd_res, g);

  // validate-bounds
  auto* cmd_vb = app.add_subcommand(
      "validate-bounds",
      "compare a computed series against a registered growth bound");
  std::string vb_bound, vb_family = "interval", vb_n = "16:128:x2", vb_curve;
  std::string vb_a = "1", vb_d = "1";
  int vb_s = 3;
  unsigned long long vb_base = 2, vb_range = 100000;
  cmd_vb->add_option("--bound", vb_bound, "bound id from the registry")
      ->required();
  cmd_vb->add_option("--family", vb_family,
                     "interval|ap|geometric|squares|random");
  cmd_vb->add_option("--n", vb_n, "N values: a:b:xK, a:b:+K or a,b,c");
  cmd_vb->add_option("--s", vb_s, "bound index (fold count)");
  cmd_vb->add_option("--curve", vb_curve, "curve file (default parabola)");
  cmd_vb->add_option("--base", vb_base, "geometric base");
  cmd_vb->add_option("--range", vb_range, "random range");
  cmd_vb->add_option("--a", vb_a, "ap start");
  cmd_vb->add_option("--d", vb_d, "ap step");
  add_global_opts(cmd_vb, g);

  // oracle (hidden): brute-force mirrors for cross-tool verification
  auto* cmd_or = app.add_subcommand("oracle", "");
  cmd_or->group("");  // hidden from help
  cmd_or->require_subcommand(1);
  auto* or_energy = cmd_or->add_subcommand("energy", "");
  auto* or_sumset = cmd_or->add_subcommand("sumset", "");
  auto* or_inc = cmd_or->add_subcommand("incidence", "");
  std::string oe_set, oe_curve, os_set, os_curve, oi_instance;
  unsigned oe_s = 2, os_s = 1, os_t = 1;
  int oe_k = 2;
  unsigned long long or_budget = 100'000'000ULL;
  or_energy->add_option("--set", oe_set)->required();
  or_energy->add_option("--curve", oe_curve)->required();
  or_energy->add_option("--s", oe_s);
  or_energy->add_option("--k", oe_k)->check(CLI::Range(2, 3));
  or_energy->add_option("--budget", or_budget);
  add_global_opts(or_energy, g);
  or_sumset->add_option("--set", os_set)->required();
  or_sumset->add_option("--curve", os_curve)->required();
  or_sumset->add_option("--s", os_s);
  or_sumset->add_option("--t", os_t);
  or_sumset->add_option("--budget", or_budget);
  add_global_opts(or_sumset, g);
  or_inc->add_option("--instance", oi_instance)->required();
  add_global_opts(or_inc, g);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_gen->parsed())
      return run_generate(g, gen_family, gen_n, gen_a, gen_d, gen_base,
                          gen_range);
    if (cmd_energy->parsed())
      return run_energy(g, en_set, en_curve, en_s, en_moments, en_dump);
    if (cmd_sumset->parsed())
      return run_sumset(g, su_set, su_curve, su_s, su_t, su_write);
    if (cmd_shift->parsed())
      return run_shifted_energy(g, sh_set, sh_curve, sh_shifts, sh_s, sh_k);
    if (cmd_inc->parsed())
      return run_incidence(g, in_instance, in_rich, in_points, in_validity,
                           in_dyadic);
    if (cmd_dec->parsed()) return run_decompose(g, de_curve, de_set);
    if (cmd_res->parsed()) return run_restriction(g, re_coeffs, re_curve, re_s);
    if (cmd_vb->parsed())
      return run_validate_bounds(g, vb_bound, vb_family, vb_n, vb_s, vb_curve,
                                 vb_base, vb_range, vb_a, vb_d);
    if (cmd_or->parsed()) {
      if (or_energy->parsed())
        return run_oracle_energy(g, oe_set, oe_curve, oe_s, oe_k, or_budget);
      if (or_sumset->parsed())
        return run_oracle_sumset(g, os_set, os_curve, os_s, os_t, or_budget);
      if (or_inc->parsed()) return run_oracle_incidence(g, oi_instance);
    }
    std::cerr << "no subcommand\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantError& e) {
    std::cerr << "internal invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
