#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slotpaging/adversary.hpp"
#include "slotpaging/audit.hpp"
#include "slotpaging/core.hpp"
#include "slotpaging/gen.hpp"
#include "slotpaging/oracle.hpp"
#include "slotpaging/page_laminar.hpp"
#include "slotpaging/registry.hpp"
#include "slotpaging/trace.hpp"
#include "slotpaging/vc.hpp"
#include "slotpaging/weighted_aoo.hpp"

using nlohmann::json;
using namespace slotpag;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 4;

Caps parse_caps(const std::string& spec) {
  Caps caps;
  if (spec.empty()) return caps;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--caps entries must look like key=value");
    std::string key = item.substr(0, eq);
    long long value = std::stoll(item.substr(eq + 1));
    if (key == "k")
      caps.oracle_max_k = static_cast<int>(value);
    else if (key == "pages")
      caps.oracle_max_pages = static_cast<int>(value);
    else if (key == "T")
      caps.oracle_max_t = static_cast<int>(value);
    else if (key == "states")
      caps.oracle_max_states = static_cast<std::size_t>(value);
    else
      throw std::invalid_argument("unknown --caps key: " + key);
  }
  return caps;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump() << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open " + out_path);
  out << j.dump() << "\n";
}

json schedule_json(const Schedule& sched) {
  json out = json::array();
  for (const CacheConfig& cfg : sched) {
    json row = json::array();
    for (int j = 1; j <= cfg.k(); ++j)
      row.push_back(cfg.at(j) == kNoPage ? json(nullptr) : json(cfg.at(j)));
    out.push_back(row);
  }
  return out;
}

struct RunOutcome {
  json report;
  Schedule schedule;
};

RunOutcome run_algorithm(const Trace& trace, const std::string& alg,
                         const WeightMap& weights, std::uint64_t seed,
                         const Caps& caps) {
  RunOutcome out;
  out.report["alg"] = alg;
  out.report["k"] = trace.k;
  if (trace.is_page_set()) {
    if (alg.rfind("pl:", 0) != 0)
      throw std::invalid_argument(
          "page-set traces take pl:<engine> algorithms");
    PageSetSequence seq = trace.as_page_sequence();
    PageLaminarRun run = page_laminar_run(seq, alg.substr(3), seed);
    out.report["T"] = seq.requests.size();
    out.report["cost"] = run.inner.cost;
    json induced = json::array();
    for (PageId p : run.induced) induced.push_back(p);
    out.report["induced"] = induced;
    return out;
  }
  RequestSequence seq = trace.as_sequence();
  out.report["T"] = seq.requests.size();
  if (alg == "waoo") {
    WaooResult run = weighted_all_or_one(seq, weights);
    out.report["cost"] = rat_to_string(run.cost);
    out.report["cost_value"] = rat_to_double(run.cost);
    out.report["phi"] = rat_to_string(run.phi);
    out.schedule = run.schedule;
    return out;
  }
  auto algo = make_online_algorithm(alg, seed, caps);
  OnlineRun run = run_online(*algo, seq);
  out.report["cost"] = run.cost;
  if (!run.phase_starts.empty()) out.report["phase_starts"] = run.phase_starts;
  if (auto* ref = dynamic_cast<RefSearch*>(algo.get())) {
    out.report["phase_starts"] = ref->phase_starts();
    out.report["phase_costs"] = ref->phase_costs();
  }
  out.schedule = run.schedule;
  return out;
}

int cmd_run(const std::string& trace_path, const std::string& alg,
            const std::string& weights_path, std::uint64_t seed,
            const std::string& caps_spec, bool dump_schedule,
            const std::string& out_path) {
  Caps caps = parse_caps(caps_spec);
  Trace trace = parse_trace_file(trace_path);
  WeightMap weights;
  if (!weights_path.empty()) weights = parse_weights_file(weights_path);
  RunOutcome run = run_algorithm(trace, alg, weights, seed, caps);
  if (dump_schedule) run.report["schedule"] = schedule_json(run.schedule);
  emit(run.report, out_path);
  return 0;
}

struct Instance {
  std::string id;
  std::string family_kind;
  Trace trace;
};

Instance make_generated(const std::string& kind, int k, int pages, int len,
                        std::uint64_t seed) {
  Instance inst;
  inst.id = kind + "-k" + std::to_string(k) + "-s" + std::to_string(seed);
  inst.family_kind = kind;
  inst.trace.k = k;
  RequestSequence seq;
  if (kind == "laminar")
    seq = gen_random_instance(k, true, pages, len, seed);
  else if (kind == "general")
    seq = gen_random_instance(k, false, pages, len, seed);
  else if (kind == "standard")
    seq = gen_standard_instance(k, pages, len, seed);
  else if (kind == "aoo")
    seq = gen_aoo_instance(k, pages, len, seed);
  else
    throw std::invalid_argument("unknown generator kind: " + kind);
  inst.trace.k = seq.k;
  inst.trace.family = seq.family;
  inst.trace.slot_requests = seq.requests;
  return inst;
}

int cmd_ratio(const std::string& trace_path, const std::string& gen_kind,
              int k, int pages, int len, const std::string& alg,
              const std::string& weights_path, std::uint64_t seed, int count,
              const std::string& caps_spec, bool csv,
              const std::string& out_path) {
  Caps caps = parse_caps(caps_spec);
  WeightMap weights;
  if (!weights_path.empty()) weights = parse_weights_file(weights_path);

  std::vector<Instance> instances;
  if (!trace_path.empty()) {
    Instance inst;
    inst.id = trace_path;
    inst.trace = parse_trace_file(trace_path);
    FamilyStats st = family_stats(inst.trace.k, inst.trace.family, caps);
    inst.family_kind = inst.trace.is_page_set()
                           ? "pageset"
                           : (st.laminar ? "laminar" : "general");
    instances.push_back(std::move(inst));
  } else {
    for (int i = 0; i < count; ++i)
      instances.push_back(make_generated(gen_kind, k, pages, len, seed + i));
  }

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::invalid_argument("cannot open " + out_path);
    os = &file;
  }
  if (csv)
    *os << "instance_id,k,family_kind,h,T,alg,seed,cost,opt,ratio\n";

  for (const Instance& inst : instances) {
    FamilyStats st = family_stats(inst.trace.k, inst.trace.family, caps);
    std::size_t T = inst.trace.is_page_set()
                        ? inst.trace.page_set_requests.size()
                        : inst.trace.slot_requests.size();
    RunOutcome run = run_algorithm(inst.trace, alg, weights, seed, caps);
    double cost = run.report.contains("cost_value")
                      ? run.report["cost_value"].get<double>()
                      : run.report["cost"].get<double>();

    bool have_opt = true;
    Rat opt = 0;
    try {
      OptResult res =
          inst.trace.is_page_set()
              ? opt_bruteforce(inst.trace.as_page_sequence(), weights, caps)
              : opt_bruteforce(inst.trace.as_sequence(), weights, caps);
      opt = res.cost;
    } catch (const CapError& e) {
      have_opt = false;
      std::cerr << "warning: " << inst.id << ": " << e.what() << "\n";
    }
    double opt_d = have_opt ? rat_to_double(opt) : 0;
    double ratio = have_opt ? cost / std::max(opt_d, 1.0) : 0;

    if (csv) {
      *os << inst.id << "," << inst.trace.k << "," << inst.family_kind << ","
          << st.height << "," << T << "," << alg << "," << seed << "," << cost
          << ",";
      if (have_opt)
        *os << opt_d << "," << ratio;
      else
        *os << ",";
      *os << "\n";
    } else {
      json j;
      j["instance_id"] = inst.id;
      j["k"] = inst.trace.k;
      j["family_kind"] = inst.family_kind;
      j["h"] = st.height;
      j["T"] = T;
      j["alg"] = alg;
      j["seed"] = seed;
      j["cost"] = cost;
      if (have_opt) {
        j["opt"] = opt_d;
        j["ratio"] = ratio;
      } else {
        j["opt"] = nullptr;
        j["warning"] = "oracle budget exceeded; cost only";
      }
      *os << j.dump() << "\n";
    }
  }
  return 0;
}

int cmd_adversary(const std::string& kind, int k, int m, long long rounds,
                  int reps, const std::string& alg_name, std::uint64_t seed,
                  const std::string& caps_spec, const std::string& out_path) {
  Caps caps = parse_caps(caps_spec);
  json j;
  j["kind"] = kind;
  j["k"] = k;
  j["seed"] = seed;
  if (kind == "twopage") {
    GZFamilies fams = m > 0 ? family_cycles(k, m).gz : family_half_subsets(k);
    if (m > 0) j["m"] = m;
    std::string name = alg_name.empty() ? "exh" : alg_name;
    auto alg = make_online_algorithm(name, seed, caps);
    TwoPageResult res = two_page_adversary(fams, *alg, rounds, caps);
    j["K"] = res.rounds;
    j["alg"] = name;
    j["alg_cost"] = res.alg_cost;
    j["strategy_costs"] = res.z_costs;
    j["setup_cost"] = res.setup_cost;
    j["ratio_lb"] = res.ratio_lb;
  } else if (kind == "aoo") {
    std::string name = alg_name.empty() ? "lru" : alg_name;
    if (name == "lru-aoo") name = "lru";
    auto alg = make_online_algorithm(name, seed, caps);
    AooAdversaryResult res =
        all_or_one_adversary(k, rounds, reps, seed, *alg);
    j["phases"] = rounds;
    j["reps"] = reps;
    j["alg"] = name;
    j["alg_cost"] = res.alg_cost;
    j["adv_cost"] = res.adv_cost;
    j["ratio"] = res.ratio;
  } else {
    throw std::invalid_argument("unknown adversary kind: " + kind);
  }
  emit(j, out_path);
  return 0;
}

int cmd_gen(const std::string& kind, int k, int m, int pages, int len,
            const std::string& family_kind, const std::string& graph_path,
            std::uint64_t seed, const std::string& out_path) {
  if (kind == "vc") {
    if (graph_path.empty())
      throw std::invalid_argument("gen vc needs --graph");
    if (out_path.empty()) throw std::invalid_argument("gen vc needs --out");
    VCGraph g = parse_graph_file(graph_path);
    VCReduction red = vc_reduce(g);
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open " + out_path);
    write_trace(out, red.seq);
    json side;
    side["m"] = red.m;
    side["P"] = red.P;
    side["B"] = red.B;
    side["F"] = red.F;
    side["F_prime"] = red.F_prime;
    side["n"] = red.n;
    side["cover_size"] = red.cover_size;
    side["T"] = red.seq.requests.size();
    emit(side, out_path + ".json");
    return 0;
  }
  if (kind == "family") {
    GZFamilies fams =
        m > 0 ? family_cycles(k, m).gz : family_half_subsets(k);
    std::ostringstream buf;
    for (WideSet s : fams.G) buf << wide_to_string(s, fams.k) << "\n";
    buf << "# |G| = " << fams.G.size() << ", |Z| = " << fams.Z.size() << "\n";
    if (out_path.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream out(out_path);
      if (!out) throw std::invalid_argument("cannot open " + out_path);
      out << buf.str();
    }
    return 0;
  }
  std::string inst_kind = kind == "random" ? family_kind : kind;
  Instance inst = make_generated(inst_kind, k, pages, len, seed);
  std::ostringstream buf;
  write_trace(buf, inst.trace.as_sequence());
  if (out_path.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open " + out_path);
    out << buf.str();
  }
  return 0;
}

int cmd_stats(const std::string& trace_path, const std::string& caps_spec,
              const std::string& out_path) {
  Caps caps = parse_caps(caps_spec);
  Trace trace = parse_trace_file(trace_path);
  FamilyStats st = family_stats(trace.k, trace.family, caps);
  json j;
  j["k"] = trace.k;
  j["pageset"] = trace.is_page_set();
  j["T"] = trace.is_page_set() ? trace.page_set_requests.size()
                               : trace.slot_requests.size();
  j["family_size"] = st.size;
  j["mass"] = st.mass;
  if (st.closure_size)
    j["closure_size"] = *st.closure_size;
  else
    j["closure_size"] = nullptr;
  j["laminar"] = st.laminar;
  j["height"] = st.height;
  emit(j, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slot-heterogenous paging workbench"};
  app.require_subcommand(1);

  std::string trace_path, weights_path, caps_spec, out_path, alg = "exh";
  std::uint64_t seed = 0;
  bool dump_schedule = false;

  auto* run = app.add_subcommand("run", "run one algorithm on a trace");
  run->add_option("--trace", trace_path)->required();
  run->add_option("--alg", alg);
  run->add_option("--weights", weights_path);
  run->add_option("--seed", seed);
  run->add_option("--caps", caps_spec);
  run->add_option("--out", out_path);
  run->add_flag("--dump-schedule", dump_schedule);

  std::string gen_kind = "laminar";
  int k = 3, m = 0, pages = 5, len = 30, count = 1, reps = 64;
  long long rounds = 100;

  auto* ratio = app.add_subcommand("ratio", "compare against the exact optimum");
  ratio->add_option("--trace", trace_path);
  ratio->add_option("--gen", gen_kind,
                    "generator kind: laminar|general|standard|aoo");
  ratio->add_option("--k", k);
  ratio->add_option("--pages", pages);
  ratio->add_option("--len", len);
  ratio->add_option("--count", count);
  ratio->add_option("--alg", alg);
  ratio->add_option("--weights", weights_path);
  ratio->add_option("--seed", seed);
  ratio->add_option("--caps", caps_spec);
  ratio->add_option("--out", out_path);
  bool csv = false;
  ratio->add_flag("--csv", csv);

  std::string adv_kind, adv_alg;
  auto* adv = app.add_subcommand("adversary", "run a lower-bound adversary");
  adv->add_option("kind", adv_kind, "twopage|aoo")->required();
  adv->add_option("--k", k);
  adv->add_option("--m", m);
  adv->add_option("--rounds", rounds);
  adv->add_option("--phases", rounds);
  adv->add_option("--reps", reps);
  adv->add_option("--alg", adv_alg);
  adv->add_option("--seed", seed);
  adv->add_option("--caps", caps_spec);
  adv->add_option("--out", out_path);

  std::string fam_kind = "laminar", graph_path;
  auto* gen = app.add_subcommand("gen", "generate traces and families");
  gen->add_option("kind", gen_kind,
                  "random|standard|aoo|vc|family")->required();
  gen->add_option("--k", k);
  gen->add_option("--m", m);
  gen->add_option("--pages", pages);
  gen->add_option("--len", len);
  gen->add_option("--family", fam_kind, "laminar|general (for kind random)");
  gen->add_option("--graph", graph_path);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path);

  auto* stats = app.add_subcommand("stats", "describe a trace");
  stats->add_option("--trace", trace_path)->required();
  stats->add_option("--caps", caps_spec);
  stats->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed())
      return cmd_run(trace_path, alg, weights_path, seed, caps_spec,
                     dump_schedule, out_path);
    if (ratio->parsed())
      return cmd_ratio(trace_path, gen_kind, k, pages, len, alg, weights_path,
                       seed, count, caps_spec, csv, out_path);
    if (adv->parsed())
      return cmd_adversary(adv_kind, k, m, rounds, reps, adv_alg, seed,
                           caps_spec, out_path);
    if (gen->parsed())
      return cmd_gen(gen_kind, k, m, pages, len, fam_kind, graph_path, seed,
                     out_path);
    if (stats->parsed())
      return cmd_stats(trace_path, caps_spec, out_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
