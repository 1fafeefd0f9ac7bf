#include "abc/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "abc/analysis.hpp"
#include "abc/greedy.hpp"
#include "abc/structure.hpp"
#include "abc/transforms.hpp"
#include "json.hpp"

namespace abc::cli {

using nlohmann::json;

namespace {

// Exit status carried by exceptions thrown from command handlers.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Tree load_tree(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_tree(text);
  } catch (const TreeFormatError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

json payload(const SearchResult& r) {
  json trees = json::array();
  for (const auto& t : r.trees) trees.push_back(t.to_string());
  return {{"n", r.n},
          {"method", r.method},
          {"abc_min", r.abc_min},
          {"trees", trees},
          {"examined", r.examined}};
}

json scan_json(const ScanReport& r) {
  json v = json::array();
  for (const auto& p : r.violations)
    v.push_back({{"x", p.x}, {"y", p.y}, {"dx", p.dx}, {"dy", p.dy}, {"what", p.what}});
  return {{"id", r.id},
          {"grid", {{"lo", r.grid.lo}, {"hi", r.grid.hi}, {"step", r.grid.step}}},
          {"checked", r.checked},
          {"violations", v}};
}

json constant_json(const ConstantRecord& r) {
  return {{"id", r.id},
          {"paper_value", r.paper_value},
          {"computed", r.computed},
          {"abs_error", r.abs_error},
          {"tolerance", r.tolerance},
          {"expression", r.expression},
          {"pass", r.pass}};
}

// Settings that determine a record's payload. Worker count and output
// path are excluded: they never change results.
struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::string range;
  double tol = kAbcTolerance;
  std::uint64_t seed = 42;
  bool force = false;
  int jobs = 1;
  std::string out;
  std::string format;

  json to_json() const {
    json j{{"command", command}, {"tol", tol}, {"seed", seed}, {"force", force},
           {"version", kVersion}};
    if (n) j["n"] = *n;
    if (!range.empty()) j["range"] = range;
    return j;
  }
  std::string hash() const { return stable_hash(to_json().dump()); }
};

class Store {
public:
  explicit Store(std::string path) : path_(std::move(path)) {}

  void append(const std::string& type, const RunConfig& cfg, const json& payload) {
    std::ofstream os(path_, std::ios::app);
    if (!os) throw UsageError("cannot write result store " + path_);
    json rec{{"type", type},
             {"version", kVersion},
             {"config_hash", cfg.hash()},
             {"config", cfg.to_json()},
             {"payload", payload}};
    os << rec.dump() << '\n';
  }

  std::vector<json> load() const {
    std::vector<json> out;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        out.push_back(json::parse(line));
      } catch (const json::parse_error&) {
        // a torn final line from an interrupted run
      }
    }
    return out;
  }

private:
  std::string path_;
};

// Writes to --out when given, else to the command's stream.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string fixed6(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

std::vector<int> n_values(const RunConfig& cfg) {
  if (cfg.n && !cfg.range.empty()) throw UsageError("give either --n or --range, not both");
  if (cfg.n) return {*cfg.n};
  if (cfg.range.empty()) throw UsageError("--n or --range is required");
  const auto [lo, hi] = parse_range(cfg.range);
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::string summarize_properties(const SearchResult& r) {
  int pass = 0, fail = 0, na = 0;
  for (const auto& ls : r.trees) {
    const auto rep = minimal_abc_properties(ls.to_tree());
    bool any_fail = false, all_na = true;
    for (const auto& [name, status] : rep) {
      any_fail |= status == CheckStatus::Fail;
      all_na &= status == CheckStatus::NotApplicable;
    }
    (all_na ? na : any_fail ? fail : pass) += 1;
  }
  if (na == static_cast<int>(r.trees.size())) return "n/a";
  std::ostringstream os;
  os << pass << "/" << r.trees.size() << " pass";
  return os.str();
}

int cmd_search(Method method, const RunConfig& cfg, std::ostream& out, const std::string& store) {
  Store st(store);
  Sink sink(cfg.out, out);
  for (int n : n_values(cfg)) {
    RunConfig one = cfg;
    one.n = n;
    one.range.clear();
    const auto r = parallel_search(method, n, cfg.jobs, cfg.force);
    const json p = payload(r);
    st.append("search", one, p);
    if (cfg.format == "json") {
      *sink << p.dump() << '\n';
    } else {
      *sink << "n=" << r.n << " method=" << r.method << " abc_min=" << fixed6(r.abc_min)
            << " minimizers=" << r.trees.size() << " examined=" << r.examined << '\n';
      for (const auto& t : r.trees) *sink << "  " << t.to_string() << '\n';
    }
  }
  return 0;
}

int cmd_transform(const RunConfig& cfg, const std::string& kind_name, const std::string& tree_path,
                  std::size_t loc_index, std::ostream& out) {
  const TransformKind kind = parse_transform_kind(kind_name);
  const Tree t = load_tree(tree_path);
  const auto locs = find_configuration(t, kind);
  if (locs.empty()) throw UsageError("no " + kind_name + " configuration in " + tree_path);
  if (loc_index >= locs.size())
    throw UsageError("--loc " + std::to_string(loc_index) + " out of range (" +
                     std::to_string(locs.size()) + " locations)");
  const auto r = apply(t, kind, locs[loc_index]);
  json rec{{"kind", to_string(kind)},
           {"loc", r.loc},
           {"delta_exact", r.delta_exact},
           {"delta_closed_form", r.closed_form.value},
           {"bound_kind", to_string(r.closed_form.bound)},
           {"expression", r.closed_form.expression},
           {"parameters", r.parameters},
           {"before", format_tree(r.before)},
           {"after", format_tree(r.after)}};
  if (!r.closed_form.note.empty()) rec["note"] = r.closed_form.note;
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    std::ofstream(std::filesystem::path(cfg.out) / "before.tree") << format_tree(r.before);
    std::ofstream(std::filesystem::path(cfg.out) / "after.tree") << format_tree(r.after);
  }
  out << rec.dump() << '\n';
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& what, std::ostream& out,
               const std::string& store) {
  Sink sink(cfg.out, out);
  Store st(store);
  bool ok = true;
  if (what == "constants") {
    const auto rows = constant_table();
    json all = json::array();
    for (const auto& r : rows) {
      ok &= r.pass;
      all.push_back(constant_json(r));
    }
    st.append("constants", cfg, all);
    if (cfg.format == "json") {
      for (const auto& r : all) *sink << r.dump() << '\n';
    } else {
      *sink << constant_table_csv(rows);
    }
  } else if (what == "propositions") {
    json all = json::array();
    for (PropId id : all_prop_ids()) {
      const auto rep = monotonicity_scan(id);
      ok &= rep.ok();
      all.push_back(scan_json(rep));
      *sink << all.back().dump() << '\n';
    }
    st.append("scans", cfg, all);
  } else if (what == "transforms") {
    for (TransformKind kind : all_transform_kinds()) {
      const auto rep = verify_decrease(kind, cfg.seed);
      ok &= rep.ok();
      json j{{"kind", to_string(kind)},
             {"seed", rep.seed},
             {"instances", rep.instances},
             {"max_delta", rep.max_delta},
             {"max_exact_error", rep.max_exact_error},
             {"violations", rep.violations}};
      *sink << j.dump() << '\n';
    }
  } else if (what == "greedy") {
    const auto rep = verify_greedy_optimality(cfg.n.value_or(10), cfg.tol);
    ok = rep.ok();
    json j{{"n_max", rep.n_max},
           {"sequences", rep.sequences},
           {"labeled_trees", rep.trees},
           {"violations", rep.violations}};
    *sink << j.dump() << '\n';
  } else {
    throw UsageError("verify target must be constants, propositions, transforms or greedy");
  }
  return ok ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------

SearchResult parallel_search(Method method, int n, int jobs, bool force) {
  if (jobs < 1) throw std::domain_error("jobs must be positive");
  auto one = [&](WorkRange r) {
    return method == Method::Brute ? brute_force_min_abc(n, r, force)
                                   : ds_search_min_abc(n, r, force);
  };
  // Validate n and the cap before counting the space.
  if (n < (method == Method::Brute ? 4 : 10))
    return one(WorkRange{0, 0});
  if (!force && n > (method == Method::Brute ? kBruteForceCap : kDsSearchCap))
    return one(WorkRange{0, 0});
  if (jobs == 1) return one(WorkRange{});

  const std::uint64_t total =
      method == Method::Brute ? count_free_trees(n) : count_pruned_sequences(n);
  const auto ranges = split_range(total, jobs);
  std::vector<SearchResult> parts(ranges.size());
  std::vector<std::exception_ptr> errors(ranges.size());
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < ranges.size(); ++i)
    workers.emplace_back([&, i] {
      try {
        parts[i] = one(ranges[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  SearchResult acc;
  double seconds = 0;
  for (const auto& p : parts) {
    acc = merge(acc, p);
    seconds = std::max(seconds, p.seconds);
  }
  acc.seconds = seconds;
  return acc;
}

std::string payload_json(const SearchResult& r) { return payload(r).dump(); }

std::string stable_hash(const std::string& text) {
  // FNV-1a, 64 bit
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("range must look like A..B");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument("");
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument("");
    if (lo > hi) throw std::invalid_argument("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad range: " + text);
  }
}

std::string default_store_path() {
  const char* env = std::getenv("ABC_RESULTS");
  return env && *env ? env : "abc_results.jsonl";
}

std::string report_csv(const std::string& store_path, int lo, int hi, double tol,
                       std::vector<int>* gaps) {
  // Latest record per (n, method).
  std::map<std::pair<int, std::string>, std::pair<SearchResult, std::string>> latest;
  for (const auto& rec : Store(store_path).load()) {
    if (rec.value("type", "") != "search") continue;
    const auto& p = rec.at("payload");
    SearchResult r;
    r.n = p.at("n");
    r.method = p.at("method");
    r.abc_min = p.at("abc_min");
    r.examined = p.at("examined");
    for (const auto& t : p.at("trees")) r.trees.push_back(LevelSequence::parse(t.get<std::string>()));
    latest[{r.n, r.method}] = {r, rec.value("config_hash", "")};
  }
  std::ostringstream os;
  os << "n,brute_abc_min,ds_abc_min,agree,properties,config_hash\n";
  os << std::setprecision(15);
  for (int n = lo; n <= hi; ++n) {
    const auto b = latest.find({n, "brute"});
    const auto d = latest.find({n, "ds-greedy"});
    if (b == latest.end() && d == latest.end()) {
      if (gaps) gaps->push_back(n);
      continue;
    }
    os << n << ',';
    if (b != latest.end()) os << b->second.first.abc_min;
    os << ',';
    if (d != latest.end()) os << d->second.first.abc_min;
    os << ',';
    if (b != latest.end() && d != latest.end()) {
      const auto& x = b->second.first;
      const auto& y = d->second.first;
      const bool agree = std::abs(x.abc_min - y.abc_min) <= tol && x.trees == y.trees;
      os << (agree ? "yes" : "no");
    }
    const auto& any = b != latest.end() ? b->second : d->second;
    os << ',' << summarize_properties(any.first) << ',';
    os << (b != latest.end() ? b->second.second : "");
    if (d != latest.end()) os << (b != latest.end() ? ";" : "") << d->second.second;
    os << '\n';
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal-ABC tree search and verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunConfig cfg;
  std::string tree_path, kind_name, degrees, target;
  std::size_t loc = 0;
  const std::vector<std::string> formats{"text", "json", "csv"};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "write output here instead of stdout");
    sub->add_option("--format", cfg.format, "text, json or csv")
        ->check(CLI::IsMember(formats));
    sub->add_option("--tol", cfg.tol, "comparison tolerance")->check(CLI::PositiveNumber);
  };
  auto search_opts = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--n", cfg.n, "tree order");
    sub->add_option("--range", cfg.range, "orders A..B inclusive");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--force", cfg.force, "allow orders above the default cap");
  };

  auto* index = app.add_subcommand("index", "ABC index of a tree file");
  index->add_option("tree", tree_path)->required();
  common(index);
  auto* brute = app.add_subcommand("brute", "exhaustive minimum over free trees");
  search_opts(brute);
  auto* dsearch = app.add_subcommand("dsearch", "minimum over greedy trees of pruned degree sequences");
  search_opts(dsearch);
  auto* greedy = app.add_subcommand("greedy", "greedy tree of a degree sequence");
  greedy->add_option("--degrees", degrees, "comma separated degrees")->required();
  common(greedy);
  auto* props = app.add_subcommand("props", "structural checks for minimal-ABC trees");
  props->add_option("tree", tree_path)->required();
  common(props);
  auto* transform = app.add_subcommand("transform", "apply a rewrite to a tree");
  transform->add_option("--kind", kind_name)->required();
  transform->add_option("--tree", tree_path)->required();
  transform->add_option("--loc", loc, "index into the location list");
  common(transform);
  auto* verify = app.add_subcommand("verify", "constants, propositions, transforms or greedy");
  verify->add_option("target", target)->required();
  verify->add_option("--seed", cfg.seed, "instance generator seed");
  verify->add_option("--n", cfg.n, "largest order for the greedy check");
  common(verify);
  auto* report = app.add_subcommand("report", "CSV summary of stored search results");
  report->add_option("--range", cfg.range)->required();
  common(report);

  std::vector<const char*> argv{"abc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string store = default_store_path();
    if (*index) {
      cfg.command = "index";
      const double v = abc_index(load_tree(tree_path));
      Sink sink(cfg.out, out);
      if (cfg.format == "json")
        *sink << json{{"abc", v}}.dump() << '\n';
      else
        *sink << fixed6(v) << '\n';
      return 0;
    }
    if (*brute) {
      cfg.command = "brute";
      return cmd_search(Method::Brute, cfg, out, store);
    }
    if (*dsearch) {
      cfg.command = "dsearch";
      return cmd_search(Method::DegreeSequence, cfg, out, store);
    }
    if (*greedy) {
      const auto g = greedy_tree(DegreeSequence::parse(degrees));
      Sink sink(cfg.out, out);
      if (cfg.format == "json")
        *sink << json{{"abc", abc_index(g.tree)},
                      {"canonical", canonical_form(g.tree).to_string()},
                      {"tree", format_tree(g.tree)}}
                     .dump()
              << '\n';
      else
        *sink << format_tree(g.tree) << "# abc " << fixed6(abc_index(g.tree)) << '\n';
      return 0;
    }
    if (*props) {
      const auto rep = minimal_abc_properties(load_tree(tree_path));
      Sink sink(cfg.out, out);
      if (cfg.format == "json") {
        json j;
        for (const auto& [name, s] : rep) j[name] = to_string(s);
        *sink << j.dump() << '\n';
      } else {
        for (const auto& [name, s] : rep) *sink << name << ' ' << to_string(s) << '\n';
      }
      return 0;
    }
    if (*transform) {
      cfg.command = "transform";
      return cmd_transform(cfg, kind_name, tree_path, loc, out);
    }
    if (*verify) {
      cfg.command = "verify " + target;
      return cmd_verify(cfg, target, out, store);
    }
    if (*report) {
      const auto [lo, hi] = parse_range(cfg.range);
      std::vector<int> gaps;
      Sink sink(cfg.out, out);
      *sink << report_csv(store, lo, hi, cfg.tol, &gaps);
      if (!gaps.empty()) {
        err << "gaps:";
        for (int n : gaps) err << ' ' << n;
        err << '\n';
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace abc::cli
