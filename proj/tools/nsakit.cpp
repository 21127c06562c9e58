// nsakit: command-line front end for the nsa library.
//
// Exit codes: 0 positive verdict, 1 negative verdict, 2 usage or input
// error, 3 resource cap exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nsa/acceptance.hpp"
#include "nsa/analysis.hpp"
#include "nsa/config_graph.hpp"
#include "nsa/group_geometry.hpp"
#include "nsa/group_oracle.hpp"
#include "nsa/hom_closure.hpp"
#include "nsa/machine.hpp"
#include "nsa/pda_quotient.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr const char* kSchema = "nsakit/1";

enum Exit { kPositive = 0, kNegative = 1, kUsage = 2, kCap = 3 };

// Input problems carry the file and line they were found at.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string machine_path;
  std::string word;
  std::string word_file;
  std::string hom_path;
  std::string group;
  std::string target_group;
  std::string output;
  std::string dot;
  bool json = false;
  bool allow_reserved = false;
  bool force = false;
  std::size_t max_len = 8;
  unsigned seed = 1;
  nsa::ResourceCaps caps;
  nsa::Horizon horizon;
  std::size_t radius = 2;
  std::size_t window = 0;
  std::vector<std::size_t> radii;
  std::vector<std::string> centers;
  std::string center;
  std::string other;
  double qi_k = 2.0;
  std::size_t samples = 200;
  std::size_t sample_length = 6;
  std::size_t density = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

nsa::Machine load_machine(const Options& o) {
  if (o.machine_path.empty()) throw InputError("no machine file given");
  const auto text = read_file(o.machine_path);
  try {
    return nsa::parse_machine(text, {o.allow_reserved});
  } catch (const nsa::ParseError& e) {
    std::string msg = e.what();
    if (e.line() > 0) msg = msg.substr(msg.find(": ") + 2);
    throw InputError(o.machine_path + ":" + std::to_string(e.line()) + ": " + msg);
  }
}

nsa::Word load_word(const Options& o) {
  if (!o.word_file.empty()) return nsa::word_from_text(read_file(o.word_file) + " ");
  return nsa::word_from_text(o.word);
}

std::unique_ptr<nsa::group::GroupOracle> load_group(const std::string& spec, const Options& o) {
  if (spec.empty()) throw InputError("no group given");
  fs::path base = o.machine_path.empty() ? fs::current_path() : fs::path(o.machine_path).parent_path();
  try {
    return nsa::group::make_oracle(spec, base);
  } catch (const nsa::ParseError& e) {
    throw InputError(spec + ": " + e.what());
  }
}

std::string show(const nsa::Word& w) { return w.empty() ? "ε" : nsa::word_to_text(w); }

std::string show_edge(const nsa::Machine& m, int e) {
  const auto& edge = m.edges[e];
  return m.states[edge.source] + " -> " + m.states[edge.target] + " " + nsa::op_to_string(edge.op, m) + " " +
         nsa::letter_name(edge.input, m);
}

std::string show_config(const nsa::Machine& m, const nsa::Configuration& c) {
  return nsa::branch_name(c.tree, m.memory_alphabet, m.states[c.state]);
}

void emit(const Options& o, json report, const std::string& text) {
  if (o.json) {
    report["schema"] = kSchema;
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write");
  out << text;
}

// ---- nsa ----

int cmd_validate(const Options& o) {
  const auto m = load_machine(o);
  const auto problems = nsa::check_machine(m);
  json r{{"valid", problems.empty()}, {"problems", problems}, {"states", m.states.size()},
         {"edges", m.edges.size()}};
  std::string text;
  if (problems.empty()) {
    text = "valid: " + std::to_string(m.states.size()) + " states, " + std::to_string(m.edges.size()) + " edges\n";
  } else {
    for (const auto& p : problems) text += "invalid: " + p + "\n";
  }
  emit(o, r, text);
  return problems.empty() ? kPositive : kNegative;
}

int verdict_exit(nsa::Verdict v) {
  switch (v) {
    case nsa::Verdict::Accepted: return kPositive;
    case nsa::Verdict::Rejected: return kNegative;
    case nsa::Verdict::CapExceeded: return kCap;
  }
  return kUsage;
}

int cmd_accept(const Options& o, bool with_path) {
  const auto m = load_machine(o);
  const auto w = load_word(o);
  const auto res = nsa::accepts(m, w, o.caps);
  std::string text;
  json r{{"word", w}, {"verdict", nsa::to_string(res.verdict)}};
  if (res.verdict == nsa::Verdict::CapExceeded) {
    text = "CAP_EXCEEDED (" + nsa::to_string(res.cap) + ")\n";
    r["cap"] = nsa::to_string(res.cap);
  } else {
    text = res.verdict == nsa::Verdict::Accepted ? "ACCEPTED\n" : "REJECTED\n";
  }
  if (with_path && res.witness) {
    json path = json::array();
    for (int e : res.witness->path) {
      text += "  " + show_edge(m, e) + "\n";
      path.push_back(e);
    }
    r["path"] = path;
  }
  emit(o, r, text);
  return verdict_exit(res.verdict);
}

int cmd_enumerate(const Options& o) {
  const auto m = load_machine(o);
  std::vector<nsa::Word> words;
  try {
    words = nsa::enumerate_accepted(m, o.max_len, o.caps);
  } catch (const nsa::CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  }
  std::string text;
  json list = json::array();
  for (const auto& w : words) {
    text += show(w) + "\n";
    list.push_back(w);
  }
  emit(o, {{"max_len", o.max_len}, {"count", words.size()}, {"words", list}}, text);
  return kPositive;
}

int cmd_check_det(const Options& o) {
  const auto m = load_machine(o);
  const auto rep = nsa::check_deterministic(m);
  json r{{"deterministic", rep.deterministic}};
  std::string text = "deterministic\n";
  if (!rep.deterministic) {
    const auto& c = rep.conflict;
    r["state"] = m.states[c.state];
    r["edges"] = {c.edge_a, c.edge_b};
    text = "nondeterministic at state " + m.states[c.state] + ":\n  edge " + std::to_string(c.edge_a) + ": " +
           show_edge(m, c.edge_a) + "\n  edge " + std::to_string(c.edge_b) + ": " + show_edge(m, c.edge_b) + "\n";
  }
  emit(o, r, text);
  return rep.deterministic ? kPositive : kNegative;
}

int cmd_check_erasing(const Options& o) {
  const auto m = load_machine(o);
  const auto rep = nsa::check_limited_erasing(m);
  json r{{"bounded", rep.bounded}};
  std::string text;
  if (rep.bounded) {
    r["k"] = rep.k;
    text = "bounded, k = " + std::to_string(rep.k) + "\n";
  } else {
    r["cycle"] = rep.cycle;
    text = "unbounded; epsilon cycle through a pop:\n";
    for (int e : rep.cycle) text += "  edge " + std::to_string(e) + ": " + show_edge(m, e) + "\n";
  }
  emit(o, r, text);
  return rep.bounded ? kPositive : kNegative;
}

int cmd_trace(const Options& o) {
  const auto m = load_machine(o);
  const auto w = load_word(o);
  nsa::Trace t;
  try {
    t = nsa::run_trace(m, w, o.caps);
  } catch (const nsa::NondeterminismError& e) {
    std::cerr << e.what() << '\n';
    return kNegative;
  }
  std::string text;
  json steps = json::array();
  for (const auto& s : t.steps) {
    text += show_config(m, s.before) + " --" + nsa::letter_name(m.edges[s.edge].input, m) + "/" +
            nsa::op_to_string(m.edges[s.edge].op, m) + "--> " + show_config(m, s.after) + "\n";
    steps.push_back({{"edge", s.edge}, {"from", show_config(m, s.before)}, {"to", show_config(m, s.after)}});
  }
  text += nsa::to_string(t.stop) + " after " + std::to_string(t.steps.size()) + " steps, " +
          std::to_string(t.consumed) + " of " + std::to_string(w.size()) + " letters read\n";
  emit(o, {{"steps", steps}, {"stop", nsa::to_string(t.stop)}, {"consumed", t.consumed}}, text);
  if (t.stop == nsa::TraceStop::CapExceeded) return kCap;
  return t.stop == nsa::TraceStop::Accepting && t.consumed == w.size() ? kPositive : kNegative;
}

int cmd_preimage(const Options& o) {
  const auto m = load_machine(o);
  if (o.hom_path.empty()) throw InputError("--hom is required");
  const auto text = read_file(o.hom_path);
  nsa::Homomorphism f;
  try {
    f = nsa::parse_homomorphism(text, m.input_alphabet);
  } catch (const nsa::ParseError& e) {
    throw InputError(o.hom_path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
  if (auto p = f.problems(); !p.empty()) throw InputError(o.hom_path + ": " + p.front());
  const auto pre = nsa::preimage(m, f);
  write_output(o.output, nsa::print_machine(pre));
  return kPositive;
}

// ---- cg ----

int cmd_cg_build(const Options& o) {
  const auto m = load_machine(o);
  const auto cg = nsa::build(m, o.horizon);
  std::size_t co = 0;
  for (bool b : cg.coaccessible) co += b;
  const auto degrees = nsa::check_degrees(cg, m);
  const auto eps = nsa::max_eps_run(cg);
  json r{{"vertices", cg.vertices.size()},
         {"edges", cg.edges.size()},
         {"coaccessible", co},
         {"hit_horizon", cg.hit_horizon},
         {"horizon", {{"max_tree_edges", cg.horizon.max_tree_edges}, {"max_vertices", cg.horizon.max_vertices}}},
         {"degrees_ok", !degrees.has_value()},
         {"eps_run_bounded", eps.bounded}};
  if (eps.bounded) r["max_eps_run"] = eps.length;
  std::ostringstream text;
  text << "vertices: " << cg.vertices.size() << "\nedges: " << cg.edges.size() << "\ncoaccessible: " << co
       << "\nhorizon: tree edges <= " << cg.horizon.max_tree_edges << (cg.hit_horizon ? " (reached)" : "")
       << "\ndegrees: ";
  if (degrees) {
    text << "violation at " << show_config(m, cg.vertices[degrees->vertex]) << ": " << degrees->reason << '\n';
    r["degree_violation"] = {{"vertex", show_config(m, cg.vertices[degrees->vertex])}, {"reason", degrees->reason}};
  } else {
    text << "ok\n";
  }
  text << "max epsilon run: " << (eps.bounded ? std::to_string(eps.length) : "unbounded within horizon") << '\n';
  emit(o, r, text.str());
  return degrees ? kNegative : kPositive;
}

int cmd_cg_dot(const Options& o) {
  const auto m = load_machine(o);
  write_output(o.output, nsa::export_dot(nsa::build(m, o.horizon), m));
  return kPositive;
}

int cmd_cg_lift(const Options& o) {
  const auto m = load_machine(o);
  const auto w = load_word(o);
  const auto lift = nsa::lift_path(m, w, o.caps);
  std::string text;
  json path = json::array();
  for (std::size_t i = 0; i < lift.path.size(); ++i) {
    if (i > 0) text += " --" + nsa::letter_name(lift.labels[i - 1], m) + "--> ";
    text += show_config(m, lift.path[i]);
    path.push_back(show_config(m, lift.path[i]));
  }
  text += "\n" + nsa::to_string(lift.status);
  if (lift.status != nsa::LiftStatus::Lifted) text += " at " + std::to_string(lift.position);
  text += "\n";
  emit(o, {{"status", nsa::to_string(lift.status)}, {"position", lift.position}, {"path", path}}, text);
  switch (lift.status) {
    case nsa::LiftStatus::Lifted: return kPositive;
    case nsa::LiftStatus::CapExceeded: return kCap;
    default: return kNegative;
  }
}

int cmd_cg_project(const Options& o) {
  const auto m = load_machine(o);
  const auto g = load_group(o.group, o);
  const auto cg = nsa::build(m, o.horizon);
  nsa::Projection p;
  try {
    p = nsa::project(cg, m, *g);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  std::size_t mapped = 0;
  for (const auto& x : p.image) mapped += x.has_value();
  json viol = json::array();
  std::ostringstream text;
  text << "group: " << g->spec() << "\nmapped vertices: " << mapped << "\nchecked edges: " << p.checked_edges
       << "\nviolations: " << p.violations.size() << '\n';
  for (const auto& v : p.violations) {
    text << "  at " << show_config(m, cg.vertices[v.vertex]) << ": " << show(v.first_path) << " vs "
         << show(v.second_path) << '\n';
    viol.push_back({{"vertex", show_config(m, cg.vertices[v.vertex])},
                    {"first", v.first_path},
                    {"second", v.second_path}});
  }
  emit(o, {{"group", g->spec()}, {"mapped", mapped}, {"checked_edges", p.checked_edges}, {"violations", viol}},
       text.str());
  return p.violations.empty() ? kPositive : kNegative;
}

// ---- pda ----

int cmd_pda_quotient(const Options& o) {
  const auto m = load_machine(o);
  if (!o.force && !nsa::is_pushdown(m))
    throw InputError(o.machine_path + ": not a pushdown automaton (has down or up edges); use --force");
  const auto cg = nsa::build(m, o.horizon);
  const auto q = nsa::quotient(cg, nsa::nonerasing_classes(cg, m, o.force));
  const auto check = nsa::check_tree(q);
  const auto distortion = nsa::quotient_distortion(q);
  if (!o.dot.empty()) write_output(o.dot, nsa::export_dot(q, cg, m));
  json r{{"vertices", cg.vertices.size()},
         {"classes", q.classes.size()},
         {"edges", q.edges.size()},
         {"tree", check.tree},
         {"distortion", distortion},
         {"horizon", cg.horizon.max_tree_edges}};
  std::ostringstream text;
  text << "configurations: " << cg.vertices.size() << "\nclasses: " << q.classes.size()
       << "\nquotient edges: " << q.edges.size() << "\ndistortion: " << distortion << '\n';
  if (check.tree) {
    text << "TREE (within horizon " << cg.horizon.max_tree_edges << ")\n";
  } else {
    text << "CYCLE:";
    json cyc = json::array();
    for (int c : check.cycle) {
      const auto name = show_config(m, cg.vertices[q.classes[c].front()]);
      text << ' ' << name;
      cyc.push_back(name);
    }
    text << '\n';
    r["cycle"] = cyc;
  }
  emit(o, r, text.str());
  return check.tree ? kPositive : kNegative;
}

// ---- group ----

std::vector<nsa::Word> parse_centers(const std::vector<std::string>& texts) {
  std::vector<nsa::Word> out;
  for (const auto& t : texts) out.push_back(nsa::word_from_text(t));
  return out;
}

int cmd_group_ball(const Options& o) {
  const auto g = load_group(o.group, o);
  const auto win = nsa::group::ball(*g, nsa::word_from_text(o.center), o.radius);
  std::vector<std::size_t> sphere(o.radius + 1, 0);
  for (auto d : win.distance) ++sphere[d];
  std::ostringstream text;
  text << "size: " << win.size() << "\nspheres:";
  for (auto s : sphere) text << ' ' << s;
  text << '\n';
  emit(o, {{"group", g->spec()}, {"radius", o.radius}, {"size", win.size()}, {"spheres", sphere}}, text.str());
  return kPositive;
}

json report_json(const nsa::group::SeparatorReport& r) {
  return {{"cut_size", r.cut_size},
          {"window_limited", r.window_limited},
          {"disjoint_paths", r.disjoint_paths},
          {"verified", r.verified}};
}

int cmd_group_separator(const Options& o) {
  const auto g = load_group(o.group, o);
  const auto c1 = nsa::word_from_text(o.center);
  const auto c2 = nsa::word_from_text(o.other);
  const std::size_t window = o.window ? o.window : g->distance(c1, {}) + g->distance(c2, {}) + o.radius + 2;
  nsa::group::SeparatorReport r;
  try {
    r = nsa::group::min_separator(*g, c1, c2, o.radius, window);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const std::length_error& e) {
    std::cerr << e.what() << '\n';
    return kCap;
  }
  std::ostringstream text;
  text << "cut size: " << r.cut_size << (r.window_limited ? " (window limited)" : "") << "\ncut:";
  for (const auto& x : r.cut_set) text << ' ' << g->describe(x);
  text << "\nverified: " << (r.verified ? "yes" : "no") << '\n';
  auto j = report_json(r);
  j["window"] = window;
  emit(o, j, text.str());
  return r.verified ? kPositive : kNegative;
}

int cmd_group_probe(const Options& o) {
  const auto g = load_group(o.group, o);
  auto radii = o.radii.empty() ? std::vector<std::size_t>{1, 2, 3} : o.radii;
  std::size_t rmax = 0;
  for (auto r : radii) rmax = std::max(rmax, r);
  auto centers = parse_centers(o.centers);
  if (centers.empty()) {
    // powers of each generator, far enough for the largest radius
    for (std::size_t i = 0; i < g->generator_count(); i += 2)
      centers.push_back(nsa::Word(2 * rmax + 2, g->generators()[i]));
  }
  std::size_t reach = 0;
  for (const auto& c : centers) reach = std::max(reach, g->distance(c, {}));
  // as wide as growth allows, so cuts are not forced through the boundary
  const std::size_t window = o.window ? o.window
                                      : std::max(reach + rmax + 1,
                                                 nsa::group::fitting_radius(*g, reach + 4 * rmax + 1, 1'000'000));
  nsa::group::ProbeTable table;
  try {
    table = nsa::group::narrowness_probe(*g, radii, centers, window);
  } catch (const std::length_error& e) {
    std::cerr << e.what() << '\n';
    return kCap;
  }
  std::ostringstream text;
  json cells = json::array();
  text << "group: " << g->spec() << ", window " << window << '\n';
  for (const auto& c : table.cells) {
    text << "r=" << c.radius << " center=" << show(c.center) << ": ";
    json cell{{"radius", c.radius}, {"center", c.center}};
    if (c.report) {
      text << c.report->cut_size << (c.report->window_limited ? " (window limited)" : "") << '\n';
      cell["report"] = report_json(*c.report);
    } else {
      text << "error: " << c.error << '\n';
      cell["error"] = c.error;
    }
    cells.push_back(cell);
  }
  text << "max cut by radius:";
  json maxima = json::array();
  for (auto [r, cut] : table.max_cut) {
    text << ' ' << r << ':' << cut;
    maxima.push_back({r, cut});
  }
  text << "\ntrend: " << nsa::group::to_string(table.trend)
       << "\nnote: a finite sample of centers cannot certify narrowness\n";
  emit(o, {{"group", g->spec()}, {"window", window}, {"cells", cells}, {"max_cut", maxima},
           {"trend", nsa::group::to_string(table.trend)}},
       text.str());
  return kPositive;
}

int cmd_group_ends(const Options& o) {
  const auto g = load_group(o.group, o);
  const std::size_t window = o.window ? o.window : o.radius + 7;
  nsa::group::EndsReport r;
  try {
    r = nsa::group::ends_probe(*g, o.radius, window);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const std::length_error& e) {
    std::cerr << e.what() << '\n';
    return kCap;
  }
  std::ostringstream text;
  text << "ends: " << r.unbounded_components << "\nfinite components: " << r.finite_components << '\n';
  emit(o, {{"group", g->spec()}, {"radius", o.radius}, {"window", window}, {"ends", r.unbounded_components},
           {"finite_components", r.finite_components}, {"unbounded_sizes", r.unbounded_sizes}},
       text.str());
  return kPositive;
}

int cmd_group_qi(const Options& o) {
  const auto src = load_group(o.group, o);
  const auto tgt = load_group(o.target_group, o);
  if (o.hom_path.empty()) throw InputError("--hom is required");
  nsa::Homomorphism f;
  try {
    f = nsa::parse_homomorphism(read_file(o.hom_path), tgt->generators());
  } catch (const nsa::ParseError& e) {
    throw InputError(o.hom_path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
  // images of inverse generators default to inverses of the images
  auto image = [&](const std::string& a) -> nsa::Word {
    if (auto it = f.images.find(a); it != f.images.end()) return it->second;
    const auto i = src->generator_index(a);
    const auto& inv = src->generators()[nsa::group::GroupOracle::inverse(*i)];
    if (auto it = f.images.find(inv); it != f.images.end()) return tgt->inverse_word(it->second);
    throw InputError(o.hom_path + ": no image for generator " + a);
  };
  std::mt19937 rng(o.seed);
  std::uniform_int_distribution<std::size_t> len(0, o.sample_length);
  std::uniform_int_distribution<std::size_t> gen(0, src->generator_count() - 1);
  std::vector<std::pair<nsa::Word, nsa::Word>> samples;
  for (std::size_t i = 0; i < o.samples; ++i) {
    nsa::Word w, fw;
    for (std::size_t n = len(rng); n > 0; --n) {
      w.push_back(src->generators()[gen(rng)]);
      for (auto& b : image(w.back())) fw.push_back(b);
    }
    samples.emplace_back(std::move(w), std::move(fw));
  }
  std::optional<std::size_t> density;
  if (o.density) density = o.density;
  nsa::group::QiReport r;
  try {
    r = nsa::group::qi_check(samples, o.qi_k, *src, *tgt, density);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  std::ostringstream text;
  text << "samples: " << samples.size() << " (seed " << o.seed << ")\nk: " << o.qi_k
       << "\nviolations: " << r.violations.size() << '\n';
  for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) {
    const auto& v = r.violations[i];
    text << "  " << show(samples[v.i].first) << ", " << show(samples[v.j].first) << ": d = " << v.source_distance
         << ", image d = " << v.target_distance << '\n';
  }
  if (density) text << "uncovered in window " << *density << ": " << r.uncovered.size() << '\n';
  const bool ok = r.violations.empty() && r.uncovered.empty();
  emit(o, {{"samples", samples.size()}, {"seed", o.seed}, {"k", o.qi_k}, {"violations", r.violations.size()},
           {"uncovered", r.uncovered.size()}, {"ok", ok}},
       text.str());
  return ok ? kPositive : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nested stack automata toolkit"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto machine_arg = [&](CLI::App* c) {
    c->add_option("machine,--machine", o.machine_path, "machine file")->required();
    c->add_flag("--allow-reserved", o.allow_reserved, "accept generated names starting with __");
  };
  auto word_args = [&](CLI::App* c) {
    c->add_option("--word", o.word, "letters, concatenated or space separated");
    c->add_option("--word-file", o.word_file, "file with space separated letters");
  };
  auto cap_args = [&](CLI::App* c) {
    c->add_option("--max-steps", o.caps.max_steps);
    c->add_option("--max-tree-edges", o.caps.max_tree_edges);
    c->add_option("--max-frontier", o.caps.max_frontier);
  };
  auto horizon_args = [&](CLI::App* c) {
    c->add_option("--horizon", o.horizon.max_tree_edges, "largest memory tree explored (edges)");
    c->add_option("--max-vertices", o.horizon.max_vertices);
    c->add_option("--max-depth", o.horizon.max_depth);
  };
  auto bind = [&](CLI::App* c, std::function<int()> f) {
    c->add_flag("--json", o.json, "machine-readable report");
    c->callback([&action, f] { action = f; });
  };

  auto* nsa_cmd = app.add_subcommand("nsa", "machines: validate, run, analyze")->require_subcommand(1);
  {
    auto* c = nsa_cmd->add_subcommand("validate", "parse and check a machine file");
    machine_arg(c);
    bind(c, [&] { return cmd_validate(o); });

    c = nsa_cmd->add_subcommand("accept", "decide acceptance of a word");
    machine_arg(c), word_args(c), cap_args(c);
    bind(c, [&] { return cmd_accept(o, false); });

    c = nsa_cmd->add_subcommand("run", "decide acceptance and show an accepting path");
    machine_arg(c), word_args(c), cap_args(c);
    bind(c, [&] { return cmd_accept(o, true); });

    c = nsa_cmd->add_subcommand("enumerate", "accepted words up to a length, shortlex");
    machine_arg(c), cap_args(c);
    c->add_option("--max-len", o.max_len);
    bind(c, [&] { return cmd_enumerate(o); });

    c = nsa_cmd->add_subcommand("check-det", "determinism check");
    machine_arg(c);
    bind(c, [&] { return cmd_check_det(o); });

    c = nsa_cmd->add_subcommand("check-erasing", "limited erasing check");
    machine_arg(c);
    bind(c, [&] { return cmd_check_erasing(o); });

    c = nsa_cmd->add_subcommand("trace", "step a deterministic machine through a word");
    machine_arg(c), word_args(c), cap_args(c);
    bind(c, [&] { return cmd_trace(o); });

    c = nsa_cmd->add_subcommand("preimage", "machine for the inverse image under a homomorphism");
    machine_arg(c);
    c->add_option("--hom", o.hom_path, "homomorphism file")->required();
    c->add_option("-o,--output", o.output);
    bind(c, [&] { return cmd_preimage(o); });
  }

  auto* cg_cmd = app.add_subcommand("cg", "configuration graphs")->require_subcommand(1);
  {
    auto* c = cg_cmd->add_subcommand("build", "explore and summarize");
    machine_arg(c), horizon_args(c);
    bind(c, [&] { return cmd_cg_build(o); });

    c = cg_cmd->add_subcommand("dot", "Graphviz output");
    machine_arg(c), horizon_args(c);
    c->add_option("-o,--output", o.output);
    bind(c, [&] { return cmd_cg_dot(o); });

    c = cg_cmd->add_subcommand("lift", "lift a word to a path from the initial configuration");
    machine_arg(c), word_args(c), cap_args(c);
    bind(c, [&] { return cmd_cg_lift(o); });

    c = cg_cmd->add_subcommand("project", "map onto a Cayley diagram and check consistency");
    machine_arg(c), horizon_args(c);
    c->add_option("--group", o.group, "e.g. 'free 2', 'abelian 1', 'finite FILE'")->required();
    bind(c, [&] { return cmd_cg_project(o); });
  }

  auto* pda_cmd = app.add_subcommand("pda", "pushdown automata")->require_subcommand(1);
  {
    auto* c = pda_cmd->add_subcommand("quotient", "tree quotient of the configuration graph");
    machine_arg(c), horizon_args(c);
    c->add_option("--dot", o.dot, "write the quotient as Graphviz");
    c->add_flag("--force", o.force, "apply the construction to a machine with down or up edges");
    bind(c, [&] { return cmd_pda_quotient(o); });
  }

  auto* group_cmd = app.add_subcommand("group", "Cayley graph probes")->require_subcommand(1);
  {
    auto group_arg = [&](CLI::App* c) {
      c->add_option("--group", o.group, "e.g. 'free 2', 'abelian 2', 'product free 1 finite z2.table'")->required();
    };
    auto* c = group_cmd->add_subcommand("ball", "ball sizes");
    group_arg(c);
    c->add_option("--radius", o.radius);
    c->add_option("--center", o.center);
    bind(c, [&] { return cmd_group_ball(o); });

    c = group_cmd->add_subcommand("separator", "minimum vertex cut between two balls");
    group_arg(c);
    c->add_option("--radius", o.radius);
    c->add_option("--window", o.window);
    c->add_option("--from", o.center, "first center (default identity)");
    c->add_option("--to", o.other, "second center")->required();
    bind(c, [&] { return cmd_group_separator(o); });

    c = group_cmd->add_subcommand("probe", "separator sizes over radii and centers");
    group_arg(c);
    c->add_option("--radii", o.radii)->delimiter(',');
    c->add_option("--centers", o.centers)->delimiter(',');
    c->add_option("--window", o.window);
    bind(c, [&] { return cmd_group_probe(o); });

    c = group_cmd->add_subcommand("ends", "infinite components outside a ball");
    group_arg(c);
    c->add_option("--radius", o.radius);
    c->add_option("--window", o.window);
    bind(c, [&] { return cmd_group_ends(o); });

    c = group_cmd->add_subcommand("qi", "sampled quasi-isometry check of a generator map");
    group_arg(c);
    c->add_option("--target", o.target_group)->required();
    c->add_option("--hom", o.hom_path, "images of the generators")->required();
    c->add_option("-k", o.qi_k);
    c->add_option("--samples", o.samples);
    c->add_option("--length", o.sample_length);
    c->add_option("--density", o.density, "also check k-density in this window");
    c->add_option("--seed", o.seed);
    bind(c, [&] { return cmd_group_qi(o); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
