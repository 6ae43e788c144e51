#include "rauzy/cli.hpp"

#include "rauzy/diagram.hpp"
#include "rauzy/errors.hpp"
#include "rauzy/marking.hpp"
#include "rauzy/symmetry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace rauzy::cli {

namespace {

struct RunConfig {
  std::string format = "text";
  std::size_t max_vertices = kDefaultMaxVertices;
  bool quiet = false;
  std::string input;
  std::string candidate;
};

std::string read_file(const std::string &path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LabeledPermutation load_irreducible(const std::string &path) {
  LabeledPermutation p = parse_permutation(read_file(path));
  if (!is_irreducible(p))
    throw ReducibleError("reducible permutation in " + path);
  return p;
}

RauzyDiagram load_class(const RunConfig &cfg, std::ostream &err) {
  RauzyDiagram d = enumerate_class(load_irreducible(cfg.input),
                                   cfg.max_vertices);
  if (d.truncated())
    throw TruncatedDiagramError("class exceeds --max-vertices " +
                                std::to_string(cfg.max_vertices));
  if (!cfg.quiet)
    err << "enumerated " << d.size() << " vertices\n";
  return d;
}

int cmd_info(const RunConfig &cfg, std::ostream &out) {
  const LabeledPermutation p = load_irreducible(cfg.input);
  const MarkingData m = rotation_map(p);
  const Alphabet &a = *p.alphabet();
  if (cfg.format == "json") {
    nlohmann::json orbits = nlohmann::json::array();
    for (const auto &orb : m.orbits) {
      nlohmann::json o = nlohmann::json::array();
      for (Letter l : orb)
        o.push_back(a.token(l));
      orbits.push_back(std::move(o));
    }
    nlohmann::json doc = {{"stratum", m.stratum_signature()},
                          {"special_degree", m.special_degree},
                          {"degrees", m.regular_degrees},
                          {"genus", m.genus},
                          {"minus_inf", a.token(m.minus_inf)},
                          {"plus_inf", a.token(m.plus_inf)},
                          {"rotation", m.rotation_cycles(a)},
                          {"orbits", std::move(orbits)},
                          {"special_orbit", m.special_orbit}};
    out << doc.dump(2) << "\n";
    return kOk;
  }
  out << m.stratum_signature() << ", genus " << m.genus << ", special orbit "
      << m.orbit_string(a, m.special_orbit) << "\n";
  out << "special degree: " << m.special_degree << "\n";
  out << "minus_inf: " << a.token(m.minus_inf)
      << ", plus_inf: " << a.token(m.plus_inf) << "\n";
  out << "T: " << m.rotation_cycles(a) << "\n";
  out << "orbits:";
  for (std::size_t o = 0; o < m.orbits.size(); ++o)
    out << ' ' << m.orbit_string(a, o);
  out << "\n";
  return kOk;
}

int cmd_class(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  const RauzyDiagram d = load_class(cfg, err);
  if (cfg.format == "json")
    out << export_json(d);
  else if (cfg.format == "dot")
    out << export_dot(d);
  else
    out << "vertices: " << d.size() << "\nedges: " << 2 * d.size() << "\n";
  return kOk;
}

int cmd_aut(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  const RauzyDiagram d = load_class(cfg, err);
  const OrbitFrame frame(rotation_map(d.vertex(d.root())));
  const SymmetryGroup candidates = build_candidate_group(frame);
  const SymmetryGroup aut = automorphism_group(d, candidates, frame);
  const Alphabet &a = *d.alphabet();
  if (cfg.format == "json") {
    nlohmann::json elems = nlohmann::json::array();
    for (std::size_t i = 0; i < aut.order(); ++i)
      elems.push_back({{"cycles", cycle_notation(aut.elements()[i], a)},
                       {"coordinates", coordinate_string(aut.coordinates()[i])},
                       {"phi", phi(aut.coordinates()[i], frame)}});
    nlohmann::json doc = {{"g_prime_order", candidates.order()},
                          {"aut_order", aut.order()},
                          {"elements", std::move(elems)}};
    out << doc.dump(2) << "\n";
    return kOk;
  }
  out << "|G'| = " << candidates.order() << "\n";
  out << "|Aut(D)| = " << aut.order() << "\n";
  for (std::size_t i = 0; i < aut.order(); ++i)
    out << cycle_notation(aut.elements()[i], a) << "  "
        << coordinate_string(aut.coordinates()[i]) << "\n";
  return kOk;
}

int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  const RauzyDiagram d = load_class(cfg, err);
  const VerificationReport r = verify_theorem(d);
  if (cfg.format == "json")
    out << report_json(r, *d.alphabet());
  else
    out << report_text(r, *d.alphabet());
  if (!r.passed()) {
    for (const auto &f : r.failures)
      err << "verification failure: " << f << "\n";
    return kVerification;
  }
  return kOk;
}

int cmd_member(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  const RauzyDiagram d = load_class(cfg, err);
  const LabeledPermutation p = parse_permutation(read_file(cfg.candidate));
  out << (contains(d, p) ? "member" : "not a member") << "\n";
  return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Labeled Rauzy classes, their diagrams and automorphisms",
               "rauzy"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App *sub,
                        std::vector<std::string> formats) {
    sub->add_option("file", cfg.input, "permutation file ('-' for stdin)")
        ->required();
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember(formats));
    sub->add_flag("-q,--quiet", cfg.quiet, "suppress progress on stderr");
  };
  auto add_guard = [&](CLI::App *sub) {
    sub->add_option("--max-vertices", cfg.max_vertices,
                    "stop enumeration beyond this many vertices")
        ->check(CLI::PositiveNumber);
  };

  auto *info = app.add_subcommand("info", "stratum and marking of a permutation");
  add_common(info, {"text", "json"});
  auto *cls = app.add_subcommand("class", "enumerate the Rauzy class");
  add_common(cls, {"text", "json", "dot"});
  add_guard(cls);
  auto *aut = app.add_subcommand("aut", "automorphism group of the diagram");
  add_common(aut, {"text", "json"});
  add_guard(aut);
  auto *verify = app.add_subcommand("verify", "check the structure theorem");
  add_common(verify, {"text", "json"});
  add_guard(verify);
  auto *member = app.add_subcommand("member", "class membership test");
  add_common(member, {"text"});
  member->add_option("candidate", cfg.candidate, "permutation to look up")
      ->required();
  add_guard(member);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (info->parsed())
      return cmd_info(cfg, out);
    if (cls->parsed())
      return cmd_class(cfg, out, err);
    if (aut->parsed())
      return cmd_aut(cfg, out, err);
    if (verify->parsed())
      return cmd_verify(cfg, out, err);
    return cmd_member(cfg, out, err);
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ReducibleError &e) {
    err << "reducible: " << e.what() << "\n";
    return kReducible;
  } catch (const TruncatedDiagramError &e) {
    err << "guard exceeded: " << e.what() << "\n";
    return kGuard;
  } catch (const Error &e) {
    err << "verification failure: " << e.what() << "\n";
    return kVerification;
  }
}

} // namespace rauzy::cli
