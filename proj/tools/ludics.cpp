#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ludics/behaviour.hpp"
#include "ludics/completion.hpp"
#include "ludics/datatypes.hpp"
#include "ludics/dot.hpp"
#include "ludics/functional.hpp"
#include "ludics/locate.hpp"
#include "ludics/multidesign.hpp"
#include "ludics/parser.hpp"
#include "ludics/reduction.hpp"
#include "ludics/selftest.hpp"

using json = nlohmann::ordered_json;
using namespace ludics;

namespace {

bool use_color() {
  const char* env = std::getenv("LUDICS_COLOR");
  if (env) return std::string(env) == "1";
  return false;
}

std::string verdict(bool holds) {
  if (!use_color()) return holds ? "holds" : "fails";
  return holds ? "\033[32mholds\033[0m" : "\033[31mfails\033[0m";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ludics_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ludics_error("cannot write " + path);
  out << content;
}

json seq_to_json(const AjSeq& s) {
  json arr = json::array();
  for (size_t i = 0; i < s.size(); ++i) {
    const LocAction& a = s[i];
    json o;
    o["kind"] = a.kind == ActKind::Daimon ? "daimon" : (a.kind == ActKind::Pos ? "pos" : "neg");
    if (a.proper()) {
      o["address"] = a.address;
      o["name"] = a.name;
      o["binders"] = a.binders;
      auto j = justifier(s, i);
      o["justifier"] = j ? json((int)*j) : json(nullptr);
    }
    arr.push_back(o);
  }
  return arr;
}

struct Options {
  int level = 3;
  size_t max_len = 16;
  long fuel = kDefaultFuel;
  uint64_t seed = 0;
  bool emit_json = false;
  bool trace = false;
  std::string dot_path;
};

Signature default_signature() {
  Signature sig;
  for (const Name& n : {"b", "n", "l", "t", "u"}) sig.declare(n, 0);
  return sig;
}

Bounds to_bounds(const Options& o) {
  Bounds b;
  b.level = o.level;
  b.max_len = o.max_len;
  b.fuel = o.fuel;
  return b;
}

int report_check(const std::string& what, const CheckReport& rep, const Options& opt) {
  if (opt.emit_json) {
    json j;
    j["check"] = what;
    j["verdict"] = rep.holds ? "holds" : "fails";
    j["level"] = rep.bounds.level;
    j["max_len"] = rep.bounds.max_len;
    if (rep.witness) {
      j["witness"] = render_seq(*rep.witness);
      j["witness_actions"] = seq_to_json(*rep.witness);
    }
    if (!rep.detail.empty()) j["detail"] = rep.detail;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << what << ": " << verdict(rep.holds) << "  (level " << rep.bounds.level
              << ", max-len " << rep.bounds.max_len << ")\n";
    if (!rep.holds && rep.witness)
      std::cout << "  witness: " << render_seq(*rep.witness) << "\n";
    if (!rep.holds && !rep.detail.empty()) std::cout << "  detail: " << rep.detail << "\n";
  }
  return rep.holds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ludics - a desk-scale engine for computational ludics"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--level", opt.level, "Kleene level bound")->capture_default_str();
  app.add_option("--max-len", opt.max_len, "path length bound")->capture_default_str();
  app.add_option("--fuel", opt.fuel, "reduction step budget")->capture_default_str();
  app.add_option("--seed", opt.seed, "random seed")->capture_default_str();
  app.add_flag("--json", opt.emit_json, "emit JSON reports");

  // normalize
  std::string file_a, file_b, expr, mode;
  auto* cmd_norm = app.add_subcommand("normalize", "normalize a design");
  cmd_norm->add_option("file", file_a)->required();
  cmd_norm->add_flag("--trace", opt.trace, "print each head redex");

  auto* cmd_ortho = app.add_subcommand("ortho", "test orthogonality of two designs");
  cmd_ortho->add_option("pos", file_a)->required();
  cmd_ortho->add_option("neg", file_b)->required();

  auto* cmd_interact = app.add_subcommand("interact", "interaction path of two designs");
  cmd_interact->add_option("left", file_a)->required();
  cmd_interact->add_option("right", file_b)->required();
  cmd_interact->add_option("--dot", opt.dot_path, "write the left design with the path to DOT");

  std::string restrict_vars;
  auto* cmd_mint = app.add_subcommand("minteract", "interaction sequence of two multi-designs");
  cmd_mint->add_option("left", file_a)->required();
  cmd_mint->add_option("right", file_b)->required();
  cmd_mint->add_option("--restrict", restrict_vars, "restrict the path to these places");

  auto* cmd_paths = app.add_subcommand("paths", "enumerate the paths of a design");
  cmd_paths->add_option("file", file_a)->required();

  auto* cmd_tree = app.add_subcommand("tree", "located tree of a design");
  cmd_tree->add_option("file", file_a)->required();
  cmd_tree->add_option("--dot", opt.dot_path, "write DOT output here");

  auto* cmd_beh = app.add_subcommand("behaviour", "analyse a behaviour expression");
  cmd_beh->add_option("expr", expr)->required();
  cmd_beh->add_option("what", mode, "incarnation|visitable|regular|pure|quasi-pure")->required();

  auto* cmd_data = app.add_subcommand("data", "analyse a data pattern file");
  cmd_data->add_option("file", file_a)->required();
  cmd_data->add_option("what", mode, "incarnation|regular|pure|basis|monotone|steady")->required();

  std::vector<std::string> encode_args;
  auto* cmd_encode = app.add_subcommand("encode", "canonical value designs");
  cmd_encode->add_option("value", encode_args, "nat K | bool true/false | list K...")->required();

  bool want_witness = false;
  auto* cmd_func = app.add_subcommand("func", "analyse a functional type");
  cmd_func->add_option("type", expr)->required();
  cmd_func->add_flag("--witness", want_witness, "construct the impurity witness");
  cmd_func->add_option("--dot", opt.dot_path, "write the witness design to DOT");

  auto* cmd_self = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (cmd_norm->parsed()) {
      ParsedFile pf = parse_design_file(slurp(file_a));
      auto trace_fn = opt.trace ? std::function<void(const DesignPtr&)>([](const DesignPtr& d) {
        std::cout << "  ~> " << render_design(d) << "\n";
      })
                                : std::function<void(const DesignPtr&)>();
      NormalizeOutcome out = normalize(pf.design, opt.fuel, trace_fn);
      if (opt.emit_json) {
        json j;
        j["result"] = render_design(out.result);
        j["status"] = out.status == NormStatus::Converged
                          ? "converged"
                          : (out.status == NormStatus::DivergedOmega ? "diverged" : "fuel");
        j["steps"] = out.steps;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << render_design(out.result) << "\n";
        std::cout << "-- "
                  << (out.status == NormStatus::Converged
                          ? "converged"
                          : (out.status == NormStatus::DivergedOmega ? "diverged to _" : "fuel exhausted"))
                  << " in " << out.steps << " steps\n";
      }
      return out.status == NormStatus::FuelExhausted ? 1 : 0;
    }

    if (cmd_ortho->parsed()) {
      ParsedFile pa = parse_design_file(slurp(file_a));
      ParsedFile pb = parse_design_file(slurp(file_b));
      for (const auto& [name, arity] : pb.signature.names()) pa.signature.declare(name, arity);
      bool ortho = is_orthogonal(pa.design, pb.design, opt.fuel);
      std::cout << (ortho ? "orthogonal" : "not orthogonal") << "\n";
      return ortho ? 0 : 1;
    }

    if (cmd_interact->parsed()) {
      ParsedFile pa = parse_design_file(slurp(file_a));
      ParsedFile pb = parse_design_file(slurp(file_b));
      auto path = interaction_path(pa.design, pb.design, opt.fuel);
      if (!path) {
        std::cout << "not orthogonal\n";
        return 1;
      }
      if (opt.emit_json)
        std::cout << json({{"path", render_seq(*path)}, {"actions", seq_to_json(*path)}}).dump(2)
                  << "\n";
      else
        std::cout << render_seq(*path) << "\n";
      if (!opt.dot_path.empty())
        write_file(opt.dot_path, design_to_dot(pa.design, &*path));
      return 0;
    }

    if (cmd_mint->parsed()) {
      Signature sig = default_signature();
      // Collect declarations from both files: allow a leading sig block by
      // reusing the design-file parser on each line is too strict, so the
      // .mlud format relies on the default constants plus reserved names.
      MultiDesign left = parse_multidesign(slurp(file_a), sig);
      MultiDesign right = parse_multidesign(slurp(file_b), sig);
      InteractionResult r = interaction_sequence(left, right, opt.fuel);
      AjSeq shown = r.seq;
      if (!restrict_vars.empty()) {
        MultiDesign sub;
        std::stringstream ss(restrict_vars);
        std::string v;
        while (std::getline(ss, v, ',')) {
          auto it = left.negatives.find(v);
          if (it == left.negatives.end()) throw ludics_error("unknown place " + v);
          sub.negatives.emplace(it->first, it->second);
        }
        shown = restrict_path(r.seq, left, sub);
      }
      if (opt.emit_json)
        std::cout << json({{"sequence", render_seq(shown)},
                           {"converged", r.converged},
                           {"actions", seq_to_json(shown)}})
                         .dump(2)
                  << "\n";
      else
        std::cout << render_seq(shown) << (r.converged ? "" : "  -- diverged") << "\n";
      return r.converged ? 0 : 1;
    }

    if (cmd_paths->parsed()) {
      ParsedFile pf = parse_design_file(slurp(file_a));
      PathSet ps = paths_of(pf.design, opt.max_len);
      if (opt.emit_json) {
        json arr = json::array();
        for (const auto& s : ps) arr.push_back(render_seq(s));
        std::cout << json({{"count", ps.size()}, {"paths", arr}}).dump(2) << "\n";
      } else {
        for (const auto& s : ps) std::cout << (s.empty() ? "(empty)" : render_seq(s)) << "\n";
        std::cout << "-- " << ps.size() << " paths (max-len " << opt.max_len << ")\n";
      }
      return 0;
    }

    if (cmd_tree->parsed()) {
      ParsedFile pf = parse_design_file(slurp(file_a));
      LocForest f = locate(pf.design);
      std::string dot = forest_to_dot(f);
      if (!opt.dot_path.empty()) {
        write_file(opt.dot_path, dot);
        std::cout << "wrote " << opt.dot_path << "\n";
      } else {
        std::cout << dot;
      }
      return 0;
    }

    if (cmd_beh->parsed()) {
      BehaviourContext ctx(default_signature());
      BehaviourPtr b = parse_behaviour(expr, ctx, opt.level);
      Bounds bounds = to_bounds(opt);
      if (mode == "incarnation") {
        IncarnationSet inc = incarnation(ctx, b, bounds);
        if (opt.emit_json) {
          json arr = json::array();
          for (const auto& d : inc.designs) arr.push_back(render_design(d));
          std::cout << json({{"behaviour", render_behaviour(b)},
                             {"level", bounds.level},
                             {"size", inc.designs.size()},
                             {"designs", arr}})
                           .dump(2)
                    << "\n";
        } else {
          for (const auto& d : inc.designs) std::cout << render_design(d) << "\n";
          std::cout << "-- " << inc.designs.size() << " incarnated designs at level "
                    << bounds.level << "\n";
        }
        return 0;
      }
      if (mode == "visitable") {
        PathSet v = visitable_paths(ctx, b, bounds);
        if (opt.emit_json) {
          json arr = json::array();
          for (const auto& s : v) arr.push_back(render_seq(s));
          std::cout << json({{"behaviour", render_behaviour(b)}, {"paths", arr}}).dump(2) << "\n";
        } else {
          for (const auto& s : v) std::cout << (s.empty() ? "(empty)" : render_seq(s)) << "\n";
          std::cout << "-- " << v.size() << " visitable paths\n";
        }
        return 0;
      }
      if (mode == "regular") return report_check("regular", check_regular(ctx, b, bounds), opt);
      if (mode == "pure") return report_check("pure", check_pure(ctx, b, bounds), opt);
      if (mode == "quasi-pure")
        return report_check("quasi-pure", check_quasi_pure(ctx, b, bounds), opt);
      throw ludics_error("unknown behaviour query " + mode);
    }

    if (cmd_data->parsed()) {
      PatternPtr p = parse_pattern(slurp(file_a));
      Signature sig = default_signature();
      declare_pattern_names(sig, p);
      BehaviourContext ctx(sig);
      Bounds bounds = to_bounds(opt);
      if (mode == "steady") {
        bool s = is_steady(p);
        std::cout << render_pattern(p) << (s ? " is steady" : " is not steady (syntactic check)")
                  << "\n";
        return s ? 0 : 1;
      }
      if (mode == "basis") {
        BehaviourPtr bb = basis(p);
        IncarnationSet inc = incarnation(ctx, bb, bounds);
        std::cout << "basis: " << render_behaviour(bb) << "\n";
        for (const auto& d : inc.designs) std::cout << render_design(d) << "\n";
        return 0;
      }
      if (mode == "monotone") {
        MonotoneReport rep = kleene_monotone_report(ctx, p, {}, opt.level, bounds);
        std::cout << "levels 0.." << opt.level << ": " << (rep.holds ? "inclusions hold" : rep.detail)
                  << "\n  incarnation sizes:";
        for (auto s : rep.incarnation_sizes) std::cout << " " << s;
        std::cout << "\n";
        return rep.holds ? 0 : 1;
      }
      BehaviourPtr b = interpret_pattern(p, {}, opt.level);
      if (mode == "incarnation") {
        IncarnationSet inc = incarnation(ctx, b, bounds);
        for (const auto& d : inc.designs) std::cout << render_design(d) << "\n";
        std::cout << "-- " << inc.designs.size() << " incarnated designs at level " << opt.level
                  << "\n";
        return 0;
      }
      if (mode == "regular") return report_check("regular", check_regular(ctx, b, bounds), opt);
      if (mode == "pure") {
        // Data behaviours are the suprema of their Kleene levels; extensions
        // come from one level higher.
        BehaviourPtr b_up = interpret_pattern(p, {}, opt.level + 1);
        return report_check("pure", check_pure_against(ctx, b, b_up, bounds), opt);
      }
      throw ludics_error("unknown data query " + mode);
    }

    if (cmd_encode->parsed()) {
      if (encode_args.empty()) throw ludics_error("encode: missing value");
      const std::string& kind = encode_args[0];
      DesignPtr d;
      if (kind == "nat") {
        if (encode_args.size() != 2) throw ludics_error("encode nat K");
        d = encode_nat(std::stoi(encode_args[1]));
      } else if (kind == "bool") {
        if (encode_args.size() != 2) throw ludics_error("encode bool true|false");
        d = encode_bool(encode_args[1] == "true" || encode_args[1] == "1");
      } else if (kind == "list") {
        std::vector<DesignPtr> elems;
        for (size_t i = 1; i < encode_args.size(); ++i)
          elems.push_back(pos_app(kX0, "b", {}));
        d = encode_list(elems);
      } else {
        throw ludics_error("encode: unknown kind " + kind);
      }
      std::cout << render_design(d) << "\n";
      return 0;
    }

    if (cmd_func->parsed()) {
      FuncPtr f = parse_functype(expr);
      Signature sig = default_signature();
      BehaviourContext ctx(sig);
      Bounds bounds = to_bounds(opt);
      auto dec = impurity_criterion(f);
      FunctionalReport rep = check_functional(ctx, f, bounds);
      json j;
      j["type"] = render_functype(f);
      j["regular"] = rep.regular.holds;
      j["quasi_pure"] = rep.quasi_pure.holds;
      j["pure"] = rep.pure.holds;
      j["criterion"] = dec ? "impure" : "pure";
      j["consistent"] = rep.consistent;
      if (dec) {
        j["decomposition"] = {{"c1", render_context(dec->c1)},
                              {"c2", render_context(dec->c2)},
                              {"q1", render_functype(dec->q1)},
                              {"q2", render_functype(dec->q2)},
                              {"r", render_functype(dec->r)}};
      }
      int code = dec ? 1 : 0;
      if (want_witness && dec) {
        ImpurityWitness w = impurity_witness(ctx, f, bounds, true);
        j["witness"] = {{"path", render_seq(w.s)},
                        {"p", render_design(w.p)},
                        {"n", render_design(w.n)},
                        {"well_bracketed", is_well_bracketed(w.s)},
                        {"actions", seq_to_json(w.s)}};
        if (!opt.dot_path.empty()) write_file(opt.dot_path, design_to_dot(w.p, &w.s));
      }
      if (opt.emit_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << render_functype(f) << "\n  regular: " << verdict(rep.regular.holds)
                  << "\n  quasi-pure: " << verdict(rep.quasi_pure.holds)
                  << "\n  pure: " << verdict(rep.pure.holds) << " (criterion: "
                  << (dec ? "impure" : "pure") << ", consistent: " << (rep.consistent ? "yes" : "NO")
                  << ")\n";
        if (dec)
          std::cout << "  decomposition: C1=" << render_context(dec->c1)
                    << " C2=" << render_context(dec->c2) << " Q1=" << render_functype(dec->q1)
                    << " Q2=" << render_functype(dec->q2) << " R=" << render_functype(dec->r)
                    << "\n";
        if (want_witness && dec && j.contains("witness")) {
          std::cout << "  witness path: " << j["witness"]["path"].get<std::string>() << "\n";
          std::cout << "  witness design p: " << j["witness"]["p"].get<std::string>() << "\n";
          std::cout << "  witness design n: " << j["witness"]["n"].get<std::string>() << "\n";
        }
      }
      return code;
    }

    if (cmd_self->parsed()) {
      auto results = run_acceptance(opt.seed, std::cout);
      bool all = true;
      for (const auto& r : results) all = all && r.pass;
      std::cout << (all ? "-- all criteria passed\n" : "-- FAILURES present\n");
      return all ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
