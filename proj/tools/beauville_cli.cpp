// Command-line front end.  JSON documents go to stdout, diagnostics to stderr.
// Exit codes: 0 definitive answer, 1 input error, 2 budget exceeded or
// otherwise non-exhaustive.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "beauville/all.hpp"

using namespace beauville;
using nlohmann::json;

namespace {

constexpr int kDefinitive = 0;
constexpr int kInputError = 1;
constexpr int kInconclusive = 2;

struct Budget {
  std::uint64_t max_candidates = SearchBudget{}.max_candidates;
  double max_seconds = SearchBudget{}.max_seconds;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
};

void add_budget_flags(CLI::App* cmd, Budget& b) {
  cmd->add_option("--max-candidates", b.max_candidates, "Candidate budget")->check(CLI::PositiveNumber);
  cmd->add_option("--max-seconds", b.max_seconds, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", b.threads, "Worker threads (1 = reference serial path)")->check(CLI::PositiveNumber);
}

SearchOptions search_options(const Budget& b, bool first_found, std::size_t store) {
  SearchOptions o;
  o.mode = first_found ? SearchMode::FirstFound : SearchMode::Exhaustive;
  o.budget.max_candidates = b.max_candidates;
  o.budget.max_seconds = b.max_seconds;
  o.threads = b.threads;
  o.store_limit = store;
  return o;
}

void emit(const json& doc) { std::cout << doc.dump() << '\n' << std::flush; }

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidSpec, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidSpec, "cannot parse JSON from '" + path + "': " + e.what());
  }
}

MetacyclicGroup metacyclic_only(const std::string& spec) {
  auto g = make_group(spec);
  if (auto* m = std::get_if<MetacyclicGroup>(&g)) return *m;
  throw Error(ErrorKind::UnsupportedFamily, "this verb needs a metacyclic group, got '" + spec + "'");
}

json invariant_json(const uniform::ClassificationInvariant& inv) {
  return {{"p", inv.p}, {"n", inv.n}, {"r", inv.r}, {"abelian", inv.abelian}};
}

/// A sweep input line is either a group spec or "p m n lambda".
std::string sweep_spec(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> fields{std::istream_iterator<std::string>(in), {}};
  if (fields.size() == 4) {
    return "metacyclic:p=" + fields[0] + ",m=" + fields[1] + ",n=" + fields[2] + ",lambda=" + fields[3];
  }
  if (fields.size() == 1) return fields[0];
  throw Error(ErrorKind::InvalidSpec, "sweep line is neither a group spec nor 'p m n lambda': '" + line + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beauville structures on finite groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "beauville 1.0.0");

  // verify
  std::string group_spec, structure_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check the three defining conditions for a structure document");
  verify_cmd->add_option("group", group_spec, "Group spec")->required();
  verify_cmd->add_option("structure", structure_path, "Structure JSON file, or - for stdin")->required();

  // search
  Budget budget;
  bool exhaustive_flag = false, first_found_flag = false;
  std::size_t store = 100;
  auto* search_cmd = app.add_subcommand("search", "Search for structures in lexicographic order");
  search_cmd->add_option("group", group_spec, "Group spec")->required();
  auto* ex_opt = search_cmd->add_flag("--exhaustive", exhaustive_flag, "Scan the whole space (default)");
  search_cmd->add_flag("--first-found", first_found_flag, "Stop at the least structure")->excludes(ex_opt);
  search_cmd->add_option("--store", store, "Structures to list in exhaustive mode (count is always exact)");
  add_budget_flags(search_cmd, budget);

  // admits
  bool audit = false;
  auto* admits_cmd = app.add_subcommand("admits", "Existence criterion for the metacyclic family");
  admits_cmd->add_option("group", group_spec, "Metacyclic group spec")->required();
  admits_cmd->add_flag("--audit", audit, "Cross-check by exhaustive search (order <= 4096)");
  admits_cmd->add_option("--threads", budget.threads, "Worker threads for the audit")->check(CLI::PositiveNumber);

  // construct
  std::vector<std::uint64_t> choice;
  auto* construct_cmd = app.add_subcommand("construct", "Frattini lift of the least structure on (Z/p)^2");
  construct_cmd->add_option("group", group_spec, "Metacyclic(p,n,n,lambda) or exponent-p matrix group spec")->required();
  construct_cmd->add_option("--choice", choice, "Fiber indices for x y a b")->expected(4);

  // lift
  std::string target_spec;
  auto* lift_cmd = app.add_subcommand("lift", "Order-preserving lift of a structure along a surjection");
  lift_cmd->add_option("group", group_spec, "Source group spec")->required();
  lift_cmd->add_option("structure", structure_path, "Structure on the target, JSON file or -")->required();
  lift_cmd->add_option("--target", target_spec,
                       "Metacyclic target of the coordinate reduction (default: the Frattini quotient)");

  // tower
  std::uint32_t p = 0, depth = 0;
  std::string rule_text = "1+p";
  auto* tower_cmd = app.add_subcommand("tower", "Compatible structures on Metacyclic(p,k,k,lambda_k), k = 1..depth");
  tower_cmd->add_option("p", p, "Prime >= 5")->required();
  tower_cmd->add_option("depth", depth, "Number of levels")->required()->check(CLI::PositiveNumber);
  tower_cmd->add_option("--lambda-rule", rule_text, "1+p, 1, 1+p^<r>, or an integer");

  // push-forward
  auto* push_cmd = app.add_subcommand("push-forward", "Map a structure through a surjection and re-verify");
  push_cmd->add_option("group", group_spec, "Source group spec")->required();
  push_cmd->add_option("structure", structure_path, "Structure on the source, JSON file or -")->required();
  push_cmd->add_option("--target", target_spec, "Metacyclic target of the coordinate reduction (default: the Frattini quotient)");

  // classify / iso-witness
  std::uint32_t n = 0;
  std::uint64_t lambda = 0, lambda2 = 0;
  auto* classify_cmd = app.add_subcommand("classify", "Invariant (p, n, r) of Metacyclic(p,n,n,lambda), p odd");
  classify_cmd->add_option("p", p)->required();
  classify_cmd->add_option("n", n)->required();
  classify_cmd->add_option("lambda", lambda)->required();
  auto* iso_cmd = app.add_subcommand("iso-witness", "Explicit isomorphism between two members of the family, or a refutation");
  iso_cmd->add_option("p", p)->required();
  iso_cmd->add_option("n", n)->required();
  iso_cmd->add_option("lambda", lambda)->required();
  iso_cmd->add_option("lambda2", lambda2)->required();

  // filtration-check
  std::uint32_t r = 0, s = 0;
  auto* filt_cmd = app.add_subcommand("filtration-check", "Power map G_r/G_{r+1} -> G_{r+s}/G_{r+s+1}");
  filt_cmd->add_option("group", group_spec, "Metacyclic group spec")->required();
  filt_cmd->add_option("r", r)->required();
  filt_cmd->add_option("s", s)->required();

  // genus
  std::vector<std::uint64_t> genus_args;
  std::string batch_path;
  auto* genus_cmd = app.add_subcommand("genus", "Riemann-Hurwitz genus for ORDER L1 L2 L3");
  auto* genus_args_opt = genus_cmd->add_option("values", genus_args, "order l1 l2 l3")->expected(4);
  genus_cmd->add_option("--batch", batch_path, "TSV of 'order l1 l2 l3' lines, or -")->excludes(genus_args_opt);

  // sweep
  std::string sweep_path;
  bool no_timing = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Exhaustive existence search over a list of groups (TSV out)");
  sweep_cmd->add_option("input", sweep_path, "Lines of group specs or 'p m n lambda', or -")->required();
  sweep_cmd->add_flag("--no-timing", no_timing, "Print 0 in the seconds column for byte-stable output");
  add_budget_flags(sweep_cmd, budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kDefinitive : kInputError;
  }

  try {
    if (*verify_cmd) {
      const auto doc = read_json(structure_path);
      return std::visit(
          [&](const auto& g) {
            const auto [t1, t2] = io::structure_from_json(g, doc);
            emit(io::verify_result_to_json(g, verify(g, t1, t2)));
            return kDefinitive;
          },
          make_group(group_spec));
    }
    if (*search_cmd) {
      return std::visit(
          [&](const auto& g) {
            const auto res = search(g, search_options(budget, first_found_flag, store));
            emit(io::search_result_to_json(g, res));
            const bool definitive = res.exhaustive || (first_found_flag && !res.structures.empty());
            return definitive ? kDefinitive : kInconclusive;
          },
          make_group(group_spec));
    }
    if (*admits_cmd) {
      const auto g = metacyclic_only(group_spec);
      const auto v = uniform::admits_beauville(g.prime(), g.m(), g.n(), g.lambda(), audit, budget.threads);
      json doc{{"group", g.spec()}, {"admits", v.admits}, {"reason", v.reason}};
      if (audit) {
        doc["audit_agrees"] = v.audit_agrees ? json(*v.audit_agrees) : json(nullptr);
        doc["audit_count"] = v.audit_count ? json(*v.audit_count) : json(nullptr);
      }
      emit(doc);
      return audit && !v.audit_agrees ? kInconclusive : kDefinitive;
    }
    if (*construct_cmd) {
      FiberChoice fc;
      for (std::size_t i = 0; i < choice.size(); ++i) fc.index[i] = choice[i];
      auto g = make_group(group_spec);
      if (auto* m = std::get_if<MetacyclicGroup>(&g)) {
        const auto ptr = std::make_shared<const MetacyclicGroup>(*m);
        emit(io::structure_to_json(*ptr, frattini_lift(ptr, base_structure(m->prime()), fc)));
      } else if (auto* x = std::get_if<MatrixGroup>(&g)) {
        const auto ptr = std::make_shared<const MatrixGroup>(*x);
        emit(io::structure_to_json(*ptr, frattini_lift(ptr, base_structure(x->field_prime()), fc)));
      } else {
        throw Error(ErrorKind::UnsupportedFamily, "construct needs a metacyclic or matrix group");
      }
      return kDefinitive;
    }
    if (*lift_cmd || *push_cmd) {
      const bool lifting = lift_cmd->parsed();
      const auto doc = read_json(structure_path);
      auto handle = [&](const auto& phi) {
        if (lifting) {
          const auto [t1, t2] = io::structure_from_json(phi.target(), doc);
          const auto checked = verify(phi.target(), t1, t2);
          if (!checked.verified()) throw Error(ErrorKind::PreconditionViolated, "input is not a structure on " + phi.target().spec());
          emit(io::structure_to_json(phi.source(), lift_structure(phi, checked.structure)));
        } else {
          const auto [t1, t2] = io::structure_from_json(phi.source(), doc);
          const auto checked = verify(phi.source(), t1, t2);
          if (!checked.verified()) throw Error(ErrorKind::PreconditionViolated, "input is not a structure on " + phi.source().spec());
          emit(io::verify_result_to_json(phi.target(), push_forward(phi, checked.structure)));
        }
        return kDefinitive;
      };
      auto g = make_group(group_spec);
      if (!target_spec.empty()) {
        auto* m = std::get_if<MetacyclicGroup>(&g);
        if (!m) throw Error(ErrorKind::UnsupportedFamily, "--target needs a metacyclic source");
        return handle(reduction_surjection(std::make_shared<const MetacyclicGroup>(*m),
                                           std::make_shared<const MetacyclicGroup>(metacyclic_only(target_spec))));
      }
      return std::visit(
          [&](const auto& src) {
            using G = std::decay_t<decltype(src)>;
            return handle(frattini_surjection(std::make_shared<const G>(src)));
          },
          g);
    }
    if (*tower_cmd) {
      const auto rule = LambdaRule::parse(rule_text);
      const auto tower = build_tower(p, depth, rule, [&](std::uint32_t k, const BeauvilleStructure& st) {
        const MetacyclicGroup level(p, k, k, rule.residue(p, k));
        emit({{"level", k}, {"order", level.order()}, {"structure", io::structure_to_json(level, st)}});
      });
      emit(io::tower_to_json(tower));
      return kDefinitive;
    }
    if (*classify_cmd) {
      emit(invariant_json(uniform::classify(p, n, lambda)));
      return kDefinitive;
    }
    if (*iso_cmd) {
      const auto w = uniform::isomorphism_witness(p, n, lambda, lambda2);
      json doc{{"source", invariant_json(w.source)}, {"target", invariant_json(w.target)}, {"isomorphic", w.witness.has_value()}};
      doc["unit"] = w.witness ? json(w.witness->unit) : json(nullptr);
      doc["audited_pairs"] = w.audited_pairs;
      doc["refutation"] = w.refutation.empty() ? json(nullptr) : json(w.refutation);
      emit(doc);
      return kDefinitive;
    }
    if (*filt_cmd) {
      const auto g = metacyclic_only(group_spec);
      const auto rep = uniform::filtration_iso_check(g, r, s);
      emit({{"group", g.spec()},
            {"r", rep.r},
            {"s", rep.s},
            {"source_cosets", rep.source_cosets},
            {"target_cosets", rep.target_cosets},
            {"quotients_elementary_abelian", rep.quotients_elementary_abelian},
            {"well_defined", rep.well_defined},
            {"homomorphism", rep.homomorphism},
            {"bijective", rep.bijective},
            {"passed", rep.passed()}});
      return kDefinitive;
    }
    if (*genus_cmd) {
      if (batch_path.empty()) {
        if (genus_args.size() != 4) throw Error(ErrorKind::InvalidSpec, "genus needs ORDER L1 L2 L3 or --batch");
        const geometry::TriangleSignature sig(genus_args[1], genus_args[2], genus_args[3]);
        emit({{"order", genus_args[0]},
              {"signature", sig.orders},
              {"hyperbolic", geometry::is_hyperbolic(sig)},
              {"genus", geometry::genus(genus_args[0], sig)}});
        return kDefinitive;
      }
      std::istringstream lines(read_text(batch_path));
      std::string line;
      int status = kDefinitive;
      std::cout << "order\tl1\tl2\tl3\thyperbolic\tgenus\n";
      while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream in(line);
        std::uint64_t o = 0, a = 0, b = 0, c = 0;
        if (!(in >> o >> a >> b >> c)) throw Error(ErrorKind::InvalidSpec, "bad genus line '" + line + "'");
        std::cout << o << '\t' << a << '\t' << b << '\t' << c << '\t';
        try {
          const geometry::TriangleSignature sig(a, b, c);
          std::cout << (geometry::is_hyperbolic(sig) ? "yes" : "no") << '\t' << geometry::genus(o, sig) << '\n';
        } catch (const Error& e) {
          std::cout << "-\terror: " << to_string(e.kind()) << '\n';
          status = kInputError;
        }
      }
      return status;
    }
    if (*sweep_cmd) {
      std::istringstream lines(read_text(sweep_path));
      std::string line;
      int status = kDefinitive;
      std::cout << "spec\torder\texists\tcount\tseconds\n";
      while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        const auto spec = sweep_spec(line);
        const auto start = std::chrono::steady_clock::now();
        const auto row = std::visit(
            [&](const auto& g) {
              const auto res = search(g, search_options(budget, false, 1));
              const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
              std::ostringstream out;
              out << g.spec() << '\t' << g.order() << '\t';
              if (res.count) {
                out << (*res.count > 0 ? "yes" : "no") << '\t' << *res.count;
              } else {
                out << (res.structures.empty() ? "unknown" : "yes") << "\t-";
                status = kInconclusive;
              }
              char buf[32];
              std::snprintf(buf, sizeof buf, "%.3f", no_timing ? 0.0 : secs);
              out << '\t' << buf << '\n';
              return out.str();
            },
            make_group(spec));
        std::cout << row << std::flush;
      }
      return status;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
