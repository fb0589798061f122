#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reproduce.hpp"

using namespace permpoly;
using namespace permpoly::app;

namespace {

enum Exit { kOk = 0, kFalse = 1, kInternal = 2, kUsage = 3 };

struct Config {
  std::string family;
  std::optional<std::int64_t> m, q, n;
  std::optional<unsigned> p, k;
  std::vector<std::string> params;
  std::string output = "human";
  unsigned parallelism = 1;
  std::uint64_t cap = kDefaultEnumerationCap;
  bool disagreements_only = false;
  std::vector<int> only;
  std::string mutation;
};

struct Instance {
  FamilyId id;
  FieldPtr field;
  ParamMap params;
};

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::SchemaMismatch, what); }

// "--name value", "--name=value" and "--param name=value" all name a family parameter.
std::vector<std::pair<std::string, std::string>> collect_params(const Config& cfg,
                                                                 const std::vector<std::string>& extras) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& p : cfg.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) usage("--param expects name=value, got '" + p + "'");
    out.emplace_back(p.substr(0, eq), p.substr(eq + 1));
  }
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (!arg.starts_with("--")) usage("unexpected argument '" + arg + "'");
    const auto eq = arg.find('=');
    if (eq != std::string::npos) {
      out.emplace_back(arg.substr(2, eq - 2), arg.substr(eq + 1));
    } else {
      if (i + 1 >= extras.size()) usage("missing value for " + arg);
      out.emplace_back(arg.substr(2), extras[++i]);
    }
  }
  return out;
}

Instance make_instance(const Config& cfg, const std::vector<std::string>& extras) {
  if (cfg.family.empty()) usage("--family is required");
  const auto id = parse_family_id(cfg.family);
  if (!id) usage("unknown family '" + cfg.family + "'");
  const FamilySpec& spec = family(*id);

  ParamMap shape;
  if (cfg.m) shape["m"] = *cfg.m;
  if (cfg.q) shape["q"] = *cfg.q;
  if (cfg.n) shape["n"] = *cfg.n;
  const auto given = collect_params(cfg, extras);
  for (const auto& [name, value] : given) {
    const ParamSpec* ps = spec.param(name);
    if (ps && ps->shape) shape[name] = parse_param(*ps, nullptr, value);
  }
  for (const auto& [name, value] : shape)
    if (!spec.param(name)) usage(std::string(to_string(*id)) + " takes no parameter '" + name + "'");

  Instance inst{*id, make_family_field(*id, shape), shape};
  if ((cfg.p && *cfg.p != inst.field->characteristic()) || (cfg.k && *cfg.k != inst.field->degree()))
    throw Error(ErrorCode::FieldShapeMismatch,
                std::string(to_string(*id)) + " with these parameters lives in " + inst.field->describe());
  for (const auto& [name, value] : given) {
    const ParamSpec* ps = spec.param(name);
    if (!ps) usage(std::string(to_string(*id)) + " takes no parameter '" + name + "'");
    if (!ps->shape) inst.params[name] = parse_param(*ps, inst.field.get(), value);
  }
  return inst;
}

std::string kind_text(ParamKind kind) {
  switch (kind) {
    case ParamKind::Integer: return "integer";
    case ParamKind::PrimePower: return "prime power";
    case ParamKind::Element: return "element";
    case ParamKind::NonzeroElement: return "nonzero element";
    case ParamKind::Polynomial: return "polynomial";
    case ParamKind::Choice: return "choice";
  }
  return "?";
}

int cmd_list(const Config& cfg) {
  if (cfg.output == "json") {
    json out = json::array();
    for (const FamilySpec& spec : registry()) {
      json params = json::array();
      for (const ParamSpec& p : spec.params)
        params.push_back({{"name", p.name}, {"kind", kind_text(p.kind)}, {"shape", p.shape},
                          {"required", p.required}, {"doc", p.doc}});
      out.push_back({{"family", to_string(spec.id)}, {"polynomial", spec.polynomial}, {"field", spec.field_text},
                     {"params", params}, {"paper-anchor", anchor_json(spec.id)}});
    }
    std::cout << dump(out) << "\n";
    return kOk;
  }
  for (const FamilySpec& spec : registry()) {
    std::cout << to_string(spec.id) << "  " << spec.source << "  over " << spec.field_text << "\n"
              << "    " << spec.polynomial << "\n    params:";
    for (const ParamSpec& p : spec.params) std::cout << " " << p.name << (p.required ? "" : "?");
    std::cout << "\n";
  }
  return kOk;
}

void print_condition(const ConditionReport& condition) {
  std::cout << "condition: " << (condition.pass ? "pass" : "fail") << "\n";
  for (const ClauseResult& c : condition.clauses) {
    std::cout << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
    const std::string w = witness_text(c);
    if (!w.empty()) std::cout << "   (" << w << ")";
    std::cout << "\n";
  }
}

std::string param_text(const ParamValue& value) {
  if (const auto* e = std::get_if<Elem>(&value)) return elem_text(*e);
  return format_param(value);
}

int cmd_verify(const Config& cfg, const std::vector<std::string>& extras) {
  Instance inst = make_instance(cfg, extras);
  inst.params = resolve_params(inst.id, *inst.field, inst.params);
  const auto condition = check(inst.id, *inst.field, inst.params);
  const auto report = is_permutation(evaluator(inst.id, *inst.field, inst.params), *inst.field, {cfg.parallelism});

  if (cfg.output == "json") {
    std::cout << dump(instance_json("verify", inst.id, *inst.field, inst.params, condition, report)) << "\n";
  } else {
    const FamilySpec& spec = family(inst.id);
    std::cout << to_string(inst.id) << " (" << spec.source << "): " << spec.polynomial << "\n"
              << "field: " << inst.field->describe() << ", generator g = rep " << inst.field->generator_rep() << "\n";
    if (inst.id == FamilyId::F1) std::cout << "note: the field is read as GF(2^{3m})\n";
    for (const auto& [name, value] : inst.params) std::cout << "  " << name << " = " << param_text(value) << "\n";
    print_condition(condition);
    std::cout << "oracle: " << report.evaluations << " evaluations, " << report.elapsed.count() << " ms\n";
    if (report.witness) std::cout << "witness: " << witness_text(*report.witness) << "\n";
    std::cout << "permutation: " << (report.is_permutation ? "true" : "false") << "\n";
  }
  return report.is_permutation ? kOk : kFalse;
}

int cmd_enumerate(const Config& cfg, const std::vector<std::string>& extras) {
  const Instance inst = make_instance(cfg, extras);
  const FamilySpec& spec = family(inst.id);
  const std::string field_text = inst.field->describe();
  bool header = false;
  json rows = json::array();
  std::uint64_t shown = 0, total = 0, disagreements = 0;

  enumerate(
      inst.id, *inst.field, inst.params,
      [&](const EnumerationRow& row) {
        const auto report = is_permutation(evaluator(inst.id, *inst.field, row.params), *inst.field,
                                           {cfg.parallelism});
        ++total;
        const bool disagree = row.condition.pass != report.is_permutation;
        disagreements += disagree;
        if (cfg.disagreements_only && !disagree) return;
        ++shown;
        if (cfg.output == "json") {
          rows.push_back(instance_json("enumerate", inst.id, *inst.field, row.params, row.condition, report));
        } else if (cfg.output == "csv") {
          if (!header) {
            std::cout << "family,field";
            for (const ParamSpec& p : spec.params)
              if (row.params.contains(p.name)) std::cout << "," << csv_field(p.name);
            for (const ClauseResult& c : row.condition.clauses) std::cout << "," << csv_field(c.name);
            std::cout << ",condition,is-permutation\n";
            header = true;
          }
          std::cout << to_string(inst.id) << "," << csv_field(field_text);
          for (const ParamSpec& p : spec.params)
            if (row.params.contains(p.name)) std::cout << "," << csv_field(format_param(row.params.at(p.name)));
          for (const ClauseResult& c : row.condition.clauses) std::cout << "," << (c.pass ? "pass" : "fail");
          std::cout << "," << (row.condition.pass ? "pass" : "fail") << ","
                    << (report.is_permutation ? "true" : "false") << "\n";
        } else {
          std::string line;
          for (const ParamSpec& p : spec.params)
            if (row.params.contains(p.name) && !p.shape)
              line += p.name + "=" + param_text(row.params.at(p.name)) + "  ";
          std::cout << line << "condition=" << (row.condition.pass ? "pass" : "fail")
                    << "  permutation=" << (report.is_permutation ? "true" : "false")
                    << (disagree ? "  DISAGREE" : "") << "\n";
        }
      },
      cfg.cap);

  if (cfg.output == "json") {
    std::cout << dump({{"tool-version", kToolVersion},
                       {"command", "enumerate"},
                       {"family", to_string(inst.id)},
                       {"field", field_json(*inst.field)},
                       {"paper-anchor", anchor_json(inst.id)},
                       {"rows", rows},
                       {"total", total},
                       {"disagreements", disagreements}})
              << "\n";
  } else if (cfg.output == "human") {
    std::cout << shown << " rows shown, " << total << " enumerated, " << disagreements
              << " condition/oracle disagreements\n";
  }
  return kOk;
}

int cmd_reproduce(const Config& cfg) {
  ReproduceOptions options{cfg.parallelism, cfg.mutation, cfg.only};
  const bool human = cfg.output != "json";
  const auto results = reproduce(options, [&](const CriterionResult& r) {
    if (!human) return;
    std::cout << (r.pass() ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << ": " << r.summary << " ("
              << static_cast<long>(r.elapsed_ms) << " ms";
    if (!r.in_budget()) std::cout << ", over the " << static_cast<long>(r.budget_ms) << " ms budget";
    std::cout << ")\n";
    for (const std::string& note : r.notes) std::cout << "      note: " << note << "\n";
    std::cout.flush();
  });
  bool all = !results.empty();
  for (const auto& r : results) all = all && r.pass();
  if (!human) {
    json criteria = json::array();
    for (const auto& r : results) criteria.push_back(to_json(r));
    std::cout << dump({{"tool-version", kToolVersion}, {"command", "reproduce"}, {"pass", all},
                       {"criteria", criteria}})
              << "\n";
  } else {
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.pass();
    std::cout << passed << "/" << results.size() << " criteria pass\n";
  }
  return all ? kOk : kFalse;
}

// Quick internal consistency checks that do not need the full suite.
int cmd_selftest(const Config& cfg) {
  int failures = 0;
  auto expect = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok    " : "FAIL  ") << what << "\n";
    failures += !ok;
  };
  for (auto [p, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 4}, {3, 2}, {5, 2}, {2, 9}}) {
    const auto f = make_field(p, k);
    bool ok = true;
    for (const Elem& a : nonzero_elements(*f)) ok = ok && (a * a.inverse()).is_one() && pow(a, f->group_order()).is_one();
    expect(ok, f->describe() + ": inverses and Lagrange");
    expect(is_permutation([](const Elem& x) { return frobenius(x, 1); }, *f).is_permutation,
           f->describe() + ": Frobenius permutes");
  }
  ReproduceOptions options{cfg.parallelism, cfg.mutation, {1, 3, 4, 8}};
  for (const auto& r : reproduce(options)) expect(r.pass(), "criterion " + std::to_string(r.id) + ": " + r.summary);
  return failures == 0 ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation polynomial families over finite fields"};
  app.require_subcommand(1);
  Config cfg;

  auto output = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("--output", cfg.output, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--parallelism", cfg.parallelism, "oracle worker threads")->check(CLI::Range(1u, 256u));
  };
  auto instance = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "family id F1..F12")->required();
    sub->add_option("--m", cfg.m, "field parameter m");
    sub->add_option("--q", cfg.q, "base field size q");
    sub->add_option("--n", cfg.n, "extension degree n (F12)");
    sub->add_option("--p", cfg.p, "expected characteristic");
    sub->add_option("--k", cfg.k, "expected extension degree over GF(p)");
    sub->add_option("--param", cfg.params, "family parameter name=value (repeatable)");
    sub->allow_extras();
  };

  auto* list = app.add_subcommand("list", "print the family registry");
  output(list, {"human", "json"});
  auto* verify = app.add_subcommand("verify", "check the condition and run the oracle on one instance");
  instance(verify);
  output(verify, {"human", "json"});
  auto* enumerate_cmd = app.add_subcommand("enumerate", "sweep free element parameters");
  instance(enumerate_cmd);
  output(enumerate_cmd, {"human", "json", "csv"});
  enumerate_cmd->add_option("--cap", cfg.cap, "maximum number of assignments");
  enumerate_cmd->add_flag("--disagreements-only", cfg.disagreements_only,
                          "only rows where the condition and the oracle differ");
  auto* reproduce_cmd = app.add_subcommand("reproduce", "run the regression suite");
  output(reproduce_cmd, {"human", "json"});
  reproduce_cmd->add_option("--only", cfg.only, "criteria to run")->check(CLI::Range(1, kCriterionCount));
  reproduce_cmd->add_option("--inject-mutation", cfg.mutation)->group("");
  auto* selftest = app.add_subcommand("selftest", "quick internal consistency checks");
  output(selftest, {"human"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (list->parsed()) return cmd_list(cfg);
    if (verify->parsed()) return cmd_verify(cfg, verify->remaining());
    if (enumerate_cmd->parsed()) return cmd_enumerate(cfg, enumerate_cmd->remaining());
    if (reproduce_cmd->parsed()) return cmd_reproduce(cfg);
    if (selftest->parsed()) return cmd_selftest(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::SchemaMismatch:
      case ErrorCode::FieldShapeMismatch:
      case ErrorCode::EnumerationTooLarge:
      case ErrorCode::SizeLimitExceeded:
      case ErrorCode::NotPrime:
        return kUsage;
      default:
        return kInternal;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
