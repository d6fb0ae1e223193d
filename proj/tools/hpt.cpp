// hpt: command-line front end.
//
// Exit codes: 0 success, 1 mathematical violation or counterexample,
// 2 usage, I/O or malformed input.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "hpt/checks.hpp"
#include "hpt/error.hpp"
#include "hpt/generator.hpp"
#include "hpt/io.hpp"

namespace fs = std::filesystem;
using hpt::io::Json;

namespace {

constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Options {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t max_rank = 8;
  std::string ring = "Z";
  std::string out;
  std::string input;
  std::string suite = "all";
  std::string kind;
  std::size_t stages = 2;
  std::vector<std::string> paths;
};

struct Document {
  Json json;
  hpt::io::Loader loader;
};

Document open(const std::string& path) {
  Document doc{hpt::io::load_file(path), hpt::io::Loader{fs::path(path).parent_path()}};
  return doc;
}

void emit(const Json& j, const Options& opt) {
  const std::string text = hpt::io::dump(j);
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    hpt::io::write_file(opt.out, text);
  }
}

Json violation(const hpt::Error& e) {
  Json out{{"valid", false}, {"error", std::string(hpt::to_string(e.kind()))}, {"message", e.what()}};
  if (!e.details().empty()) out["violations"] = e.details();
  if (e.degree()) out["degree"] = *e.degree();
  return out;
}

/// Composes the stages of a stacked-sdr document, top first.
hpt::Sdr compose_stack(const Document& doc) {
  const Json& stages = doc.json.at("stages");
  if (!stages.is_array() || stages.empty()) {
    throw hpt::Error(hpt::ErrorKind::InvalidInput, "'stages' must be a nonempty array of SDRs");
  }
  hpt::Sdr result = doc.loader.sdr(stages.front());
  for (std::size_t i = 1; i < stages.size(); ++i) result = hpt::compose_sdr(result, doc.loader.sdr(stages.at(i)));
  return result;
}

int cmd_validate(const Options& opt) {
  const Document doc = open(opt.paths.at(0));
  const std::string kind = hpt::io::document_kind(doc.json);
  const auto& L = doc.loader;
  Json report{{"kind", kind}, {"valid", true}};
  try {
    if (kind == "complex") {
      L.complex(doc.json);
    } else if (kind == "perturbation") {
      L.perturbation(doc.json);
    } else if (kind == "sdr") {
      auto parts = L.sdr_parts(doc.json);
      const auto failures = hpt::sdr_failures(parts.source, parts.target, parts.f, parts.g, parts.h);
      if (!failures.empty()) {
        Json list = Json::array();
        for (const auto& f : failures) list.push_back({{"relation", f.relation}, {"degree", f.degree}});
        report["valid"] = false;
        report["error"] = "SdrViolation";
        report["violations"] = list;
        emit(report, opt);
        return kViolation;
      }
    } else if (kind == "square") {
      L.square(doc.json);
    } else if (kind == "stacked-sdr") {
      compose_stack(doc);
    } else if (kind == "tensor-pair") {
      hpt::tensor_sdr(L.sdr(doc.json.at("left")), L.sdr(doc.json.at("right")));
    } else if (kind == "iso") {
      const hpt::ChainComplex source = L.complex(doc.json.at("source"));
      const hpt::ChainComplex target = L.complex(doc.json.at("target"));
      const hpt::NonDgIso alpha(hpt::io::map_from_json(doc.json.at("alpha"), source.module(), target.module()),
                                hpt::io::map_from_json(doc.json.at("alpha_inv"), target.module(), source.module()));
      check_maurer_cartan(hpt::left_log_derivative(alpha, source, target), source);
    } else if (kind == "perturbed-sdr") {
      L.sdr(doc.json.at("result"));
    } else {
      throw hpt::Error(hpt::ErrorKind::InvalidInput, "unknown document kind '" + kind + "'");
    }
  } catch (const hpt::Error& e) {
    if (e.kind() == hpt::ErrorKind::InvalidInput) throw;
    Json bad = violation(e);
    bad["kind"] = kind;
    emit(bad, opt);
    return kViolation;
  }
  emit(report, opt);
  return 0;
}

int cmd_perturb(const Options& opt) {
  const Document sdr_doc = open(opt.paths.at(0));
  const Document delta_doc = open(opt.paths.at(1));
  const hpt::Sdr s = sdr_doc.loader.sdr(sdr_doc.json);
  const hpt::Perturbation delta = delta_doc.loader.perturbation(delta_doc.json, s.source());
  Json bundle = hpt::io::to_json(hpt::perturb_sdr(s, delta));
  bundle["kind"] = "perturbed-sdr";
  emit(bundle, opt);
  return 0;
}

int cmd_compose(const Options& opt) {
  const Document first = open(opt.paths.at(0));
  if (opt.paths.size() == 1) {
    emit(hpt::io::to_json(compose_stack(first)), opt);
    return 0;
  }
  const Document second = open(opt.paths.at(1));
  emit(hpt::io::to_json(hpt::compose_sdr(first.loader.sdr(first.json), second.loader.sdr(second.json))), opt);
  return 0;
}

int cmd_tensor(const Options& opt) {
  const Document left = open(opt.paths.at(0));
  if (opt.paths.size() == 1) {
    emit(hpt::io::to_json(hpt::tensor_sdr(left.loader.sdr(left.json.at("left")), left.loader.sdr(left.json.at("right")))),
         opt);
    return 0;
  }
  const Document right = open(opt.paths.at(1));
  emit(hpt::io::to_json(hpt::tensor_sdr(left.loader.sdr(left.json), right.loader.sdr(right.json))), opt);
  return 0;
}

int cmd_push_along(const Options& opt) {
  const Document sdr_doc = open(opt.paths.at(0));
  const Document delta_doc = open(opt.paths.at(1));
  const hpt::Sdr s = sdr_doc.loader.sdr(sdr_doc.json);
  const hpt::Perturbation dp = delta_doc.loader.perturbation(delta_doc.json, s.target());
  emit(hpt::io::to_json(hpt::push_along(s, dp)), opt);
  return 0;
}

int cmd_homology(const Options& opt) {
  const Document doc = open(opt.paths.at(0));
  emit(hpt::io::to_json(hpt::homology(doc.loader.complex(doc.json))), opt);
  return 0;
}

int cmd_gen(const Options& opt) {
  hpt::InstanceGenerator gen(opt.seed, hpt::Ring::parse(opt.ring));
  Json out;
  if (opt.kind == "complex") {
    out = hpt::io::to_json(gen.random_complex(opt.max_rank));
  } else if (opt.kind == "sdr") {
    out = hpt::io::to_json(gen.random_sdr(opt.max_rank));
  } else if (opt.kind == "stacked-sdr") {
    Json stages = Json::array();
    for (const auto& s : gen.random_stack(opt.max_rank, opt.stages)) stages.push_back(hpt::io::to_json(s));
    out = {{"kind", "stacked-sdr"}, {"stages", stages}};
  } else if (opt.kind == "tensor-pair") {
    const std::size_t left_rank = std::max<std::size_t>(1, opt.max_rank / 2);
    const hpt::Sdr left = gen.random_sdr(left_rank);
    const hpt::Sdr right = gen.random_sdr(std::max<std::size_t>(1, opt.max_rank - left_rank));
    out = {{"kind", "tensor-pair"}, {"left", hpt::io::to_json(left)}, {"right", hpt::io::to_json(right)}};
  } else if (opt.kind == "perturbation") {
    // Admissible for the SDR given with --input (or a fresh one); on a plain
    // complex any Maurer-Cartan element of the generator's form will do.
    std::optional<hpt::Sdr> s;
    if (!opt.input.empty()) {
      const Document doc = open(opt.input);
      if (hpt::io::document_kind(doc.json) == "complex") {
        s = hpt::identity_sdr(doc.loader.complex(doc.json));
      } else {
        s = doc.loader.sdr(doc.json);
      }
    } else {
      s = gen.random_sdr(opt.max_rank);
    }
    const hpt::Perturbation delta = gen.admissible_perturbation(*s);
    out = hpt::io::to_json(delta);
  } else {
    throw hpt::Error(hpt::ErrorKind::InvalidInput, "unknown kind '" + opt.kind + "'");
  }
  emit(out, opt);
  return 0;
}

int cmd_check(const Options& opt) {
  hpt::CheckOptions options;
  options.seed = opt.seed;
  options.trials = opt.trials;
  options.max_rank = opt.max_rank;
  options.ring = hpt::Ring::parse(opt.ring);
  const auto theorems = hpt::suite_theorems(opt.suite);
  Json reports = Json::array();
  std::size_t failures = 0;
  for (const auto& name : theorems) {
    const hpt::CheckReport report = hpt::run_theorem(name, options);
    std::cerr << report.theorem << ": " << report.trials << " trials, " << report.failures << " failures\n";
    failures += report.failures;
    reports.push_back(hpt::to_json(report));
  }
  emit(reports, opt);
  return failures == 0 ? 0 : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homological perturbation toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) { cmd->add_option("--out", opt.out, "write output to this file"); };

  auto* validate = app.add_subcommand("validate", "validate a complex, perturbation, SDR, square or bundle");
  validate->add_option("path", opt.paths, "document")->required()->expected(1);
  add_common(validate);

  auto* perturb = app.add_subcommand("perturb", "apply the perturbation lemma");
  perturb->add_option("paths", opt.paths, "SDR file and perturbation file")->required()->expected(2);
  add_common(perturb);

  auto* compose = app.add_subcommand("compose", "compose SDRs A -> C and C -> B");
  compose->add_option("paths", opt.paths, "first and second SDR, or one stacked-sdr file")->required()->expected(1, 2);
  add_common(compose);

  auto* tensor = app.add_subcommand("tensor", "tensor product of two SDRs");
  tensor->add_option("paths", opt.paths, "left and right SDR, or one tensor-pair file")->required()->expected(1, 2);
  add_common(tensor);

  auto* push = app.add_subcommand("push-along", "push an SDR along a perturbation of its target");
  push->add_option("paths", opt.paths, "SDR file and target perturbation")->required()->expected(2);
  add_common(push);

  auto* homology = app.add_subcommand("homology", "homology of a complex");
  homology->add_option("path", opt.paths, "complex file")->required()->expected(1);
  add_common(homology);

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("kind", opt.kind, "complex, sdr, stacked-sdr, perturbation or tensor-pair")
      ->required()
      ->check(CLI::IsMember({"complex", "sdr", "stacked-sdr", "perturbation", "tensor-pair"}));
  gen->add_option("--seed", opt.seed);
  gen->add_option("--max-rank", opt.max_rank)->check(CLI::Range(1, 200));
  gen->add_option("--ring", opt.ring, "Z, Q or Zp:<p>");
  gen->add_option("--stages", opt.stages, "number of SDRs (stacked-sdr only)")->check(CLI::Range(1, 8));
  gen->add_option("--input", opt.input, "SDR or complex to perturb (perturbation only)");
  add_common(gen);

  auto* check = app.add_subcommand("check", "run property suites");
  check->add_option("--suite", opt.suite)
      ->check(CLI::IsMember({"identities", "sdr", "bpl", "vertical", "iteration", "tensor", "homology", "all"}));
  check->add_option("--seed", opt.seed);
  check->add_option("--trials", opt.trials);
  check->add_option("--max-rank", opt.max_rank)->check(CLI::Range(1, 200));
  check->add_option("--ring", opt.ring, "Z, Q or Zp:<p>");
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*validate) return cmd_validate(opt);
    if (*perturb) return cmd_perturb(opt);
    if (*compose) return cmd_compose(opt);
    if (*tensor) return cmd_tensor(opt);
    if (*push) return cmd_push_along(opt);
    if (*homology) return cmd_homology(opt);
    if (*gen) return cmd_gen(opt);
    if (*check) return cmd_check(opt);
  } catch (const hpt::Error& e) {
    std::cerr << "hpt: " << e.what();
    if (e.degree()) std::cerr << " (degree " << *e.degree() << ")";
    std::cerr << "\n";
    return e.kind() == hpt::ErrorKind::InvalidInput ? kUsage : kViolation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "hpt: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "hpt: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
