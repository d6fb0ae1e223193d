#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "hpt/bpl.hpp"
#include "hpt/homology.hpp"

namespace hpt::io {

using Json = nlohmann::json;

/// Structural problems in a document (bad JSON, wrong block shapes, unknown
/// ring, dangling references) are reported as InvalidInput. Mathematical
/// problems (d^2 != 0, Maurer-Cartan, SDR relations) keep their own kinds.

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
Json parse(const std::string& text);
Json load_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

Json to_json(const Scalar& x);
Scalar scalar_from_json(const Json& j, const Ring& ring);

Json to_json(const GradedModule& m);
GradedModule module_from_json(const Json& j);

/// {"degree": n, "blocks": {"<k>": [[...]]}}; modules come from context.
Json to_json(const GradedMap& f);
GradedMap map_from_json(const Json& j, const GradedModule& source, const GradedModule& target);

Json to_json(const ChainComplex& c);
Json to_json(const Sdr& s);
Json to_json(const SdrSquare& s);
Json to_json(const NonDgIso& a);
Json to_json(const HomologyResult& h);
Json to_json(const NilpotencyCertificate& c);
Json to_json(const PerturbedSdr& p);
/// {"complex": <complex>, "delta": <map>}
Json to_json(const Perturbation& p);

/// The "kind" field when present, else guessed from the keys: perturbed-sdr,
/// square, sdr, stacked-sdr, tensor-pair, iso, perturbation or complex.
std::string document_kind(const Json& j);

/// Resolves complex references: a value that is a string is read as a path
/// relative to `base_dir`.
struct Loader {
  std::filesystem::path base_dir;

  Json resolve(const Json& j) const;
  ChainComplex complex(const Json& j) const;
  /// Raw SDR parts, unvalidated.
  struct SdrParts {
    ChainComplex source;
    ChainComplex target;
    GradedMap f;
    GradedMap g;
    GradedMap h;
  };
  SdrParts sdr_parts(const Json& j) const;
  Sdr sdr(const Json& j) const;
  /// Uses the document's "complex" when present, else `fallback`.
  Perturbation perturbation(const Json& j, const std::optional<ChainComplex>& fallback = std::nullopt) const;
  SdrSquare square(const Json& j) const;
};

}  // namespace hpt::io
