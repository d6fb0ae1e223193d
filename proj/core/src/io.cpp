#include "hpt/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hpt/error.hpp"

namespace hpt::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

int parse_degree(const std::string& key) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
  if (ec != std::errc() || ptr != key.data() + key.size()) malformed("degree key '" + key + "' is not an integer");
  return value;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) malformed(std::string("missing field '") + name + "'");
  return j.at(name);
}

bool is_flat(const Json& j) {
  return j.is_array() && std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); });
}

// Objects one key per line (keys sorted), arrays of scalars on one line.
void write_canonical(std::string& out, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  const std::string inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += inner + Json(key).dump() + ": ";
      write_canonical(out, value, indent + 2);
    }
    out += "\n" + pad + "}";
  } else if (j.is_array() && !is_flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += inner;
      write_canonical(out, j[i], indent + 2);
    }
    out += "\n" + pad + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write_canonical(out, j, 0);
  return out + "\n";
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    malformed(std::string("not valid JSON: ") + e.what());
  }
}

Json load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) malformed("cannot write '" + path.string() + "'");
  out << text;
}

Json to_json(const Scalar& x) {
  if (x.get_den() == 1 && x.get_num().fits_slong_p()) return x.get_num().get_si();
  return x.get_str();
}

Scalar scalar_from_json(const Json& j, const Ring& ring) {
  Scalar x;
  if (j.is_number_unsigned()) {
    x = Scalar(mpz_class(std::to_string(j.get<unsigned long long>())));
  } else if (j.is_number_integer()) {
    x = Scalar(mpz_class(std::to_string(j.get<long long>())));
  } else if (j.is_string()) {
    const auto text = j.get<std::string>();
    if (text.empty() || x.set_str(text, 10) != 0) malformed("bad scalar '" + text + "'");
    if (x.get_den() == 0) malformed("zero denominator in '" + text + "'");
    x.canonicalize();
  } else {
    malformed("scalars must be integers or \"num/den\" strings, got " + j.dump());
  }
  ring.reduce(x);
  return x;
}

Json to_json(const GradedModule& m) {
  Json ranks = Json::object();
  for (auto [k, r] : m.ranks()) ranks[std::to_string(k)] = r;
  Json out{{"ring", m.ring().to_string()}, {"ranks", ranks}};
  if (!m.all_labels().empty()) {
    Json labels = Json::object();
    for (const auto& [k, names] : m.all_labels()) labels[std::to_string(k)] = names;
    out["labels"] = labels;
  }
  return out;
}

GradedModule module_from_json(const Json& j) {
  const Ring ring = Ring::parse(field(j, "ring").get<std::string>());
  const Json& ranks_json = field(j, "ranks");
  if (!ranks_json.is_object()) malformed("'ranks' must be an object");
  std::map<int, std::size_t> ranks;
  for (const auto& [key, value] : ranks_json.items()) {
    if (!value.is_number_integer() || value.get<long long>() < 0) malformed("rank must be a nonnegative integer");
    ranks[parse_degree(key)] = value.get<std::size_t>();
  }
  std::map<int, std::vector<std::string>> labels;
  if (j.contains("labels")) {
    for (const auto& [key, value] : j.at("labels").items()) {
      if (!value.is_array()) malformed("labels must be arrays of strings");
      labels[parse_degree(key)] = value.get<std::vector<std::string>>();
    }
  }
  return GradedModule(ring, std::move(ranks), std::move(labels));
}

Json to_json(const GradedMap& f) {
  Json blocks = Json::object();
  for (const auto& [k, m] : f.blocks()) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
      rows.push_back(std::move(row));
    }
    blocks[std::to_string(k)] = std::move(rows);
  }
  return Json{{"degree", f.degree()}, {"blocks", blocks}};
}

GradedMap map_from_json(const Json& j, const GradedModule& source, const GradedModule& target) {
  const Json& degree_json = field(j, "degree");
  if (!degree_json.is_number_integer()) malformed("'degree' must be an integer");
  const int degree = degree_json.get<int>();
  std::map<int, Matrix> blocks;
  if (j.contains("blocks")) {
    for (const auto& [key, rows_json] : j.at("blocks").items()) {
      const int k = parse_degree(key);
      if (!rows_json.is_array()) malformed("block " + key + " must be an array of rows");
      const std::size_t rows = rows_json.size();
      if (rows == 0) continue;
      const std::size_t cols = rows_json.front().is_array() ? rows_json.front().size() : 0;
      if (rows != target.rank(k + degree) || cols != source.rank(k)) {
        malformed("block " + key + " has shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                  ", expected " + std::to_string(target.rank(k + degree)) + "x" + std::to_string(source.rank(k)));
      }
      Matrix m(rows, cols);
      for (std::size_t r = 0; r < rows; ++r) {
        const Json& line = rows_json.at(r);
        if (!line.is_array() || line.size() != cols) malformed("ragged rows in block " + key);
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(line.at(c), source.ring());
      }
      blocks.emplace(k, std::move(m));
    }
  }
  try {
    return GradedMap(source, target, degree, std::move(blocks));
  } catch (const Error& e) {
    malformed(e.what());
  }
}

Json to_json(const ChainComplex& c) { return Json{{"module", to_json(c.module())}, {"d", to_json(c.d())}}; }

Json to_json(const Sdr& s) {
  return Json{{"source", to_json(s.source())}, {"target", to_json(s.target())},
              {"f", to_json(s.f())},           {"g", to_json(s.g())},
              {"h", to_json(s.h())}};
}

Json to_json(const SdrSquare& s) {
  return Json{{"top", to_json(s.top())}, {"bottom", to_json(s.bottom())}, {"u", to_json(s.u())}, {"v", to_json(s.v())}};
}

Json to_json(const NonDgIso& a) { return Json{{"alpha", to_json(a.map())}, {"alpha_inv", to_json(a.inverse_map())}}; }

Json to_json(const Perturbation& p) { return Json{{"complex", to_json(p.complex())}, {"delta", to_json(p.delta())}}; }

Json to_json(const HomologyResult& h) {
  Json out = Json::object();
  for (const auto& [k, group] : h.groups) {
    Json torsion = Json::array();
    for (const auto& q : group.torsion) torsion.push_back(to_json(Scalar(q)));
    out[std::to_string(k)] = Json{{"betti", group.betti}, {"torsion", torsion}};
  }
  return out;
}

Json to_json(const NilpotencyCertificate& c) {
  Json out = Json::object();
  for (auto [k, n] : c.index) out[std::to_string(k)] = n;
  return out;
}

Json to_json(const PerturbedSdr& p) {
  return Json{{"result", to_json(p.result)},
              {"delta", to_json(p.delta.delta())},
              {"delta_prime", to_json(p.delta_prime.delta())},
              {"transfer", to_json(p.transfer)},
              {"nilpotency_index", to_json(p.certificate)}};
}

std::string document_kind(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "document is not a JSON object");
  if (j.contains("kind")) return j.at("kind").get<std::string>();
  if (j.contains("result")) return "perturbed-sdr";
  if (j.contains("u")) return "square";
  if (j.contains("f")) return "sdr";
  if (j.contains("stages")) return "stacked-sdr";
  if (j.contains("left")) return "tensor-pair";
  if (j.contains("alpha")) return "iso";
  if (j.contains("delta")) return "perturbation";
  if (j.contains("module")) return "complex";
  throw Error(ErrorKind::InvalidInput, "cannot tell what kind of document this is");
}

// ---------------------------------------------------------------------------

Json Loader::resolve(const Json& j) const {
  if (j.is_string()) return load_file(base_dir / j.get<std::string>());
  return j;
}

ChainComplex Loader::complex(const Json& raw) const {
  const Json j = resolve(raw);
  GradedModule module = module_from_json(field(j, "module"));
  GradedMap d = j.contains("d") ? map_from_json(j.at("d"), module, module) : GradedMap::zero(module, module, -1);
  return ChainComplex(std::move(module), std::move(d));
}

Loader::SdrParts Loader::sdr_parts(const Json& j) const {
  ChainComplex a = complex(field(j, "source"));
  ChainComplex b = complex(field(j, "target"));
  GradedMap f = map_from_json(field(j, "f"), a.module(), b.module());
  GradedMap g = map_from_json(field(j, "g"), b.module(), a.module());
  GradedMap h = map_from_json(field(j, "h"), a.module(), a.module());
  return {std::move(a), std::move(b), std::move(f), std::move(g), std::move(h)};
}

Sdr Loader::sdr(const Json& j) const {
  SdrParts parts = sdr_parts(resolve(j));
  return validate_sdr(std::move(parts.source), std::move(parts.target), std::move(parts.f), std::move(parts.g),
                      std::move(parts.h));
}

Perturbation Loader::perturbation(const Json& raw, const std::optional<ChainComplex>& fallback) const {
  const Json j = resolve(raw);
  std::optional<ChainComplex> base;
  if (j.contains("complex")) {
    base = complex(j.at("complex"));
  } else {
    base = fallback;
  }
  if (!base) malformed("perturbation does not name its complex");
  GradedMap delta = map_from_json(field(j, "delta"), base->module(), base->module());
  return check_maurer_cartan(delta, *base);
}

SdrSquare Loader::square(const Json& raw) const {
  const Json j = resolve(raw);
  Sdr top = sdr(field(j, "top"));
  Sdr bottom = sdr(field(j, "bottom"));
  GradedMap u = map_from_json(field(j, "u"), top.source().module(), bottom.source().module());
  GradedMap v = map_from_json(field(j, "v"), top.target().module(), bottom.target().module());
  return validate_square(std::move(top), std::move(bottom), std::move(u), std::move(v));
}

}  // namespace hpt::io
