#include "problem.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace cbw::cli {

using nlohmann::json;

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Work: return "work";
    case Mode::Form: return "form";
    case Mode::Reversible: return "reversible";
    case Mode::Engine: return "engine";
  }
  return "unknown";
}

namespace {

Mode parse_mode(const std::string& s) {
  if (s == "work") return Mode::Work;
  if (s == "form") return Mode::Form;
  if (s == "reversible") return Mode::Reversible;
  if (s == "engine") return Mode::Engine;
  throw InputError("unknown mode '" + s + "'");
}

std::vector<double> number_list(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
  std::vector<double> v;
  for (const json& e : j) {
    if (!e.is_number()) throw InputError(std::string(what) + " must contain only numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

ThermalContext ProblemDocument::context() const {
  if (!beta) throw InputError("document has no beta");
  return ThermalContext(*beta);
}

DiagonalState ProblemDocument::state() const {
  if (probs.empty()) throw InputError("document has no state");
  return DiagonalState(probs, energies);
}

HamiltonianSpec ProblemDocument::final_hamiltonian() const {
  return HamiltonianSpec(final_energies ? *final_energies : energies);
}

double ProblemDocument::bound() const {
  if (!c) throw InputError("document has no c");
  return *c;
}

ProblemDocument parse_problem(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
  if (!j.is_object()) throw InputError("document must be a JSON object");

  ProblemDocument doc;
  if (j.contains("version")) {
    if (!j["version"].is_number_integer() || j["version"].get<int>() != 1)
      throw InputError("unsupported document version");
  }
  if (!j.contains("mode") || !j["mode"].is_string()) throw InputError("document needs a mode");
  doc.mode = parse_mode(j["mode"].get<std::string>());
  if (j.contains("beta")) doc.beta = number(j["beta"], "beta");
  if (j.contains("c")) doc.c = number(j["c"], "c");

  if (j.contains("state")) {
    const json& s = j["state"];
    if (!s.is_object() || !s.contains("probs") || !s.contains("energies"))
      throw InputError("state needs probs and energies");
    doc.probs = number_list(s["probs"], "state.probs");
    doc.energies = number_list(s["energies"], "state.energies");
    if (doc.probs.size() != doc.energies.size())
      throw ShapeError("state.probs and state.energies differ in length");
  }
  if (j.contains("final_energies"))
    doc.final_energies = number_list(j["final_energies"], "final_energies");
  if (j.contains("final_state")) {
    const json& s = j["final_state"];
    if (!s.is_object() || !s.contains("probs") || !s.contains("energies"))
      throw InputError("final_state needs probs and energies");
    doc.final_probs = number_list(s["probs"], "final_state.probs");
    doc.final_energies = number_list(s["energies"], "final_state.energies");
    if (doc.final_probs->size() != doc.final_energies->size())
      throw ShapeError("final_state.probs and final_state.energies differ in length");
  }
  if (j.contains("engine")) {
    const json& e = j["engine"];
    if (!e.is_object()) throw InputError("engine must be an object");
    for (const char* k : {"gap", "t_hot", "t_cold"})
      if (!e.contains(k)) throw InputError(std::string("engine needs ") + k);
    doc.engine = EngineParams{number(e["gap"], "engine.gap"), number(e["t_hot"], "engine.t_hot"),
                              number(e["t_cold"], "engine.t_cold")};
  }

  if (doc.mode == Mode::Engine) {
    if (!doc.engine) throw InputError("engine mode needs an engine block");
  } else {
    if (!doc.beta) throw InputError("document needs beta");
    if (doc.probs.empty()) throw InputError("document needs a state");
    // Validate eagerly so malformed states fail at parse time.
    (void)doc.context();
    (void)doc.state();
    (void)doc.final_hamiltonian();
  }
  return doc;
}

ProblemDocument load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string to_json(const ProblemDocument& doc) {
  json j;
  j["version"] = doc.version;
  j["mode"] = std::string(to_string(doc.mode));
  if (doc.beta) j["beta"] = *doc.beta;
  if (doc.c) j["c"] = *doc.c;
  if (!doc.probs.empty()) j["state"] = {{"probs", doc.probs}, {"energies", doc.energies}};
  if (doc.final_probs)
    j["final_state"] = {{"probs", *doc.final_probs}, {"energies", *doc.final_energies}};
  else if (doc.final_energies)
    j["final_energies"] = *doc.final_energies;
  if (doc.engine)
    j["engine"] = {{"gap", doc.engine->gap}, {"t_hot", doc.engine->t_hot},
                   {"t_cold", doc.engine->t_cold}};
  return j.dump();
}

}  // namespace cbw::cli
