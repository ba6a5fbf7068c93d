#include "qubols/driver.hpp"

#include <sstream>

#include "json.hpp"

namespace qubols {

std::string method_name(Method m) {
  switch (m) {
    case Method::uqubols: return "uqubols";
    case Method::cqubols: return "cqubols";
    case Method::qls: return "qls";
    case Method::sa: return "sa";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "uqubols") return Method::uqubols;
  if (name == "cqubols") return Method::cqubols;
  if (name == "qls") return Method::qls;
  if (name == "sa") return Method::sa;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected uqubols|cqubols|qls|sa)");
}

namespace {

nlohmann::json rational_to_json(const Rational& r) {
  if (r.is_integer()) return r.numerator();
  return r.str();
}

}  // namespace

std::string trace_to_jsonl(const RunTrace& trace) {
  std::ostringstream out;
  for (const auto& rec : trace.records) {
    nlohmann::json j{
        {"iteration", rec.iteration},
        {"objective", rational_to_json(rec.objective)},
        {"sub_qubo_vars", rec.sub_qubo_vars},
        {"annealer_steps", rec.annealer_steps},
        {"accepted", rec.accepted},
        {"feasible", rec.feasible},
        {"candidate_energy", rational_to_json(rec.candidate_energy)},
        {"current_energy", rational_to_json(rec.current_energy)},
        {"wall_ms", rec.wall_ms},
    };
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace qubols
