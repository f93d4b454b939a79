#include "krental/json_io.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

namespace krental {

namespace {

using nlohmann::json;

void require_fields(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw std::invalid_argument(where + ": object expected");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key))
      throw std::invalid_argument(where + ": unknown field '" + key + "'");
  }
}

}  // namespace

Instance instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  require_fields(j, {"k", "kind", "requests"}, "instance");

  Instance inst;
  inst.k = j.at("k").get<int>();
  const json& kind = j.at("kind");
  require_fields(kind, {"fixed", "variable"}, "kind");
  if (kind.contains("fixed") == kind.contains("variable"))
    throw std::invalid_argument("kind: exactly one of fixed/variable required");
  if (kind.contains("fixed")) {
    const json& f = kind.at("fixed");
    require_fields(f, {"d", "v_min", "v_max"}, "kind.fixed");
    inst.kind = FixedKind{f.at("d").get<double>(), f.at("v_min").get<double>(),
                          f.at("v_max").get<double>()};
  } else {
    const json& v = kind.at("variable");
    require_fields(v, {"d_min", "d_max"}, "kind.variable");
    inst.kind =
        VariableKind{v.at("d_min").get<double>(), v.at("d_max").get<double>()};
  }
  int index = 0;
  for (const json& r : j.at("requests")) {
    require_fields(r, {"a", "d", "v"}, "request");
    Request req;
    req.index = ++index;
    req.arrival = r.at("a").get<double>();
    req.duration = r.at("d").get<double>();
    req.valuation = r.at("v").get<double>();
    inst.requests.push_back(req);
  }
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["k"] = inst.k;
  if (inst.is_fixed()) {
    const auto& f = inst.fixed();
    j["kind"] = {{"fixed", {{"d", f.d}, {"v_min", f.v_min}, {"v_max", f.v_max}}}};
  } else {
    const auto& v = inst.variable();
    j["kind"] = {{"variable", {{"d_min", v.d_min}, {"d_max", v.d_max}}}};
  }
  j["requests"] = json::array();
  for (const auto& r : inst.requests)
    j["requests"].push_back({{"a", r.arrival}, {"d", r.duration}, {"v", r.valuation}});
  return j.dump(2);
}

OcrInput ocr_input_from_json(const std::string& text) {
  const json j = json::parse(text);
  require_fields(j, {"k", "d", "players"}, "ocr input");
  OcrInput input;
  input.k = j.at("k").get<int>();
  input.d = j.at("d").get<double>();
  for (const json& p : j.at("players")) {
    require_fields(p, {"a", "x", "d"}, "player");
    OcrPlayer pl;
    pl.arrival = p.at("a").get<double>();
    pl.target = p.at("x").get<double>();
    if (p.contains("d")) pl.duration = p.at("d").get<double>();
    input.players.push_back(pl);
  }
  return input;
}

std::string ocr_input_to_json(const OcrInput& input) {
  json j;
  j["k"] = input.k;
  j["d"] = input.d;
  j["players"] = json::array();
  for (const auto& p : input.players) {
    json pj = {{"a", p.arrival}, {"x", p.target}};
    if (p.duration) pj["d"] = *p.duration;
    j["players"].push_back(pj);
  }
  return j.dump(2);
}

PricingFunction prices_from_json(const std::string& text, double* alpha_out) {
  const json j = json::parse(text);
  require_fields(j, {"epsilon", "alpha", "pi"}, "prices");
  if (alpha_out) *alpha_out = j.at("alpha").get<double>();
  return PricingFunction::piecewise(j.at("epsilon").get<double>(),
                                    j.at("pi").get<std::vector<double>>());
}

std::string prices_to_json(const PricingFunction& prices, double alpha) {
  json j;
  j["epsilon"] = prices.epsilon();
  j["alpha"] = alpha;
  j["pi"] = prices.prices();
  return j.dump(2);
}

std::string trace_to_json(const RunTrace& trace, const Instance& inst) {
  json j;
  j["objective"] = trace.objective;
  j["records"] = json::array();
  for (size_t i = 0; i < trace.records.size(); ++i) {
    const auto& rec = trace.records[i];
    json rj = {{"request", static_cast<int>(i) + 1},
               {"fractional", rec.fractional},
               {"accepted", rec.accepted}};
    if (rec.unit) rj["unit"] = *rec.unit;
    j["records"].push_back(rj);
  }
  j["feasible"] = check_feasible(trace, inst);
  return j.dump(2);
}

}  // namespace krental
