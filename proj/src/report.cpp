#include "sierp/report.hpp"

#include <sstream>

namespace sierp {

using nlohmann::json;

nlohmann::json instance_to_json(const InequalityReport& rep) {
  json j;
  j["id"] = rep.id;
  j["kind"] = rep.kind;
  j["instance"] = rep.instance;
  j["function"] = rep.function;
  j["n"] = rep.n;
  if (rep.radius) j["r"] = rep.radius->to_string();
  j["depth"] = rep.depth;
  j["lhs_upper"] = rep.lhs_upper.to_string();
  j["gamma_term"] = rep.gamma_term.to_string();
  j["mass_lower"] = rep.mass_lower.to_string();
  j["coef_gamma"] = rep.coef_gamma.to_string();
  j["coef_mass"] = rep.coef_mass.to_string();
  j["rhs_lower"] = rep.rhs_lower.to_string();
  j["lhs_width"] = rep.lhs_width.to_string();
  j["mass_width"] = rep.mass_width.to_string();
  if (rep.direct_estimate)
    j["direct_estimate"] = rep.direct_estimate->to_string();
  j["verdict"] = rep.pass ? "pass" : "fail";
  return j;
}

InequalityReport instance_from_json(const json& j) {
  InequalityReport rep;
  rep.id = j.at("id").get<std::string>();
  rep.kind = j.at("kind").get<std::string>();
  rep.instance = j.at("instance").get<std::string>();
  rep.function = j.at("function").get<std::string>();
  rep.n = j.at("n").get<int>();
  if (j.contains("r")) rep.radius = Rational::parse(j.at("r").get<std::string>());
  rep.depth = j.at("depth").get<int>();
  rep.lhs_upper = Rational::parse(j.at("lhs_upper").get<std::string>());
  rep.gamma_term = Rational::parse(j.at("gamma_term").get<std::string>());
  rep.mass_lower = Rational::parse(j.at("mass_lower").get<std::string>());
  rep.coef_gamma = Rational::parse(j.at("coef_gamma").get<std::string>());
  rep.coef_mass = Rational::parse(j.at("coef_mass").get<std::string>());
  rep.rhs_lower = Rational::parse(j.at("rhs_lower").get<std::string>());
  rep.lhs_width = Rational::parse(j.at("lhs_width").get<std::string>());
  rep.mass_width = Rational::parse(j.at("mass_width").get<std::string>());
  if (j.contains("direct_estimate"))
    rep.direct_estimate =
        Rational::parse(j.at("direct_estimate").get<std::string>());
  rep.pass = j.at("verdict").get<std::string>() == "pass";
  return rep;
}

nlohmann::json report_to_json(const ReportFile& report) {
  json j;
  j["version"] = report.version;
  j["config"] = report.config;
  j["constants"] = json{{"cms", report.cms.to_string()}};
  json instances = json::array();
  for (const InequalityReport& rep : report.instances)
    instances.push_back(instance_to_json(rep));
  j["instances"] = std::move(instances);
  return j;
}

ReportFile report_from_json(const json& j) {
  ReportFile report;
  report.version = j.at("version").get<int>();
  report.config = j.value("config", json::object());
  report.cms =
      Rational::parse(j.at("constants").at("cms").get<std::string>());
  for (const json& inst : j.at("instances"))
    report.instances.push_back(instance_from_json(inst));
  return report;
}

RecheckResult recheck_report(const json& j) {
  RecheckResult result;
  const ReportFile report = report_from_json(j);
  for (const InequalityReport& rep : report.instances) {
    ++result.checked;
    const Rational rhs =
        rep.coef_gamma * rep.gamma_term + rep.coef_mass * rep.mass_lower;
    if (rhs != rep.rhs_lower) {
      ++result.inconsistent;
      result.messages.push_back(rep.id + ": rhs_lower does not match its terms");
      continue;
    }
    const bool pass = rep.lhs_upper <= rep.rhs_lower;
    if (pass != rep.pass) {
      ++result.inconsistent;
      result.messages.push_back(rep.id + ": verdict does not match the rationals");
      continue;
    }
    if (!rep.pass) {
      ++result.failed_verdicts;
      result.messages.push_back(rep.id + ": recorded verdict is fail");
    }
  }
  return result;
}

std::string sweep_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream out;
  out << "id,kind,n,r,lhs_upper,rhs_lower,ratio_dec,depth,lhs_width_dec,"
         "verdict\n";
  for (const InequalityReport& rep : reports) {
    out << rep.id << ',' << rep.kind << ',' << rep.n << ','
        << (rep.radius ? rep.radius->to_string() : "") << ','
        << rep.lhs_upper.to_string() << ',' << rep.rhs_lower.to_string() << ',';
    if (rep.rhs_lower.is_zero()) {
      out << (rep.lhs_upper.is_zero() ? "0" : "inf");
    } else {
      out << (rep.lhs_upper / rep.rhs_lower).to_decimal(6);
    }
    out << ',' << rep.depth << ',' << rep.lhs_width.to_decimal(10) << ','
        << (rep.pass ? "pass" : "fail") << '\n';
  }
  return out.str();
}

nlohmann::json phfunction_to_json(const PHFunction& f) {
  json j;
  j["window"] = f.support().window().level;
  json support = json::array();
  for (const CellAddress& cell : f.support().cells())
    support.push_back(cell.word());
  j["support"] = std::move(support);
  j["m_def"] = f.definition_level();
  json values = json::object();
  for (const auto& [point, value] : f.values_at(f.definition_level()))
    values[point.to_string()] = value.to_string();
  j["values"] = std::move(values);
  j["local"] = f.local();
  return j;
}

PHFunction phfunction_from_json(const json& j) {
  const AmbientWindow w{j.at("window").get<int>()};
  std::vector<CellAddress> cells;
  for (const json& word : j.at("support"))
    cells.emplace_back(w, word.get<std::string>());
  Region support(std::move(cells));
  const int m_def = j.at("m_def").get<int>();
  std::map<LatticePoint, Rational> values;
  for (const auto& [key, value] : j.at("values").items()) {
    values.emplace(LatticePoint::parse(key),
                   Rational::parse(value.get<std::string>()));
  }
  const bool local = j.value("local", false);
  return local ? PHFunction::make_local(std::move(support), m_def, values)
               : PHFunction::make(std::move(support), m_def, values);
}

}  // namespace sierp
