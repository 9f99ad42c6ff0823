#pragma once

#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "esf/densities.hpp"
#include "esf/montecarlo.hpp"
#include "esf/oracle.hpp"

// JSON and CSV encodings of the result records. JSON field names match the record fields; CSV column
// orders are fixed by the *_csv_header constants.
namespace esf {

using json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return s.str();
}

inline json to_json(const Prediction& p) {
  return json{{"n", p.n},           {"alpha", p.alpha},           {"t", p.t},
              {"e_n1", p.e_n1},     {"p_sharp", p.p_sharp},       {"p_generate", p.p_generate},
              {"p_transitive", p.p_transitive}};
}

namespace mc {

inline json to_json(const Estimate& e) {
  return json{{"event", e.event},     {"n", e.n},       {"alpha", e.alpha},   {"t", e.t},       {"trials", e.trials},
              {"successes", e.successes}, {"p_hat", e.p_hat}, {"stderr", e.stderr_}, {"seed", e.seed}};
}

inline Estimate estimate_from_json(const json& j) {
  return {j.at("event").get<std::string>(),     j.at("n").get<std::size_t>(),        j.at("alpha").get<double>(),
          j.at("t").get<std::size_t>(),         j.at("trials").get<std::uint64_t>(), j.at("successes").get<std::uint64_t>(),
          j.at("p_hat").get<double>(),          j.at("stderr").get<double>(),        j.at("seed").get<std::uint64_t>()};
}

inline json to_json(const SweepRow& r) {
  return json{{"n", r.n},
              {"t", r.t},
              {"theta", r.theta},
              {"p_coeff", r.p_coeff},
              {"alpha", r.alpha},
              {"estimate", to_json(r.estimate)},
              {"prediction", esf::to_json(r.prediction)},
              {"limit", r.limit}};
}

inline constexpr const char* sweep_csv_header =
    "n,t,theta,p_coeff,alpha,event,trials,successes,p_hat,stderr,seed,e_n1,p_sharp,p_generate,p_transitive,limit";

inline std::string to_csv(const SweepRow& r) {
  std::ostringstream s;
  s << r.n << ',' << r.t << ',' << format_double(r.theta) << ',' << format_double(r.p_coeff) << ','
    << format_double(r.alpha) << ',' << r.estimate.event << ',' << r.estimate.trials << ',' << r.estimate.successes
    << ',' << format_double(r.estimate.p_hat) << ',' << format_double(r.estimate.stderr_) << ',' << r.estimate.seed
    << ',' << format_double(r.prediction.e_n1) << ',' << format_double(r.prediction.p_sharp) << ','
    << format_double(r.prediction.p_generate) << ',' << format_double(r.prediction.p_transitive) << ','
    << format_double(r.limit);
  return s.str();
}

}  // namespace mc

namespace oracle {

inline json to_json(const VerificationReport& r) {
  return json{{"check", r.check},
              {"n", r.n},
              {"alpha", esf::to_string(r.alpha)},
              {"t", r.t},
              {"param", r.param},
              {"relation", r.relation},
              {"formula_value", esf::to_string(r.formula_value)},
              {"oracle_value", esf::to_string(r.oracle_value)},
              {"pass", r.pass}};
}

inline VerificationReport report_from_json(const json& j) {
  return {j.at("check").get<std::string>(),
          j.at("n").get<std::size_t>(),
          parse_rational(j.at("alpha").get<std::string>()),
          j.at("t").get<std::size_t>(),
          j.at("param").get<std::string>(),
          j.at("relation").get<std::string>(),
          parse_rational(j.at("formula_value").get<std::string>()),
          parse_rational(j.at("oracle_value").get<std::string>()),
          j.at("pass").get<bool>()};
}

}  // namespace oracle

inline constexpr const char* density_csv_header = "n,alpha,t,k,quantity,value_exact,value_float";
inline constexpr const char* pmf_csv_header = "n,alpha,k,probability";

}  // namespace esf
