#pragma once

// Machine-readable report emission. JSON schemas carry a top-level
// "schema": 1; deterministic sections never contain timestamps, and the
// build-info block is kept separate from them.

#include <addcomp/density.hpp>
#include <addcomp/version.hpp>

#include <json.hpp>

#include <string>

namespace addcomp {

using Json = nlohmann::ordered_json;

inline Json to_json(const Ratio& r) {
  return Json{{"num", r.num}, {"den", r.den}, {"approx", r.approx()}};
}

inline Json to_json(const DensityTarget& t) {
  return Json{{"num", t.num()}, {"den", t.den()}, {"approx", t.approx()}};
}

inline Json build_info_json() {
  return Json{{"library_version", kLibraryVersion}, {"word_bits", kWordBits}};
}

inline Json to_json(const DensityReport& rep) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["horizon"] = rep.horizon;
  j["window_fraction"] = to_json(rep.window_fraction);
  j["grid"] = rep.grid;
  j["tail_lower"] = to_json(rep.tail_lower);
  j["tail_upper"] = to_json(rep.tail_upper);
  j["index_lower"] = rep.index_lower ? to_json(*rep.index_lower) : Json(nullptr);
  j["index_upper"] = rep.index_upper ? to_json(*rep.index_upper) : Json(nullptr);
  j["exact_density"] = rep.exact_density ? to_json(*rep.exact_density) : Json(nullptr);
  j["inconclusive"] = rep.inconclusive;
  Json curve = Json::array();
  for (const auto& pt : rep.ratio_curve) {
    curve.push_back(Json::array({pt.x, pt.count}));
  }
  j["ratio_curve"] = curve;
  return j;
}

inline std::string density_report_csv(const DensityReport& rep) {
  std::string out = "x,count,ratio_num,ratio_den\n";
  for (const auto& pt : rep.ratio_curve) {
    out += std::to_string(pt.x);
    out += ',';
    out += std::to_string(pt.count);
    out += ',';
    out += std::to_string(pt.count);
    out += ',';
    out += std::to_string(pt.x);
    out += '\n';
  }
  return out;
}

}  // namespace addcomp
