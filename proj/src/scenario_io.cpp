#include "uavshare/scenario_io.hpp"

#include <climits>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "uavshare/error.hpp"

namespace uavshare {

namespace {

const char* type_name(const Json& j) { return j.type_name(); }

// Reads one JSON object, tracking which keys were consumed so that anything
// left over can be rejected.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ValidationError(path_, std::string("expected an object, got ") + type_name(j));
  }

  std::string path_of(const std::string& key) const { return path_ + "." + key; }

  const Json* child(const std::string& key) {
    used_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void opt(const std::string& key, double& out) {
    if (const Json* v = child(key)) {
      if (!v->is_number()) throw ValidationError(path_of(key), std::string("expected a number, got ") + type_name(*v));
      out = v->get<double>();
    }
  }

  void opt(const std::string& key, int& out) {
    if (const Json* v = child(key)) {
      if (!v->is_number_integer()) {
        throw ValidationError(path_of(key), std::string("expected an integer, got ") + type_name(*v));
      }
      const auto x = v->get<long long>();
      if (x < INT_MIN || x > INT_MAX) throw ValidationError(path_of(key), "integer out of range");
      out = static_cast<int>(x);
    }
  }

  void opt(const std::string& key, std::uint64_t& out) {
    if (const Json* v = child(key)) {
      if (!v->is_number_unsigned()) {
        throw ValidationError(path_of(key), std::string("expected a non-negative integer, got ") + type_name(*v));
      }
      out = v->get<std::uint64_t>();
    }
  }

  void opt(const std::string& key, bool& out) {
    if (const Json* v = child(key)) {
      if (!v->is_boolean()) throw ValidationError(path_of(key), std::string("expected a boolean, got ") + type_name(*v));
      out = v->get<bool>();
    }
  }

  void opt(const std::string& key, std::string& out) {
    if (const Json* v = child(key)) {
      if (!v->is_string()) throw ValidationError(path_of(key), std::string("expected a string, got ") + type_name(*v));
      out = v->get<std::string>();
    }
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.count(key)) throw ValidationError(path_of(key), "unknown field");
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> used_;
};

Position3D read_position(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  Position3D p;
  r.opt("x", p.x);
  r.opt("y", p.y);
  r.opt("z", p.z);
  r.finish();
  return p;
}

AntennaPattern read_antenna(const Json& j, const std::string& path, AntennaPattern fallback) {
  ObjectReader r(j, path);
  std::string kind = fallback.kind == AntennaPattern::Kind::Omni ? "omni" : "directional";
  r.opt("kind", kind);
  AntennaPattern a = fallback;
  if (kind == "omni") {
    a = AntennaPattern::omni(fallback.kind == AntennaPattern::Kind::Omni ? fallback.peak_gain_dbi : 0.0);
    r.opt("peak_gain_dbi", a.peak_gain_dbi);
  } else if (kind == "directional") {
    if (fallback.kind != AntennaPattern::Kind::Directional) a = AntennaPattern::directional(0.0, 0.0, 0.0);
    r.opt("peak_gain_dbi", a.peak_gain_dbi);
    r.opt("beamwidth_deg", a.beamwidth_deg);
    r.opt("sidelobe_floor_db", a.sidelobe_floor_db);
  } else {
    throw ValidationError(r.path_of("kind"), "expected \"directional\" or \"omni\", got \"" + kind + "\"");
  }
  r.finish();
  try {
    validate(a);
  } catch (const ValidationError& e) {
    throw ValidationError::nested(path, e);
  }
  return a;
}

NoiseModel read_noise(const Json& j, const std::string& path, NoiseModel n) {
  ObjectReader r(j, path);
  r.opt("noise_figure_db", n.noise_figure_db);
  r.opt("bandwidth_hz", n.bandwidth_hz);
  r.finish();
  return n;
}

ChannelId read_channel(ObjectReader& r, const std::string& key, ChannelId fallback) {
  int idx = fallback.index;
  r.opt(key, idx);
  return ChannelId{idx};
}

ChannelRelation parse_relation(const std::string& s, const std::string& path) {
  if (s == "co") return ChannelRelation::CoChannel;
  if (s == "adjacent") return ChannelRelation::Adjacent;
  if (s == "next_adjacent") return ChannelRelation::NextAdjacent;
  throw ValidationError(path, "expected \"co\", \"adjacent\" or \"next_adjacent\", got \"" + s + "\"");
}

ExperimentSpec read_experiment(const Json& j, const std::string& path) {
  ExperimentSpec e;
  ObjectReader r(j, path);
  r.opt("trials", e.trials);
  r.opt("seed", e.seed);
  r.opt("router_count", e.router_count);
  if (const Json* t = r.child("router_template")) {
    const std::string tp = r.path_of("router_template");
    ObjectReader tr(*t, tp);
    if (const Json* mix = tr.child("channel_mix")) {
      if (!mix->is_array()) throw ValidationError(tr.path_of("channel_mix"), "expected an array");
      e.router_template.channel_mix.clear();
      for (std::size_t i = 0; i < mix->size(); ++i) {
        const std::string ip = tr.path_of("channel_mix") + "[" + std::to_string(i) + "]";
        if (!(*mix)[i].is_string()) throw ValidationError(ip, "expected a string");
        e.router_template.channel_mix.push_back(parse_relation((*mix)[i].get<std::string>(), ip));
      }
    }
    tr.opt("height_m", e.router_template.height_m);
    tr.opt("tx_power_dbm", e.router_template.tx_power_dbm);
    tr.finish();
  }
  if (const Json* p = r.child("planner")) {
    ObjectReader pr(*p, r.path_of("planner"));
    pr.opt("gs_candidate_resolution_m", e.planner.gs_candidate_resolution_m);
    pr.opt("allocate", e.planner.allocate);
    pr.opt("uavs", e.planner.uavs);
    std::string strategy = to_string(e.planner.strategy);
    pr.opt("strategy", strategy);
    try {
      e.planner.strategy = parse_strategy(strategy);
    } catch (const ValidationError& err) {
      throw ValidationError(pr.path_of("strategy"), err.message());
    }
    pr.finish();
  }
  r.finish();
  validate(e);
  return e;
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "proposed") return Mode::Proposed;
  if (s == "conventional") return Mode::Conventional;
  throw ValidationError("mode", "expected \"proposed\" or \"conventional\", got \"" + s + "\"");
}

PartitionStrategy parse_strategy(const std::string& s) {
  if (s == "strips") return PartitionStrategy::Strips;
  if (s == "sectors") return PartitionStrategy::Sectors;
  throw ValidationError("strategy", "expected \"strips\" or \"sectors\", got \"" + s + "\"");
}

ScenarioDocument parse_document(const Json& doc) {
  ScenarioDocument out;
  Scenario& s = out.scenario;
  ObjectReader r(doc, "$");

  int version = Scenario::kSchemaVersion;
  r.opt("schema_version", version);
  if (version != Scenario::kSchemaVersion) {
    throw ValidationError("$.schema_version", "unsupported schema version " + std::to_string(version));
  }

  std::string mode = to_string(s.mode);
  r.opt("mode", mode);
  try {
    s.mode = parse_mode(mode);
  } catch (const ValidationError& e) {
    throw ValidationError("$.mode", e.message());
  }

  if (const Json* b = r.child("bounds")) {
    ObjectReader br(*b, "$.bounds");
    br.opt("x_min", s.bounds.x_min);
    br.opt("x_max", s.bounds.x_max);
    br.opt("y_min", s.bounds.y_min);
    br.opt("y_max", s.bounds.y_max);
    br.finish();
  }

  if (const Json* p = r.child("path_loss")) {
    ObjectReader pr(*p, "$.path_loss");
    PathLossModel& m = s.models.path_loss;
    pr.opt("carrier_frequency_mhz", m.carrier_frequency_mhz);
    pr.opt("reference_distance_m", m.reference_distance_m);
    pr.opt("exponent_air", m.exponent_air);
    pr.opt("exponent_ground", m.exponent_ground);
    double reference_loss = std::numeric_limits<double>::quiet_NaN();
    pr.opt("reference_loss_db", reference_loss);
    pr.finish();
    if (!(m.carrier_frequency_mhz > 0.0) || !(m.reference_distance_m > 0.0)) {
      throw ValidationError("$.path_loss", "carrier frequency and reference distance must be > 0");
    }
    m.reference_loss_db = std::isnan(reference_loss)
                              ? free_space_loss_db(m.carrier_frequency_mhz, m.reference_distance_m)
                              : reference_loss;
  }

  if (const Json* n = r.child("noise")) {
    ObjectReader nr(*n, "$.noise");
    if (const Json* v = nr.child("gs")) s.models.gs_noise = read_noise(*v, "$.noise.gs", s.models.gs_noise);
    if (const Json* v = nr.child("uav")) s.models.uav_noise = read_noise(*v, "$.noise.uav", s.models.uav_noise);
    if (const Json* v = nr.child("wlan")) s.models.wlan_noise = read_noise(*v, "$.noise.wlan", s.models.wlan_noise);
    nr.finish();
  }

  if (const Json* v = r.child("rejection")) {
    ObjectReader rr(*v, "$.rejection");
    rr.opt("adjacent_db", s.models.rejection.adjacent_db);
    rr.opt("next_adjacent_db", s.models.rejection.next_adjacent_db);
    rr.finish();
  }

  if (const Json* v = r.child("thresholds")) {
    ObjectReader tr(*v, "$.thresholds");
    tr.opt("uplink_min_db", s.thresholds.uplink_min_db);
    tr.opt("downlink_min_db", s.thresholds.downlink_min_db);
    tr.opt("terrestrial_min_db", s.thresholds.terrestrial_min_db);
    tr.finish();
  }

  r.opt("ue_distance_m", s.models.ue_distance_m);
  r.opt("building_entry_loss_db", s.models.building_entry_loss_db);
  r.opt("eirp_limit_dbm", s.eirp_limit_dbm);
  r.opt("channel_count", s.channel_count);

  if (const Json* v = r.child("grid")) {
    ObjectReader gr(*v, "$.grid");
    gr.opt("resolution_m", s.grid.resolution_m);
    gr.opt("altitude_m", s.grid.altitude_m);
    gr.opt("gs_candidate_resolution_m", s.grid.gs_candidate_resolution_m);
    gr.finish();
  }

  if (const Json* v = r.child("ground_station")) {
    ObjectReader gr(*v, "$.ground_station");
    GroundStationConfig& g = s.ground_station;
    gr.opt("id", g.id);
    if (const Json* p = gr.child("position")) g.position = read_position(*p, "$.ground_station.position");
    gr.opt("tx_power_dbm", g.tx_power_dbm);
    if (const Json* a = gr.child("antenna")) g.antenna = read_antenna(*a, "$.ground_station.antenna", g.antenna);
    gr.finish();
  }

  if (const Json* v = r.child("uavs")) {
    if (!v->is_array()) throw ValidationError("$.uavs", "expected an array");
    s.uavs.clear();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string p = "$.uavs[" + std::to_string(i) + "]";
      ObjectReader ur((*v)[i], p);
      UavConfig u;
      u.id = "uav-" + std::to_string(i + 1);
      ur.opt("id", u.id);
      ur.opt("altitude_m", u.altitude_m);
      ur.opt("tx_power_dbm", u.tx_power_dbm);
      if (const Json* a = ur.child("antenna")) u.antenna = read_antenna(*a, p + ".antenna", u.antenna);
      u.channels.uplink = read_channel(ur, "uplink", u.channels.uplink);
      u.channels.downlink = read_channel(ur, "downlink", u.channels.downlink);
      ur.finish();
      s.uavs.push_back(u);
    }
  }

  if (const Json* v = r.child("routers")) {
    if (!v->is_array()) throw ValidationError("$.routers", "expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string p = "$.routers[" + std::to_string(i) + "]";
      ObjectReader rr((*v)[i], p);
      std::string id = "router-" + std::to_string(i + 1);
      rr.opt("id", id);
      Position3D pos{0.0, 0.0, 1.5};
      if (const Json* pj = rr.child("position")) pos = read_position(*pj, p + ".position");
      double tx = 20.0;
      rr.opt("tx_power_dbm", tx);
      const ChannelId ch = read_channel(rr, "channel", ChannelId{0});
      rr.finish();
      s.routers.push_back(RadioNode::router(id, pos, tx, ch));
    }
  }

  if (const Json* v = r.child("experiment")) out.experiment = read_experiment(*v, "$.experiment");
  r.finish();

  s = with_mode(std::move(s), s.mode);
  validate(s);
  return out;
}

ScenarioDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("$", path.string() + " is not valid JSON: " + e.what());
  }
  return parse_document(doc);
}

Scenario load_scenario(const std::filesystem::path& path) { return load_document(path).scenario; }

Json to_json(const Position3D& p) { return Json{{"x", p.x}, {"y", p.y}, {"z", p.z}}; }

namespace {

Json to_json(const AntennaPattern& a) {
  if (a.kind == AntennaPattern::Kind::Omni) return Json{{"kind", "omni"}, {"peak_gain_dbi", a.peak_gain_dbi}};
  return Json{{"kind", "directional"},
              {"peak_gain_dbi", a.peak_gain_dbi},
              {"beamwidth_deg", a.beamwidth_deg},
              {"sidelobe_floor_db", a.sidelobe_floor_db}};
}

Json to_json(const NoiseModel& n) {
  return Json{{"noise_figure_db", n.noise_figure_db}, {"bandwidth_hz", n.bandwidth_hz}};
}

}  // namespace

Json to_json(const RadioNode& router) {
  return Json{{"id", router.id},
              {"position", to_json(router.position)},
              {"tx_power_dbm", router.tx_power_dbm},
              {"channel", router.channel.index}};
}

Json to_json(const Scenario& s) {
  Json j;
  j["schema_version"] = Scenario::kSchemaVersion;
  j["mode"] = to_string(s.mode);
  j["bounds"] = {{"x_min", s.bounds.x_min}, {"x_max", s.bounds.x_max}, {"y_min", s.bounds.y_min},
                 {"y_max", s.bounds.y_max}};
  const PathLossModel& m = s.models.path_loss;
  j["path_loss"] = {{"carrier_frequency_mhz", m.carrier_frequency_mhz},
                    {"reference_distance_m", m.reference_distance_m},
                    {"reference_loss_db", m.reference_loss_db},
                    {"exponent_air", m.exponent_air},
                    {"exponent_ground", m.exponent_ground}};
  j["noise"] = {{"gs", to_json(s.models.gs_noise)},
                {"uav", to_json(s.models.uav_noise)},
                {"wlan", to_json(s.models.wlan_noise)}};
  j["rejection"] = {{"adjacent_db", s.models.rejection.adjacent_db},
                    {"next_adjacent_db", s.models.rejection.next_adjacent_db}};
  j["thresholds"] = {{"uplink_min_db", s.thresholds.uplink_min_db},
                     {"downlink_min_db", s.thresholds.downlink_min_db},
                     {"terrestrial_min_db", s.thresholds.terrestrial_min_db}};
  j["ue_distance_m"] = s.models.ue_distance_m;
  j["building_entry_loss_db"] = s.models.building_entry_loss_db;
  j["eirp_limit_dbm"] = s.eirp_limit_dbm;
  j["channel_count"] = s.channel_count;
  j["grid"] = {{"resolution_m", s.grid.resolution_m},
               {"altitude_m", s.grid.altitude_m},
               {"gs_candidate_resolution_m", s.grid.gs_candidate_resolution_m}};
  j["ground_station"] = {{"id", s.ground_station.id},
                         {"position", to_json(s.ground_station.position)},
                         {"tx_power_dbm", s.ground_station.tx_power_dbm},
                         {"antenna", to_json(s.ground_station.antenna)}};
  Json uavs = Json::array();
  for (const UavConfig& u : s.uavs) {
    uavs.push_back({{"id", u.id},
                    {"altitude_m", u.altitude_m},
                    {"tx_power_dbm", u.tx_power_dbm},
                    {"antenna", to_json(u.antenna)},
                    {"uplink", u.channels.uplink.index},
                    {"downlink", u.channels.downlink.index}});
  }
  j["uavs"] = uavs;
  Json routers = Json::array();
  for (const RadioNode& r : s.routers) routers.push_back(to_json(r));
  j["routers"] = routers;
  return j;
}

Json to_json(const ExperimentSpec& e) {
  Json mix = Json::array();
  for (ChannelRelation r : e.router_template.channel_mix) mix.push_back(to_string(r));
  return Json{{"trials", e.trials},
              {"seed", e.seed},
              {"router_count", e.router_count},
              {"router_template",
               {{"channel_mix", mix},
                {"height_m", e.router_template.height_m},
                {"tx_power_dbm", e.router_template.tx_power_dbm}}},
              {"planner",
               {{"gs_candidate_resolution_m", e.planner.gs_candidate_resolution_m},
                {"allocate", e.planner.allocate},
                {"uavs", e.planner.uavs},
                {"strategy", to_string(e.planner.strategy)}}}};
}

Json to_json(const ScenarioDocument& doc) {
  Json j = to_json(doc.scenario);
  if (doc.experiment) j["experiment"] = to_json(*doc.experiment);
  return j;
}

}  // namespace uavshare
