#include "uavshare/export.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "uavshare/error.hpp"

namespace uavshare {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

unsigned char pixel(bool pass, Condition binding) {
  if (pass) return kPixelPass;
  switch (binding) {
    case Condition::Uplink: return kPixelUplink;
    case Condition::Downlink: return kPixelDownlink;
    case Condition::Terrestrial: return kPixelTerrestrial;
  }
  return 0;
}

std::string pgm(int nx, int ny, const std::vector<unsigned char>& row_major_south_first) {
  std::string out = "P5\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
  out.reserve(out.size() + row_major_south_first.size());
  for (int j = ny - 1; j >= 0; --j) {
    const auto* row = row_major_south_first.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(nx);
    out.append(reinterpret_cast<const char*>(row), static_cast<std::size_t>(nx));
  }
  return out;
}

Json ratio_stats(const RatioStats& s) { return Json{{"mean", s.mean}, {"min", s.min}, {"max", s.max}}; }

Json channel_pair(const ChannelPair& p) {
  return Json{{"uplink", p.uplink.index},
              {"uplink_mhz", p.uplink.center_mhz()},
              {"downlink", p.downlink.index},
              {"downlink_mhz", p.downlink.center_mhz()}};
}

Json grid_spec(const GridSpec& g) {
  return Json{{"bounds",
               {{"x_min", g.bounds.x_min}, {"x_max", g.bounds.x_max}, {"y_min", g.bounds.y_min},
                {"y_max", g.bounds.y_max}}},
              {"resolution_m", g.resolution_m},
              {"altitude_m", g.altitude_m},
              {"nx", g.nx()},
              {"ny", g.ny()}};
}

Json binding_counts(const FlyableGrid& g) {
  std::size_t up = 0, down = 0, terr = 0;
  for (const PointResult& p : g.points) {
    if (p.pass) continue;
    (p.binding == Condition::Uplink ? up : p.binding == Condition::Downlink ? down : terr) += 1;
  }
  return Json{{"uplink", up}, {"downlink", down}, {"terrestrial", terr}};
}

}  // namespace

std::string grid_csv(const FlyableGrid& grid) {
  std::string out = "x,y,pass,worst_margin_db,binding_condition\n";
  for (int j = 0; j < grid.spec.ny(); ++j) {
    for (int i = 0; i < grid.spec.nx(); ++i) {
      const Position3D p = grid.spec.point(i, j);
      const PointResult& r = grid.at(i, j);
      out += fmt("%.3f", p.x);
      out += ',';
      out += fmt("%.3f", p.y);
      out += r.pass ? ",1," : ",0,";
      out += fmt("%.6f", r.worst_margin_db);
      out += ',';
      out += to_string(r.binding);
      out += '\n';
    }
  }
  return out;
}

std::string grid_pgm(const FlyableGrid& grid) {
  std::vector<unsigned char> px(grid.points.size());
  for (std::size_t k = 0; k < px.size(); ++k) px[k] = pixel(grid.points[k].pass, grid.points[k].binding);
  return pgm(grid.spec.nx(), grid.spec.ny(), px);
}

std::string render_csv_to_pgm(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "x,y,pass,worst_margin_db,binding_condition") {
    throw ValidationError("csv", "missing or unexpected header line");
  }
  // y -> (x -> pixel); rows and columns are recovered from the coordinates.
  std::map<double, std::map<double, unsigned char>> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string x, y, pass, margin, binding;
    if (!std::getline(row, x, ',') || !std::getline(row, y, ',') || !std::getline(row, pass, ',') ||
        !std::getline(row, margin, ',') || !std::getline(row, binding)) {
      throw ValidationError("csv:" + std::to_string(line_no), "expected 5 fields");
    }
    Condition c;
    if (binding == "uplink") {
      c = Condition::Uplink;
    } else if (binding == "downlink") {
      c = Condition::Downlink;
    } else if (binding == "terrestrial") {
      c = Condition::Terrestrial;
    } else {
      throw ValidationError("csv:" + std::to_string(line_no), "unknown binding condition '" + binding + "'");
    }
    if (pass != "0" && pass != "1") throw ValidationError("csv:" + std::to_string(line_no), "pass must be 0 or 1");
    try {
      cells[std::stod(y)][std::stod(x)] = pixel(pass == "1", c);
    } catch (const std::exception&) {
      throw ValidationError("csv:" + std::to_string(line_no), "bad coordinate");
    }
  }
  if (cells.empty()) throw ValidationError("csv", "no data rows");
  const std::size_t nx = cells.begin()->second.size();
  std::vector<unsigned char> px;
  px.reserve(nx * cells.size());
  for (const auto& [y, row] : cells) {
    if (row.size() != nx) throw ValidationError("csv", "rows have differing lengths");
    for (const auto& [x, v] : row) px.push_back(v);
  }
  return pgm(static_cast<int>(nx), static_cast<int>(cells.size()), px);
}

std::string trials_csv(const ExperimentResult& result) {
  std::string out = "trial,seed,gs_x,gs_y,optimized_ratio,center_ratio,combined_ratio,best_uniform_ratio\n";
  for (const TrialRecord& t : result.trials) {
    out += std::to_string(t.index) + ',' + std::to_string(t.seed) + ',' + fmt("%.3f", t.best_gs.x) + ',' +
           fmt("%.3f", t.best_gs.y) + ',' + fmt("%.6f", t.optimized_ratio) + ',' + fmt("%.6f", t.center_ratio) + ',';
    if (t.combined_ratio) out += fmt("%.6f", *t.combined_ratio);
    out += ',';
    if (t.best_uniform) out += fmt("%.6f", t.best_uniform->ratio);
    out += '\n';
  }
  return out;
}

Json grid_summary(const FlyableGrid& grid) {
  return Json{{"flyable_ratio", grid.flyable_ratio},
              {"pass_count", grid.pass_count},
              {"point_count", grid.points.size()},
              {"gs_position", to_json(grid.gs_position)},
              {"channels", channel_pair(grid.channels)},
              {"grid", grid_spec(grid.spec)},
              {"failing_by_binding_condition", binding_counts(grid)},
              {"clamped_points", grid.any_clamped}};
}

Json placement_summary(const PlacementResult& placement) {
  Json candidates = Json::array();
  for (const PlacementCandidate& c : placement.candidates) {
    candidates.push_back({{"x", c.position.x}, {"y", c.position.y}, {"ratio", c.ratio}});
  }
  return Json{{"best_position", to_json(placement.best_position)},
              {"best_ratio", placement.best_ratio},
              {"candidate_resolution_m", placement.candidate_resolution_m},
              {"candidates", candidates}};
}

Json plan_summary(const AllocationPlan& plan) {
  Json areas = Json::array();
  for (const SubArea& a : plan.sub_areas) {
    Json poly = Json::array();
    for (const Point2D& p : a.polygon) poly.push_back(Json::array({p.x, p.y}));
    areas.push_back({{"index", a.index},
                     {"shape", a.shape == SubArea::Shape::Rectangle ? "rectangle" : "sector"},
                     {"polygon", poly},
                     {"channels", channel_pair({a.assigned_uplink, a.assigned_downlink})},
                     {"point_count", a.point_count},
                     {"flyable_ratio", a.ratio},
                     {"infeasible", a.infeasible}});
  }
  Json conflicts = Json::array();
  for (const ChannelConflict& c : cross_subarea_channel_check(plan)) {
    conflicts.push_back({{"sub_area_a", c.sub_area_a},
                         {"sub_area_b", c.sub_area_b},
                         {"direction", to_string(c.direction)},
                         {"channel", c.channel.index}});
  }
  return Json{{"combined_ratio", plan.combined_ratio},
              {"warning", plan.warning},
              {"gs_position", to_json(plan.gs_position)},
              {"sub_areas", areas},
              {"channel_reuse", conflicts},
              {"grid", grid_spec(plan.combined_grid.spec)}};
}

Json experiment_summary(const ExperimentResult& result) {
  Json j{{"trials", result.trials.size()},
         {"optimized_ratio", ratio_stats(result.optimized)},
         {"center_ratio", ratio_stats(result.center)}};
  if (result.combined) j["combined_ratio"] = ratio_stats(*result.combined);
  Json rows = Json::array();
  for (const TrialRecord& t : result.trials) {
    Json routers = Json::array();
    for (const RadioNode& r : t.routers) routers.push_back(to_json(r));
    Json row{{"trial", t.index},
             {"seed", t.seed},
             {"gs_position", to_json(t.best_gs)},
             {"optimized_ratio", t.optimized_ratio},
             {"center_ratio", t.center_ratio},
             {"routers", routers}};
    if (t.combined_ratio) {
      row["combined_ratio"] = *t.combined_ratio;
      Json alloc = Json::array();
      for (const ChannelPair& p : t.allocation) alloc.push_back(channel_pair(p));
      row["allocation"] = alloc;
      row["allocation_warning"] = t.allocation_warning;
    }
    if (t.best_uniform) {
      row["best_uniform_pair"] = channel_pair(t.best_uniform->channels);
      row["best_uniform_ratio"] = t.best_uniform->ratio;
    }
    rows.push_back(row);
  }
  j["per_trial"] = rows;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace uavshare
