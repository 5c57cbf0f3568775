#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kinobench/bench.hpp"

namespace kinobench {

namespace {

using nlohmann::json;

json number(double v)
{
  if (std::isinf(v)) { return v > 0 ? "inf" : "-inf"; }
  return v;
}

void write_file(std::filesystem::path const &path, std::string const &text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) { throw IoError("cannot write " + path.string()); }
  out << text;
  if (!out) { throw IoError("failed writing " + path.string()); }
}

std::vector<std::string> split(std::string const &line, char sep)
{
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) { out.push_back(cur); }
  if (!line.empty() && line.back() == sep) { out.emplace_back(); }
  return out;
}

double metric_of(CellSummary const &c, std::string const &metric)
{
  if (metric == "planning_time") { return c.summary.planning_time; }
  if (metric == "success_rate") { return c.summary.success_rate; }
  if (metric == "action") { return c.summary.action; }
  if (metric == "power") { return c.summary.power; }
  return c.summary.smoothness;
}

double metric_of(PlannerOverall const &o, std::string const &metric)
{
  if (metric == "planning_time") { return o.planning_time; }
  if (metric == "success_rate") { return o.success_rate; }
  if (metric == "action") { return o.action; }
  if (metric == "power") { return o.power; }
  return o.smoothness;
}

std::string_view unit_of(std::string const &metric)
{
  if (metric == "planning_time") { return "s"; }
  if (metric == "success_rate") { return "fraction"; }
  if (metric == "action") { return "N m s"; }
  if (metric == "power") { return "W"; }
  return "(m/s^3)^2 s";
}

} // namespace

std::string format_number(double v)
{
  if (std::isinf(v)) { return v > 0 ? "inf" : "-inf"; }
  char buf[64];
  auto const [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_number(std::string_view s)
{
  double v = 0.0;
  auto const [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw StructuralError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::string protocol_json(BenchmarkSpec const &spec)
{
  json doc;
  doc["profile"] = std::string(to_string(spec.profile));
  doc["runs_per_cell"] = spec.runs_per_cell;
  doc["timeout_s"] = spec.timeout;
  doc["seed_base"] = spec.seed_base;
  doc["goal_bias"] = spec.planner_config.goal_bias;
  doc["max_control_steps"] = spec.planner_config.max_control_steps;
  doc["max_iterations"] = spec.max_iterations ? json(*spec.max_iterations) : json(nullptr);
  doc["jobs"] = spec.jobs;
  doc["planners"] = json::array();
  for (auto const p : spec.planners) { doc["planners"].push_back(std::string(to_string(p))); }
  doc["scenes"] = json::array();
  for (auto const &s : spec.scenes) {
    doc["scenes"].push_back({{"id", s.id},
                             {"f_max_n", s.scene.dynamics.f_max},
                             {"control_step_s", s.scene.dynamics.control_step},
                             {"substep_s", s.scene.substep()},
                             {"scene_load_time_s", s.load_time_s}});
  }
  return doc.dump(2) + "\n";
}

void write_protocol(BenchmarkSpec const &spec, std::string const &outdir)
{
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) { throw IoError("cannot create output directory " + outdir + ": " + ec.message()); }
  write_file(std::filesystem::path(outdir) / "protocol.json", protocol_json(spec));
}

std::string runs_csv(std::vector<RunRecord> const &records)
{
  std::string out(kCsvHeader);
  out += '\n';
  for (auto const &r : records) {
    out += r.scene_id + ',' + std::string(to_string(r.planner)) + ',' + std::to_string(r.run) + ',' +
           std::to_string(r.seed) + ',' + (r.metrics.success ? "1" : "0") + ',' +
           format_number(r.metrics.planning_time) + ',' + format_number(r.metrics.action) + ',' +
           format_number(r.metrics.power) + ',' + format_number(r.metrics.smoothness) + '\n';
  }
  return out;
}

std::vector<RunRecord> parse_runs_csv(std::string const &text)
{
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) { throw StructuralError("runs CSV header mismatch"); }
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) { continue; }
    auto const f = split(line, ',');
    if (f.size() != 9) { throw StructuralError("runs CSV row has " + std::to_string(f.size()) + " fields"); }
    RunRecord r;
    r.scene_id = f[0];
    auto const planner = parse_planner(f[1]);
    if (!planner) { throw StructuralError("unknown planner in runs CSV: " + f[1]); }
    r.planner = *planner;
    r.run = std::stoi(f[2]);
    r.seed = std::stoull(f[3]);
    r.metrics.success = f[4] == "1";
    r.metrics.planning_time = parse_number(f[5]);
    r.metrics.action = parse_number(f[6]);
    r.metrics.power = parse_number(f[7]);
    r.metrics.smoothness = parse_number(f[8]);
    out.push_back(std::move(r));
  }
  return out;
}

std::string summary_json(BenchmarkSpec const &spec, BenchmarkResult const &result)
{
  json doc;
  doc["protocol"] = json::parse(protocol_json(spec));
  doc["cells"] = json::array();
  for (auto const &c : result.cells) {
    doc["cells"].push_back({{"scene", c.scene_id},
                            {"planner", std::string(to_string(c.planner))},
                            {"runs", c.summary.runs},
                            {"successes", c.summary.successes},
                            {"success_rate", number(c.summary.success_rate)},
                            {"planning_time_s", number(c.summary.planning_time)},
                            {"action", number(c.summary.action)},
                            {"power_w", number(c.summary.power)},
                            {"smoothness", number(c.summary.smoothness)}});
  }
  doc["overall"] = json::array();
  for (auto const &o : result.overall) {
    doc["overall"].push_back({{"planner", std::string(to_string(o.planner))},
                              {"success_rate", number(o.success_rate)},
                              {"planning_time_s", number(o.planning_time)},
                              {"action", number(o.action)},
                              {"power_w", number(o.power)},
                              {"smoothness", number(o.smoothness)}});
  }
  return doc.dump(2) + "\n";
}

std::string histogram_svg(BenchmarkResult const &result, std::string const &metric)
{
  std::vector<std::string> groups;
  std::vector<PlannerId> planners;
  for (auto const &c : result.cells) {
    if (std::find(groups.begin(), groups.end(), c.scene_id) == groups.end()) { groups.push_back(c.scene_id); }
    if (std::find(planners.begin(), planners.end(), c.planner) == planners.end()) { planners.push_back(c.planner); }
  }
  groups.emplace_back("overall");

  // values[group][planner]
  std::vector<std::vector<double>> values(groups.size(), std::vector<double>(planners.size(), 0.0));
  for (auto const &c : result.cells) {
    auto const g = std::find(groups.begin(), groups.end(), c.scene_id) - groups.begin();
    auto const p = std::find(planners.begin(), planners.end(), c.planner) - planners.begin();
    values[static_cast<std::size_t>(g)][static_cast<std::size_t>(p)] = metric_of(c, metric);
  }
  for (auto const &o : result.overall) {
    auto const p = std::find(planners.begin(), planners.end(), o.planner) - planners.begin();
    values.back()[static_cast<std::size_t>(p)] = metric_of(o, metric);
  }

  double top = 0.0;
  for (auto const &row : values) {
    for (double const v : row) {
      if (std::isfinite(v)) { top = std::max(top, std::abs(v)); }
    }
  }
  if (top <= 0.0) { top = 1.0; }

  constexpr int kWidth = 900;
  constexpr int kHeight = 420;
  constexpr int kLeft = 70;
  constexpr int kBase = 360;
  constexpr int kPlot = 300;
  static constexpr std::array<char const *, 5> kColors{"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2"};
  int const group_w = (kWidth - kLeft - 20) / static_cast<int>(groups.size());
  int const bar_w = std::max(4, (group_w - 20) / static_cast<int>(std::max<std::size_t>(1, planners.size())));

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<!-- metric: " << metric << " [" << unit_of(metric) << "]\n";
  svg << "group";
  for (auto const p : planners) { svg << ',' << to_string(p); }
  svg << '\n';
  for (std::size_t g = 0; g < groups.size(); ++g) {
    svg << groups[g];
    for (double const v : values[g]) { svg << ',' << format_number(v); }
    svg << '\n';
  }
  svg << "-->\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << metric << " (" << unit_of(metric) << ")</text>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kBase << "\" x2=\"" << kWidth - 10 << "\" y2=\"" << kBase
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << kBase - kPlot + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << format_number(top) << "</text>\n";
  for (std::size_t g = 0; g < groups.size(); ++g) {
    int const gx = kLeft + 10 + static_cast<int>(g) * group_w;
    for (std::size_t p = 0; p < planners.size(); ++p) {
      double const v = values[g][p];
      int const x = gx + static_cast<int>(p) * bar_w;
      if (!std::isfinite(v)) {
        svg << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << kBase - 4
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">inf</text>\n";
        continue;
      }
      int const h = static_cast<int>(std::lround(std::abs(v) / top * kPlot));
      svg << "<rect x=\"" << x << "\" y=\"" << kBase - h << "\" width=\"" << bar_w - 2 << "\" height=\"" << h
          << "\" fill=\"" << kColors[p % kColors.size()] << "\"><title>" << groups[g] << ' ' << to_string(planners[p])
          << ": " << format_number(v) << "</title></rect>\n";
    }
    svg << "<text x=\"" << gx + group_w / 2 - 10 << "\" y=\"" << kBase + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << groups[g] << "</text>\n";
  }
  for (std::size_t p = 0; p < planners.size(); ++p) {
    int const x = kLeft + static_cast<int>(p) * 130;
    svg << "<rect x=\"" << x << "\" y=\"" << kHeight - 22 << "\" width=\"12\" height=\"12\" fill=\""
        << kColors[p % kColors.size()] << "\"/>\n";
    svg << "<text x=\"" << x + 16 << "\" y=\"" << kHeight - 12 << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << to_string(planners[p]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_reports(BenchmarkSpec const &spec, BenchmarkResult const &result, std::string const &outdir)
{
  write_protocol(spec, outdir);
  std::filesystem::path const dir(outdir);
  write_file(dir / "runs.csv", runs_csv(result.records));
  write_file(dir / "summary.json", summary_json(spec, result));
  for (auto const metric : kHistogramMetrics) {
    write_file(dir / (std::string(metric) + ".svg"), histogram_svg(result, std::string(metric)));
  }
}

} // namespace kinobench
