#include "cupset/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "cupset/errors.hpp"

namespace cupset {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const char* what) {
  if (!j.is_object()) throw Error(std::string(what) + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw Error(std::string(what) + ": unknown key '" + it.key() + "'");
  }
}

template <class T>
void read_key(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

json to_json(const NoiseModel& noise) {
  json g = json::object();
  for (const auto& [k, v] : noise.gate_depolarizing) g[k] = v;
  return {{"gate_depolarizing", g},
          {"reset_incoherent", noise.reset_incoherent},
          {"spam_prep_error", noise.spam_prep_error},
          {"spam_meas_error", noise.spam_meas_error},
          {"shots", noise.shots},
          {"seed", noise.seed}};
}

NoiseModel noise_from_json(const json& j) {
  reject_unknown(j, {"gate_depolarizing", "reset_incoherent", "spam_prep_error", "spam_meas_error", "shots", "seed"},
                 "noise model");
  NoiseModel m;
  read_key(j, "gate_depolarizing", m.gate_depolarizing);
  read_key(j, "reset_incoherent", m.reset_incoherent);
  read_key(j, "spam_prep_error", m.spam_prep_error);
  read_key(j, "spam_meas_error", m.spam_meas_error);
  read_key(j, "shots", m.shots);
  read_key(j, "seed", m.seed);
  validate(m);
  return m;
}

NoiseModel load_noise(const std::string& path) {
  try {
    return noise_from_json(json::parse(slurp(path)));
  } catch (const json::parse_error& e) {
    throw Error("cannot parse " + path + ": " + e.what());
  }
}

std::string to_string(Command c) {
  switch (c) {
    case Command::Cupset: return "cupset";
    case Command::Protocol: return "protocol";
    case Command::Fit: return "fit";
  }
  return "?";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

Command parse_command(const std::string& s) {
  if (s == "cupset") return Command::Cupset;
  if (s == "protocol") return Command::Protocol;
  if (s == "fit") return Command::Fit;
  throw Error("unknown command '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw Error("unknown format '" + s + "'");
}

json to_json(const RunConfig& c) {
  return {{"command", to_string(c.command)},
          {"dims", {c.dims.d_X, c.dims.d_A, c.dims.d_B}},
          {"family", c.family},
          {"variant", c.variant},
          {"points", c.points},
          {"noise", to_json(c.noise)},
          {"pipeline", c.pipeline},
          {"sequences", c.sequences},
          {"lengths", c.lengths},
          {"average_states", c.average_states},
          {"settings", c.settings},
          {"output", c.output},
          {"format", to_string(c.format)},
          {"seed", c.seed},
          {"noisy_path", c.noisy_path},
          {"ideal_path", c.ideal_path},
          {"decay_output", c.decay_output}};
}

RunConfig config_from_json(const json& j) {
  reject_unknown(j,
                 {"command", "dims", "family", "variant", "points", "noise", "pipeline", "sequences", "lengths",
                  "average_states", "settings", "output", "format", "seed", "noisy_path", "ideal_path",
                  "decay_output"},
                 "run config");
  RunConfig c;
  std::string s;
  if (j.contains("command")) {
    read_key(j, "command", s);
    c.command = parse_command(s);
  }
  if (j.contains("dims")) {
    std::vector<int> d;
    read_key(j, "dims", d);
    if (d.size() != 3) throw Error("dims must have three entries");
    c.dims = {d[0], d[1], d[2]};
  }
  read_key(j, "family", c.family);
  read_key(j, "variant", c.variant);
  read_key(j, "points", c.points);
  if (j.contains("noise")) c.noise = noise_from_json(j.at("noise"));
  read_key(j, "pipeline", c.pipeline);
  read_key(j, "sequences", c.sequences);
  read_key(j, "lengths", c.lengths);
  read_key(j, "average_states", c.average_states);
  read_key(j, "settings", c.settings);
  read_key(j, "output", c.output);
  if (j.contains("format")) {
    read_key(j, "format", s);
    c.format = parse_format(s);
  }
  read_key(j, "seed", c.seed);
  read_key(j, "noisy_path", c.noisy_path);
  read_key(j, "ideal_path", c.ideal_path);
  read_key(j, "decay_output", c.decay_output);
  return c;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

int to_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw Error("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw Error("not an integer: '" + s + "'");
  return v;
}

}  // namespace

CupDims parse_dims(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw Error("dims must look like d_X,d_A,d_B");
  CupDims d{to_int(parts[0]), to_int(parts[1]), to_int(parts[2])};
  if (d.d_X < 1 || d.d_A < 1 || d.d_B < 1) throw Error("dims must be positive");
  return d;
}

std::vector<int> parse_lengths(const std::string& s) {
  std::vector<int> out;
  const auto dash = s.find('-');
  if (dash != std::string::npos && s.find(',') == std::string::npos) {
    const int lo = to_int(s.substr(0, dash)), hi = to_int(s.substr(dash + 1));
    if (lo > hi) throw Error("empty length range " + s);
    for (int k = lo; k <= hi; ++k) out.push_back(k);
  } else {
    for (const auto& p : split(s, ',')) out.push_back(to_int(p));
  }
  if (out.empty()) throw Error("no lengths given");
  return out;
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != header.size()) throw DimensionError("table row width does not match header");
  rows.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
}

json table_to_json(const Table& t) {
  json arr = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& key = t.header[i];
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              // Same 12-digit rounding as the CSV; non-finite values become null.
              obj[key] = std::isfinite(v) ? json(std::stod(format_cell(v))) : json(nullptr);
            } else {
              obj[key] = v;
            }
          },
          row[i]);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

void write_table(const Table& t, const std::string& path, OutputFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  if (format == OutputFormat::Csv) {
    write_csv(t, out);
  } else {
    out << table_to_json(t).dump(2) << '\n';
  }
  out.flush();
  if (!out) throw Error("write failed for " + path);
}

int CsvData::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

}  // namespace

CsvData read_csv(const std::string& path) {
  std::istringstream in(slurp(path));
  CsvData d;
  std::string line;
  if (!std::getline(in, line)) throw EmptyDataError(path + " is empty");
  d.header = parse_csv_line(line);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = parse_csv_line(line);
    if (cells.size() != d.header.size())
      throw DimensionError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(d.header.size()) +
                           " cells");
    d.rows.push_back(std::move(cells));
  }
  return d;
}

}  // namespace cupset
