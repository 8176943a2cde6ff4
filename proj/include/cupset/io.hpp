#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cupset/circuit.hpp"
#include "cupset/cupset.hpp"

namespace cupset {

// NoiseModel <-> JSON with keys gate_depolarizing, reset_incoherent,
// spam_prep_error, spam_meas_error, shots, seed. Missing keys keep defaults;
// unknown keys are rejected.
nlohmann::json to_json(const NoiseModel& noise);
NoiseModel noise_from_json(const nlohmann::json& j);
NoiseModel load_noise(const std::string& path);

enum class Command { Cupset, Protocol, Fit };
enum class OutputFormat { Csv, Json };

std::string to_string(Command c);
std::string to_string(OutputFormat f);
Command parse_command(const std::string& s);
OutputFormat parse_format(const std::string& s);

struct RunConfig {
  Command command = Command::Cupset;
  CupDims dims;
  std::string family = "swap-alpha";
  // isometric | reversible | full, or classical-isometric | classical-reversible | classical-full.
  std::string variant = "isometric";
  int points = 50;
  NoiseModel noise = NoiseModel::noiseless(200);
  // swap-complementarity | swap-choi | irb | irb-efficient | spectral
  std::string pipeline = "irb-efficient";
  int sequences = 10;
  std::vector<int> lengths{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  bool average_states = false;
  int settings = 100;
  std::string output;
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 0;
  // Fit inputs.
  std::string noisy_path;
  std::string ideal_path;
  // Optional raw decay table for the irb pipelines.
  std::string decay_output;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

// "2,2,2" -> dims.
CupDims parse_dims(const std::string& s);
// "1-10" or "1,2,4,8" -> lengths.
std::vector<int> parse_lengths(const std::string& s);

// Fixed-schema record table written as CSV (12 significant digits) or as a
// JSON array of objects with the same keys.
using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

std::string format_cell(const Cell& c);
void write_csv(const Table& t, std::ostream& os);
nlohmann::json table_to_json(const Table& t);
// Writes in the chosen format; throws Error on I/O failure.
void write_table(const Table& t, const std::string& path, OutputFormat format);

// Reads a CSV with a header row; cells stay strings.
struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index or -1.
  int column(const std::string& name) const;
};

CsvData read_csv(const std::string& path);

}  // namespace cupset
