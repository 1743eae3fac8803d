#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pointfw/fw.hpp"
#include "pointfw/hawkes.hpp"
#include "pointfw/sim.hpp"
#include "pointfw/timeline.hpp"

namespace pointfw::io {

inline constexpr int kModelVersion = 1;

// Header `time`, one jump per row.
std::vector<double> read_events_csv(const std::filesystem::path& path);
void write_events_csv(const std::filesystem::path& path, std::span<const double> jumps);

// Header `time,x1,...,xK`, one update per row.
std::vector<CovariateUpdate> read_covariates_csv(const std::filesystem::path& path);
void write_covariates_csv(const std::filesystem::path& path, const EventTimeline& timeline);

// Horizon defaults to the last jump or update time, whichever is later.
EventTimeline load_timeline(const std::filesystem::path& events, const std::filesystem::path& covariates,
                            std::optional<double> horizon = std::nullopt);

struct ModelFile {
  std::size_t dim = 0;
  PreprocessTransform preprocessing;
  FittedModel fitted;
};

std::string model_to_json(const ModelFile& model);
// Throws ParseError on malformed or schema-violating input.
ModelFile model_from_json(const std::string& text);

std::string atom_params_json(const Atom& atom);
Atom atom_from_json(const std::string& family, const std::string& params_json);

// One JSON object per line: {iter, loglik, gap, atom, rho}.
std::string trace_to_jsonl(const std::vector<TraceRecord>& trace);

struct Manifest {
  SimDesign design;
  Centering centering;  // draws = 0 when gamma is not estimated
};

std::string manifest_to_json(const Manifest& manifest);
Manifest manifest_from_json(const std::string& text);

std::string read_file(const std::filesystem::path& path);
// Writes through a temporary file and renames, so a failed run leaves no partial output.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace pointfw::io
