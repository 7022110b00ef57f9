#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "ksigma/experiments.hpp"

namespace ksigma {

/// CSV serialization: header row, LF line endings, floats with 9 significant
/// digits. Curve results get one row per (series, n) plus a crossover row;
/// surfaces one row per cell; tables one row per check.
std::string to_csv(const ExperimentResult& result);

/// Self-contained SVG 1.1: line chart for curves, heatmap for surfaces.
/// Table results have no plot (empty string).
std::string to_svg(const ExperimentResult& result);

/// Flat key-value report over all checks, serialized as JSON with sorted
/// keys: "<experiment>.<check>.pass", ".observed", ".lo", ".hi", plus
/// per-experiment and global "all_pass" entries.
std::string summary_json(std::span<const ExperimentResult> results);

void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace ksigma
