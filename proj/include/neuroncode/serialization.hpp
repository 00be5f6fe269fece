#pragma once

#include <string>

#include "neuroncode/network.hpp"
#include "neuroncode/neuron.hpp"
#include "neuroncode/robustness.hpp"
#include "neuroncode/solutions.hpp"

namespace neuroncode {

// Neuron record: { "weights": ["1", "1", "-1"], "bias": "0" }.
// Rationals travel as "p/q" or plain decimal strings, parsed exactly;
// scientific notation is rejected.
std::string neuron_to_json(const Neuron& neuron);
Neuron neuron_from_json(const std::string& text);
Neuron load_neuron(const std::string& path);
void save_neuron(const Neuron& neuron, const std::string& path);

// Network record: { "input_width": n, "layers": [[neuron, ...], ...] };
// weights must be ±1 and biases are rounded onto the canonical grid.
std::string network_to_json(const LayeredNetwork& network);
LayeredNetwork network_from_json(const std::string& text);
LayeredNetwork load_network(const std::string& path);
void save_network(const LayeredNetwork& network, const std::string& path);

// Solution record: { "kind": ..., "parameters": {...}, "v": [...],
// "mu": "..." }; round-trips every encoder kind.
std::string solution_to_json(const Solution& solution);
Solution solution_from_json(const std::string& text);

std::string report_to_json(const RobustnessReport& report);
std::string report_csv_header();
std::string report_csv_row(const RobustnessReport& report);

std::string trial_csv_header();
std::string trial_csv_row(const std::string& config,
                          const TrialStatistics& stats);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace neuroncode
