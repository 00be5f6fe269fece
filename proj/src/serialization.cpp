#include "neuroncode/serialization.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "neuroncode/errors.hpp"

namespace neuroncode {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("malformed JSON record");
  return j;
}

const json& require_field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) {
    throw parse_error(std::string("missing field '") + name + "'");
  }
  return *it;
}

Rational rational_field(const json& j, const char* name) {
  const json& field = require_field(j, name);
  if (field.is_number_integer()) {
    return Rational(static_cast<long>(field.get<long long>()));
  }
  if (!field.is_string()) {
    throw parse_error(std::string("field '") + name +
                      "' must be a rational string");
  }
  try {
    return parse_rational(field.get<std::string>());
  } catch (const parse_error& e) {
    throw parse_error(std::string("field '") + name + "': " + e.what());
  }
}

std::vector<Rational> rational_array_field(const json& j, const char* name) {
  const json& field = require_field(j, name);
  if (!field.is_array() || field.empty()) {
    throw parse_error(std::string("field '") + name +
                      "' must be a nonempty array");
  }
  std::vector<Rational> values;
  values.reserve(field.size());
  for (const json& entry : field) {
    if (entry.is_number_integer()) {
      values.emplace_back(static_cast<long>(entry.get<long long>()));
    } else if (entry.is_string()) {
      try {
        values.push_back(parse_rational(entry.get<std::string>()));
      } catch (const parse_error& e) {
        throw parse_error(std::string("field '") + name + "': " + e.what());
      }
    } else {
      throw parse_error(std::string("field '") + name +
                        "' must hold rational strings");
    }
  }
  return values;
}

json neuron_record(const Neuron& neuron) {
  json weights = json::array();
  for (const Rational& w : neuron.weights()) {
    weights.push_back(to_fraction_string(w));
  }
  return json{{"weights", std::move(weights)},
              {"bias", to_fraction_string(neuron.bias())}};
}

Neuron neuron_from_record(const json& j) {
  if (!j.is_object()) throw parse_error("neuron record must be an object");
  std::vector<Rational> weights = rational_array_field(j, "weights");
  Rational bias = rational_field(j, "bias");
  return Neuron(std::move(weights), std::move(bias));
}

json encoder_record(const Encoder& encoder);

struct EncoderRecordVisitor {
  const Encoder& encoder;

  json operator()(const IdentityEncoder&) const {
    return json{{"kind", "identity"},
                {"parameters", {{"n", encoder.input_dimension()}}}};
  }
  json operator()(const ConstantEncoder& e) const {
    return json{{"kind", "constant"},
                {"parameters",
                 {{"m", encoder.output_dimension()},
                  {"target", neuron_record(e.target)}}}};
  }
  json operator()(const ReplicationEncoder& e) const {
    return json{{"kind", "replication"},
                {"parameters",
                 {{"times", e.times}, {"inner", encoder_record(*e.inner)}}}};
  }
  json operator()(const ParityEncoder&) const {
    return json{{"kind", "parity"},
                {"parameters", {{"n", encoder.input_dimension()}}}};
  }
  json operator()(const GeneralizedParityEncoder& e) const {
    return json{{"kind", "generalized-parity"},
                {"parameters", {{"weights", e.weights}}}};
  }
  json operator()(const PuncturedHadamardEncoder&) const {
    return json{{"kind", "punctured-hadamard"},
                {"parameters", {{"n", encoder.input_dimension()}}}};
  }
};

json encoder_record(const Encoder& encoder) {
  return std::visit(EncoderRecordVisitor{encoder}, encoder.kind());
}

Encoder encoder_from_record(const json& j) {
  std::string kind = require_field(j, "kind").get<std::string>();
  const json& parameters = require_field(j, "parameters");
  if (kind == "identity") {
    return Encoder::identity(require_field(parameters, "n").get<std::size_t>());
  }
  if (kind == "constant") {
    Neuron target = neuron_from_record(require_field(parameters, "target"));
    return Encoder::constant(std::move(target),
                             require_field(parameters, "m").get<std::size_t>());
  }
  if (kind == "replication") {
    Encoder inner = encoder_from_record(require_field(parameters, "inner"));
    return Encoder::replication(std::move(inner),
                                require_field(parameters, "times").get<unsigned>());
  }
  if (kind == "parity") {
    return Encoder::parity(require_field(parameters, "n").get<std::size_t>());
  }
  if (kind == "generalized-parity") {
    return Encoder::generalized_parity(
        require_field(parameters, "weights").get<std::vector<long long>>());
  }
  if (kind == "punctured-hadamard") {
    return Encoder::punctured_hadamard(
        require_field(parameters, "n").get<std::size_t>());
  }
  throw parse_error("field 'kind': unknown encoder kind '" + kind + "'");
}

}  // namespace

std::string neuron_to_json(const Neuron& neuron) {
  return neuron_record(neuron).dump(2);
}

Neuron neuron_from_json(const std::string& text) {
  return neuron_from_record(parse_json(text));
}

Neuron load_neuron(const std::string& path) {
  return neuron_from_json(read_text_file(path));
}

void save_neuron(const Neuron& neuron, const std::string& path) {
  write_text_file(path, neuron_to_json(neuron) + "\n");
}

std::string network_to_json(const LayeredNetwork& network) {
  json layers = json::array();
  for (const std::vector<BinaryNeuron>& layer : network.layers()) {
    json row = json::array();
    for (const BinaryNeuron& neuron : layer) {
      row.push_back(neuron_record(neuron.as_neuron()));
    }
    layers.push_back(std::move(row));
  }
  return json{{"input_width", network.input_width()},
              {"layers", std::move(layers)}}
      .dump(2);
}

LayeredNetwork network_from_json(const std::string& text) {
  json j = parse_json(text);
  std::size_t input_width =
      require_field(j, "input_width").get<std::size_t>();
  const json& layers_field = require_field(j, "layers");
  if (!layers_field.is_array() || layers_field.empty()) {
    throw parse_error("field 'layers' must be a nonempty array");
  }
  std::vector<std::vector<BinaryNeuron>> layers;
  layers.reserve(layers_field.size());
  for (const json& row : layers_field) {
    if (!row.is_array() || row.empty()) {
      throw parse_error("field 'layers' must hold nonempty layer arrays");
    }
    std::vector<BinaryNeuron> layer;
    layer.reserve(row.size());
    for (const json& record : row) {
      layer.push_back(BinaryNeuron::canonicalize(neuron_from_record(record)));
    }
    layers.push_back(std::move(layer));
  }
  return LayeredNetwork(input_width, std::move(layers));
}

LayeredNetwork load_network(const std::string& path) {
  return network_from_json(read_text_file(path));
}

void save_network(const LayeredNetwork& network, const std::string& path) {
  write_text_file(path, network_to_json(network) + "\n");
}

std::string solution_to_json(const Solution& solution) {
  json j = encoder_record(solution.encoder);
  json v = json::array();
  for (const Rational& value : solution.coded_weights) {
    v.push_back(to_fraction_string(value));
  }
  j["v"] = std::move(v);
  j["mu"] = to_fraction_string(solution.coded_bias);
  return j.dump(2);
}

Solution solution_from_json(const std::string& text) {
  json j = parse_json(text);
  Encoder encoder = encoder_from_record(j);
  std::vector<Rational> v = rational_array_field(j, "v");
  Rational mu = rational_field(j, "mu");
  return make_solution(std::move(encoder), std::move(v), std::move(mu));
}

std::string report_to_json(const RobustnessReport& report) {
  json witnesses = json::array();
  for (const Witness& witness : report.witnesses) {
    json erasures = json::array();
    for (std::size_t j : witness.pattern.erasures) erasures.push_back(j);
    json errors = json::array();
    for (std::size_t j : witness.pattern.errors) errors.push_back(j);
    witnesses.push_back(json{{"input", witness.input.to_string()},
                             {"erasures", std::move(erasures)},
                             {"errors", std::move(errors)}});
  }
  return json{{"m", report.coded_length},
              {"d", to_fraction_string(report.min_dist)},
              {"relative", to_fraction_string(report.relative)},
              {"radius", report.radius},
              {"radius_capped", report.radius_capped},
              {"witnesses", std::move(witnesses)},
              {"checked_patterns", report.checked_patterns},
              {"wall_seconds", report.wall_seconds}}
      .dump(2);
}

std::string report_csv_header() {
  return "m,d,relative,radius,witnesses,wall_seconds";
}

std::string report_csv_row(const RobustnessReport& report) {
  std::ostringstream out;
  out << report.coded_length << ',' << to_fraction_string(report.min_dist)
      << ',' << to_fraction_string(report.relative) << ',' << report.radius
      << ',' << report.witnesses.size() << ',' << report.wall_seconds;
  return out.str();
}

std::string trial_csv_header() {
  return "trial_config,trials,agreements,accuracy,seed";
}

std::string trial_csv_row(const std::string& config,
                          const TrialStatistics& stats) {
  std::ostringstream out;
  out << config << ',' << stats.trials << ',' << stats.agreements << ','
      << to_fraction_string(stats.accuracy()) << ',' << stats.seed;
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw error("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace neuroncode
