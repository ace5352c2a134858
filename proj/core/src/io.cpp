#include "geomax/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace geomax {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) line += text[i] == '\n';
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ": " + e.what());
  }
}

const json& member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) field_error(path, "expected an object");
  const auto it = obj.find(key);
  const std::string where = path.empty() ? key : path + "." + key;
  if (it == obj.end()) field_error(where, "missing");
  return *it;
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

std::vector<int> read_dims(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) field_error(path, "expected a non-empty array of integers");
  std::vector<int> dims;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer() || j[i].get<long long>() < 1 || j[i].get<long long>() > (1 << 20)) {
      field_error(path + "[" + std::to_string(i) + "]", "expected a positive integer");
    }
    dims.push_back(j[i].get<int>());
  }
  return dims;
}

std::vector<double> read_numbers(const json& j, const std::string& path, std::size_t expected) {
  if (!j.is_array()) field_error(path, "expected an array of numbers");
  if (j.size() != expected) {
    field_error(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) field_error(path + "[" + std::to_string(i) + "]", "expected a number");
    const double v = j[i].get<double>();
    if (!std::isfinite(v)) field_error(path + "[" + std::to_string(i) + "]", "not finite");
    out.push_back(v);
  }
  return out;
}

PureState read_state(const json& j, const std::string& path, const SystemShape* expected_shape, bool renormalize) {
  SystemShape shape = [&] {
    const auto dims_path = join(path, "dims");
    auto dims = read_dims(member(j, path, "dims"), dims_path);
    try {
      return SystemShape(std::move(dims));
    } catch (const Error& e) {
      field_error(dims_path, e.what());
    }
  }();
  if (expected_shape && !(shape == *expected_shape)) field_error(join(path, "dims"), "does not match the projector dims");
  const auto re = read_numbers(member(j, path, "re"), join(path, "re"), shape.total_dim());
  const auto im = read_numbers(member(j, path, "im"), join(path, "im"), shape.total_dim());
  CVector amps(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) amps[i] = {re[i], im[i]};
  PureState state(shape, std::move(amps));
  const double norm = state.norm();
  if (renormalize) {
    if (!(norm > 0.0)) field_error(path.empty() ? "re" : path, "zero vector cannot be renormalised");
    return state.normalized();
  }
  if (std::abs(norm - 1.0) > kNormTolerance) {
    field_error(path.empty() ? "re" : path,
                "state norm " + format_double(norm) + " is not 1 (use renormalisation to accept it)");
  }
  return state;
}

void append_array(std::string& out, std::span<const double> xs) {
  out += '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += format_double(xs[i]);
  }
  out += ']';
}

void append_state(std::string& out, const PureState& s, const std::string& indent) {
  std::vector<double> re, im;
  for (const auto& z : s.amplitudes()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  std::vector<double> dims(s.shape().dims().begin(), s.shape().dims().end());
  out += "{\n" + indent + "  \"dims\": ";
  append_array(out, dims);
  out += ",\n" + indent + "  \"re\": ";
  append_array(out, re);
  out += ",\n" + indent + "  \"im\": ";
  append_array(out, im);
  out += "\n" + indent + "}";
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

PureState parse_state_json(std::string_view text, bool renormalize) {
  return read_state(parse_text(text), "", nullptr, renormalize);
}

SubspaceProjector parse_projector_json(std::string_view text, bool renormalize) {
  const json j = parse_text(text);
  const SystemShape shape(read_dims(member(j, "", "dims"), "dims"));
  const json& basis = member(j, "", "basis");
  if (!basis.is_array() || basis.empty()) field_error("basis", "expected a non-empty array of states");
  std::vector<PureState> vs;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    vs.push_back(read_state(basis[i], "basis[" + std::to_string(i) + "]", &shape, renormalize));
  }
  try {
    return SubspaceProjector(shape, std::move(vs));
  } catch (const ShapeError&) {
    throw;
  } catch (const Error& e) {
    field_error("basis", e.what());
  }
}

std::string state_to_json(const PureState& state) {
  std::string out;
  append_state(out, state, "");
  out += '\n';
  return out;
}

std::string projector_to_json(const SubspaceProjector& projector) {
  std::vector<double> dims(projector.shape().dims().begin(), projector.shape().dims().end());
  std::string out = "{\n  \"dims\": ";
  append_array(out, dims);
  out += ",\n  \"basis\": [\n    ";
  for (std::size_t i = 0; i < projector.basis().size(); ++i) {
    if (i) out += ",\n    ";
    append_state(out, projector.basis()[i], "    ");
  }
  out += "\n  ]\n}\n";
  return out;
}

std::string matrix_to_json(const CMatrix& m) {
  std::string out = "{\"re\": [";
  for (int part = 0; part < 2; ++part) {
    if (part == 1) out += "], \"im\": [";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r) out += ", ";
      std::vector<double> row;
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(part == 0 ? m(r, c).real() : m(r, c).imag());
      append_array(out, row);
    }
  }
  out += "]}";
  return out;
}

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_file(const std::string& path) {
  if (path == "-") return read_all(std::cin);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  return read_all(f);
}

}  // namespace geomax
