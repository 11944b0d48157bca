#include "csvip/problemio.hpp"

#include <cmath>
#include <initializer_list>
#include <iomanip>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "csvip/error.hpp"
#include "csvip/solvers.hpp"

namespace csvip {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, where + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw Error(ErrorCode::kUnknownField, where + ": unknown field '" + key + "'");
  }
}

const json& require(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing field '") + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) schema_error(where, "expected a number");
  return v.get<double>();
}

Vector as_vector(const json& v, const std::string& where) {
  if (!v.is_array()) schema_error(where, "expected an array of numbers");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = as_number(v[i], where);
  }
  return out;
}

Vector as_vector(const json& v, const std::string& where, std::size_t dim) {
  Vector out = as_vector(v, where);
  if (static_cast<std::size_t>(out.size()) != dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                where + ": expected " + std::to_string(dim) + " entries, got " +
                    std::to_string(out.size()));
  }
  return out;
}

Matrix as_matrix(const json& v, const std::string& where, std::size_t cols) {
  if (!v.is_array()) schema_error(where, "expected an array of rows");
  Matrix out(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < v.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) =
        as_vector(v[r], where + "[" + std::to_string(r) + "]", cols).transpose();
  }
  return out;
}

std::string tag_of(const json& spec, const std::string& where) {
  const json& t = require(spec, where, "type");
  if (!t.is_string()) schema_error(where, "'type' must be a string");
  return t.get<std::string>();
}

ConvexSet parse_set(const json& spec, const std::string& where, std::size_t dim) {
  const std::string tag = tag_of(spec, where);
  if (tag == "halfspace" || tag == "hyperplane") {
    reject_unknown(spec, where, {"type", "normal", "offset"});
    Vector normal = as_vector(require(spec, where, "normal"), where + ".normal", dim);
    const double offset = as_number(require(spec, where, "offset"), where + ".offset");
    return tag == "halfspace" ? ConvexSet::halfspace(std::move(normal), offset)
                              : ConvexSet::hyperplane(std::move(normal), offset);
  }
  if (tag == "box") {
    reject_unknown(spec, where, {"type", "lower", "upper"});
    return ConvexSet::box(as_vector(require(spec, where, "lower"), where + ".lower", dim),
                          as_vector(require(spec, where, "upper"), where + ".upper", dim));
  }
  if (tag == "ball") {
    reject_unknown(spec, where, {"type", "center", "radius"});
    return ConvexSet::ball(as_vector(require(spec, where, "center"), where + ".center", dim),
                           as_number(require(spec, where, "radius"), where + ".radius"));
  }
  if (tag == "affine_subspace") {
    reject_unknown(spec, where, {"type", "matrix", "rhs"});
    Matrix a = as_matrix(require(spec, where, "matrix"), where + ".matrix", dim);
    Vector b = as_vector(require(spec, where, "rhs"), where + ".rhs");
    return ConvexSet::affine_subspace(std::move(a), std::move(b));
  }
  if (tag == "simplex") {
    reject_unknown(spec, where, {"type"});
    return ConvexSet::simplex(dim);
  }
  if (tag == "whole_space") {
    reject_unknown(spec, where, {"type"});
    return ConvexSet::whole_space(dim);
  }
  if (tag == "intersection") {
    reject_unknown(spec, where, {"type", "members"});
    const json& members = require(spec, where, "members");
    if (!members.is_array()) schema_error(where, "'members' must be an array");
    std::vector<ConvexSet> sets;
    for (std::size_t i = 0; i < members.size(); ++i) {
      sets.push_back(parse_set(members[i], where + ".members[" + std::to_string(i) + "]", dim));
    }
    return ConvexSet::intersection(std::move(sets));
  }
  schema_error(where, "unknown set type '" + tag + "'");
}

IsmOperator parse_operator(const json& spec, const std::string& where, std::size_t dim,
                           std::optional<double> claimed_alpha) {
  const std::string tag = tag_of(spec, where);
  if (claimed_alpha && !(*claimed_alpha > 0.0)) {
    schema_error(where, "alpha must be positive");
  }
  if (tag == "zero") {
    reject_unknown(spec, where, {"type"});
    return IsmOperator::zero(dim);
  }
  if (tag == "constant") {
    reject_unknown(spec, where, {"type", "value"});
    return IsmOperator::constant(as_vector(require(spec, where, "value"), where + ".value", dim));
  }
  if (tag == "affine") {
    reject_unknown(spec, where, {"type", "matrix", "shift"});
    Matrix m = as_matrix(require(spec, where, "matrix"), where + ".matrix", dim);
    if (static_cast<std::size_t>(m.rows()) != dim) {
      throw Error(ErrorCode::kDimensionMismatch, where + ".matrix: expected " +
                                                     std::to_string(dim) + " rows");
    }
    Vector c = spec.contains("shift") ? as_vector(spec["shift"], where + ".shift", dim)
                                      : Vector::Zero(static_cast<Eigen::Index>(dim));
    return IsmOperator::affine(std::move(m), std::move(c), claimed_alpha);
  }
  schema_error(where, "unknown operator type '" + tag + "'");
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_infinity(const json& v, const std::string& where) {
  if (v.is_null()) return std::numeric_limits<double>::infinity();
  return as_number(v, where);
}

std::string emit_json(const RunResult& result) {
  const auto& trace = result.trace;
  json doc;
  doc["version"] = kResultVersion;
  doc["status"] = status_name(result.status);
  doc["solution"] = vector_json(result.solution);
  doc["iterations"] = result.iterations();
  doc["final_residuals"] =
      trace.instance_residuals.empty() ? json::array() : json(trace.instance_residuals.back());
  doc["step"] = {{"lambda", result.step.lambda},
                 {"alpha_bound", finite_or_null(result.step.alpha_bound)}};
  json iterates = json::array();
  for (const auto& x : trace.iterates) iterates.push_back(vector_json(x));
  json intermediate = json::array();
  for (const auto& y : trace.intermediate) intermediate.push_back(vector_json(y));
  doc["trace"] = {{"iterates", std::move(iterates)},
                  {"intermediate", std::move(intermediate)},
                  {"residuals", trace.residuals},
                  {"instance_residuals", trace.instance_residuals}};
  return doc.dump(2) + "\n";
}

std::string emit_csv(const RunResult& result) {
  const auto& trace = result.trace;
  std::ostringstream out;
  out << std::setprecision(17);
  const Eigen::Index n = result.solution.size();
  const std::size_t instances =
      trace.instance_residuals.empty() ? 0 : trace.instance_residuals.front().size();
  out << "k";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x_" << i;
  for (std::size_t i = 0; i < instances; ++i) out << ",r_" << i;
  out << "\n";
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    out << k;
    for (Eigen::Index i = 0; i < n; ++i) out << "," << trace.iterates[k][i];
    for (double r : trace.instance_residuals[k]) out << "," << r;
    out << "\n";
  }
  return out.str();
}

}  // namespace

ParsedProblem parse_problem(std::string_view text, const StopRule& stop_defaults) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, std::string("malformed JSON: ") + e.what());
  }
  const std::string where = "problem";
  reject_unknown(doc, where,
                 {"version", "dim", "instances", "weights", "lambda", "x0", "stop"});

  const json& version = require(doc, where, "version");
  if (!version.is_string()) schema_error(where, "'version' must be a string");
  if (version.get<std::string>() != kProblemVersion) {
    throw Error(ErrorCode::kUnknownVersion,
                "unsupported version '" + version.get<std::string>() + "'");
  }
  const json& dim_field = require(doc, where, "dim");
  if (!dim_field.is_number_integer() || dim_field.get<long>() < 1) {
    schema_error(where, "'dim' must be a positive integer");
  }
  const auto dim = static_cast<std::size_t>(dim_field.get<long>());

  const json& instances = require(doc, where, "instances");
  if (!instances.is_array() || instances.empty()) {
    schema_error(where, "'instances' must be a nonempty array");
  }
  std::vector<Instance> parsed;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const std::string iw = "instances[" + std::to_string(i) + "]";
    const json& inst = instances[i];
    reject_unknown(inst, iw, {"set", "operator", "alpha"});
    std::optional<double> alpha;
    if (inst.contains("alpha")) alpha = as_number(inst["alpha"], iw + ".alpha");
    ConvexSet set = parse_set(require(inst, iw, "set"), iw + ".set", dim);
    IsmOperator op = parse_operator(require(inst, iw, "operator"), iw + ".operator", dim, alpha);
    parsed.push_back(Instance{std::move(set), std::move(op)});
  }

  std::vector<double> weights;
  if (doc.contains("weights")) {
    const json& w = doc["weights"];
    if (!w.is_array()) schema_error(where, "'weights' must be an array");
    for (const auto& v : w) weights.push_back(as_number(v, "weights"));
  } else {
    weights.assign(parsed.size(), 1.0 / static_cast<double>(parsed.size()));
  }

  ParsedProblem out{CsvipProblem(std::move(parsed), std::move(weights)), RunOptions{}};
  out.options.stop = stop_defaults;

  if (doc.contains("lambda")) {
    out.options.lambda = as_number(doc["lambda"], "lambda");
    default_step(out.problem, out.options.lambda);
  }
  if (doc.contains("x0")) out.options.x0 = as_vector(doc["x0"], "x0", dim);
  if (doc.contains("stop")) {
    const json& stop = doc["stop"];
    reject_unknown(stop, "stop", {"residual_tol", "max_iters", "stall_tol"});
    auto& rule = out.options.stop;
    if (stop.contains("residual_tol")) {
      rule.residual_tol = as_number(stop["residual_tol"], "stop.residual_tol");
      if (!(rule.residual_tol > 0.0)) schema_error("stop", "residual_tol must be positive");
    }
    if (stop.contains("max_iters")) {
      if (!stop["max_iters"].is_number_integer() || stop["max_iters"].get<long>() < 1) {
        schema_error("stop", "max_iters must be a positive integer");
      }
      rule.max_iters = stop["max_iters"].get<long>();
    }
    if (stop.contains("stall_tol")) {
      rule.stall_tol = as_number(stop["stall_tol"], "stop.stall_tol");
      if (!(rule.stall_tol >= 0.0)) schema_error("stop", "stall_tol must be nonnegative");
    }
  }
  return out;
}

std::string emit_result(const RunResult& result, ResultFormat format) {
  return format == ResultFormat::kJson ? emit_json(result) : emit_csv(result);
}

RunResult parse_result(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, std::string("malformed JSON: ") + e.what());
  }
  const std::string where = "result";
  reject_unknown(doc, where,
                 {"version", "status", "solution", "iterations", "final_residuals", "step",
                  "trace"});
  const json& version = require(doc, where, "version");
  if (!version.is_string() || version.get<std::string>() != kResultVersion) {
    throw Error(ErrorCode::kUnknownVersion, "unsupported result version");
  }
  const json& status = require(doc, where, "status");
  if (!status.is_string()) schema_error(where, "'status' must be a string");
  const auto parsed_status = parse_status(status.get<std::string>());
  if (!parsed_status) schema_error(where, "unknown status '" + status.get<std::string>() + "'");

  RunResult result;
  result.status = *parsed_status;
  result.solution = as_vector(require(doc, where, "solution"), "solution");

  const json& step = require(doc, where, "step");
  reject_unknown(step, "step", {"lambda", "alpha_bound"});
  result.step.lambda = as_number(require(step, "step", "lambda"), "step.lambda");
  result.step.alpha_bound =
      number_or_infinity(require(step, "step", "alpha_bound"), "step.alpha_bound");

  const json& trace = require(doc, where, "trace");
  reject_unknown(trace, "trace", {"iterates", "intermediate", "residuals", "instance_residuals"});
  auto& t = result.trace;
  for (const auto& x : require(trace, "trace", "iterates")) {
    t.iterates.push_back(as_vector(x, "trace.iterates"));
  }
  for (const auto& y : require(trace, "trace", "intermediate")) {
    t.intermediate.push_back(as_vector(y, "trace.intermediate"));
  }
  for (const auto& r : require(trace, "trace", "residuals")) {
    t.residuals.push_back(as_number(r, "trace.residuals"));
  }
  for (const auto& row : require(trace, "trace", "instance_residuals")) {
    if (!row.is_array()) schema_error("trace.instance_residuals", "expected arrays");
    std::vector<double> values;
    for (const auto& r : row) values.push_back(as_number(r, "trace.instance_residuals"));
    t.instance_residuals.push_back(std::move(values));
  }
  if (t.residuals.size() != t.iterates.size() ||
      t.instance_residuals.size() != t.iterates.size()) {
    schema_error("trace", "iterates and residual rows differ in length");
  }
  const json& iterations = require(doc, where, "iterations");
  if (!iterations.is_number_unsigned() ||
      iterations.get<std::size_t>() != result.iterations()) {
    schema_error(where, "'iterations' disagrees with the trace");
  }
  return result;
}

}  // namespace csvip
