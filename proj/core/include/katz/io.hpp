#pragma once

#include "katz/engine.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace katz {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// {"num": [...]} with phi(conductor) fraction strings.
json scalar_to_json(const Scalar& s, unsigned long conductor);
json datum_to_json(const FormalTypeDatum& d, const std::optional<std::string>& name = std::nullopt);

/// Canonical, byte-stable text: sorted points and blocks, reduced fractions.
std::string print_datum(const FormalTypeDatum& d, const std::optional<std::string>& name = std::nullopt);
/// Throws ParseError with the JSON path and line/column of the offending value.
FormalTypeDatum parse_datum(const std::string& text);

struct NamedDatum {
    FormalTypeDatum datum;
    std::optional<std::string> name;
};
NamedDatum parse_named_datum(const std::string& text);

/// A single global operation as used by `apply` and inside traces.
struct Operation {
    enum class Kind { Twist, Moebius, Fourier, MiddleConvolution };
    Kind kind = Kind::Fourier;
    FormalTypeDatum ell;  // Twist: the rank-one datum tensored in
    MoebiusMap phi;       // Moebius: pullback map
    Scalar lambda;        // MiddleConvolution
};

json operation_to_json(const Operation& op);
Operation parse_operation(const std::string& text);
TransformResult apply_operation(const FormalTypeDatum& d, const Operation& op);

/// Operation descriptors equivalent to one reduction step, in order.
std::vector<Operation> step_operations(const ReductionStep& step);

json trace_to_json(const OperationTrace& trace);
std::string print_trace(const OperationTrace& trace);
OperationTrace parse_trace(const std::string& text);

json verdict_to_json(const Verdict& v);

std::string read_file(const std::string& path);

}  // namespace katz
