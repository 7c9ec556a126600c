#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "holo_interp/certificates.hpp"
#include "holo_interp/construction.hpp"
#include "holo_interp/geometry.hpp"
#include "holo_interp/pointset.hpp"
#include "holo_interp/rkhs.hpp"
#include "holo_interp/weights.hpp"

namespace holo_interp::io {

using json = nlohmann::json;

inline constexpr const char* kReportSchema = "holo-interp/report/v1";

/// Parses an argument that is either inline JSON (starts with '{' or '[') or a
/// path to a JSON file. Errors become InputError with line and column.
json load_json_arg(const std::string& arg);
json parse_json_text(const std::string& text, const std::string& origin);

/// {"kind": "flat", "n": 1} or {"kind": "hyperbolic", "n": 1, "kappa": 1.0, "k": 1.0}
ModelSpace space_from_json(const json& j);
json to_json(const ModelSpace& space);

/// [re, im] for n = 1, or a list of [re, im] pairs.
Point point_from_json(const json& j, int n);
json to_json(const Point& p);
json complex_to_json(cplx c);
cplx complex_from_json(const json& j);

/// {"points": [...], "values": [[re, im], ...]}; "space" is read by the caller.
PointSet pointset_from_json(const json& j, int n);
json to_json(const PointSet& points);

/// {"builtin": "fock", "alpha": 1} | {"builtin": "bergman", "A": 2, "kappa": 1}
/// | {"sigmas": [...], "phi_def": [...], "M2": ..., "r0": ..., "mu": ..., "lambda": ...}
HermitianWeight weight_from_json(const json& j, int n);
json to_json(const HermitianWeight& w);

/// Kernel matching a builtin weight spec (fock → Fock kernel, bergman → Bergman kernel).
KernelSpace kernel_from_json(const json& j, int n);

/// {"type": "box" | "disk" | "points" | "random_ball", ..., "jitter": a}
std::vector<Point> grid_from_json(const json& j, const ModelSpace& space, std::uint64_t seed);

/// Normalization conventions embedded in every report.
json conventions();

json to_json(const CertificateReport& report);
std::string certificate_csv(const CertificateReport& report);

json to_json(const SeparationReport& report);
json to_json(const EnergyReport& report);
json to_json(const AuxCurvatureReport& report);
json to_json(const GramDiagnostic& diag, bool include_matrix = false);
std::string sweep_csv(const SweepResult& sweep);

/// Full-precision scientific notation (17 significant digits).
std::string format_double(double x);

}  // namespace holo_interp::io
