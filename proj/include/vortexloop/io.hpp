#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "vortexloop/circle_diffeo.hpp"
#include "vortexloop/circle_form.hpp"
#include "vortexloop/flow.hpp"
#include "vortexloop/hamiltonian.hpp"
#include "vortexloop/loop.hpp"

namespace vortexloop::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "vortexloop/1";

/// Throws SchemaError carrying the byte offset of a syntax error.
Json parse(std::string_view text);
Json read_file(const std::string& path);
/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);
void write_file(const std::string& path, const Json& j);
void write_text(const std::string& path, const std::string& text);

struct LoopLoadOptions {
  /// Reverse a clockwise loop (and the decoration with it) instead of
  /// rejecting it.
  bool auto_orient = false;
  ZeroOptions zero_options;
};

Json to_json(const CircleForm& form);
CircleForm form_from_json(const Json& j, const std::string& where = "beta");

Json to_json(const DecoratedLoop& loop);
DecoratedLoop loop_from_json(const Json& j, const LoopLoadOptions& options = {});

Json to_json(const PlanarHamiltonian& h);
PlanarHamiltonian hamiltonian_from_json(const Json& j);

Json to_json(const CircleDiffeo& gamma);
CircleDiffeo diffeo_from_json(const Json& j);

Json to_json(const OrbitInvariants& inv);
Json to_json(const EquivalenceVerdict& verdict);
Json to_json(const FlowReport& report);

/// Per-step invariants as CSV: step,t,area,hamiltonian,max_local_error.
std::string series_csv(const FlowReport& report);

/// Initial and final curves as closed polylines with zero images marked.
std::string overlay_svg(const DecoratedLoop& before, const DecoratedLoop& after);

}  // namespace vortexloop::io
