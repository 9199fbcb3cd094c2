#pragma once

#include <string>

#include "fjsig/model.hpp"
#include "fjsig/optimizer.hpp"

namespace fjsig::io {

/// Instance document: {"agents", "states", "prior", "influence",
/// "susceptibility", "preconceptions", "ranges", "objective"}.
FJInstance load_instance(const std::string& path);
void save_instance(const FJInstance& inst, const std::string& path);
FJInstance instance_from_json_text(const std::string& text);
std::string instance_to_json_text(const FJInstance& inst);

/// Scheme document: top-level "expected_value" and "method", one entry per
/// signal with "prob", "posterior", "phi_column", "equilibrium", "value".
struct SchemeFile {
  double expected_value = 0.0;
  std::string method;
  SignalingScheme scheme;
};

void save_scheme(const FJInstance& inst, const opt::SolveReport& report, const std::string& path);
SchemeFile load_scheme(const FJInstance& inst, const std::string& path);

}  // namespace fjsig::io
