#ifndef SLT_CONFIG_HPP
#define SLT_CONFIG_HPP

#include <string>
#include <vector>

#include "slt/experiments.hpp"

namespace slt {

// Flat key=value configuration text ('#' comments, blank lines ignored).
// Every key maps 1:1 to an ExperimentConfig field; unknown keys and
// malformed values throw InvalidParam. Keys not present keep the values
// from `base`.
ExperimentConfig parse_config_text(const std::string& text,
                                   ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path,
                                  ExperimentConfig base = {});

// Named experiment presets:
//   relax       lambda=0.5, mu=2, defocusing relaxation to the constant
//   hamiltonian lambda=0.5, mu=0, conservative dynamics
//   overdamped  lambda=0.5, mu=8, slow first-mode relaxation
//   focusing    lambda=-1,  mu=2, exploratory (outside the theory)
// All use K=128, dt=1e-2, t_max=100 and the 1/(1+0.2 cos x) initial state.
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

} // namespace slt

#endif
