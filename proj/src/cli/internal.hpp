#pragma once

// Shared between the command implementations.

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "cohlab/channel.hpp"
#include "cohlab/cli/commands.hpp"

namespace cohlab::cli {

struct ChannelRow {
  ChannelMetrics metrics;
  double p_e;
  double extra;  ///< c' (phase code) or p_e^(n) (bit code)
};

ChannelRow channel_row(const RunConfig& config, std::complex<double> u);

std::vector<std::string> channel_columns(const RunConfig& config);

void write_propagator_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                          const Trajectory& traj);

void write_channel_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                       const RunConfig& config, const Trajectory& traj);

}  // namespace cohlab::cli
